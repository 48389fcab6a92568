#include "streamspec/lambda.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace streamspec::lambda {

struct Term::Node {
  Kind kind = Kind::Hole;
  std::uint32_t index = 0;
  std::string name;
  std::vector<Term> kids;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::uint32_t loose = 0;
  bool hole = false;

  Node() = default;
  Node(const Node&) = default;
  // Long chains would otherwise be released recursively.
  ~Node() {
    std::vector<Term> pending = std::move(kids);
    while (!pending.empty()) {
      Term t = std::move(pending.back());
      pending.pop_back();
      if (t.node_ && t.node_.use_count() == 1) {
        auto& sub = const_cast<Node&>(*t.node_).kids;
        for (auto& c : sub) pending.push_back(std::move(c));
        sub.clear();
      }
    }
  }
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

Term::Term() : Term(hole()) {}

Term Term::var(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = index;
  n->hash = mix(3, index);
  n->loose = index + 1;
  return Term(std::move(n));
}

Term Term::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Free;
  n->hash = mix(5, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::abs(Term body, std::string hint) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->hash = mix(7, body.hash());
  n->size = 1 + body.size();
  n->loose = body.loose() > 0 ? body.loose() - 1 : 0;
  n->hole = body.has_hole();
  n->name = std::move(hint);
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->hash = mix(mix(11, fn.hash()), arg.hash());
  n->size = 1 + fn.size() + arg.size();
  n->loose = std::max(fn.loose(), arg.loose());
  n->hole = fn.has_hole() || arg.has_hole();
  n->kids = {std::move(fn), std::move(arg)};
  return Term(std::move(n));
}

Term Term::hole() {
  static const Term h = [] {
    auto n = std::make_shared<Node>();
    n->hash = 13;
    n->hole = true;
    return Term(std::move(n));
  }();
  return h;
}

Term Term::abs(const std::vector<std::string>& hints, Term body) {
  for (auto it = hints.rbegin(); it != hints.rend(); ++it) body = abs(std::move(body), *it);
  return body;
}

Term Term::apps(Term fn, const std::vector<Term>& args) {
  for (const auto& a : args) fn = app(std::move(fn), a);
  return fn;
}

Term::Kind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::body() const { return node_->kids.at(0); }
const Term& Term::fn() const { return node_->kids.at(0); }
const Term& Term::arg() const { return node_->kids.at(1); }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
std::uint32_t Term::loose() const { return node_->loose; }
bool Term::has_hole() const { return node_->hole; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: return a.index() == b.index();
    case Term::Kind::Free: return a.name() == b.name();
    case Term::Kind::Hole: return true;
    case Term::Kind::Abs: return a.body() == b.body();
    case Term::Kind::App: return a.fn() == b.fn() && a.arg() == b.arg();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Substitution

Term shift(const Term& t, std::int64_t by, std::uint32_t cutoff) {
  if (by == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      return Term::var(static_cast<std::uint32_t>(static_cast<std::int64_t>(t.index()) + by));
    case Term::Kind::Abs:
      return Term::abs(shift(t.body(), by, cutoff + 1), t.name());
    case Term::Kind::App:
      return Term::app(shift(t.fn(), by, cutoff), shift(t.arg(), by, cutoff));
    default:
      return t;
  }
}

namespace {

Term subst_at(const Term& t, std::uint32_t depth, const Term& s) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.index() == depth) return shift(s, depth);
      return Term::var(t.index() - 1);  // index > depth: one binder disappeared
    case Term::Kind::Abs:
      return Term::abs(subst_at(t.body(), depth + 1, s), t.name());
    case Term::Kind::App:
      return Term::app(subst_at(t.fn(), depth, s), subst_at(t.arg(), depth, s));
    default:
      return t;
  }
}

Term plug_at(const Term& ctx, const Term& t, std::vector<std::string>& binders) {
  if (!ctx.has_hole()) return ctx;
  switch (ctx.kind()) {
    case Term::Kind::Hole: {
      // Capture: free names bound by the context become indices.
      std::function<Term(const Term&, std::uint32_t)> bind = [&](const Term& u, std::uint32_t depth) -> Term {
        switch (u.kind()) {
          case Term::Kind::Free:
            for (std::size_t i = binders.size(); i-- > 0;)
              if (binders[i] == u.name()) return Term::var(static_cast<std::uint32_t>(binders.size() - 1 - i) + depth);
            return u;
          case Term::Kind::Var:
            return u.index() >= depth ? Term::var(u.index() + static_cast<std::uint32_t>(binders.size())) : u;
          case Term::Kind::Abs:
            return Term::abs(bind(u.body(), depth + 1), u.name());
          case Term::Kind::App:
            return Term::app(bind(u.fn(), depth), bind(u.arg(), depth));
          case Term::Kind::Hole:
            return u;
        }
        return u;
      };
      return bind(t, 0);
    }
    case Term::Kind::Abs: {
      binders.push_back(ctx.name());
      Term b = plug_at(ctx.body(), t, binders);
      binders.pop_back();
      return Term::abs(std::move(b), ctx.name());
    }
    case Term::Kind::App:
      return Term::app(plug_at(ctx.fn(), t, binders), plug_at(ctx.arg(), t, binders));
    default:
      return ctx;
  }
}

}  // namespace

Term instantiate(const Term& body, const Term& s) { return subst_at(body, 0, s); }

Term plug(const Term& context, const Term& t) {
  std::vector<std::string> binders;
  return plug_at(context, t, binders);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Kind { Lambda, Dot, LParen, RParen, Ident, Hole, End } kind;
  std::string text;
  std::size_t pos;
};

bool starts_with(std::string_view s, std::size_t i, std::string_view p) { return s.substr(i, p.size()) == p; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (c == '\\') {
      out.push_back({Token::Kind::Lambda, "\\", i++});
    } else if (starts_with(s, i, "λ")) {
      out.push_back({Token::Kind::Lambda, "λ", i});
      i += 2;
    } else if (starts_with(s, i, "☐")) {
      out.push_back({Token::Kind::Hole, "☐", i});
      i += 3;
    } else if (c == '.') {
      out.push_back({Token::Kind::Dot, ".", i++});
    } else if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", i++});
    } else if (std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80) {
      std::size_t start = i;
      while (i < s.size()) {
        unsigned char d = static_cast<unsigned char>(s[i]);
        if (starts_with(s, i, "λ") || starts_with(s, i, "☐")) break;
        if (!(std::isalnum(d) || d == '_' || d == '\'' || d >= 0x80)) break;
        ++i;
      }
      out.push_back({Token::Kind::Ident, std::string(s.substr(start, i - start)), start});
    } else {
      throw ParseError("unexpected character '" + std::string(1, s[i]) + "' at offset " + std::to_string(i));
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::map<std::string, Term>& defs) : toks_(std::move(toks)), defs_(defs) {}

  Term parse_all() {
    Term t = term();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(peek().pos));
  }

  Term term() {
    if (peek().kind == Token::Kind::Lambda) return lambda();
    std::optional<Term> acc;
    while (true) {
      auto k = peek().kind;
      if (k == Token::Kind::End || k == Token::Kind::RParen) break;
      Term a = k == Token::Kind::Lambda ? lambda() : atom();
      acc = acc ? Term::app(*acc, a) : a;
    }
    if (!acc) fail("expected a term");
    return *acc;
  }

  Term lambda() {
    next();
    std::vector<std::string> names;
    while (peek().kind == Token::Kind::Ident) names.push_back(next().text);
    if (names.empty()) fail("expected a bound variable");
    if (next().kind != Token::Kind::Dot) fail("expected '.'");
    for (const auto& n : names) scope_.push_back(n);
    Term body = term();
    scope_.resize(scope_.size() - names.size());
    return Term::abs(names, std::move(body));
  }

  Term atom() {
    Token t = next();
    switch (t.kind) {
      case Token::Kind::Ident: {
        for (std::size_t i = scope_.size(); i-- > 0;)
          if (scope_[i] == t.text) return Term::var(static_cast<std::uint32_t>(scope_.size() - 1 - i));
        if (auto it = defs_.find(t.text); it != defs_.end()) return it->second;
        return Term::free(t.text);
      }
      case Token::Kind::Hole:
        return Term::hole();
      case Token::Kind::LParen: {
        Term inner = term();
        if (next().kind != Token::Kind::RParen) fail("expected ')'");
        return inner;
      }
      default:
        --pos_;
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::map<std::string, Term>& defs_;
  std::vector<std::string> scope_;
};

Term parse_with(std::string_view text, const std::map<std::string, Term>& defs) {
  return Parser(lex(text), defs).parse_all();
}

}  // namespace

Term parse(std::string_view text) {
  std::map<std::string, Term> defs;
  std::string main;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::string_view rest = std::string_view(line).substr(b);
    if (rest.starts_with("let ") || rest.starts_with("let\t")) {
      auto eq = rest.find('=');
      if (eq == std::string_view::npos) throw ParseError(std::to_string(lineNo) + ": expected '=' in let");
      std::string name(rest.substr(4, eq - 4));
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      if (name.empty()) throw ParseError(std::to_string(lineNo) + ": missing name in let");
      try {
        defs.insert_or_assign(name, parse_with(rest.substr(eq + 1), defs));
      } catch (const ParseError& e) {
        throw ParseError(std::to_string(lineNo) + ": " + e.what());
      }
      continue;
    }
    main += std::string(rest) + "\n";
  }
  if (main.empty()) throw ParseError("no main term");
  return parse_with(main, defs);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool occurs_index(const Term& t, std::uint32_t k) {
  if (t.loose() <= k) return false;
  switch (t.kind()) {
    case Term::Kind::Var: return t.index() == k;
    case Term::Kind::Abs: return occurs_index(t.body(), k + 1);
    case Term::Kind::App: return occurs_index(t.fn(), k) || occurs_index(t.arg(), k);
    default: return false;
  }
}

bool occurs_free(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::Free: return t.name() == name;
    case Term::Kind::Abs: return occurs_free(t.body(), name);
    case Term::Kind::App: return occurs_free(t.fn(), name) || occurs_free(t.arg(), name);
    default: return false;
  }
}

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : opts_(o) {
    // the first name given to a term wins
    for (const auto& [name, term] : o.abbreviations)
      if (!abbreviation(term)) abbrev_.emplace(term.hash(), std::pair{name, term});
  }

  std::string print(const Term& t) {
    std::string out;
    emit(t, out, false);
    return out;
  }

 private:
  std::optional<std::string> abbreviation(const Term& t) const {
    if (t.loose() > 0 || t.has_hole()) return std::nullopt;
    auto [lo, hi] = abbrev_.equal_range(t.hash());
    for (auto it = lo; it != hi; ++it)
      if (it->second.second == t) return it->second.first;
    return std::nullopt;
  }

  std::string fresh(const Term& body, std::string hint) {
    if (hint.empty()) hint = "x";
    while (true) {
      bool clash = occurs_free(body, hint) ||
                   std::any_of(opts_.abbreviations.begin(), opts_.abbreviations.end(),
                               [&](const auto& a) { return a.first == hint; });
      for (std::size_t d = 0; d < scope_.size() && !clash; ++d)
        clash = scope_[scope_.size() - 1 - d] == hint && occurs_index(body, static_cast<std::uint32_t>(d + 1));
      if (!clash) return hint;
      hint += "'";
    }
  }

  // atomic: parenthesise anything that is not a variable-like leaf
  void emit(const Term& t, std::string& out, bool atomic) {
    if (auto a = abbreviation(t)) {
      out += *a;
      return;
    }
    switch (t.kind()) {
      case Term::Kind::Var:
        if (t.index() < scope_.size())
          out += scope_[scope_.size() - 1 - t.index()];
        else
          out += "#" + std::to_string(t.index() - scope_.size());
        return;
      case Term::Kind::Free:
        out += t.name();
        return;
      case Term::Kind::Hole:
        out += "☐";
        return;
      case Term::Kind::Abs: {
        if (atomic) out += "(";
        out += opts_.ascii ? "\\" : "λ";
        Term cur = t;
        std::size_t pushed = 0;
        bool first = true;
        do {
          std::string n = fresh(cur.body(), cur.name());
          out += (first ? "" : " ") + n;
          first = false;
          scope_.push_back(n);
          ++pushed;
          cur = cur.body();
        } while (cur.kind() == Term::Kind::Abs);
        out += ". ";
        emit(cur, out, false);
        scope_.resize(scope_.size() - pushed);
        if (atomic) out += ")";
        return;
      }
      case Term::Kind::App: {
        if (atomic) out += "(";
        std::vector<Term> args;
        Term head = t;
        while (head.kind() == Term::Kind::App && !abbreviation(head)) {
          args.push_back(head.arg());
          head = head.fn();
        }
        emit(head, out, true);
        for (auto it = args.rbegin(); it != args.rend(); ++it) {
          out += " ";
          emit(*it, out, true);
        }
        if (atomic) out += ")";
        return;
      }
    }
  }

  const PrintOptions& opts_;
  std::unordered_multimap<std::size_t, std::pair<std::string, Term>> abbrev_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string to_string(const Term& t, const PrintOptions& opts) { return Printer(opts).print(t); }

// ---------------------------------------------------------------------------
// Reduction

std::optional<Term> weak_head_step(const Term& t) {
  if (t.kind() != Term::Kind::App) return std::nullopt;
  if (t.fn().kind() == Term::Kind::Abs) return instantiate(t.fn().body(), t.arg());
  auto f = weak_head_step(t.fn());
  if (!f) return std::nullopt;
  return Term::app(std::move(*f), t.arg());
}

std::optional<Term> head_step(const Term& t) {
  if (t.kind() == Term::Kind::Abs) {
    auto b = head_step(t.body());
    if (!b) return std::nullopt;
    return Term::abs(std::move(*b), t.name());
  }
  return weak_head_step(t);
}

std::optional<Term> lo_step(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs: {
      auto b = lo_step(t.body());
      if (!b) return std::nullopt;
      return Term::abs(std::move(*b), t.name());
    }
    case Term::Kind::App: {
      if (t.fn().kind() == Term::Kind::Abs) return instantiate(t.fn().body(), t.arg());
      if (auto f = lo_step(t.fn())) return Term::app(std::move(*f), t.arg());
      if (auto a = lo_step(t.arg())) return Term::app(t.fn(), std::move(*a));
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

bool is_whnf(const Term& t) { return !weak_head_step(t); }
bool is_hnf(const Term& t) { return !head_step(t); }
bool is_nf(const Term& t) { return !lo_step(t); }

std::string_view form_name(FormKind k) {
  switch (k) {
    case FormKind::NF: return "nf";
    case FormKind::HNF: return "hnf";
    case FormKind::WHNF: return "whnf";
  }
  return "?";
}

namespace {

Reduction reduce(const Term& t, std::optional<Term> (*step)(const Term&), ReduceOptions opts) {
  Reduction r;
  r.term = t;
  // Brent's cycle detection: compare against a checkpoint moved at powers of two.
  Term checkpoint = t;
  std::uint64_t power = 1, lam = 0;
  while (true) {
    auto next = step(r.term);
    if (!next) {
      r.status = Reduction::Status::Found;
      return r;
    }
    if (r.steps >= opts.budget) {
      r.status = Reduction::Status::Unknown;
      return r;
    }
    ++r.steps;
    r.term = std::move(*next);
    if (!opts.detectLoops) continue;
    if (r.term == checkpoint) {
      r.status = Reduction::Status::Diverges;
      return r;
    }
    if (++lam == power) {
      checkpoint = r.term;
      power *= 2;
      lam = 0;
    }
  }
}

}  // namespace

Reduction find_whnf(const Term& t, ReduceOptions opts) { return reduce(t, weak_head_step, opts); }
Reduction find_hnf(const Term& t, ReduceOptions opts) { return reduce(t, head_step, opts); }
Reduction find_nf(const Term& t, ReduceOptions opts) { return reduce(t, lo_step, opts); }

Reduction find_form(const Term& t, FormKind kind, ReduceOptions opts) {
  switch (kind) {
    case FormKind::NF: return find_nf(t, opts);
    case FormKind::HNF: return find_hnf(t, opts);
    case FormKind::WHNF: return find_whnf(t, opts);
  }
  return find_whnf(t, opts);
}

// ---------------------------------------------------------------------------
// Builders

Term I() { return parse_with("\\x. x", {}); }
Term K() { return parse_with("\\x y. x", {}); }
Term KI() { return Term::app(K(), I()); }
Term Omega() { return parse_with("(\\x. x x) (\\x. x x)", {}); }
Term zer() { return parse_with("\\f x. x", {}); }
Term succ() { return parse_with("\\z f x. f (z f x)", {}); }

Term church(std::uint64_t k) {
  Term body = Term::var(0);
  for (std::uint64_t i = 0; i < k; ++i) body = Term::app(Term::var(1), body);
  return Term::abs({"f", "x"}, body);
}

Term build_M() { return parse_with("(\\x a. a (x x)) (\\x a. a (x x))", {}); }

Term build_Tpp(const Term& T) {
  return parse_with("\\x n m. T n m I (x x n (succ m))", {{"T", T}, {"I", I()}, {"succ", succ()}});
}

Term build_Tprime(const Term& T) {
  Term tpp = build_Tpp(T);
  return Term::app(tpp, tpp);
}

Term build_Nprime(const Term& T) {
  return parse_with("\\x n. Tp n zer (\\a. a (x x (succ n)))",
                    {{"Tp", build_Tprime(T)}, {"zer", zer()}, {"succ", succ()}});
}

Term build_N(const Term& T) {
  Term np = build_Nprime(T);
  return Term::apps(np, {np, zer()});
}

HaltingTable halting_table(const TuringMachine& m, std::size_t maxInput, std::uint64_t maxSteps) {
  HaltingTable table;
  for (std::size_t n = 0; n <= maxInput; ++n) {
    DirectRun r = run_direct(m, {n}, {}, maxSteps);
    table.push_back(r.halted ? std::optional<std::uint64_t>(r.steps) : std::nullopt);
  }
  return table;
}

namespace {

std::vector<std::string> selector_hints(std::size_t k) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back("v" + std::to_string(i));
  return v;
}

// λv0..v_{k-1}. v_j
Term projection(std::size_t k, std::size_t j) {
  return Term::abs(selector_hints(k), Term::var(static_cast<std::uint32_t>(k - 1 - j)));
}

// λs v0..v_{k-1}. s w0..w_{k-1} where w_i = v_{pick(i)}
Term selector_step(std::size_t k, const std::function<std::size_t(std::size_t)>& pick) {
  auto hints = selector_hints(k);
  hints.insert(hints.begin(), "s");
  std::vector<Term> args;
  for (std::size_t i = 0; i < k; ++i) args.push_back(Term::var(static_cast<std::uint32_t>(k - 1 - pick(i))));
  return Term::abs(hints, Term::apps(Term::var(static_cast<std::uint32_t>(k)), args));
}

// moves selector j to j-1, keeping 0
Term step_down(std::size_t k) {
  return selector_step(k, [](std::size_t i) { return i == 0 ? 0 : i - 1; });
}

// moves selector j to j+1, keeping k-1
Term step_up(std::size_t k) {
  return selector_step(k, [k](std::size_t i) { return std::min(i + 1, k - 1); });
}

// G m →* K iff m >= h
Term halts_within(std::optional<std::uint64_t> h) {
  if (!h) return Term::abs(KI(), "m");
  std::vector<Term> args{step_down(*h + 1), projection(*h + 1, *h), K()};
  for (std::uint64_t i = 0; i < *h; ++i) args.push_back(KI());
  return Term::abs(Term::apps(Term::var(0), args), "m");
}

}  // namespace

Term build_T(const HaltingTable& table) {
  if (table.empty()) throw std::invalid_argument("empty halting table");
  const std::size_t k = table.size();
  // λn m. n UP P_0 G_0 .. G_{k-1} m
  std::vector<Term> args{step_up(k), projection(k, 0)};
  for (const auto& h : table) args.push_back(halts_within(h));
  args.push_back(Term::var(0));
  return Term::abs({"n", "m"}, Term::apps(Term::var(1), args));
}

std::string render_gadget_M() {
  PrintOptions opts;
  opts.ascii = true;
  Term half = parse_with("\\x a. a (x x)", {});
  std::string out = "# M = M' M'\n";
  out += "let M' = " + to_string(half, opts) + "\n";
  opts.abbreviations.emplace_back("M'", half);
  out += to_string(build_M(), opts) + "\n";
  return out;
}

std::string render_gadget_N(const HaltingTable& table) {
  PrintOptions opts;
  opts.ascii = true;
  std::string out = "# halting steps per input:";
  for (const auto& h : table) out += " " + (h ? std::to_string(*h) : std::string("-"));
  out += "\n";
  auto define = [&](const std::string& name, const Term& t) {
    out += "let " + name + " = " + to_string(t, opts) + "\n";
    opts.abbreviations.emplace_back(name, t);
  };
  define("I", I());
  define("K", K());
  define("KI", KI());
  define("zer", zer());
  define("succ", succ());
  std::set<std::uint64_t> lengths;
  for (const auto& h : table)
    if (h) lengths.insert(*h);
  for (auto h : lengths) {
    define("D" + std::to_string(h + 1), step_down(h + 1));
    define("P" + std::to_string(h + 1) + "_" + std::to_string(h), projection(h + 1, h));
  }
  // one gadget per distinct entry: G<h> halts after h steps, Gdiv never halts
  std::set<std::optional<std::uint64_t>> entries(table.begin(), table.end());
  for (const auto& h : entries) define(h ? "G" + std::to_string(*h) : "Gdiv", halts_within(h));
  define("U" + std::to_string(table.size()), step_up(table.size()));
  define("P" + std::to_string(table.size()) + "_0", projection(table.size(), 0));
  Term T = build_T(table);
  define("T", T);
  define("Tpp", build_Tpp(T));
  define("Tp", build_Tprime(T));
  define("Np", build_Nprime(T));
  out += to_string(build_N(T), opts) + "\n";
  return out;
}

}  // namespace streamspec::lambda
