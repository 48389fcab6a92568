#include "streamspec/spec.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>

namespace streamspec {

SpecError::SpecError(Kind kind, std::string message, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                  : message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

const Symbol kZeroSym{std::string(kNatZero), {}, Sort::N};
const Symbol kSuccSym{std::string(kNatSucc), {Sort::N}, Sort::N};

}  // namespace

const Symbol* Specification::find(std::string_view symbol) const {
  if (natSort) {
    if (symbol == kNatZero) return &kZeroSym;
    if (symbol == kNatSucc) return &kSuccSym;
  }
  for (const auto& s : symbols)
    if (s.name == symbol) return &s;
  return nullptr;
}

bool Specification::is_constructor(std::string_view symbol) const {
  return natSort && (symbol == kNatZero || symbol == kNatSucc);
}

void Specification::declare(Symbol symbol) {
  if (find(symbol.name))
    throw SpecError(SpecError::Kind::Duplicate, "duplicate symbol '" + symbol.name + "'");
  symbols.push_back(std::move(symbol));
}

void Specification::absorb(const Specification& other) {
  natSort = natSort || other.natSort;
  for (const auto& s : other.symbols) {
    if (const Symbol* existing = find(s.name)) {
      if (!(*existing == s))
        throw SpecError(SpecError::Kind::Duplicate, "conflicting declarations of '" + s.name + "'");
      continue;
    }
    symbols.push_back(s);
  }
  for (const auto& e : other.equations) {
    if (std::find(equations.begin(), equations.end(), e) == equations.end()) equations.push_back(e);
  }
}

// ---------------------------------------------------------------------------
// Lexing and parsing

namespace {

struct Token {
  enum Kind { Ident, Bit, LParen, RParen, Comma, Colon, Equals, Arrow, End } kind = End;
  std::string text;
  int line = 0;
  int column = 0;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

std::vector<Token> lex_line(std::string_view line, int lineNo) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    unsigned char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token t;
    t.line = lineNo;
    t.column = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      t.kind = Token::Ident;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      t.text = std::string(line.substr(i, j - i));
      if (t.text != "0" && t.text != "1")
        throw SpecError(SpecError::Kind::Syntax, "unexpected literal '" + t.text + "'", lineNo, col);
      t.kind = Token::Bit;
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      t.kind = Token::Arrow;
      t.text = "->";
      i += 2;
    } else {
      switch (c) {
        case '(': t.kind = Token::LParen; break;
        case ')': t.kind = Token::RParen; break;
        case ',': t.kind = Token::Comma; break;
        case ':': t.kind = Token::Colon; break;
        case '=': t.kind = Token::Equals; break;
        default:
          throw SpecError(SpecError::Kind::Syntax, std::string("unexpected character '") + char(c) + "'", lineNo,
                          col);
      }
      t.text = std::string(1, char(c));
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = lineNo;
  end.column = static_cast<int>(line.size()) + 1;
  out.push_back(end);
  return out;
}

// Untyped syntax tree, elaborated against the signature afterwards.
struct Raw {
  enum Kind { Ident, Bit, Cons } kind = Ident;
  std::string name;
  int bit = 0;
  bool call = false;  // written with parentheses
  std::vector<Raw> args;
  int line = 0;
  int column = 0;
};

std::string raw_text(const Raw& r) {
  switch (r.kind) {
    case Raw::Bit: return r.bit ? "1" : "0";
    case Raw::Cons: return raw_text(r.args[0]) + " : " + raw_text(r.args[1]);
    case Raw::Ident: {
      std::string s = r.name;
      if (r.call) {
        s += '(';
        for (std::size_t i = 0; i < r.args.size(); ++i) s += (i ? ", " : "") + raw_text(r.args[i]);
        s += ')';
      }
      return s;
    }
  }
  return {};
}

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::End; }

  Token expect(Token::Kind kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Token::End ? "end of line" : "'" + t.text + "'";
    throw SpecError(SpecError::Kind::Syntax, msg + ", found " + found, t.line, t.column);
  }

  Raw term() {
    Raw left = atom();
    if (peek().kind == Token::Colon) {
      Token c = next();
      Raw r;
      r.kind = Raw::Cons;
      r.line = c.line;
      r.column = c.column;
      r.args.push_back(std::move(left));
      r.args.push_back(term());
      return r;
    }
    return left;
  }

 private:
  Raw atom() {
    const Token& t = peek();
    Raw r;
    r.line = t.line;
    r.column = t.column;
    if (t.kind == Token::Bit) {
      r.kind = Raw::Bit;
      r.bit = t.text == "1";
      next();
      return r;
    }
    if (t.kind == Token::LParen) {
      next();
      Raw inner = term();
      expect(Token::RParen, "')'");
      return inner;
    }
    if (t.kind != Token::Ident) fail("expected a term");
    r.kind = Raw::Ident;
    r.name = next().text;
    if (peek().kind == Token::LParen) {
      next();
      r.call = true;
      if (peek().kind != Token::RParen) {
        r.args.push_back(term());
        while (peek().kind == Token::Comma) {
          next();
          r.args.push_back(term());
        }
      }
      expect(Token::RParen, "')' or ','");
    }
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

class Elaborator {
 public:
  explicit Elaborator(const Specification& spec) : spec_(spec) {}

  // Sort a raw term has on its own, if determined without context.
  std::optional<Sort> intrinsic_sort(const Raw& r) const {
    switch (r.kind) {
      case Raw::Bit: return Sort::B;
      case Raw::Cons: return Sort::S;
      case Raw::Ident:
        if (const Symbol* s = spec_.find(r.name)) return s->resSort;
        if (auto it = vars_.find(r.name); it != vars_.end()) return it->second;
        return std::nullopt;
    }
    return std::nullopt;
  }

  Term build(const Raw& r, std::optional<Sort> expected) {
    auto sort_error = [&](const std::string& msg) -> SpecError {
      return SpecError(SpecError::Kind::Sort, "in '" + raw_text(r) + "': " + msg, r.line, r.column);
    };
    auto check = [&](Sort actual) {
      if (expected && *expected != actual)
        throw sort_error("has sort " + std::string(sort_name(actual)) + " where " +
                         std::string(sort_name(*expected)) + " is expected");
    };
    switch (r.kind) {
      case Raw::Bit:
        check(Sort::B);
        return Term::bit(r.bit);
      case Raw::Cons: {
        check(Sort::S);
        Term h = build(r.args[0], Sort::B);
        Term t = build(r.args[1], Sort::S);
        return Term::cons(std::move(h), std::move(t));
      }
      case Raw::Ident: {
        if (const Symbol* sym = spec_.find(r.name)) {
          if (r.args.size() != sym->arity())
            throw sort_error("symbol '" + r.name + "' expects " + std::to_string(sym->arity()) +
                             " argument(s), got " + std::to_string(r.args.size()));
          check(sym->resSort);
          std::vector<Term> args;
          for (std::size_t i = 0; i < r.args.size(); ++i) args.push_back(build(r.args[i], sym->argSorts[i]));
          return Term::app(r.name, std::move(args), sym->resSort);
        }
        if (r.call)
          throw SpecError(SpecError::Kind::Undeclared, "undeclared symbol '" + r.name + "'", r.line, r.column);
        auto it = vars_.find(r.name);
        if (it != vars_.end()) {
          check(it->second);
          return Term::var(r.name, it->second);
        }
        if (!expected) throw sort_error("cannot infer the sort of variable '" + r.name + "'");
        if (*expected == Sort::N && !spec_.natSort) throw sort_error("sort N is not enabled");
        vars_.emplace(r.name, *expected);
        return Term::var(r.name, *expected);
      }
    }
    throw sort_error("malformed term");
  }

  std::pair<Term, Term> equation(const Raw& l, const Raw& r) {
    std::optional<Sort> ls = intrinsic_sort(l);
    if (ls) {
      Term lt = build(l, std::nullopt);
      Term rt = build(r, lt.sort());
      return {lt, rt};
    }
    Term rt = build(r, std::nullopt);
    Term lt = build(l, rt.sort());
    return {lt, rt};
  }

 private:
  const Specification& spec_;
  std::map<std::string, Sort> vars_;
};

Sort parse_sort(LineParser& p, const Specification& spec) {
  const Token& t = p.peek();
  if (t.kind != Token::Ident) p.fail("expected a sort");
  if (t.text == "B") return p.next(), Sort::B;
  if (t.text == "S") return p.next(), Sort::S;
  if (t.text == "N") {
    if (!spec.natSort)
      throw SpecError(SpecError::Kind::Sort, "sort N used without 'sort N'", t.line, t.column);
    return p.next(), Sort::N;
  }
  p.fail("expected one of B, S, N");
}

}  // namespace

Specification parse_spec(std::string_view text, std::string name) {
  Specification spec;
  spec.name = std::move(name);
  int lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineNo;
    start = end + 1;

    LineParser p(lex_line(line, lineNo));
    if (p.at_end()) continue;
    Token kw = p.expect(Token::Ident, "'sort', 'sym' or 'eq'");
    if (kw.text == "sort") {
      Token s = p.expect(Token::Ident, "a sort name");
      if (s.text != "N") throw SpecError(SpecError::Kind::Syntax, "only 'sort N' may be declared", s.line, s.column);
      spec.natSort = true;
    } else if (kw.text == "sym") {
      Token n = p.expect(Token::Ident, "a symbol name");
      p.expect(Token::Colon, "':'");
      Symbol sym;
      sym.name = n.text;
      std::vector<Sort> sorts{parse_sort(p, spec)};
      while (p.peek().kind == Token::Ident && p.peek().text == "x") {
        p.next();
        sorts.push_back(parse_sort(p, spec));
      }
      if (p.peek().kind == Token::Arrow) {
        p.next();
        sym.argSorts = sorts;
        sym.resSort = parse_sort(p, spec);
      } else {
        if (sorts.size() != 1) p.fail("expected '->'");
        sym.resSort = sorts[0];
      }
      if (!p.at_end()) p.fail("unexpected trailing input");
      if (spec.find(sym.name))
        throw SpecError(SpecError::Kind::Duplicate, "duplicate symbol '" + sym.name + "'", n.line, n.column);
      spec.symbols.push_back(std::move(sym));
    } else if (kw.text == "eq") {
      Raw l = p.term();
      p.expect(Token::Equals, "'='");
      Raw r = p.term();
      if (!p.at_end()) p.fail("unexpected trailing input");
      Elaborator el(spec);
      auto [lt, rt] = el.equation(l, r);
      spec.equations.push_back({lt, rt});
    } else {
      throw SpecError(SpecError::Kind::Syntax, "unknown item '" + kw.text + "'", kw.line, kw.column);
    }
  }
  return spec;
}

Term parse_term(const Specification& spec, std::string_view text) {
  LineParser p(lex_line(text, 1));
  Raw r = p.term();
  if (!p.at_end()) p.fail("unexpected trailing input");
  Elaborator el(spec);
  return el.build(r, el.intrinsic_sort(r));
}

std::string print_symbol(const Symbol& sym) {
  std::string s = "sym " + sym.name + " : ";
  for (std::size_t i = 0; i < sym.argSorts.size(); ++i) {
    if (i) s += " x ";
    s += sort_name(sym.argSorts[i]);
  }
  if (!sym.argSorts.empty()) s += " -> ";
  s += sort_name(sym.resSort);
  return s;
}

std::string print_equation(const Equation& eq) { return "eq " + to_string(eq.lhs) + " = " + to_string(eq.rhs); }

std::string print_spec(const Specification& spec) {
  std::string out;
  if (spec.natSort) out += "sort N\n";
  for (const auto& s : spec.symbols) out += print_symbol(s) + "\n";
  for (const auto& e : spec.equations) out += print_equation(e) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Rule classification

std::string_view rule_class_name(RuleClass c) {
  switch (c) {
    case RuleClass::Evaluable: return "evaluable";
    case RuleClass::Constraint: return "constraint";
    case RuleClass::NonOrientable: return "non-orientable";
  }
  return "?";
}

namespace {

bool is_constructor_pattern(const Specification& spec, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bit:
      return true;
    case TermKind::Cons:
      return is_constructor_pattern(spec, t.head()) && is_constructor_pattern(spec, t.tail());
    case TermKind::App:
      if (!spec.is_constructor(t.name())) return false;
      return std::all_of(t.args().begin(), t.args().end(),
                         [&](const Term& a) { return is_constructor_pattern(spec, a); });
    case TermKind::Ext:
      return false;
  }
  return false;
}

void count_vars(const Term& t, std::map<std::string, int>& counts) {
  if (t.kind() == TermKind::Var) {
    ++counts[t.name()];
    return;
  }
  for (const auto& a : t.args()) count_vars(a, counts);
}

}  // namespace

bool patterns_overlap(const Term& a, const Term& b) {
  if (a.kind() == TermKind::Var || b.kind() == TermKind::Var) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TermKind::Bit) return a.bit_value() == b.bit_value();
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!patterns_overlap(a.args()[i], b.args()[i])) return false;
  return true;
}

std::vector<RuleClass> classify_rules(const Specification& spec) {
  std::vector<RuleClass> out;
  std::vector<std::size_t> evaluable;
  for (std::size_t i = 0; i < spec.equations.size(); ++i) {
    const Equation& eq = spec.equations[i];
    std::map<std::string, int> lhsVars;
    count_vars(eq.lhs, lhsVars);
    std::map<std::string, int> rhsVars;
    count_vars(eq.rhs, rhsVars);
    bool covered = std::all_of(rhsVars.begin(), rhsVars.end(),
                               [&](const auto& kv) { return lhsVars.count(kv.first) > 0; });
    if (!covered) {
      out.push_back(RuleClass::NonOrientable);
      continue;
    }
    bool shaped = eq.lhs.kind() == TermKind::App && !spec.is_constructor(eq.lhs.name()) &&
                  std::all_of(eq.lhs.args().begin(), eq.lhs.args().end(),
                              [&](const Term& a) { return is_constructor_pattern(spec, a); });
    bool linear = std::all_of(lhsVars.begin(), lhsVars.end(), [](const auto& kv) { return kv.second == 1; });
    if (!shaped || !linear) {
      out.push_back(RuleClass::Constraint);
      continue;
    }
    bool overlaps = std::any_of(evaluable.begin(), evaluable.end(),
                                [&](std::size_t j) { return patterns_overlap(spec.equations[j].lhs, eq.lhs); });
    if (overlaps) {
      out.push_back(RuleClass::Constraint);
      continue;
    }
    evaluable.push_back(i);
    out.push_back(RuleClass::Evaluable);
  }
  return out;
}

}  // namespace streamspec
