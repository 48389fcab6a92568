#include "streamspec/term.hpp"

#include <functional>
#include <stdexcept>

namespace streamspec {

std::string_view sort_name(Sort sort) {
  switch (sort) {
    case Sort::B: return "B";
    case Sort::S: return "S";
    case Sort::N: return "N";
  }
  return "?";
}

struct Term::Node {
  TermKind kind = TermKind::Bit;
  Sort sort = Sort::B;
  int bit = 0;
  std::string name;
  std::vector<Term> args;
  std::uint32_t source = 0;
  std::uint64_t offset = 0;
  bool ground = true;
  std::size_t hash = 0;
  std::size_t size = 1;

  Node() = default;
  Node(const Node&) = default;
  // Long chains would otherwise be released recursively.
  ~Node() {
    std::vector<Term> pending = std::move(args);
    while (!pending.empty()) {
      Term t = std::move(pending.back());
      pending.pop_back();
      if (t.node_ && t.node_.use_count() == 1) {
        auto& sub = const_cast<Node&>(*t.node_).args;
        for (auto& c : sub) pending.push_back(std::move(c));
        sub.clear();
      }
    }
  }
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::vector<Term> kNoArgs;

}  // namespace

Term::Term() : Term(bit(0)) {}

Term Term::var(std::string name, Sort sort) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->sort = sort;
  n->hash = mix(std::hash<std::string>{}(name), 11);
  n->name = std::move(name);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::bit(int value) {
  static const Term zero = [] {
    auto n = std::make_shared<Node>();
    n->bit = 0;
    n->hash = 101;
    return Term(std::move(n));
  }();
  static const Term one = [] {
    auto n = std::make_shared<Node>();
    n->bit = 1;
    n->hash = 103;
    return Term(std::move(n));
  }();
  if (value != 0 && value != 1) throw std::invalid_argument("bit must be 0 or 1");
  return value ? one : zero;
}

Term Term::cons(Term head, Term tail) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Cons;
  n->sort = Sort::S;
  n->ground = head.is_ground() && tail.is_ground();
  n->hash = mix(mix(17, head.hash()), tail.hash());
  n->size = 1 + head.size() + tail.size();
  n->args = {std::move(head), std::move(tail)};
  return Term(std::move(n));
}

Term Term::app(std::string symbol, std::vector<Term> args, Sort result) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->sort = result;
  std::size_t h = mix(std::hash<std::string>{}(symbol), 23);
  for (const auto& a : args) {
    h = mix(h, a.hash());
    n->ground = n->ground && a.is_ground();
    n->size += a.size();
  }
  n->hash = h;
  n->name = std::move(symbol);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::ext(std::uint32_t source, std::uint64_t offset) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Ext;
  n->sort = Sort::S;
  n->source = source;
  n->offset = offset;
  n->hash = mix(mix(31, source), offset);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
Sort Term::sort() const { return node_->sort; }
const std::string& Term::name() const { return node_->name; }
int Term::bit_value() const { return node_->bit; }
const std::vector<Term>& Term::args() const { return node_->kind == TermKind::Ext ? kNoArgs : node_->args; }
std::uint32_t Term::ext_source() const { return node_->source; }
std::uint64_t Term::ext_offset() const { return node_->offset; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.sort != y.sort) return false;
  switch (x.kind) {
    case TermKind::Var: return x.name == y.name;
    case TermKind::Bit: return x.bit == y.bit;
    case TermKind::Ext: return x.source == y.source && x.offset == y.offset;
    case TermKind::Cons:
    case TermKind::App:
      return x.name == y.name && x.args == y.args;
  }
  return false;
}

bool match_into(const Term& pattern, const Term& subject, Substitution& subst) {
  switch (pattern.kind()) {
    case TermKind::Var: {
      auto [it, fresh] = subst.emplace(pattern.name(), subject);
      return fresh || it->second == subject;
    }
    case TermKind::Bit:
      return subject.kind() == TermKind::Bit && subject.bit_value() == pattern.bit_value();
    case TermKind::Cons:
    case TermKind::App: {
      if (subject.kind() != pattern.kind() || subject.name() != pattern.name()) return false;
      const auto& ps = pattern.args();
      const auto& ss = subject.args();
      if (ps.size() != ss.size()) return false;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (!match_into(ps[i], ss[i], subst)) return false;
      return true;
    }
    case TermKind::Ext:
      return pattern == subject;
  }
  return false;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

Term substitute(const Term& term, const Substitution& subst) {
  if (term.is_ground()) return term;
  switch (term.kind()) {
    case TermKind::Var: {
      auto it = subst.find(term.name());
      return it == subst.end() ? term : it->second;
    }
    case TermKind::Cons:
      return Term::cons(substitute(term.head(), subst), substitute(term.tail(), subst));
    case TermKind::App: {
      std::vector<Term> args;
      args.reserve(term.args().size());
      for (const auto& a : term.args()) args.push_back(substitute(a, subst));
      return Term::app(term.name(), std::move(args), term.sort());
    }
    default:
      return term;
  }
}

std::optional<Term> match_and_substitute(const Term& lhs, const Term& rhs, const Term& subject) {
  auto s = match(lhs, subject);
  if (!s) return std::nullopt;
  return substitute(rhs, *s);
}

namespace {

void collect_vars(const Term& t, std::vector<std::pair<std::string, Sort>>& out) {
  if (t.is_ground()) return;
  if (t.kind() == TermKind::Var) {
    for (const auto& [n, s] : out)
      if (n == t.name()) return;
    out.emplace_back(t.name(), t.sort());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

void print_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var:
      out += t.name();
      break;
    case TermKind::Bit:
      out += t.bit_value() ? '1' : '0';
      break;
    case TermKind::Ext:
      out += "<ext" + std::to_string(t.ext_source()) + "@" + std::to_string(t.ext_offset()) + ">";
      break;
    case TermKind::Cons:
      print_term(t.head(), out);
      out += " : ";
      print_term(t.tail(), out);
      break;
    case TermKind::App:
      out += t.name();
      if (!t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          print_term(t.args()[i], out);
        }
        out += ')';
      }
      break;
  }
}

}  // namespace

std::vector<std::pair<std::string, Sort>> variables_of(const Term& term) {
  std::vector<std::pair<std::string, Sort>> out;
  collect_vars(term, out);
  return out;
}

std::string to_string(const Term& term) {
  std::string out;
  print_term(term, out);
  return out;
}

Term unary_term(std::uint64_t n) {
  Term t = Term::constant("zeros", Sort::S);
  for (std::uint64_t i = 0; i < n; ++i) t = Term::cons(Term::bit(1), t);
  return t;
}

}  // namespace streamspec
