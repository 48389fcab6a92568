#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streamspec {

enum class Sort : std::uint8_t { B, S, N };

std::string_view sort_name(Sort sort);

struct Symbol {
  std::string name;
  std::vector<Sort> argSorts;
  Sort resSort = Sort::S;

  std::size_t arity() const { return argSorts.size(); }
  bool operator==(const Symbol&) const = default;
};

enum class TermKind : std::uint8_t { Var, Bit, Cons, App, Ext };

// Immutable first-order term with shared subterms. Ext nodes stand for a
// position inside an externally supplied stream and only appear during
// evaluation.
class Term {
 public:
  Term();  // the bit 0

  static Term var(std::string name, Sort sort);
  static Term bit(int value);
  static Term cons(Term head, Term tail);
  static Term app(std::string symbol, std::vector<Term> args, Sort result);
  static Term constant(std::string symbol, Sort result) { return app(std::move(symbol), {}, result); }
  static Term ext(std::uint32_t source, std::uint64_t offset);

  TermKind kind() const;
  Sort sort() const;
  const std::string& name() const;
  int bit_value() const;
  const std::vector<Term>& args() const;
  const Term& head() const { return args()[0]; }
  const Term& tail() const { return args()[1]; }
  std::uint32_t ext_source() const;
  std::uint64_t ext_offset() const;

  bool is_ground() const;
  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Substitution = std::map<std::string, Term>;

// Syntactic matching: no evaluation of the subject happens here.
std::optional<Substitution> match(const Term& pattern, const Term& subject);
bool match_into(const Term& pattern, const Term& subject, Substitution& subst);
Term substitute(const Term& term, const Substitution& subst);
std::optional<Term> match_and_substitute(const Term& lhs, const Term& rhs, const Term& subject);

// Variables in left-to-right order of first occurrence, with their sorts.
std::vector<std::pair<std::string, Sort>> variables_of(const Term& term);

std::string to_string(const Term& term);

// (1:)^n zeros
Term unary_term(std::uint64_t n);

}  // namespace streamspec
