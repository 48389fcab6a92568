#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamspec/term.hpp"

namespace streamspec {

struct Equation {
  Term lhs;
  Term rhs;
  bool operator==(const Equation& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

// Names of the constructors of the optional natural-number sort.
inline constexpr std::string_view kNatZero = "zero";
inline constexpr std::string_view kNatSucc = "succ";

struct Specification {
  std::string name;
  bool natSort = false;
  std::vector<Symbol> symbols;  // declared symbols, builtins excluded
  std::vector<Equation> equations;

  const Symbol* find(std::string_view symbol) const;
  bool is_constructor(std::string_view symbol) const;
  // Adds a declaration; throws SpecError on a duplicate.
  void declare(Symbol symbol);
  // Merges declarations and equations of other (duplicates must agree).
  void absorb(const Specification& other);
  bool operator==(const Specification& o) const {
    return natSort == o.natSort && symbols == o.symbols && equations == o.equations;
  }
};

class SpecError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Sort, Duplicate, Undeclared };
  SpecError(Kind kind, std::string message, int line = 0, int column = 0);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

Specification parse_spec(std::string_view text, std::string name = "");
// Parses a ground or open term against the signature of spec.
Term parse_term(const Specification& spec, std::string_view text);
std::string print_spec(const Specification& spec);
std::string print_equation(const Equation& eq);
std::string print_symbol(const Symbol& sym);

enum class RuleClass { Evaluable, Constraint, NonOrientable };
std::string_view rule_class_name(RuleClass c);

// One class per equation, in order. An equation that would be evaluable but
// overlaps an earlier evaluable one is demoted to Constraint.
std::vector<RuleClass> classify_rules(const Specification& spec);

// True when two constructor patterns (renamed apart) unify.
bool patterns_overlap(const Term& a, const Term& b);

}  // namespace streamspec
