#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamspec/ep_word.hpp"
#include "streamspec/spec.hpp"

namespace streamspec {

// Rewrite steps allowed for each requested bit.
struct EvalBudget {
  std::uint64_t maxSteps = 10000;
};

enum class Unresolved : std::uint8_t {
  None,
  Budget,  // step budget exhausted
  Stuck,   // normal form that is not a constructor
  Depth,   // nesting of demanded subterms exceeded the engine limit
};

struct BitOutcome {
  std::optional<int> bit;  // Got(bit) when present, Unknown otherwise
  std::uint64_t steps = 0;
  Unresolved reason = Unresolved::None;

  bool got() const { return bit.has_value(); }
};

// Index -> bit; nullopt when the bit cannot be produced.
using BitSource = std::function<std::optional<int>(std::uint64_t)>;

struct ExternalStream {
  std::string name;
  BitSource source;

  static ExternalStream of(std::string name, EpWord word);
};

class Evaluator;

// Argument of a trial function: a ground term whose bits are computed on demand.
class LazyStream {
 public:
  LazyStream(Evaluator* engine, Term term, EvalBudget budget);
  std::optional<int> bit(std::uint64_t index) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

using TrialFunction = std::function<std::optional<int>(std::span<const LazyStream> args, std::uint64_t index)>;

class NonGroundTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrefixComparison {
  enum class Kind { Equal, Diff, Unknown } kind = Kind::Equal;
  std::size_t index = 0;
  int bit1 = 0;
  int bit2 = 0;
};

// Lazy leftmost-outermost evaluator over the evaluable equations of a
// specification. Arguments are evaluated only as far as a left-hand side
// pattern demands, leftmost demand first.
class Evaluator {
 public:
  // Throws EngineError when the evaluable rules overlap.
  explicit Evaluator(Specification spec);

  // Binds a nullary symbol (declared or not) to an external stream.
  void bind_stream(ExternalStream stream);
  void bind_function(std::string name, TrialFunction fn);

  BitOutcome eval_bit(const Term& term, EvalBudget budget);
  std::vector<std::optional<int>> stream_prefix(const Term& term, std::size_t n, EvalBudget budget);
  std::vector<BitOutcome> stream_prefix_detailed(const Term& term, std::size_t n, EvalBudget budget);

  // Rule applications per equation index since the last reset.
  const std::vector<std::uint64_t>& rule_counts() const { return counts_; }
  void reset_counts();

  const Specification& spec() const { return spec_; }
  const std::vector<RuleClass>& classes() const { return classes_; }

  static constexpr unsigned kMaxDepth = 2048;

 private:
  friend class LazyStream;
  struct Ctx;
  enum class Match { Yes, No, Unknown };

  std::optional<Term> whnf(Term t, Ctx& c);
  Match match_force(const Term& pattern, Term& subject, Substitution& subst, Ctx& c);
  std::optional<Term> unfold_external(const Term& t, Ctx& c);
  void check_ground(const Term& t) const;

  struct Rule {
    std::size_t equation;
    Term lhs;
    Term rhs;
  };
  Specification spec_;
  std::vector<RuleClass> classes_;
  std::unordered_map<std::string, std::vector<Rule>> rules_;
  std::unordered_map<std::string, std::uint32_t> streamIds_;
  std::unordered_map<std::string, TrialFunction> functions_;
  std::vector<BitSource> sources_;
  std::vector<std::uint64_t> counts_;
};

// Convenience wrappers using a fresh evaluator.
BitOutcome eval_bit(const Specification& spec, const Term& term, EvalBudget budget);
std::vector<std::optional<int>> stream_prefix(const Specification& spec, const Term& term, std::size_t n,
                                              EvalBudget budget);
PrefixComparison prefix_equal(Evaluator& e1, const Term& t1, Evaluator& e2, const Term& t2, std::size_t n,
                              EvalBudget budget);
PrefixComparison prefix_equal(const Specification& s1, const Term& t1, const Specification& s2, const Term& t2,
                              std::size_t n, EvalBudget budget);

std::string render_prefix(const std::vector<std::optional<int>>& bits);

}  // namespace streamspec
