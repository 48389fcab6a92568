#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "streamspec/ep_word.hpp"
#include "streamspec/rewrite.hpp"
#include "streamspec/spec.hpp"
#include "streamspec/turing.hpp"

namespace streamspec {

// Element of a stream carrier: z_w and o_w are extra copies of w0^ω and w1^ω
// (hidden models only); W holds an actual stream.
struct HiddenElem {
  enum class Kind : std::uint8_t { Z, O, W };
  Kind kind = Kind::W;
  Word word;
  EpWord stream;

  static HiddenElem z(Word w) { return {Kind::Z, std::move(w), {}}; }
  static HiddenElem o(Word w) { return {Kind::O, std::move(w), {}}; }
  static HiddenElem w(EpWord s) { return {Kind::W, {}, std::move(s)}; }

  friend bool operator==(const HiddenElem&, const HiddenElem&) = default;
  friend auto operator<=>(const HiddenElem& a, const HiddenElem& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.word <=> b.word; c != 0) return c;
    return a.stream <=> b.stream;
  }
  std::string to_string() const;
};

// The stream underlying an element: w0^ω, w1^ω or the stream itself.
EpWord emb(const HiddenElem& e);

struct Value {
  enum class Kind : std::uint8_t { Bit, Nat, Stream };
  Kind kind = Kind::Bit;
  int bit = 0;
  std::uint64_t nat = 0;
  HiddenElem elem;

  static Value of_bit(int b) { return {Kind::Bit, b, 0, {}}; }
  static Value of_nat(std::uint64_t n) { return {Kind::Nat, 0, n, {}}; }
  static Value of_stream(EpWord w) { return {Kind::Stream, 0, 0, HiddenElem::w(std::move(w))}; }
  static Value of_elem(HiddenElem e) { return {Kind::Stream, 0, 0, std::move(e)}; }

  friend bool operator==(const Value&, const Value&) = default;
  std::string to_string() const;
};

using Assignment = std::map<std::string, Value>;
// nullopt: the value could not be determined (for instance a machine run
// that exceeded its budget).
using Operation = std::function<std::optional<Value>(std::span<const Value>)>;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interpretation of a signature over the carrier above. The observers used
// for behavioral equivalence live under "#head" and "#tail", the stream
// constructor under ":".
class StreamAlgebra {
 public:
  std::string name;
  bool hidden = false;
  std::map<std::string, Operation> ops;
  std::function<HiddenElem(const EpWord&)> represent = [](const EpWord& w) { return HiddenElem::w(w); };

  bool supports(const std::string& op) const { return ops.count(op) > 0; }
  std::optional<Value> apply(const std::string& op, std::span<const Value> args) const;
  std::optional<Value> eval(const Term& term, const Assignment& assignment) const;
  // Sequence of heads along repeated tails, which is eventually periodic.
  EpWord observe(const HiddenElem& e) const;
};

// Observers and constructor acting on actual streams.
void install_stream_basics(StreamAlgebra& alg);

struct CanonicalOptions {
  const TuringMachine* machine = nullptr;  // interprets its states when given
  EvalBudget budget{100000};
};

// Throws ModelError naming every symbol without a canonical interpretation.
StreamAlgebra canonical_model(const Specification& spec, CanonicalOptions opts = {});

// The hidden algebra of the zip/blink counterexample.
StreamAlgebra counterexample_model();
// Same carrier but every operation respects behavioral equivalence.
StreamAlgebra confusion_model();

// Finite or infinite interleaving: a u1 ⋈ u2 = a (u2 ⋈ u1), ε ⋈ u2 = u2.
using FinOrInf = std::variant<Word, EpWord>;
FinOrInf join(const FinOrInf& a, const FinOrInf& b);
Word join(const Word& a, const Word& b);

bool behavioral_equiv(const StreamAlgebra& alg, const Value& a, const Value& b);

struct DomainSamples {
  std::vector<Value> bits{Value::of_bit(0), Value::of_bit(1)};
  std::vector<Value> streams;
  std::vector<Value> nats;
};

// All canonical words u(v) with |u| <= maxPrefix, |v| <= maxPeriod, without repeats.
std::vector<EpWord> ep_grid(std::size_t maxPrefix, std::size_t maxPeriod);
DomainSamples canonical_samples(std::size_t maxPrefix, std::size_t maxPeriod);
// z_w and o_w for |w| <= maxWord together with eight streams.
DomainSamples hidden_samples(std::size_t maxWord = 4);
std::vector<EpWord> stream_samples();

std::vector<Assignment> assignment_grid(const Equation& eq, const DomainSamples& samples);

enum class Comparison { Exact, Behavioral };

struct EquationCheck {
  enum class Verdict { AllHold, Fails, Unknown } verdict = Verdict::AllHold;
  Assignment at;  // failing or first undetermined assignment
  std::optional<Value> lhs;
  std::optional<Value> rhs;
  std::size_t checked = 0;
  std::size_t unknown = 0;
};

EquationCheck check_equation(const StreamAlgebra& alg, const Equation& eq, const std::vector<Assignment>& assignments,
                             Comparison cmp = Comparison::Exact);

struct EquationReport {
  std::string equation;
  EquationCheck result;
};

struct SatisfactionReport {
  std::string model;
  std::vector<EquationReport> equations;

  bool all_hold() const;
  std::string to_text() const;
  std::string to_json() const;
};

SatisfactionReport behaviorally_satisfies(const StreamAlgebra& alg, const Specification& spec,
                                          const DomainSamples& samples);
SatisfactionReport check_model(const StreamAlgebra& alg, const Specification& spec, const DomainSamples& samples,
                               Comparison cmp);

struct CongruenceViolation {
  std::string symbol;
  std::size_t argIndex = 0;
  Value first;   // e1 ≡ e2 ...
  Value second;
  Value result1;  // ... but f(.., e1, ..) and f(.., e2, ..) differ
  Value result2;
  std::vector<Value> args;
  std::string to_text() const;
};

struct QuotientResult {
  std::optional<CongruenceViolation> violation;
  std::optional<StreamAlgebra> quotient;
};

// Checks that every operation of spec respects behavioral equivalence on the
// samples, and if so returns the algebra of observations.
QuotientResult quotient_by_equiv(const StreamAlgebra& alg, const Specification& spec, const DomainSamples& samples);

// Which of the nine element-kind combinations (σ, τ) of the zip equation an
// assignment falls in, numbered 1..9.
int zip_case(const HiddenElem& sigma, const HiddenElem& tau);

}  // namespace streamspec
