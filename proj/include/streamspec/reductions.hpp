#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "streamspec/ep_word.hpp"
#include "streamspec/rewrite.hpp"
#include "streamspec/spec.hpp"
#include "streamspec/turing.hpp"

namespace streamspec {

using Relation = std::function<bool(std::uint64_t, std::uint64_t)>;

// Machine reading n and m from the standard two-input tape and halting with
// pred(n, m). Inputs above bound are answered with 0.
TuringMachine relation_decider(const Relation& pred, std::uint64_t bound);

// Well-foundedness reduction: S = is_zeros(run(1, X)) with X constrained to
// encode a stream of naturals; run unfolds one related pair per element.
Specification compile_wf_spec(const TuringMachine& m);

// Full-model reduction for an analytical formula with n (even) set
// quantifiers and parameter a. The Skolem symbols g2..gn and h2 are declared
// without equations.
Specification compile_full_spec(const TuringMachine& m, int n, std::uint64_t a);

// Inversion example and nxor/blink example of unions of specifications.
std::pair<Specification, Specification> compile_union_demo();

// Well-foundedness reduction for streams of naturals in run-length encoding.
Specification compile_confusion_spec(const TuringMachine& m);

// Stream 1^{n0} 0 1^{n1} 0 ... as an eventually periodic word: the chain
// prefix followed by a repeated cycle.
EpWord encode_chain(const std::vector<std::uint64_t>& prefix, const std::vector<std::uint64_t>& cycle);
// First count naturals encoded by X; nullopt when X runs out of zeros.
std::optional<std::vector<std::uint64_t>> decode_chain(const EpWord& x, std::size_t count);

struct ProbeResult {
  enum class Verdict { WitnessOfChain, ConsistentWithWellFounded, Unknown } verdict = Verdict::Unknown;
  std::vector<std::optional<int>> prefix;
  std::size_t position = 0;  // index of the first 1, or of the first unknown element
  std::string to_text() const;
};

std::string_view verdict_name(ProbeResult::Verdict v);

// Evaluates run(1, X) for the given X.
ProbeResult probe_run(const Specification& wfSpec, const EpWord& x, std::size_t prefixLen, EvalBudget budget);

// run_direct accepts each of the first `pairs` consecutive pairs encoded in x.
bool chain_accepted(const TuringMachine& m, const EpWord& x, std::size_t pairs, std::uint64_t maxSteps = 100000);

struct FullProbe {
  std::vector<EpWord> taus;  // assignments of tau1, tau3, ..
  std::map<std::string, TrialFunction> trials;  // g2.., h2
};

// Evaluates the right-hand side of the first S equation under trial
// interpretations of the Skolem symbols.
std::vector<std::optional<int>> probe_full(const Specification& fullSpec, int n, const FullProbe& probe,
                                           std::size_t prefixLen, EvalBudget budget);

}  // namespace streamspec
