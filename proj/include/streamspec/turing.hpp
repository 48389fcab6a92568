#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "streamspec/ep_word.hpp"
#include "streamspec/rewrite.hpp"
#include "streamspec/spec.hpp"

namespace streamspec {

enum class Move : std::uint8_t { L, R };

struct Transition {
  std::string next;
  int write = 0;
  Move move = Move::R;
  bool operator==(const Transition&) const = default;
};

using StateBit = std::pair<std::string, int>;
using DeltaTable = std::map<StateBit, Transition>;

// Deterministic machine over {0,1} with blank 0. A missing entry in delta
// halts the machine; the output is the bit under the head.
struct TuringMachine {
  std::vector<std::string> states;
  std::string initial;
  DeltaTable delta;

  // Throws MachineError on unknown states or a missing initial state.
  void validate() const;
};

// Nondeterministic machine: a choice bit selects delta0 or delta1, both total.
struct NTM {
  std::vector<std::string> states;
  std::string initial;
  DeltaTable delta0;
  DeltaTable delta1;

  void validate() const;
  const DeltaTable& delta(int choice) const { return choice ? delta1 : delta0; }
};

class MachineError : public std::runtime_error {
 public:
  MachineError(std::string message, int line = 0)
      : std::runtime_error(line ? std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// "states:", "initial:", "delta:" (or "delta0:"/"delta1:") lines; '#' comments.
std::variant<TuringMachine, NTM> parse_machine(std::string_view text);
TuringMachine parse_tm(std::string_view text);
NTM parse_ntm(std::string_view text);
std::string print_machine(const TuringMachine& m);
std::string print_machine(const NTM& m);

struct DirectRun {
  bool halted = false;
  int output = 0;           // bit read in the halting configuration
  std::uint64_t steps = 0;  // transitions taken (maxSteps when still running)
};

// Runs m from state with the given half tapes. The left tape lists the cells
// to the left of the head, nearest first; the right tape starts under the head.
DirectRun run_from(const TuringMachine& m, const std::string& state, const EpWord& left, const EpWord& right,
                   std::uint64_t maxSteps);

// Standard start: left tape zip_m(oracles) (zeros without oracles), right tape
// zip_{k+1}(k, n1, ..., nk) with unary inputs.
EpWord input_tape(const std::vector<std::uint64_t>& inputs);
EpWord oracle_tape(const std::vector<EpWord>& oracles);
DirectRun run_direct(const TuringMachine& m, const std::vector<std::uint64_t>& inputs,
                     const std::vector<EpWord>& oracles, std::uint64_t maxSteps);

struct TmesOptions {
  int maxZip = 2;  // include zip1 .. zipN
};

// zeros, zip equations, then for every state and bit an R-, L- or halting rule.
Specification compile_tmes(const TuringMachine& m, TmesOptions opts = {});
// Start term q0(zip_m(oracles), zip_{k+1}(k, n1..nk)); zeros replaces an empty oracle list.
Term init_term(const TuringMachine& m, const std::vector<Term>& inputs, const std::vector<Term>& oracles);
Term zip_term(const std::vector<Term>& streams);

struct RewriteRun {
  std::optional<int> output;
  std::uint64_t transitions = 0;  // applications of move rules
  std::uint64_t totalSteps = 0;
  Unresolved reason = Unresolved::None;
};

RewriteRun run_via_rewriting(const TuringMachine& m, const std::vector<std::uint64_t>& inputs,
                             const std::vector<EpWord>& oracles, EvalBudget budget);

// q(x, b : y, i : z, p) with position counter p.
Specification compile_tmesn(const NTM& m);

struct RunReport {
  std::uint64_t stepsTaken = 0;
  std::optional<int> haltedWith;
  bool stuck = false;  // a left move at position 0 was requested
  std::map<std::int64_t, std::uint64_t> visitCounts;
  std::vector<std::int64_t> positions;  // head position at the start of each step
  std::vector<std::int64_t> minPositionAfter;  // leftmost position at or after each step
  std::int64_t completeUpTo = -1;  // every position 0..completeUpTo was visited
  std::optional<std::int64_t> oscillation;  // a position visited more than the threshold
};

// Right tape w, choices select the delta at each step.
RunReport run_ntm(const NTM& m, const EpWord& w, const EpWord& choices, std::uint64_t maxSteps,
                  std::uint64_t threshold = 10);

// Five-argument system whose models encode the fair, complete runs of m.
Specification compile_solutions_spec(const NTM& m);

}  // namespace streamspec
