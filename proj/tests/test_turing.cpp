#include <doctest.h>

#include <map>
#include <random>

#include "streamspec/checks.hpp"
#include "streamspec/corpus.hpp"
#include "streamspec/turing.hpp"

using namespace streamspec;

namespace {

TuringMachine machine(const char* name) { return parse_tm(corpus_text(std::string("machines/") + name)); }

// Plain simulator on a sparse tape, written from the definitions alone.
// Supports one input and at most one oracle.
DirectRun reference_run(const TuringMachine& m, std::uint64_t n, const std::optional<EpWord>& oracle,
                        std::uint64_t maxSteps) {
  std::map<std::int64_t, int> tape;
  auto cell = [&](std::int64_t p) -> int {
    if (auto it = tape.find(p); it != tape.end()) return it->second;
    if (p < 0) return oracle ? oracle->at(static_cast<std::uint64_t>(-p - 1)) : 0;
    if (p == 0) return 1;
    if (p % 2 == 1) return static_cast<std::uint64_t>(p / 2) < n ? 1 : 0;
    return 0;
  };
  std::string q = m.initial;
  std::int64_t pos = 0;
  for (std::uint64_t step = 0; step < maxSteps; ++step) {
    auto it = m.delta.find({q, cell(pos)});
    if (it == m.delta.end()) return {true, cell(pos), step};
    tape[pos] = it->second.write;
    pos += it->second.move == Move::R ? 1 : -1;
    q = it->second.next;
  }
  auto it = m.delta.find({q, cell(pos)});
  if (it == m.delta.end()) return {true, cell(pos), maxSteps};
  return {false, 0, maxSteps};
}

TuringMachine random_machine(std::mt19937_64& rng, int nStates) {
  TuringMachine m;
  for (int i = 0; i < nStates; ++i) m.states.push_back("s" + std::to_string(i));
  m.initial = "s0";
  for (const auto& q : m.states)
    for (int b : {0, 1})
      if (rng() % 5 != 0)
        m.delta[{q, b}] = {m.states[rng() % nStates], static_cast<int>(rng() & 1), rng() & 1 ? Move::R : Move::L};
  return m;
}

}  // namespace

TEST_CASE("machine files round-trip") {
  for (const auto& p : corpus_paths("machines")) {
    auto parsed = parse_machine(corpus_text(p));
    if (auto* tm = std::get_if<TuringMachine>(&parsed)) {
      TuringMachine again = parse_tm(print_machine(*tm));
      CHECK(again.delta == tm->delta);
      CHECK(again.initial == tm->initial);
      CHECK(again.states == tm->states);
    } else {
      const NTM& n = std::get<NTM>(parsed);
      NTM again = parse_ntm(print_machine(n));
      CHECK(again.delta0 == n.delta0);
      CHECK(again.delta1 == n.delta1);
    }
  }
}

TEST_CASE("malformed machines are rejected") {
  CHECK_THROWS_AS(parse_tm("states: a\ninitial: b\n"), MachineError);
  CHECK_THROWS_AS(parse_tm("states: a\ninitial: a\ndelta: a 0 -> z 1 R\n"), MachineError);
  CHECK_THROWS_AS(parse_tm("states: a\ninitial: a\ndelta: a 2 -> a 1 R\n"), MachineError);
  CHECK_THROWS_AS(parse_tm("states: a\ninitial: a\ndelta: a 0 -> a 1 X\n"), MachineError);
  // partial nondeterministic tables
  CHECK_THROWS_AS(parse_ntm("states: a\ninitial: a\ndelta0: a 0 -> a 1 R\n"), MachineError);
}

TEST_CASE("tape layout") {
  CHECK(input_tape({2}).take(8) == "11010000");
  CHECK(input_tape({0}).take(4) == "1000");
  // k = 2: zip2(unary 2, zip2(n1, n2))
  CHECK(input_tape({1, 2}).take(9) == "111100010");
  CHECK(oracle_tape({}) == EpWord::constant(0));
  CHECK(oracle_tape({EpWord::parse("(10)")}) == EpWord::parse("(10)"));
  CHECK(oracle_tape({EpWord::constant(0), EpWord::constant(1)}) == EpWord::parse("(01)"));
}

TEST_CASE("hand-computed runs") {
  auto halt = run_direct(machine("halt_one.tm"), {7}, {}, 100);
  CHECK(halt.halted);
  CHECK(halt.output == 1);
  CHECK(halt.steps == 0);

  for (std::uint64_t n = 0; n < 10; ++n) {
    auto r = run_direct(machine("parity.tm"), {n}, {}, 2000);
    REQUIRE(r.halted);
    CHECK(r.output == static_cast<int>(n % 2));
  }

  for (std::uint64_t n = 0; n < 6; ++n) {
    auto r = run_direct(machine("halts_below_3.tm"), {n}, {}, 500);
    CHECK(r.halted == (n < 3));
    if (n < 3) CHECK(r.steps == 5);
    else CHECK(r.steps == 500);
  }

  EpWord xi = EpWord::parse("01(1)");
  CHECK(run_direct(machine("oracle_reader.tm"), {0}, {xi}, 500).output == 0);
  CHECK(run_direct(machine("oracle_reader.tm"), {4}, {xi}, 500).output == 1);

  auto inv = run_direct(machine("invert_oracle.tm"), {0}, {EpWord::parse("(1)")}, 50);
  CHECK(inv.halted);
  CHECK(inv.output == 0);
  CHECK(inv.steps == 3);
}

TEST_CASE("direct runs agree with a sparse-tape simulator") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    TuringMachine m = random_machine(rng, 2 + static_cast<int>(rng() % 3));
    std::uint64_t n = rng() % 5;
    std::optional<EpWord> oracle;
    if (rng() & 1) oracle = random_epword(rng, 3, 3);
    auto got = run_direct(m, {n}, oracle ? std::vector<EpWord>{*oracle} : std::vector<EpWord>{}, 300);
    auto want = reference_run(m, n, oracle, 300);
    REQUIRE(got.halted == want.halted);
    CHECK(got.steps == want.steps);
    if (want.halted) CHECK(got.output == want.output);
  }
}

TEST_CASE("rewriting simulates the machine") {
  for (const char* name : {"halt_one.tm", "parity.tm", "halts_below_3.tm", "invert_oracle.tm", "oracle_reader.tm"}) {
    CheckTally t = crosscheck_machine(machine(name), name, {0, 1, 2, 3, 5},
                                      {{}, {EpWord::constant(0)}, {EpWord::parse("(10)")}, {EpWord::constant(1)}});
    CHECK_MESSAGE(t.ok(), t.summary());
  }
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    TuringMachine m = random_machine(rng, 3);
    CheckTally t = crosscheck_machine(m, "random", {0, 2}, {{random_epword(rng, 2, 3)}}, 200);
    CHECK_MESSAGE(t.ok(), t.summary());
  }
}

TEST_CASE("compiled system shape") {
  TuringMachine tiny = machine("tiny.tm");
  Specification s = compile_tmes(tiny);
  CHECK(s.find("q0") != nullptr);
  CHECK(s.find("zip2") != nullptr);
  // two states times two bits, plus zeros and zip rules
  CHECK(s.equations.size() >= 4);
  Specification again = parse_spec(print_spec(s));
  CHECK(again == s);
  auto r = run_via_rewriting(machine("halts_below_3.tm"), {4}, {}, {20000});
  CHECK_FALSE(r.output.has_value());
  CHECK(r.reason == Unresolved::Budget);
}

TEST_CASE("nondeterministic runs") {
  NTM m = parse_ntm(corpus_text("machines/tiny_ntm.tm"));
  // always delta1 from q0 on 0: stay in q0 and move right
  RunReport r = run_ntm(m, EpWord::constant(0), EpWord::constant(1), 20, 3);
  CHECK(r.stepsTaken == 20);
  CHECK_FALSE(r.stuck);
  CHECK(r.positions.size() == 20);
  for (std::size_t i = 0; i < r.positions.size(); ++i) CHECK(r.positions[i] == static_cast<std::int64_t>(i));
  CHECK(r.completeUpTo == 19);
  CHECK_FALSE(r.oscillation.has_value());

  // right on 0, left on 1
  NTM bounce = parse_ntm(R"(states: a
initial: a
delta0: a 0 -> a 0 R
delta0: a 1 -> a 1 R
delta1: a 0 -> a 0 L
delta1: a 1 -> a 1 L
)");
  RunReport o = run_ntm(bounce, EpWord::constant(0), EpWord::parse("(01)"), 40, 5);
  REQUIRE(o.oscillation.has_value());
  CHECK(*o.oscillation <= 2);
  CHECK(o.completeUpTo == 1);
  for (std::size_t i = 0; i + 1 < o.minPositionAfter.size(); ++i) CHECK(o.minPositionAfter[i] <= o.minPositionAfter[i + 1]);

  // delta1 on q0 1 moves left from position 0
  RunReport s = run_ntm(m, EpWord::constant(1), EpWord::constant(1), 10);
  CHECK(s.stuck);
}
