#include <doctest.h>

#include <random>

#include "streamspec/corpus.hpp"
#include "streamspec/reductions.hpp"

using namespace streamspec;

namespace {

TuringMachine machine(const char* name) { return parse_tm(corpus_text(std::string("machines/") + name)); }
NTM ntm(const char* name) { return parse_ntm(corpus_text(std::string("machines/") + name)); }

// run(1, X) read off the chain: 0 first, then 0 while every pair so far is related.
std::string expected_run(const Relation& r, const std::vector<std::uint64_t>& chain, std::size_t len) {
  std::string out = "0";
  bool alive = true;
  for (std::size_t i = 1; i < len; ++i) {
    alive = alive && r(chain[i - 1], chain[i]);
    out += alive ? '0' : '1';
  }
  return out;
}

std::vector<std::uint64_t> unroll(const std::vector<std::uint64_t>& prefix, const std::vector<std::uint64_t>& cycle,
                                  std::size_t n) {
  std::vector<std::uint64_t> out = prefix;
  for (std::size_t i = 0; out.size() < n; ++i) out.push_back(cycle[i % cycle.size()]);
  out.resize(n);
  return out;
}

}  // namespace

TEST_CASE("chain encoding") {
  EpWord x = encode_chain({2, 0}, {1});
  CHECK(x == EpWord::parse("1100(10)"));
  auto d = decode_chain(x, 5);
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<std::uint64_t>{2, 0, 1, 1, 1});
  CHECK_FALSE(decode_chain(EpWord::parse("10(1)"), 3).has_value());
  CHECK_THROWS(encode_chain({1}, {}));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::uint64_t> p(rng() % 4), c(1 + rng() % 3);
    for (auto& v : p) v = rng() % 5;
    for (auto& v : c) v = rng() % 5;
    auto back = decode_chain(encode_chain(p, c), 10);
    REQUIRE(back.has_value());
    CHECK(*back == unroll(p, c, 10));
  }
}

TEST_CASE("relation deciders decide their relation") {
  std::vector<Relation> rels = {
      [](std::uint64_t n, std::uint64_t m) { return m < n; },
      [](std::uint64_t n, std::uint64_t m) { return n == m; },
      [](std::uint64_t n, std::uint64_t m) { return (n + m) % 2 == 1; },
      [](std::uint64_t, std::uint64_t) { return false; },
  };
  for (const auto& r : rels) {
    TuringMachine m = relation_decider(r, 6);
    for (std::uint64_t a = 0; a <= 8; ++a)
      for (std::uint64_t b = 0; b <= 8; ++b) {
        DirectRun run = run_direct(m, {a, b}, {}, 100000);
        REQUIRE(run.halted);
        CHECK(run.output == ((a <= 6 && b <= 6 && r(a, b)) ? 1 : 0));
      }
  }
}

TEST_CASE("probing the well-foundedness system") {
  Relation lt = [](std::uint64_t n, std::uint64_t m) { return m < n; };
  Relation cyc = [](std::uint64_t n, std::uint64_t m) { return (n == 1 && m == 2) || (n == 2 && m == 1); };
  struct Case {
    Relation r;
    std::vector<std::uint64_t> prefix, cycle;
  };
  std::vector<Case> cases = {
      {lt, {3, 2, 1}, {0}},
      {lt, {}, {0}},
      {cyc, {}, {1, 2}},
      {cyc, {2}, {1, 2}},
      {cyc, {3}, {1, 2}},
  };
  for (const auto& c : cases) {
    TuringMachine m = relation_decider(c.r, 8);
    Specification wf = compile_wf_spec(m);
    EpWord x = encode_chain(c.prefix, c.cycle);
    ProbeResult p = probe_run(wf, x, 6, {2000000});
    std::string want = expected_run(c.r, unroll(c.prefix, c.cycle, 6), 6);
    // the prefix stops at the first 1
    auto one = want.find('1');
    REQUIRE(p.prefix.size() == (one == std::string::npos ? 6 : one + 1));
    for (std::size_t i = 0; i < p.prefix.size(); ++i) {
      REQUIRE(p.prefix[i].has_value());
      CHECK(*p.prefix[i] == want[i] - '0');
    }
    if (one == std::string::npos) {
      CHECK(p.verdict == ProbeResult::Verdict::WitnessOfChain);
    } else {
      CHECK(p.verdict == ProbeResult::Verdict::ConsistentWithWellFounded);
      CHECK(p.position == one);
    }
    CHECK(chain_accepted(m, x, 5) == (one == std::string::npos));
  }
  CHECK(verdict_name(ProbeResult::Verdict::Unknown) == "Unknown");
}

TEST_CASE("state names must not clash") {
  TuringMachine m = parse_tm("states: run\ninitial: run\n");
  CHECK_THROWS_AS(compile_wf_spec(m), MachineError);
  TuringMachine ok = machine("tiny.tm");
  CHECK_THROWS_AS(compile_full_spec(ok, 3, 1), std::invalid_argument);
}

TEST_CASE("generated systems match the golden transcriptions") {
  CHECK(compile_wf_spec(machine("tiny.tm")) == parse_spec(corpus_text("golden/wf_tiny.spec")));
  CHECK(compile_full_spec(machine("tiny.tm"), 2, 1) == parse_spec(corpus_text("golden/full_tiny_n2_a1.spec")));
  CHECK(compile_solutions_spec(ntm("tiny_ntm.tm")) == parse_spec(corpus_text("golden/solutions_tiny_ntm.spec")));
  auto [inv, nxor] = compile_union_demo();
  CHECK(inv == parse_spec(corpus_text("golden/union_inv.spec")));
  CHECK(nxor == parse_spec(corpus_text("golden/union_nxor.spec")));
}

TEST_CASE("generated systems print and parse back") {
  TuringMachine tiny = machine("tiny.tm");
  for (const Specification& s :
       {compile_wf_spec(tiny), compile_full_spec(tiny, 2, 1), compile_full_spec(tiny, 4, 0),
        compile_confusion_spec(tiny), compile_solutions_spec(ntm("tiny_ntm.tm"))})
    CHECK(parse_spec(print_spec(s)) == s);
}

TEST_CASE("union of inversion specifications") {
  auto [inv, nxor] = compile_union_demo();
  Evaluator e(inv);
  CHECK(render_prefix(e.stream_prefix(parse_term(inv, "M"), 4, {1000})) == "1111");
  // N = inv(N) never produces a head
  auto n = e.stream_prefix(parse_term(inv, "N"), 1, {1000});
  CHECK_FALSE(n[0].has_value());
}
