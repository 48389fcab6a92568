#include <doctest.h>

#include <random>

#include "streamspec/checks.hpp"
#include "streamspec/corpus.hpp"
#include "streamspec/rewrite.hpp"

using namespace streamspec;

namespace {

constexpr const char* kLibrary = R"(
sym zeros : S
sym ones : S
sym blink : S
sym zip2 : S x S -> S
sym inv : S -> S
sym even : S -> S
sym dup : S -> S
sym tl : S -> S
eq zeros = 0 : zeros
eq ones = 1 : ones
eq blink = 0 : 1 : blink
eq zip2(x : s, t) = x : zip2(t, s)
eq inv(0 : s) = 1 : inv(s)
eq inv(1 : s) = 0 : inv(s)
eq even(x : y : s) = x : even(s)
eq dup(x : s) = x : x : dup(s)
eq tl(x : s) = s
)";

// Random term together with its meaning as an eventually periodic word.
struct Sample {
  Term term;
  EpWord meaning;
};

Sample random_sample(std::mt19937_64& rng, int depth) {
  const unsigned pick = depth == 0 ? rng() % 3 : rng() % 9;
  auto sub = [&] { return random_sample(rng, depth - 1); };
  switch (pick) {
    case 0: return {Term::constant("zeros", Sort::S), EpWord::constant(0)};
    case 1: return {Term::constant("ones", Sort::S), EpWord::constant(1)};
    case 2: return {Term::constant("blink", Sort::S), EpWord::parse("(01)")};
    case 3: {
      Sample a = sub(), b = sub();
      return {Term::app("zip2", {a.term, b.term}, Sort::S), zip2(a.meaning, b.meaning)};
    }
    case 4: {
      Sample a = sub();
      return {Term::app("inv", {a.term}, Sort::S), inv_sem(a.meaning)};
    }
    case 5: {
      Sample a = sub();
      return {Term::app("even", {a.term}, Sort::S), even_sem(a.meaning)};
    }
    case 6: {
      Sample a = sub();
      return {Term::app("dup", {a.term}, Sort::S), dup_sem(a.meaning)};
    }
    case 7: {
      Sample a = sub();
      return {Term::app("tl", {a.term}, Sort::S), a.meaning.tail()};
    }
    default: {
      Sample a = sub();
      int b = static_cast<int>(rng() & 1);
      return {Term::cons(Term::bit(b), a.term), cons(b, a.meaning)};
    }
  }
}

}  // namespace

TEST_CASE("zip of constants is blink") {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"));
  Evaluator e(spec);
  CHECK(render_prefix(e.stream_prefix(parse_term(spec, "zip2(zeros, ones)"), 12, {1000})) == "010101010101");
  auto r = prefix_equal(spec, parse_term(spec, "zip2(zeros, ones)"), spec, parse_term(spec, "blink"), 64, {1000});
  CHECK(r.kind == PrefixComparison::Kind::Equal);
  auto d = prefix_equal(spec, parse_term(spec, "zip2(ones, zeros)"), spec, parse_term(spec, "blink"), 8, {1000});
  CHECK(d.kind == PrefixComparison::Kind::Diff);
  CHECK(d.index == 0);
}

TEST_CASE("evaluation agrees with the word semantics") {
  Specification spec = parse_spec(kLibrary);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    Sample s = random_sample(rng, 4);
    Evaluator e(spec);
    auto bits = e.stream_prefix(s.term, 24, {200000});
    for (std::size_t k = 0; k < bits.size(); ++k) {
      REQUIRE_MESSAGE(bits[k].has_value(), to_string(s.term));
      REQUIRE_MESSAGE(*bits[k] == s.meaning.at(k), to_string(s.term));
    }
  }
}

TEST_CASE("evaluation is lazy") {
  Specification spec = parse_spec(R"(
sym loop : S
sym tl : S -> S
sym hd : S -> B
eq loop = tl(loop)
eq tl(x : s) = s
eq hd(x : s) = x
)");
  Evaluator e(spec);
  // the tail is never demanded
  CHECK(e.eval_bit(parse_term(spec, "hd(1 : loop)"), {100}).bit == 1);
  auto out = e.eval_bit(parse_term(spec, "hd(loop)"), {500});
  CHECK_FALSE(out.got());
  CHECK((out.reason == Unresolved::Budget || out.reason == Unresolved::Depth));
}

TEST_CASE("stuck terms and constraints") {
  Specification spec = parse_spec(corpus_text("specs/ones_f.spec"));
  Evaluator e(spec);
  CHECK(render_prefix(e.stream_prefix(parse_term(spec, "f(ones)"), 4, {100})) == "1111");
  Specification zd = parse_spec(corpus_text("specs/zip_dup.spec"));
  Evaluator z(zd);
  auto out = z.stream_prefix_detailed(parse_term(zd, "M"), 2, {100});
  CHECK_FALSE(out[0].got());
  CHECK(out[0].reason == Unresolved::Stuck);
}

TEST_CASE("bound streams and trial functions") {
  Specification spec = parse_spec(corpus_text("specs/zip_dup.spec"));
  Evaluator e(spec);
  EpWord x = EpWord::parse("1(100)");
  e.bind_stream(ExternalStream::of("X", x));
  auto m = e.stream_prefix(parse_term(spec, "M"), 20, {10000});
  auto n = e.stream_prefix(parse_term(spec, "N"), 20, {10000});
  CHECK(render_prefix(m) == dup_sem(x).take(20));
  CHECK(m == n);

  // an undeclared name can be bound as well
  e.bind_stream(ExternalStream::of("#other", EpWord::constant(1)));
  CHECK(render_prefix(e.stream_prefix(Term::app("dup", {Term::constant("#other", Sort::S)}, Sort::S), 4, {100})) ==
        "1111");

  Specification g = parse_spec("sym zeros : S\nsym g : S -> S\neq zeros = 0 : zeros\n");
  Evaluator ge(g);
  // g(s)(i) = 1 - s(i)
  ge.bind_function("g", [](std::span<const LazyStream> args, std::uint64_t i) -> std::optional<int> {
    auto b = args[0].bit(i);
    return b ? std::optional<int>(1 - *b) : std::nullopt;
  });
  CHECK(render_prefix(ge.stream_prefix(parse_term(g, "g(0 : 1 : zeros)"), 5, {1000})) == "10111");
}

TEST_CASE("rule counts") {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"));
  Evaluator e(spec);
  e.stream_prefix(parse_term(spec, "blink"), 4, {100});
  CHECK(e.rule_counts()[2] >= 2);
  e.reset_counts();
  CHECK(e.rule_counts()[2] == 0);
}

TEST_CASE("non-ground terms are rejected") {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"));
  Evaluator e(spec);
  CHECK_THROWS_AS(e.stream_prefix(Term::var("s", Sort::S), 2, {10}), NonGroundTerm);
}

TEST_CASE("engine invariants over the corpus") {
  std::vector<Specification> specs;
  for (const auto& p : corpus_paths("specs")) specs.push_back(parse_spec(corpus_text(p), p));
  specs.push_back(parse_spec(kLibrary, "library"));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CheckTally t = check_engine_properties(specs, 200, seed);
    CHECK(t.cases == 200);
    CHECK_MESSAGE(t.ok(), t.summary());
  }
}

TEST_CASE("budget monotonicity on a slow producer") {
  Specification spec = parse_spec(kLibrary);
  Term t = parse_term(spec, "even(even(even(dup(dup(dup(blink))))))");
  std::optional<std::vector<std::optional<int>>> last;
  for (std::uint64_t b : {5u, 20u, 80u, 320u, 5000u}) {
    Evaluator e(spec);
    auto bits = e.stream_prefix(t, 8, {b});
    if (last)
      for (std::size_t i = 0; i < 8; ++i)
        if ((*last)[i]) CHECK(bits[i] == (*last)[i]);
    last = bits;
  }
  CHECK(render_prefix(*last) == "01010101");
}
