#include <doctest.h>

#include <numeric>
#include <set>

#include "streamspec/corpus.hpp"
#include "streamspec/models.hpp"

using namespace streamspec;
using K = HiddenElem::Kind;

namespace {

// a u1 ⋈ u2 = a (u2 ⋈ u1) on finite words, literally.
std::string join_ref(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  return a.substr(0, 1) + join_ref(b, a.substr(1));
}

int emb_bit(const HiddenElem& e, std::uint64_t k) {
  switch (e.kind) {
    case K::Z: return k < e.word.size() ? e.word[k] - '0' : 0;
    case K::O: return k < e.word.size() ? e.word[k] - '0' : 1;
    default: return e.stream.at(k);
  }
}

// Bit k of the counterexample zip, from the case table.
int zip_bit(const HiddenElem& x, const HiddenElem& y, std::uint64_t k) {
  const bool zo = x.kind == K::Z && y.kind == K::O && x.word.size() == y.word.size();
  const bool oz = x.kind == K::O && y.kind == K::Z && x.word.size() == y.word.size() + 1;
  if (zo || oz) {
    std::string j = join_ref(x.word, y.word);
    return k < j.size() ? j[k] - '0' : 0;
  }
  return k % 2 == 0 ? emb_bit(x, k / 2) : emb_bit(y, k / 2);
}

Value stream(const char* w) { return Value::of_stream(EpWord::parse(w)); }

}  // namespace

TEST_CASE("join of finite and infinite words") {
  CHECK(join(Word("01"), Word("1")) == "011");
  CHECK(join(Word(""), Word("101")) == "101");
  CHECK(join(Word("111"), Word("0")) == "1011");
  for (const char* a : {"", "0", "10", "110", "0101"})
    for (const char* b : {"", "1", "00", "011"}) CHECK(join(Word(a), Word(b)) == join_ref(a, b));
  FinOrInf inf = join(FinOrInf{Word("10")}, FinOrInf{EpWord::constant(1)});
  REQUIRE(std::holds_alternative<EpWord>(inf));
  CHECK(std::get<EpWord>(inf).take(6) == "110111");
}

TEST_CASE("embedding and observation") {
  CHECK(emb(HiddenElem::z("01")).to_string() == "01(0)");
  CHECK(emb(HiddenElem::o("")).to_string() == "(1)");
  StreamAlgebra alg = counterexample_model();
  CHECK(alg.observe(HiddenElem::z("1")) == EpWord::parse("1(0)"));
  CHECK(alg.observe(HiddenElem::o("")) == EpWord::constant(1));
  CHECK(behavioral_equiv(alg, Value::of_elem(HiddenElem::z("")), stream("(0)")));
  CHECK_FALSE(behavioral_equiv(alg, Value::of_elem(HiddenElem::z("")), Value::of_elem(HiddenElem::o(""))));
}

TEST_CASE("hidden observers and constructor") {
  StreamAlgebra alg = counterexample_model();
  Value b1 = Value::of_bit(1);
  Value z = Value::of_elem(HiddenElem::z(""));
  Value z10 = Value::of_elem(HiddenElem::z("10"));
  std::vector<Value> consArgs{b1, z};
  CHECK(alg.apply(":", consArgs)->elem == HiddenElem::z("1"));
  std::vector<Value> one{z};
  CHECK(alg.apply("#tail", one)->elem == HiddenElem::z(""));
  CHECK(alg.apply("#head", one)->bit == 0);
  std::vector<Value> two{z10};
  CHECK(alg.apply("#head", two)->bit == 1);
  CHECK(alg.apply("#tail", two)->elem == HiddenElem::z("0"));
}

TEST_CASE("counterexample zip follows its case table") {
  StreamAlgebra alg = counterexample_model();
  DomainSamples s = hidden_samples(3);
  std::set<int> cases;
  for (const auto& x : s.streams)
    for (const auto& y : s.streams) {
      std::vector<Value> args{x, y};
      auto r = alg.apply("zip2", args);
      REQUIRE(r.has_value());
      EpWord got = emb(r->elem);
      for (std::uint64_t k = 0; k < 24; ++k) REQUIRE(got.at(k) == zip_bit(x.elem, y.elem, k));
      cases.insert(zip_case(x.elem, y.elem));
    }
  CHECK(cases.size() == 9);
  std::vector<Value> zo{Value::of_elem(HiddenElem::z("")), Value::of_elem(HiddenElem::o(""))};
  CHECK(emb(alg.apply("zip2", zo)->elem) == EpWord::constant(0));
}

TEST_CASE("the counterexample satisfies the equations but not the goal") {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"));
  StreamAlgebra alg = counterexample_model();
  SatisfactionReport rep = behaviorally_satisfies(alg, spec, hidden_samples(3));
  CHECK_MESSAGE(rep.all_hold(), rep.to_text());
  CHECK(rep.equations.size() == spec.equations.size());

  Term goalL = parse_term(spec, "zip2(zeros, ones)");
  Term goalR = parse_term(spec, "blink");
  auto l = alg.eval(goalL, {});
  auto r = alg.eval(goalR, {});
  REQUIRE(l.has_value());
  REQUIRE(r.has_value());
  CHECK_FALSE(behavioral_equiv(alg, *l, *r));

  QuotientResult q = quotient_by_equiv(alg, spec, hidden_samples(2));
  REQUIRE(q.violation.has_value());
  CHECK(q.violation->symbol == "zip2");
  CHECK(behavioral_equiv(alg, q.violation->first, q.violation->second));
  CHECK_FALSE(behavioral_equiv(alg, q.violation->result1, q.violation->result2));
  CHECK_FALSE(q.quotient.has_value());
}

TEST_CASE("the confusion model is a congruence") {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"));
  StreamAlgebra alg = confusion_model();
  QuotientResult q = quotient_by_equiv(alg, spec, hidden_samples(2));
  CHECK_FALSE(q.violation.has_value());
  REQUIRE(q.quotient.has_value());
  auto l = q.quotient->eval(parse_term(spec, "zip2(zeros, ones)"), {});
  auto r = q.quotient->eval(parse_term(spec, "blink"), {});
  REQUIRE(l.has_value());
  REQUIRE(r.has_value());
  CHECK(*l == *r);
}

TEST_CASE("canonical models of the corpus") {
  for (const char* name : {"specs/zip_alt.spec", "specs/even.spec", "specs/leq.spec", "specs/uhd_utl.spec", "specs/natstr.spec"}) {
    if (!corpus_has(name)) continue;
    Specification spec = parse_spec(corpus_text(name), name);
    StreamAlgebra alg;
    try {
      alg = canonical_model(spec);
    } catch (const ModelError& e) {
      const std::string msg = std::string(name) + ": " + e.what();
      FAIL_CHECK(msg);
      continue;
    }
    SatisfactionReport rep = check_model(alg, spec, canonical_samples(2, 2), Comparison::Exact);
    CHECK_MESSAGE(rep.all_hold(), rep.to_text());
  }
  // free stream constants have no fixed meaning
  CHECK_THROWS_AS(canonical_model(parse_spec(corpus_text("specs/zip_dup.spec"))), ModelError);
  CHECK_THROWS_AS(canonical_model(parse_spec("sym mystery : S -> S\n")), ModelError);
}

TEST_CASE("canonical interpretation of a machine state") {
  TuringMachine parity = parse_tm(corpus_text("machines/parity.tm"));
  Specification spec = compile_tmes(parity);
  StreamAlgebra alg = canonical_model(spec, {&parity, {100000}});
  for (std::uint64_t n = 0; n < 5; ++n) {
    std::vector<Value> args{Value::of_stream(EpWord::constant(0)), Value::of_stream(input_tape({n}))};
    auto v = alg.apply("q0", args);
    REQUIRE(v.has_value());
    CHECK(v->bit == static_cast<int>(n % 2));
  }
}

TEST_CASE("grid of eventually periodic words") {
  for (std::size_t p = 0; p <= 3; ++p)
    for (std::size_t q = 1; q <= 3; ++q) {
      // distinct words have distinct 24-bit prefixes at these sizes
      std::set<std::string> seen;
      for (std::size_t lu = 0; lu <= p; ++lu)
        for (std::size_t lv = 1; lv <= q; ++lv)
          for (std::size_t bu = 0; bu < (std::size_t{1} << lu); ++bu)
            for (std::size_t bv = 0; bv < (std::size_t{1} << lv); ++bv) {
              std::string bits;
              for (std::size_t k = 0; k < 24; ++k)
                bits += k < lu ? char('0' + ((bu >> k) & 1)) : char('0' + ((bv >> ((k - lu) % lv)) & 1));
              seen.insert(bits);
            }
      auto grid = ep_grid(p, q);
      CHECK(grid.size() == seen.size());
      std::set<EpWord> unique(grid.begin(), grid.end());
      CHECK(unique.size() == grid.size());
    }
}

TEST_CASE("assignment grid covers every variable") {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"));
  const Equation* zipEq = nullptr;
  for (const auto& e : spec.equations)
    if (e.lhs.name() == "zip2") zipEq = &e;
  REQUIRE(zipEq);
  DomainSamples s = canonical_samples(1, 1);
  auto grid = assignment_grid(*zipEq, s);
  CHECK(grid.size() == s.bits.size() * s.streams.size() * s.streams.size());
  for (const auto& a : grid) CHECK(a.size() == 3);
}
