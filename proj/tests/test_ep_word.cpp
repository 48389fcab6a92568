#include <doctest.h>

#include <random>

#include "streamspec/checks.hpp"
#include "streamspec/ep_word.hpp"

using namespace streamspec;

namespace {

std::vector<EpWord> random_words(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<EpWord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_epword(rng, 6, 5));
  return out;
}

// Positions enough to see every suffix of both words in step.
std::uint64_t span(const EpWord& w) { return 2 * (w.prefix().size() + 2 * w.period().size()) + 8; }

}  // namespace

TEST_CASE("canonical form") {
  CHECK(EpWord::parse("0(00)").to_string() == "(0)");
  CHECK(EpWord::parse("01(01)").to_string() == "(01)");
  CHECK(EpWord::parse("110(10)").to_string() == "1(10)");
  CHECK(EpWord::parse("(0101)") == EpWord::parse("(01)"));
  CHECK(EpWord::parse("1(0)") != EpWord::parse("(10)"));
  CHECK_THROWS(EpWord::parse("01"));
  CHECK_THROWS(EpWord::parse("0()"));
  CHECK_THROWS(EpWord::parse("(02)"));
}

TEST_CASE("canonicalization preserves every bit") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Word u, v;
    for (std::size_t j = rng() % 6; j > 0; --j) u += rng() & 1 ? '1' : '0';
    for (std::size_t j = 1 + rng() % 5; j > 0; --j) v += rng() & 1 ? '1' : '0';
    EpWord w(u, v);
    for (std::uint64_t k = 0; k < 40; ++k) {
      int expected = k < u.size() ? u[k] - '0' : v[(k - u.size()) % v.size()] - '0';
      REQUIRE(w.at(k) == expected);
    }
    CHECK(w.horizon() <= u.size() + v.size());
  }
}

TEST_CASE("head, tail, take and normalize") {
  EpWord w = EpWord::parse("110(10)");
  CHECK(w.head() == 1);
  CHECK(w.take(9) == "110101010");
  CHECK(w.tail().to_string() == "(10)");
  CHECK(cons(0, w).take(4) == "0110");
  // canonical form is 1(10)
  CHECK(w.normalize(3) == 1);
  CHECK(w.normalize(5) == 1);
  CHECK(w.normalize(6) == 2);
}

TEST_CASE("unfold finds the cycle of a generator") {
  // counter mod 3 emitting 1 at 0
  EpWord w = EpWord::unfold(0, [](int s) { return std::pair{s == 0 ? 1 : 0, (s + 1) % 3}; });
  CHECK(w.to_string() == "(100)");
  EpWord v = EpWord::unfold(5, [](int s) { return std::pair{s % 2, s > 0 ? s - 1 : 0}; });
  CHECK(v.to_string() == "10101(0)");
}

TEST_CASE("stream functions against index definitions") {
  for (const auto& w : random_words(17, 200)) {
    EpWord i = inv_sem(w), d = dup_sem(w), e = even_sem(w), x = nxor_sem(w);
    for (std::uint64_t k = 0; k < span(w); ++k) {
      REQUIRE(i.at(k) == 1 - w.at(k));
      REQUIRE(d.at(2 * k) == w.at(k));
      REQUIRE(d.at(2 * k + 1) == w.at(k));
      REQUIRE(e.at(k) == w.at(2 * k));
      REQUIRE(x.at(k) == (w.at(2 * k) == w.at(2 * k + 1) ? 1 : 0));
    }
  }
}

TEST_CASE("zip2 interleaves") {
  auto ws = random_words(23, 100);
  for (std::size_t j = 0; j + 1 < ws.size(); j += 2) {
    EpWord z = zip2(ws[j], ws[j + 1]);
    for (std::uint64_t k = 0; k < span(ws[j]) + span(ws[j + 1]); ++k) {
      REQUIRE(z.at(2 * k) == ws[j].at(k));
      REQUIRE(z.at(2 * k + 1) == ws[j + 1].at(k));
    }
  }
  CHECK(zip2(EpWord::constant(0), EpWord::constant(1)) == EpWord::parse("(01)"));
}

TEST_CASE("zip law and auxiliary lemmas via the shared checks") {
  auto ws = random_words(29, 60);
  CheckTally t;
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t j = 0; j + k <= ws.size(); j += k)
      t.merge(check_zip_law(std::vector<EpWord>(ws.begin() + j, ws.begin() + j + k), 40));
  t.merge(check_aux_lemmas(ws));
  CHECK_MESSAGE(t.ok(), t.summary());
}

TEST_CASE("unary helpers") {
  CHECK(unary_word(3).to_string() == "111(0)");
  CHECK(leading_ones(EpWord::parse("1101(1)")) == 2u);
  CHECK_FALSE(leading_ones(EpWord::constant(1)).has_value());
  CHECK(uhd_sem(EpWord::parse("1110100(1)")).to_string() == "111(0)");
  CHECK(utl_sem(EpWord::parse("1110100(1)")).to_string() == "100(1)");
  CHECK(natstr_sem(EpWord::parse("0(1)")).to_string() == "1(0)");
  CHECK(natstr_sem(EpWord::parse("(10)")) == EpWord::constant(1));
  CHECK(nat_sem(EpWord::parse("11(0)")) == EpWord::constant(1));
  CHECK(nat_sem(EpWord::parse("101(0)")) == EpWord::constant(0));
  CHECK(leq_sem(EpWord::parse("(01)"), EpWord::parse("(11)")) == EpWord::constant(1));
  CHECK(leq_sem(EpWord::parse("(11)"), EpWord::parse("1(01)")) == EpWord::constant(0));
}

TEST_CASE("zip_k of one stream is the stream") {
  for (const auto& w : random_words(31, 20)) CHECK(zip_k({w}) == w);
}
