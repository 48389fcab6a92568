#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streamspec {

// Finite word over {0,1}, stored as the characters '0' and '1'.
using Word = std::string;

// Eventually periodic infinite word u v v v ..., kept canonical: the period is
// primitive and the prefix is as short as possible, so == is word equality.
class EpWord {
 public:
  EpWord() : period_("0") {}
  EpWord(Word prefix, Word period);

  static EpWord constant(int bit) { return EpWord("", bit ? "1" : "0"); }
  // "u(v)", e.g. "110(10)"; "(01)" for an empty prefix.
  static EpWord parse(std::string_view text);

  // Builds the word emitted by a deterministic finite-state generator.
  // step(state) returns {bit, next state}; State needs operator<.
  template <class State, class Step>
  static EpWord unfold(State start, Step step);

  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }

  int head() const { return at(0); }
  EpWord tail() const;
  int at(std::uint64_t index) const;
  Word take(std::size_t n) const;
  // Canonical position: indices past the prefix are reduced modulo the period.
  std::uint64_t normalize(std::uint64_t index) const;
  // Number of positions after which every suffix has already appeared.
  std::uint64_t horizon() const { return prefix_.size() + period_.size(); }

  std::string to_string() const { return prefix_ + "(" + period_ + ")"; }

  friend bool operator==(const EpWord&, const EpWord&) = default;
  friend auto operator<=>(const EpWord& a, const EpWord& b) {
    if (auto c = a.prefix_ <=> b.prefix_; c != 0) return c;
    return a.period_ <=> b.period_;
  }
  std::size_t hash() const;

 private:
  Word prefix_;
  Word period_;
};

EpWord cons(int bit, const EpWord& w);
EpWord zip2(const EpWord& a, const EpWord& b);
// zip_1(w) = w, zip_k(w1..wk) = zip2(w1, zip_{k-1}(w2..wk)).
EpWord zip_k(const std::vector<EpWord>& words);

// Stream functions of the corpus, evaluated exactly.
EpWord inv_sem(const EpWord& w);
EpWord dup_sem(const EpWord& w);
EpWord even_sem(const EpWord& w);
EpWord nxor_sem(const EpWord& w);
EpWord is_zeros_sem(const EpWord& w);
EpWord uhd_sem(const EpWord& w);
EpWord utl_sem(const EpWord& w);
EpWord natstr_sem(const EpWord& w);
EpWord nat_sem(const EpWord& w);
EpWord leq_sem(const EpWord& a, const EpWord& b);
// 1^n 0^ω
EpWord unary_word(std::uint64_t n);
// Length of the leading run of 1s; nullopt for 1^ω.
std::optional<std::uint64_t> leading_ones(const EpWord& w);

// ---------------------------------------------------------------------------

template <class State, class Step>
EpWord EpWord::unfold(State start, Step step) {
  std::map<State, std::size_t> seen;
  Word bits;
  State s = std::move(start);
  while (true) {
    auto [it, fresh] = seen.emplace(s, bits.size());
    if (!fresh) return EpWord(bits.substr(0, it->second), bits.substr(it->second));
    auto [bit, next] = step(s);
    bits.push_back(bit ? '1' : '0');
    s = std::move(next);
  }
}

}  // namespace streamspec
