#include "streamspec/ep_word.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace streamspec {

namespace {

void check_bits(const Word& w) {
  for (char c : w)
    if (c != '0' && c != '1') throw std::invalid_argument("not a bit word: '" + w + "'");
}

Word primitive_root(const Word& v) {
  std::size_t n = v.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = v[i] == v[i - d];
    if (ok) return v.substr(0, d);
  }
  return v;
}

}  // namespace

EpWord::EpWord(Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("empty period");
  check_bits(prefix_);
  check_bits(period_);
  period_ = primitive_root(period_);
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    period_ = period_.back() + period_.substr(0, period_.size() - 1);
    prefix_.pop_back();
  }
}

EpWord EpWord::parse(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw std::invalid_argument("expected u(v), got '" + std::string(text) + "'");
  return EpWord(Word(text.substr(0, open)), Word(text.substr(open + 1, text.size() - open - 2)));
}

EpWord EpWord::tail() const {
  if (!prefix_.empty()) return EpWord(prefix_.substr(1), period_);
  return EpWord("", period_.substr(1) + period_[0]);
}

int EpWord::at(std::uint64_t index) const {
  if (index < prefix_.size()) return prefix_[index] - '0';
  return period_[(index - prefix_.size()) % period_.size()] - '0';
}

Word EpWord::take(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<char>('0' + at(i)));
  return out;
}

std::uint64_t EpWord::normalize(std::uint64_t index) const {
  if (index < prefix_.size()) return index;
  return prefix_.size() + (index - prefix_.size()) % period_.size();
}

std::size_t EpWord::hash() const {
  return std::hash<std::string>{}(prefix_) * 31 + std::hash<std::string>{}(period_);
}

EpWord cons(int bit, const EpWord& w) { return EpWord(Word(1, bit ? '1' : '0') + w.prefix(), w.period()); }

EpWord zip2(const EpWord& a, const EpWord& b) {
  using State = std::tuple<std::uint64_t, std::uint64_t, int>;
  return EpWord::unfold(State{0, 0, 0}, [&](const State& s) {
    auto [i, j, turn] = s;
    if (turn == 0) return std::pair{a.at(i), State{a.normalize(i + 1), j, 1}};
    return std::pair{b.at(j), State{i, b.normalize(j + 1), 0}};
  });
}

EpWord zip_k(const std::vector<EpWord>& words) {
  if (words.empty()) throw std::invalid_argument("zip of no streams");
  EpWord acc = words.back();
  for (std::size_t i = words.size() - 1; i-- > 0;) acc = zip2(words[i], acc);
  return acc;
}

EpWord inv_sem(const EpWord& w) {
  auto flip = [](Word s) {
    for (char& c : s) c = c == '0' ? '1' : '0';
    return s;
  };
  return EpWord(flip(w.prefix()), flip(w.period()));
}

EpWord dup_sem(const EpWord& w) {
  using State = std::pair<std::uint64_t, int>;
  return EpWord::unfold(State{0, 0}, [&](const State& s) {
    auto [i, second] = s;
    return std::pair{w.at(i), second ? State{w.normalize(i + 1), 0} : State{i, 1}};
  });
}

EpWord even_sem(const EpWord& w) {
  return EpWord::unfold(std::uint64_t{0}, [&](std::uint64_t i) {
    return std::pair{w.at(i), w.normalize(w.normalize(i + 1) + 1)};
  });
}

EpWord nxor_sem(const EpWord& w) {
  return EpWord::unfold(std::uint64_t{0}, [&](std::uint64_t i) {
    std::uint64_t j = w.normalize(i + 1);
    return std::pair{w.at(i) == w.at(j) ? 1 : 0, w.normalize(j + 1)};
  });
}

EpWord is_zeros_sem(const EpWord& w) { return EpWord::constant(w == EpWord::constant(0) ? 1 : 0); }

std::optional<std::uint64_t> leading_ones(const EpWord& w) {
  for (std::uint64_t i = 0; i < w.horizon(); ++i)
    if (w.at(i) == 0) return i;
  return std::nullopt;
}

EpWord unary_word(std::uint64_t n) { return EpWord(Word(n, '1'), "0"); }

EpWord uhd_sem(const EpWord& w) {
  auto n = leading_ones(w);
  return n ? unary_word(*n) : EpWord::constant(1);
}

EpWord utl_sem(const EpWord& w) {
  auto n = leading_ones(w);
  if (!n) return EpWord::constant(1);
  EpWord r = w;
  for (std::uint64_t i = 0; i <= *n; ++i) r = r.tail();
  return r;
}

EpWord natstr_sem(const EpWord& w) {
  if (w.period().find('0') != Word::npos) return EpWord::constant(1);
  auto zeros = static_cast<std::uint64_t>(std::count(w.prefix().begin(), w.prefix().end(), '0'));
  return unary_word(zeros);
}

EpWord nat_sem(const EpWord& w) {
  bool unary = w.period() == "0" && w.prefix().find('0') == Word::npos;
  return EpWord::constant(unary ? 1 : 0);
}

EpWord leq_sem(const EpWord& a, const EpWord& b) {
  std::uint64_t span = std::max(a.prefix().size(), b.prefix().size()) +
                       std::lcm(a.period().size(), b.period().size());
  for (std::uint64_t i = 0; i < span; ++i)
    if (a.at(i) > b.at(i)) return EpWord::constant(0);
  return EpWord::constant(1);
}

}  // namespace streamspec
