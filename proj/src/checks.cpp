#include "streamspec/checks.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "streamspec/models.hpp"
#include "streamspec/rewrite.hpp"

namespace streamspec {

void CheckTally::fail(std::string what) { failures.push_back(std::move(what)); }

void CheckTally::merge(const CheckTally& other) {
  cases += other.cases;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string CheckTally::summary() const {
  std::ostringstream out;
  out << cases << " cases, " << failures.size() << " failures";
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) out << "\n  " << failures[i];
  return out.str();
}

EpWord random_epword(std::mt19937_64& rng, std::size_t maxPrefix, std::size_t maxPeriod) {
  auto word = [&](std::size_t len) {
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(rng() & 1 ? '1' : '0');
    return w;
  };
  std::uniform_int_distribution<std::size_t> pre(0, maxPrefix), per(1, maxPeriod);
  Word u = word(pre(rng));
  return EpWord(u, word(per(rng)));
}

namespace {

// Positions after which a and b have both entered their periods in step.
std::uint64_t joint_horizon(const EpWord& a, const EpWord& b) {
  return std::max(a.prefix().size(), b.prefix().size()) + std::lcm(a.period().size(), b.period().size());
}

std::string show(const std::vector<EpWord>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : ", ") + w.to_string();
  return s;
}

}  // namespace

CheckTally check_zip_law(const std::vector<EpWord>& streams, std::size_t positions) {
  CheckTally t;
  if (streams.empty()) return t;
  ++t.cases;
  const EpWord z = zip_k(streams);
  if (streams.size() == 1) {
    if (!(z == streams[0])) t.fail("zip1(" + streams[0].to_string() + ") = " + z.to_string());
    return t;
  }
  const EpWord rest = zip_k(std::vector<EpWord>(streams.begin() + 1, streams.end()));
  for (std::uint64_t i = 0; i < positions; ++i) {
    if (z.at(2 * i) != streams[0].at(i) || z.at(2 * i + 1) != rest.at(i)) {
      t.fail("zip" + std::to_string(streams.size()) + "(" + show(streams) + ") at " + std::to_string(i));
      break;
    }
  }
  return t;
}

CheckTally check_aux_lemmas(const std::vector<EpWord>& words) {
  CheckTally t;
  const EpWord zeros = EpWord::constant(0), ones = EpWord::constant(1);
  for (const auto& w : words) {
    t.cases += 5;
    const std::string s = w.to_string();
    if (!(is_zeros_sem(w) == (w == zeros ? ones : zeros))) t.fail("is_zeros(" + s + ")");

    // leading ones, found by scanning until every suffix has been seen
    std::optional<std::uint64_t> n;
    for (std::uint64_t i = 0; i < w.horizon() && !n; ++i)
      if (w.at(i) == 0) n = i;
    if (!n) {
      if (!(uhd_sem(w) == ones)) t.fail("uhd(" + s + ")");
    } else {
      if (!(uhd_sem(w) == EpWord(Word(*n, '1'), "0"))) t.fail("uhd(" + s + ")");
      EpWord rest = w;
      for (std::uint64_t i = 0; i <= *n; ++i) rest = rest.tail();
      if (!(utl_sem(w) == rest)) t.fail("utl(" + s + ")");
    }

    const bool infinitelyManyZeros = w.period().find('0') != Word::npos;
    if ((natstr_sem(w) == ones) != infinitelyManyZeros) t.fail("natstr(" + s + ")");

    bool isUnary = w.period() == "0";
    for (std::size_t i = 1; i < w.prefix().size(); ++i)
      if (w.prefix()[i - 1] == '0' && w.prefix()[i] == '1') isUnary = false;
    if ((nat_sem(w) == ones) != isUnary) t.fail("nat(" + s + ")");
  }
  for (const auto& a : words)
    for (const auto& b : words) {
      ++t.cases;
      bool below = true;
      for (std::uint64_t i = 0; i < joint_horizon(a, b) && below; ++i) below = a.at(i) <= b.at(i);
      if ((leq_sem(a, b) == ones) != below) t.fail("leq(" + a.to_string() + ", " + b.to_string() + ")");
    }
  return t;
}

CheckTally crosscheck_machine(const TuringMachine& m, const std::string& label,
                              const std::vector<std::uint64_t>& inputs, const std::vector<std::vector<EpWord>>& oracles,
                              std::uint64_t maxSteps) {
  CheckTally t;
  for (auto n : inputs)
    for (const auto& o : oracles) {
      ++t.cases;
      DirectRun d = run_direct(m, {n}, o, maxSteps);
      RewriteRun r = run_via_rewriting(m, {n}, o, EvalBudget{maxSteps * 200});
      std::string where = label + " n=" + std::to_string(n) + " oracles=[" + show(o) + "]";
      if (d.halted != r.output.has_value()) {
        t.fail(where + ": halting differs");
      } else if (d.halted && (*r.output != d.output || r.transitions != d.steps)) {
        t.fail(where + ": direct " + std::to_string(d.output) + "/" + std::to_string(d.steps) + " steps, rewriting " +
               std::to_string(*r.output) + "/" + std::to_string(r.transitions));
      }
    }
  return t;
}

namespace {

class TermGen {
 public:
  TermGen(const Specification& spec, std::mt19937_64& rng) : spec_(spec), rng_(rng) {
    for (const auto& s : spec.symbols) (s.argSorts.empty() ? leaves_ : inner_).push_back(&s);
  }

  bool can_build() const {
    return std::any_of(leaves_.begin(), leaves_.end(), [](const Symbol* s) { return s->resSort == Sort::S; });
  }

  Term gen(Sort sort, int depth) {
    if (sort == Sort::B) {
      std::vector<const Symbol*> fs = pick(inner_, Sort::B);
      if (depth > 0 && !fs.empty() && coin(3)) return apply(*fs[rng_() % fs.size()], depth);
      return Term::bit(static_cast<int>(rng_() & 1));
    }
    if (sort == Sort::N) {
      if (depth > 0 && coin(2)) return Term::app(std::string(kNatSucc), {gen(Sort::N, depth - 1)}, Sort::N);
      std::vector<const Symbol*> fs = pick(inner_, Sort::N);
      if (depth > 0 && !fs.empty() && coin(3)) return apply(*fs[rng_() % fs.size()], depth);
      return Term::constant(std::string(kNatZero), Sort::N);
    }
    std::vector<const Symbol*> consts = pick(leaves_, Sort::S);
    std::vector<const Symbol*> fs = pick(inner_, Sort::S);
    if (depth > 0) {
      if (coin(4)) return Term::cons(gen(Sort::B, depth - 1), gen(Sort::S, depth - 1));
      if (!fs.empty() && coin(2)) return apply(*fs[rng_() % fs.size()], depth);
    }
    return Term::constant(consts[rng_() % consts.size()]->name, Sort::S);
  }

 private:
  Term apply(const Symbol& f, int depth) {
    std::vector<Term> args;
    for (Sort s : f.argSorts) args.push_back(gen(s, depth - 1));
    return Term::app(f.name, std::move(args), f.resSort);
  }
  bool coin(unsigned n) { return rng_() % n == 0; }
  std::vector<const Symbol*> pick(const std::vector<const Symbol*>& from, Sort sort) const {
    std::vector<const Symbol*> out;
    for (const auto* s : from)
      if (s->resSort == sort && (sort != Sort::N || spec_.natSort)) out.push_back(s);
    return out;
  }

  const Specification& spec_;
  std::mt19937_64& rng_;
  std::vector<const Symbol*> leaves_;
  std::vector<const Symbol*> inner_;
};

}  // namespace

CheckTally check_engine_properties(const std::vector<Specification>& specs, std::size_t cases, std::uint64_t seed) {
  CheckTally t;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> usable;
  std::vector<std::optional<StreamAlgebra>> models;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::mt19937_64 probe;
    if (!TermGen(specs[i], probe).can_build()) {
      models.emplace_back();
      continue;
    }
    usable.push_back(i);
    try {
      models.emplace_back(canonical_model(specs[i]));
    } catch (const ModelError&) {
      models.emplace_back();
    }
  }
  if (usable.empty()) return t;

  std::uniform_int_distribution<std::uint64_t> budget(1, 3000), extra(0, 5000);
  std::uniform_int_distribution<std::size_t> len(1, 16);
  for (std::size_t c = 0; c < cases; ++c) {
    ++t.cases;
    const std::size_t si = usable[rng() % usable.size()];
    const Specification& spec = specs[si];
    TermGen gen(spec, rng);
    const Term term = gen.gen(Sort::S, 3);
    const EvalBudget small{budget(rng)}, large{small.maxSteps + extra(rng)};
    const std::size_t n = len(rng), m = n + len(rng);
    const std::string where = spec.name + ": " + to_string(term);

    Evaluator e1(spec), e2(spec);
    auto a = e1.stream_prefix_detailed(term, n, small);
    auto b = e2.stream_prefix_detailed(term, n, small);
    bool same = true;
    for (std::size_t i = 0; i < n; ++i) same = same && a[i].bit == b[i].bit && a[i].steps == b[i].steps;
    if (!same) t.fail(where + ": nondeterministic");

    auto big = e1.stream_prefix(term, n, large);
    for (std::size_t i = 0; i < n; ++i)
      if (a[i].bit && big[i] != a[i].bit) {
        t.fail(where + ": larger budget changed bit " + std::to_string(i));
        break;
      }

    auto longer = e1.stream_prefix(term, m, small);
    for (std::size_t i = 0; i < n; ++i)
      if (longer[i] != a[i].bit) {
        t.fail(where + ": prefix " + std::to_string(n) + " is not a prefix of " + std::to_string(m));
        break;
      }

    if (models[si]) {
      std::optional<Value> v;
      try {
        v = models[si]->eval(term, {});
      } catch (const ModelError&) {
      }
      if (v && v->kind == Value::Kind::Stream) {
        EpWord w = emb(v->elem);
        for (std::size_t i = 0; i < n; ++i)
          if (big[i] && *big[i] != w.at(i)) {
            t.fail(where + ": bit " + std::to_string(i) + " disagrees with the canonical model");
            break;
          }
      }
    }
  }
  return t;
}

}  // namespace streamspec
