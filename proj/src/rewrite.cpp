#include "streamspec/rewrite.hpp"

namespace streamspec {

ExternalStream ExternalStream::of(std::string name, EpWord word) {
  return {std::move(name), [w = std::move(word)](std::uint64_t i) -> std::optional<int> { return w.at(i); }};
}

struct Evaluator::Ctx {
  std::uint64_t steps = 0;
  std::uint64_t max = 0;
  unsigned depth = 0;
  Unresolved reason = Unresolved::None;
};

namespace {

struct DepthGuard {
  unsigned& depth;
  explicit DepthGuard(unsigned& d) : depth(d) { ++depth; }
  ~DepthGuard() { --depth; }
};

}  // namespace

Evaluator::Evaluator(Specification spec) : spec_(std::move(spec)) {
  classes_ = classify_rules(spec_);
  counts_.assign(spec_.equations.size(), 0);
  for (std::size_t i = 0; i < spec_.equations.size(); ++i) {
    if (classes_[i] != RuleClass::Evaluable) continue;
    const Equation& eq = spec_.equations[i];
    auto& bucket = rules_[eq.lhs.name()];
    for (const Rule& r : bucket) {
      if (patterns_overlap(r.lhs, eq.lhs))
        throw EngineError("overlapping rules: '" + print_equation(spec_.equations[r.equation]) + "' and '" +
                          print_equation(eq) + "'");
    }
    bucket.push_back({i, eq.lhs, eq.rhs});
  }
}

void Evaluator::bind_stream(ExternalStream stream) {
  auto id = static_cast<std::uint32_t>(sources_.size());
  sources_.push_back(std::move(stream.source));
  streamIds_[stream.name] = id;
}

void Evaluator::bind_function(std::string name, TrialFunction fn) { functions_[std::move(name)] = std::move(fn); }

void Evaluator::reset_counts() { counts_.assign(spec_.equations.size(), 0); }

void Evaluator::check_ground(const Term& t) const {
  if (!t.is_ground()) throw NonGroundTerm("term is not ground: " + to_string(t));
}

std::optional<Term> Evaluator::unfold_external(const Term& t, Ctx& c) {
  auto b = sources_[t.ext_source()](t.ext_offset());
  if (!b) {
    c.reason = Unresolved::Budget;
    return std::nullopt;
  }
  return Term::cons(Term::bit(*b), Term::ext(t.ext_source(), t.ext_offset() + 1));
}

std::optional<Term> Evaluator::whnf(Term t, Ctx& c) {
  DepthGuard guard(c.depth);
  if (c.depth > kMaxDepth) {
    c.reason = Unresolved::Depth;
    return std::nullopt;
  }
  while (true) {
    switch (t.kind()) {
      case TermKind::Bit:
      case TermKind::Cons:
        return t;
      case TermKind::Var:
        throw NonGroundTerm("variable reached evaluation: " + t.name());
      case TermKind::Ext:
        return unfold_external(t, c);
      case TermKind::App:
        break;
    }
    const std::string& fn = t.name();
    if (spec_.is_constructor(fn)) return t;
    if (t.args().empty()) {
      if (auto it = streamIds_.find(fn); it != streamIds_.end()) {
        t = Term::ext(it->second, 0);
        continue;
      }
    }
    if (auto it = functions_.find(fn); it != functions_.end()) {
      std::vector<LazyStream> args;
      for (const auto& a : t.args()) args.emplace_back(this, a, EvalBudget{c.max});
      auto id = static_cast<std::uint32_t>(sources_.size());
      sources_.push_back([f = it->second, args = std::move(args)](std::uint64_t i) { return f(args, i); });
      t = Term::ext(id, 0);
      continue;
    }
    auto rit = rules_.find(fn);
    if (rit == rules_.end()) {
      c.reason = Unresolved::Stuck;
      return std::nullopt;
    }
    std::vector<Term> args = t.args();
    bool applied = false;
    for (const Rule& rule : rit->second) {
      Substitution subst;
      Match m = Match::Yes;
      const auto& pats = rule.lhs.args();
      for (std::size_t i = 0; i < pats.size() && m == Match::Yes; ++i) m = match_force(pats[i], args[i], subst, c);
      if (m == Match::Unknown) return std::nullopt;
      if (m == Match::No) continue;
      if (c.steps >= c.max) {
        c.reason = Unresolved::Budget;
        return std::nullopt;
      }
      ++c.steps;
      ++counts_[rule.equation];
      t = substitute(rule.rhs, subst);
      applied = true;
      break;
    }
    if (!applied) {
      c.reason = Unresolved::Stuck;
      return std::nullopt;
    }
  }
}

Evaluator::Match Evaluator::match_force(const Term& pattern, Term& subject, Substitution& subst, Ctx& c) {
  if (pattern.kind() == TermKind::Var) {
    subst.insert_or_assign(pattern.name(), subject);
    return Match::Yes;
  }
  bool headed = subject.kind() == TermKind::Bit || subject.kind() == TermKind::Cons ||
                (subject.kind() == TermKind::App && spec_.is_constructor(subject.name()));
  if (!headed) {
    auto r = whnf(subject, c);
    if (!r) return Match::Unknown;
    subject = *r;
  }
  switch (pattern.kind()) {
    case TermKind::Bit:
      return subject.kind() == TermKind::Bit && subject.bit_value() == pattern.bit_value() ? Match::Yes
                                                                                           : Match::No;
    case TermKind::Cons:
    case TermKind::App: {
      if (subject.kind() != pattern.kind() || subject.name() != pattern.name()) return Match::No;
      std::vector<Term> parts = subject.args();
      Match m = Match::Yes;
      bool changed = false;
      for (std::size_t i = 0; i < parts.size() && m == Match::Yes; ++i) {
        Term before = parts[i];
        m = match_force(pattern.args()[i], parts[i], subst, c);
        changed = changed || !(before == parts[i]);
      }
      if (changed) {
        subject = pattern.kind() == TermKind::Cons ? Term::cons(parts[0], parts[1])
                                                   : Term::app(subject.name(), parts, subject.sort());
      }
      return m;
    }
    default:
      return Match::No;
  }
}

BitOutcome Evaluator::eval_bit(const Term& term, EvalBudget budget) {
  check_ground(term);
  if (term.sort() != Sort::B) throw std::invalid_argument("eval_bit needs a term of sort B: " + to_string(term));
  Ctx c;
  c.max = budget.maxSteps;
  auto r = whnf(term, c);
  if (r && r->kind() == TermKind::Bit) return {r->bit_value(), c.steps, Unresolved::None};
  return {std::nullopt, c.steps, r ? Unresolved::Stuck : c.reason};
}

std::vector<BitOutcome> Evaluator::stream_prefix_detailed(const Term& term, std::size_t n, EvalBudget budget) {
  check_ground(term);
  if (term.sort() != Sort::S) throw std::invalid_argument("stream_prefix needs a term of sort S: " + to_string(term));
  std::vector<BitOutcome> out;
  Term cur = term;
  bool lost = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (lost) {
      out.push_back({std::nullopt, 0, Unresolved::Budget});
      continue;
    }
    Ctx c;
    c.max = budget.maxSteps;
    auto cell = whnf(cur, c);
    std::optional<Term> bit;
    if (cell && cell->kind() == TermKind::Cons) bit = whnf(cell->head(), c);
    if (!bit || bit->kind() != TermKind::Bit) {
      lost = true;
      out.push_back({std::nullopt, c.steps, c.reason == Unresolved::None ? Unresolved::Stuck : c.reason});
      continue;
    }
    out.push_back({bit->bit_value(), c.steps, Unresolved::None});
    cur = cell->tail();
  }
  return out;
}

std::vector<std::optional<int>> Evaluator::stream_prefix(const Term& term, std::size_t n, EvalBudget budget) {
  std::vector<std::optional<int>> out;
  for (const auto& o : stream_prefix_detailed(term, n, budget)) out.push_back(o.bit);
  return out;
}

struct LazyStream::State {
  Evaluator* engine;
  Term cur;
  EvalBudget budget;
  std::vector<int> bits;
  bool lost = false;
};

LazyStream::LazyStream(Evaluator* engine, Term term, EvalBudget budget)
    : state_(std::make_shared<State>(State{engine, std::move(term), budget, {}, false})) {}

std::optional<int> LazyStream::bit(std::uint64_t index) const {
  State& s = *state_;
  while (!s.lost && s.bits.size() <= index) {
    Evaluator::Ctx c;
    c.max = s.budget.maxSteps;
    auto cell = s.engine->whnf(s.cur, c);
    std::optional<Term> b;
    if (cell && cell->kind() == TermKind::Cons) b = s.engine->whnf(cell->head(), c);
    if (!b || b->kind() != TermKind::Bit) {
      s.lost = true;
      break;
    }
    s.bits.push_back(b->bit_value());
    s.cur = cell->tail();
  }
  if (index < s.bits.size()) return s.bits[index];
  return std::nullopt;
}

BitOutcome eval_bit(const Specification& spec, const Term& term, EvalBudget budget) {
  Evaluator e(spec);
  return e.eval_bit(term, budget);
}

std::vector<std::optional<int>> stream_prefix(const Specification& spec, const Term& term, std::size_t n,
                                              EvalBudget budget) {
  Evaluator e(spec);
  return e.stream_prefix(term, n, budget);
}

PrefixComparison prefix_equal(Evaluator& e1, const Term& t1, Evaluator& e2, const Term& t2, std::size_t n,
                              EvalBudget budget) {
  auto p1 = e1.stream_prefix(t1, n, budget);
  auto p2 = e2.stream_prefix(t2, n, budget);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p1[i] || !p2[i]) return {PrefixComparison::Kind::Unknown, i, 0, 0};
    if (*p1[i] != *p2[i]) return {PrefixComparison::Kind::Diff, i, *p1[i], *p2[i]};
  }
  return {PrefixComparison::Kind::Equal, n, 0, 0};
}

PrefixComparison prefix_equal(const Specification& s1, const Term& t1, const Specification& s2, const Term& t2,
                              std::size_t n, EvalBudget budget) {
  Evaluator e1(s1);
  Evaluator e2(s2);
  return prefix_equal(e1, t1, e2, t2, n, budget);
}

std::string render_prefix(const std::vector<std::optional<int>>& bits) {
  std::string s;
  for (const auto& b : bits) s += b ? static_cast<char>('0' + *b) : '?';
  return s;
}

}  // namespace streamspec
