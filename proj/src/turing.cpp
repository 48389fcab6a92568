#include "streamspec/turing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace streamspec {

namespace {

bool has_state(const std::vector<std::string>& states, const std::string& q) {
  return std::find(states.begin(), states.end(), q) != states.end();
}

void validate_table(const std::vector<std::string>& states, const DeltaTable& delta, const char* which) {
  for (const auto& [key, t] : delta) {
    if (!has_state(states, key.first))
      throw MachineError(std::string(which) + " mentions unknown state '" + key.first + "'");
    if (!has_state(states, t.next))
      throw MachineError(std::string(which) + " moves to unknown state '" + t.next + "'");
  }
}

void validate_common(const std::vector<std::string>& states, const std::string& initial) {
  if (states.empty()) throw MachineError("machine has no states");
  std::set<std::string> unique(states.begin(), states.end());
  if (unique.size() != states.size()) throw MachineError("duplicate state name");
  if (!has_state(states, initial)) throw MachineError("initial state '" + initial + "' is not declared");
}

}  // namespace

void TuringMachine::validate() const {
  validate_common(states, initial);
  validate_table(states, delta, "delta");
}

void NTM::validate() const {
  validate_common(states, initial);
  validate_table(states, delta0, "delta0");
  validate_table(states, delta1, "delta1");
  for (const auto& q : states)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 2; ++i)
        if (!delta(i).count({q, b}))
          throw MachineError("delta" + std::to_string(i) + " is undefined on (" + q + ", " + std::to_string(b) +
                             "); nondeterministic machines need total transition tables");
}

// ---------------------------------------------------------------------------
// Machine files

std::variant<TuringMachine, NTM> parse_machine(std::string_view text) {
  std::vector<std::string> states;
  std::string initial;
  DeltaTable plain;
  DeltaTable choice[2];
  bool sawPlain = false;
  bool sawChoice = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (colon == std::string::npos) throw MachineError("expected 'key: value'", lineNo);
    std::string key = line.substr(0, colon);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    std::istringstream rest(line.substr(colon + 1));
    if (key == "states") {
      std::string q;
      while (rest >> q) states.push_back(q);
    } else if (key == "initial") {
      if (!(rest >> initial)) throw MachineError("missing initial state", lineNo);
    } else if (key == "delta" || key == "delta0" || key == "delta1") {
      std::string q, arrow, next, move;
      int b = -1, w = -1;
      if (!(rest >> q >> b >> arrow >> next >> w >> move) || arrow != "->" || (b != 0 && b != 1) ||
          (w != 0 && w != 1) || (move != "L" && move != "R"))
        throw MachineError("expected 'q b -> q' b' L|R'", lineNo);
      DeltaTable& table = key == "delta" ? plain : choice[key == "delta1"];
      (key == "delta" ? sawPlain : sawChoice) = true;
      if (!table.emplace(StateBit{q, b}, Transition{next, w, move == "L" ? Move::L : Move::R}).second)
        throw MachineError("duplicate transition for (" + q + ", " + std::to_string(b) + ")", lineNo);
    } else {
      throw MachineError("unknown key '" + key + "'", lineNo);
    }
  }
  if (sawPlain && sawChoice) throw MachineError("a file mixes 'delta' with 'delta0'/'delta1'");
  if (initial.empty() && !states.empty()) initial = states.front();
  if (sawChoice) {
    NTM m{states, initial, choice[0], choice[1]};
    m.validate();
    return m;
  }
  TuringMachine m{states, initial, plain};
  m.validate();
  return m;
}

TuringMachine parse_tm(std::string_view text) {
  auto m = parse_machine(text);
  if (!std::holds_alternative<TuringMachine>(m)) throw MachineError("expected a deterministic machine");
  return std::get<TuringMachine>(m);
}

NTM parse_ntm(std::string_view text) {
  auto m = parse_machine(text);
  if (!std::holds_alternative<NTM>(m)) throw MachineError("expected a nondeterministic machine");
  return std::get<NTM>(m);
}

namespace {

void print_header(std::ostringstream& out, const std::vector<std::string>& states, const std::string& initial) {
  out << "states:";
  for (const auto& q : states) out << ' ' << q;
  out << "\ninitial: " << initial << '\n';
}

void print_table(std::ostringstream& out, const DeltaTable& delta, const char* key) {
  for (const auto& [k, t] : delta)
    out << key << ": " << k.first << ' ' << k.second << " -> " << t.next << ' ' << t.write << ' '
        << (t.move == Move::L ? 'L' : 'R') << '\n';
}

}  // namespace

std::string print_machine(const TuringMachine& m) {
  std::ostringstream out;
  print_header(out, m.states, m.initial);
  print_table(out, m.delta, "delta");
  return out.str();
}

std::string print_machine(const NTM& m) {
  std::ostringstream out;
  print_header(out, m.states, m.initial);
  print_table(out, m.delta0, "delta0");
  print_table(out, m.delta1, "delta1");
  return out.str();
}

// ---------------------------------------------------------------------------
// Direct simulation

namespace {

// One half of the tape: cells written by the machine on top of an infinite base.
class HalfTape {
 public:
  explicit HalfTape(EpWord base) : base_(std::move(base)) {}
  int pop() {
    if (!stack_.empty()) {
      int b = stack_.back();
      stack_.pop_back();
      return b;
    }
    return base_.at(offset_++);
  }
  void push(int b) { stack_.push_back(static_cast<std::uint8_t>(b)); }

 private:
  std::vector<std::uint8_t> stack_;
  EpWord base_;
  std::uint64_t offset_ = 0;
};

}  // namespace

DirectRun run_from(const TuringMachine& m, const std::string& state, const EpWord& left, const EpWord& right,
                   std::uint64_t maxSteps) {
  HalfTape l(left);
  HalfTape r(right);
  std::string q = state;
  int cur = r.pop();
  for (std::uint64_t steps = 0;; ++steps) {
    auto it = m.delta.find({q, cur});
    if (it == m.delta.end()) return {true, cur, steps};
    if (steps == maxSteps) return {false, 0, steps};
    const Transition& t = it->second;
    if (t.move == Move::R) {
      l.push(t.write);
      cur = r.pop();
    } else {
      r.push(t.write);
      cur = l.pop();
    }
    q = t.next;
  }
}

EpWord input_tape(const std::vector<std::uint64_t>& inputs) {
  std::vector<EpWord> parts{unary_word(inputs.size())};
  for (auto n : inputs) parts.push_back(unary_word(n));
  return zip_k(parts);
}

EpWord oracle_tape(const std::vector<EpWord>& oracles) {
  return oracles.empty() ? EpWord::constant(0) : zip_k(oracles);
}

DirectRun run_direct(const TuringMachine& m, const std::vector<std::uint64_t>& inputs,
                     const std::vector<EpWord>& oracles, std::uint64_t maxSteps) {
  return run_from(m, m.initial, oracle_tape(oracles), input_tape(inputs), maxSteps);
}

// ---------------------------------------------------------------------------
// Rewriting encodings

namespace {

Term S_var(const char* n) { return Term::var(n, Sort::S); }
Term B_var(const char* n) { return Term::var(n, Sort::B); }
Term bit(int b) { return Term::bit(b); }
Term cons(Term h, Term t) { return Term::cons(std::move(h), std::move(t)); }
Term zeros() { return Term::constant("zeros", Sort::S); }
Term ones() { return Term::constant("ones", Sort::S); }

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names = {"zeros", "ones", "natstr", "X", "N", "P"};
  return names;
}

void check_state_names(const std::vector<std::string>& states) {
  for (const auto& q : states) {
    if (reserved_names().count(q) || (q.rfind("zip", 0) == 0 && q.size() > 3))
      throw MachineError("state name '" + q + "' clashes with an auxiliary symbol");
  }
}

void add_zeros(Specification& spec) {
  spec.declare({"zeros", {}, Sort::S});
  spec.equations.push_back({zeros(), cons(bit(0), zeros())});
}

}  // namespace

Term zip_term(const std::vector<Term>& streams) {
  return Term::app("zip" + std::to_string(streams.size()), streams, Sort::S);
}

namespace {

void add_zips(Specification& spec, int maxZip) {
  for (int n = 1; n <= maxZip; ++n) spec.declare({"zip" + std::to_string(n), std::vector<Sort>(n, Sort::S), Sort::S});
  for (int n = 1; n <= maxZip; ++n) {
    std::vector<Term> ts;
    for (int i = 1; i <= n; ++i) ts.push_back(Term::var("t" + std::to_string(i), Sort::S));
    if (n == 1) {
      spec.equations.push_back({zip_term(ts), ts[0]});
    } else if (n == 2) {
      spec.equations.push_back({zip_term({cons(B_var("x"), ts[0]), ts[1]}),
                                cons(B_var("x"), zip_term({ts[1], ts[0]}))});
    } else {
      std::vector<Term> rest(ts.begin() + 1, ts.end());
      spec.equations.push_back({zip_term(ts), zip_term({ts[0], zip_term(rest)})});
    }
  }
}

}  // namespace

Specification compile_tmes(const TuringMachine& m, TmesOptions opts) {
  m.validate();
  check_state_names(m.states);
  Specification spec;
  spec.name = "tmes";
  add_zeros(spec);
  add_zips(spec, opts.maxZip);
  for (const auto& q : m.states) spec.declare({q, {Sort::S, Sort::S}, Sort::B});
  auto state = [](const std::string& q, Term l, Term r) { return Term::app(q, {std::move(l), std::move(r)}, Sort::B); };
  for (const auto& q : m.states) {
    for (int b = 0; b < 2; ++b) {
      auto it = m.delta.find({q, b});
      if (it == m.delta.end()) {
        spec.equations.push_back({state(q, S_var("x"), cons(bit(b), S_var("y"))), bit(b)});
        continue;
      }
      const Transition& t = it->second;
      if (t.move == Move::R) {
        spec.equations.push_back({state(q, S_var("x"), cons(bit(b), S_var("y"))),
                                  state(t.next, cons(bit(t.write), S_var("x")), S_var("y"))});
      } else {
        spec.equations.push_back({state(q, cons(B_var("a"), S_var("x")), cons(bit(b), S_var("y"))),
                                  state(t.next, S_var("x"), cons(B_var("a"), cons(bit(t.write), S_var("y"))))});
      }
    }
  }
  return spec;
}

Term init_term(const TuringMachine& m, const std::vector<Term>& inputs, const std::vector<Term>& oracles) {
  std::vector<Term> right{unary_term(inputs.size())};
  right.insert(right.end(), inputs.begin(), inputs.end());
  Term left = oracles.empty() ? zeros() : zip_term(oracles);
  return Term::app(m.initial, {left, zip_term(right)}, Sort::B);
}

RewriteRun run_via_rewriting(const TuringMachine& m, const std::vector<std::uint64_t>& inputs,
                             const std::vector<EpWord>& oracles, EvalBudget budget) {
  int maxZip = static_cast<int>(std::max(inputs.size() + 1, oracles.size()));
  Evaluator engine(compile_tmes(m, {std::max(maxZip, 1)}));
  std::vector<Term> inputTerms;
  for (auto n : inputs) inputTerms.push_back(unary_term(n));
  std::vector<Term> oracleTerms;
  for (std::size_t i = 0; i < oracles.size(); ++i) {
    std::string name = "xi" + std::to_string(i + 1);
    engine.bind_stream(ExternalStream::of(name, oracles[i]));
    oracleTerms.push_back(Term::constant(name, Sort::S));
  }
  BitOutcome out = engine.eval_bit(init_term(m, inputTerms, oracleTerms), budget);
  RewriteRun run;
  run.output = out.bit;
  run.totalSteps = out.steps;
  run.reason = out.reason;
  const auto& eqs = engine.spec().equations;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    bool stateRule = eqs[i].lhs.kind() == TermKind::App && has_state(m.states, eqs[i].lhs.name());
    if (stateRule && eqs[i].rhs.kind() == TermKind::App) run.transitions += engine.rule_counts()[i];
  }
  return run;
}

Specification compile_tmesn(const NTM& m) {
  m.validate();
  check_state_names(m.states);
  Specification spec;
  spec.name = "tmesn";
  add_zeros(spec);
  for (const auto& q : m.states) spec.declare({q, std::vector<Sort>(4, Sort::S), Sort::B});
  auto state = [](const std::string& q, Term l, Term r, Term c, Term p) {
    return Term::app(q, {std::move(l), std::move(r), std::move(c), std::move(p)}, Sort::B);
  };
  for (const auto& q : m.states) {
    for (int b = 0; b < 2; ++b) {
      for (int i = 0; i < 2; ++i) {
        const Transition& t = m.delta(i).at({q, b});
        Term choice = cons(bit(i), S_var("z"));
        if (t.move == Move::R) {
          spec.equations.push_back(
              {state(q, S_var("x"), cons(bit(b), S_var("y")), choice, S_var("p")),
               state(t.next, cons(bit(t.write), S_var("x")), S_var("y"), S_var("z"), cons(bit(1), S_var("p")))});
        } else {
          spec.equations.push_back({state(q, cons(B_var("a"), S_var("x")), cons(bit(b), S_var("y")), choice,
                                          cons(bit(1), S_var("p"))),
                                    state(t.next, S_var("x"), cons(B_var("a"), cons(bit(t.write), S_var("y"))),
                                          S_var("z"), S_var("p"))});
        }
      }
    }
  }
  return spec;
}

RunReport run_ntm(const NTM& m, const EpWord& w, const EpWord& choices, std::uint64_t maxSteps,
                  std::uint64_t threshold) {
  m.validate();
  RunReport rep;
  HalfTape left(EpWord::constant(0));
  HalfTape right(w);
  std::string q = m.initial;
  std::int64_t pos = 0;
  int cur = right.pop();
  for (std::uint64_t step = 0; step < maxSteps; ++step) {
    const Transition& t = m.delta(choices.at(step)).at({q, cur});
    if (t.move == Move::L && pos == 0) {
      rep.stuck = true;
      break;
    }
    rep.positions.push_back(pos);
    ++rep.visitCounts[pos];
    if (t.move == Move::R) {
      left.push(t.write);
      cur = right.pop();
      ++pos;
    } else {
      right.push(t.write);
      cur = left.pop();
      --pos;
    }
    q = t.next;
    ++rep.stepsTaken;
  }
  rep.minPositionAfter.resize(rep.positions.size());
  std::int64_t lowest = INT64_MAX;
  for (std::size_t i = rep.positions.size(); i-- > 0;) {
    lowest = std::min(lowest, rep.positions[i]);
    rep.minPositionAfter[i] = lowest;
  }
  while (rep.visitCounts.count(rep.completeUpTo + 1)) ++rep.completeUpTo;
  for (const auto& [p, n] : rep.visitCounts) {
    if (n > threshold) {
      rep.oscillation = p;
      break;
    }
  }
  return rep;
}

Specification compile_solutions_spec(const NTM& m) {
  m.validate();
  check_state_names(m.states);
  Specification spec;
  spec.name = "solutions";
  spec.declare({"zeros", {}, Sort::S});
  spec.declare({"ones", {}, Sort::S});
  spec.declare({"natstr", {Sort::S}, Sort::S});
  spec.declare({"X", {}, Sort::S});
  spec.declare({"N", {}, Sort::S});
  spec.declare({"P", {}, Sort::S});
  for (const auto& q : m.states) spec.declare({q, std::vector<Sort>(5, Sort::S), Sort::S});

  auto natstr = [](Term t) { return Term::app("natstr", {std::move(t)}, Sort::S); };
  auto& eqs = spec.equations;
  eqs.push_back({zeros(), cons(bit(0), zeros())});
  eqs.push_back({ones(), cons(bit(1), ones())});
  eqs.push_back({natstr(ones()), zeros()});
  eqs.push_back({natstr(cons(bit(0), S_var("s"))), cons(bit(1), natstr(S_var("s")))});
  eqs.push_back({natstr(cons(bit(1), S_var("s"))), natstr(S_var("s"))});

  auto state = [](const std::string& q, Term l, Term r, Term c, Term p, Term v) {
    return Term::app(q, {std::move(l), std::move(r), std::move(c), std::move(p), std::move(v)}, Sort::S);
  };
  Term x = S_var("x"), y = S_var("y"), z = S_var("z"), p = S_var("p"), v = S_var("v"), a = B_var("a");
  auto one = [](Term t) { return cons(bit(1), std::move(t)); };
  auto zero = [](Term t) { return cons(bit(0), std::move(t)); };

  eqs.push_back({state(m.initial, zeros(), Term::constant("X", Sort::S), Term::constant("N", Sort::S), zeros(),
                       Term::constant("P", Sort::S)),
                 zeros()});
  eqs.push_back({natstr(Term::constant("P", Sort::S)), ones()});

  struct Entry {
    std::string q;
    int b;
    int i;
    Transition t;
  };
  std::vector<Entry> entries;
  for (const auto& q : m.states)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 2; ++i) entries.push_back({q, b, i, m.delta(i).at({q, b})});

  for (const auto& e : entries) {
    if (e.t.move != Move::R) continue;
    eqs.push_back({state(e.q, x, cons(bit(e.b), y), cons(bit(e.i), z), p, one(v)),
                   state(e.t.next, cons(bit(e.t.write), x), y, z, one(p), v)});
  }
  for (const auto& e : entries) {
    if (e.t.move != Move::L) continue;
    eqs.push_back({state(e.q, cons(a, x), cons(bit(e.b), y), cons(bit(e.i), z), one(p), one(v)),
                   state(e.t.next, x, cons(a, cons(bit(e.t.write), y)), z, p, v)});
  }
  for (const auto& q : m.states) eqs.push_back({state(q, x, y, z, one(p), zero(v)), zero(state(q, x, y, z, p, v))});
  for (const auto& q : m.states) eqs.push_back({state(q, x, y, z, zero(p), zero(v)), ones()});
  for (const auto& e : entries) {
    if (e.t.move != Move::L) continue;
    eqs.push_back({state(e.q, cons(a, x), cons(bit(e.b), y), cons(bit(e.i), z), zero(p), one(v)), ones()});
  }
  return spec;
}

}  // namespace streamspec
