#include "streamspec/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace streamspec {

// ---------------------------------------------------------------------------
// Relation deciders

TuringMachine relation_decider(const Relation& pred, std::uint64_t bound) {
  // The tape zip3(2, n, m) carries n at cells 4j+1 and m at cells 4j+3. The
  // machine walks right counting both runs of ones and answers as soon as
  // both have ended; a count past bound stops that run early.
  struct Scan {
    std::uint64_t n = 0, m = 0;
    bool nDone = false, mDone = false;
    int phase = 0;  // cell index mod 4
    auto operator<=>(const Scan&) const = default;
  };
  auto name = [](const Scan& s) {
    return "c" + std::to_string(s.n) + "_" + std::to_string(s.m) + "_" + (s.nDone ? "d" : "r") +
           (s.mDone ? "d" : "r") + std::to_string(s.phase);
  };
  const std::uint64_t over = bound + 1;

  TuringMachine tm;
  tm.initial = name(Scan{});
  std::set<Scan> seen{Scan{}};
  std::vector<Scan> todo{Scan{}};
  tm.states.push_back(tm.initial);
  const std::string back = "back", out = "out";
  while (!todo.empty()) {
    Scan s = todo.back();
    todo.pop_back();
    for (int b = 0; b < 2; ++b) {
      Scan t = s;
      if (t.phase == 1 && !t.nDone) {
        if (b == 1 && t.n < over) ++t.n;
        if (b == 0 || t.n == over) t.nDone = true;
      }
      if (t.phase == 3 && !t.mDone) {
        if (b == 1 && t.m < over) ++t.m;
        if (b == 0 || t.m == over) t.mDone = true;
      }
      if (t.nDone && t.mDone) {
        int answer = t.n < over && t.m < over && pred(t.n, t.m) ? 1 : 0;
        tm.delta[{name(s), b}] = {back, answer, Move::R};
        continue;
      }
      t.phase = (t.phase + 1) % 4;
      if (seen.insert(t).second) {
        tm.states.push_back(name(t));
        todo.push_back(t);
      }
      tm.delta[{name(s), b}] = {name(t), b, Move::R};
    }
  }
  tm.states.push_back(back);
  tm.states.push_back(out);
  for (int b = 0; b < 2; ++b) tm.delta[{back, b}] = {out, b, Move::L};
  tm.validate();
  return tm;
}

// ---------------------------------------------------------------------------
// Templates

namespace {

constexpr const char* kConstants = R"(
sym zeros : S
sym ones : S
eq zeros = 0 : zeros
eq ones = 1 : ones
)";

constexpr const char* kIsZeros = R"(
sym is_zeros : S -> S
eq is_zeros(zeros) = ones
eq is_zeros(0 : s) = is_zeros(s)
eq is_zeros(1 : s) = zeros
)";

constexpr const char* kUhdUtl = R"(
sym uhd : S -> S
sym utl : S -> S
eq uhd(0 : s) = zeros
eq uhd(1 : s) = 1 : uhd(s)
eq utl(0 : s) = s
eq utl(1 : s) = utl(s)
)";

constexpr const char* kNatstr = R"(
sym natstr : S -> S
eq natstr(ones) = zeros
eq natstr(0 : s) = 1 : natstr(s)
eq natstr(1 : s) = natstr(s)
)";

constexpr const char* kNat = R"(
sym nat : S -> S
eq nat(0 : 1 : s) = zeros
eq nat(1 : s) = nat(s)
eq nat(0 : 0 : s) = nat(0 : s)
eq nat(ones) = zeros
)";

constexpr const char* kUnary = R"(
sym unary : N -> S
sym nhd : S -> N
sym ntl : S -> S
eq unary(zero) = zeros
eq unary(succ(x)) = 1 : unary(x)
eq nhd(0 : s) = zero
eq nhd(1 : s) = succ(nhd(s))
eq ntl(0 : s) = s
eq ntl(1 : s) = ntl(s)
)";

// Splits a fragment into its declarations and equations.
struct Fragment {
  std::string syms;
  std::string eqs;
};

Fragment split(const std::string& text) {
  Fragment f;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("sym ", 0) == 0) f.syms += line + "\n";
    if (line.rfind("eq ", 0) == 0) f.eqs += line + "\n";
  }
  return f;
}

// Library text, then the machine, then the template; declarations first.
Specification assemble(const std::string& name, bool natSort, const std::vector<std::string>& library,
                       const Specification& machine, const std::string& templ) {
  std::string syms, eqs;
  std::set<std::string> seenSyms, seenEqs;
  auto take = [&](const Fragment& f) {
    std::istringstream s(f.syms), e(f.eqs);
    std::string line;
    while (std::getline(s, line))
      if (seenSyms.insert(line).second) syms += line + "\n";
    while (std::getline(e, line))
      if (seenEqs.insert(line).second) eqs += line + "\n";
  };
  for (const auto& l : library) take(split(l));
  take(split(print_spec(machine)));
  take(split(templ));
  return parse_spec((natSort ? "sort N\n" : "") + syms + eqs, name);
}

// zip1 .. zipN as compile_tmes emits them.
std::string zap_text(int maxZip) {
  const TuringMachine idle{{"q"}, "q", {}};
  const Specification tm = compile_tmes(idle, {maxZip});
  std::string text;
  for (const auto& sym : tm.symbols)
    if (sym.name.rfind("zip", 0) == 0) text += print_symbol(sym) + "\n";
  for (const auto& eq : tm.equations)
    if (eq.lhs.kind() == TermKind::App && eq.lhs.name().rfind("zip", 0) == 0) text += print_equation(eq) + "\n";
  return text;
}

void check_names(const TuringMachine& m, std::initializer_list<const char*> taken) {
  for (const auto& q : m.states)
    for (const char* t : taken)
      if (q == t) throw MachineError("state name '" + q + "' clashes with a symbol or variable of the reduction");
}

std::string unary_text(std::uint64_t n) {
  std::string s;
  for (std::uint64_t i = 0; i < n; ++i) s += "1 : ";
  return s + "zeros";
}

}  // namespace

Specification compile_wf_spec(const TuringMachine& m) {
  check_names(m, {"S", "X", "run", "s", "is_zeros", "uhd", "utl"});
  const std::string q0 = m.initial;
  std::string templ = "sym S : S\nsym X : S\nsym run : B x S -> S\n";
  templ += "eq S = is_zeros(run(1, X))\n";
  templ += "eq natstr(X) = ones\n";
  templ += "eq run(0, s) = ones\n";
  templ += "eq run(1, s) = 0 : run(" + q0 + "(zip1(zeros), zip3(" + unary_text(2) + ", uhd(s), uhd(utl(s)))), utl(s))\n";
  return assemble("wf", false, {kConstants, zap_text(3), kIsZeros, kUhdUtl, kNatstr}, compile_tmes(m, {3}), templ);
}

Specification compile_full_spec(const TuringMachine& m, int n, std::uint64_t a) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("the quantifier count must be even and at least 2");
  check_names(m, {"S", "A", "run", "h2", "tau", "gamma1", "nat"});
  for (const auto& q : m.states)
    if ((q.rfind("tau", 0) == 0 || q.rfind("g", 0) == 0) && q.size() > 1 &&
        std::all_of(q.begin() + (q[0] == 'g' ? 1 : 3), q.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw MachineError("state name '" + q + "' clashes with a symbol or variable of the reduction");
  const int half = n / 2;
  std::vector<std::string> taus;
  for (int i = 1; i < n; i += 2) taus.push_back("tau" + std::to_string(i));
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
    return s;
  };

  std::string templ = "sym S : ";
  for (int i = 0; i < half; ++i) templ += std::string(i ? " x " : "") + "S";
  templ += " -> S\nsym run : B x S x S -> S\nsym A : S\n";
  for (int i = 1; i <= half; ++i) {
    templ += "sym g" + std::to_string(2 * i) + " : ";
    for (int j = 0; j < i; ++j) templ += std::string(j ? " x " : "") + "S";
    templ += " -> S\n";
  }
  templ += "sym h2 : S x S -> S\n";

  std::vector<std::string> tape;
  for (int i = 1; i <= half; ++i) {
    tape.push_back(taus[static_cast<std::size_t>(i - 1)]);
    std::vector<std::string> before(taus.begin(), taus.begin() + i);
    tape.push_back("g" + std::to_string(2 * i) + "(" + join(before) + ")");
  }
  const std::string lhs = "S(" + join(taus) + ")";
  templ += "eq " + lhs + " = run(1, zip" + std::to_string(n) + "(" + join(tape) + "), zeros)\n";
  templ += "eq " + lhs + " = zeros\n";
  templ += "eq run(0, tau, gamma1) = ones\n";
  templ += "eq run(1, tau, gamma1) = 0 : run(" + m.initial + "(zip1(tau), zip4(" + unary_text(3) +
           ", A, gamma1, h2(tau, gamma1))), tau, 1 : gamma1)\n";
  templ += "eq A = " + unary_text(a) + "\n";
  templ += "eq nat(h2(tau, gamma1)) = ones\n";
  const int maxZip = std::max(n, 4);
  return assemble("full", false, {kConstants, zap_text(maxZip), kNat}, compile_tmes(m, {maxZip}), templ);
}

std::pair<Specification, Specification> compile_union_demo() {
  const std::string em = "sym M : S\neq M = 1 : M\n";
  const std::string en =
      "sym N : S\nsym inv : S -> S\n"
      "eq N = inv(N)\neq inv(0 : s) = 1 : inv(s)\neq inv(1 : s) = 0 : inv(s)\n";
  const std::string nxorM =
      "sym nxor : S -> S\n"
      "eq is_zeros(nxor(s)) = zeros\n"
      "eq nxor(0 : 0 : s) = 1 : nxor(s)\neq nxor(0 : 1 : s) = 0 : nxor(s)\n"
      "eq nxor(1 : 0 : s) = 0 : nxor(s)\neq nxor(1 : 1 : s) = 1 : nxor(s)\n";
  const std::string blinkN = "sym blink : S\neq blink = 0 : 1 : blink\n";
  Specification empty;
  return {assemble("union_inv", false, {em, en}, empty, ""),
          assemble("union_nxor", false, {kConstants, kIsZeros, nxorM, blinkN}, empty, "")};
}

Specification compile_confusion_spec(const TuringMachine& m) {
  check_names(m, {"X", "run", "s", "x", "unary", "nhd", "ntl", "zero", "succ"});
  std::string templ = "sym X : S\nsym run : B x S -> S\n";
  templ += "eq zeros = run(1, X)\n";
  templ += "eq run(0, s) = ones\n";
  templ += "eq run(1, s) = 0 : run(" + m.initial + "(zip1(zeros), zip3(" + unary_text(2) +
           ", unary(nhd(s)), unary(nhd(ntl(s))))), ntl(s))\n";
  return assemble("confusion", true, {kConstants, zap_text(3), kUnary}, compile_tmes(m, {3}), templ);
}

// ---------------------------------------------------------------------------
// Probes

EpWord encode_chain(const std::vector<std::uint64_t>& prefix, const std::vector<std::uint64_t>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("the chain needs a repeating part");
  auto enc = [](const std::vector<std::uint64_t>& ns) {
    Word w;
    for (auto n : ns) w += Word(n, '1') + "0";
    return w;
  };
  return EpWord(enc(prefix), enc(cycle));
}

std::optional<std::vector<std::uint64_t>> decode_chain(const EpWord& x, std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t pos = 0;
  while (out.size() < count) {
    std::uint64_t run = 0;
    // A run longer than the word's horizon never ends.
    while (x.at(pos) == 1) {
      ++run;
      ++pos;
      if (run > x.horizon()) return std::nullopt;
    }
    ++pos;
    out.push_back(run);
  }
  return out;
}

std::string_view verdict_name(ProbeResult::Verdict v) {
  switch (v) {
    case ProbeResult::Verdict::WitnessOfChain: return "WitnessOfChain";
    case ProbeResult::Verdict::ConsistentWithWellFounded: return "ConsistentWithWellFounded";
    case ProbeResult::Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string ProbeResult::to_text() const {
  std::string s(verdict_name(verdict));
  switch (verdict) {
    case Verdict::WitnessOfChain: s += " (" + std::to_string(prefix.size()) + " pairs related)"; break;
    case Verdict::ConsistentWithWellFounded: s += " (first 1 at index " + std::to_string(position) + ")"; break;
    case Verdict::Unknown: s += " (element " + std::to_string(position) + " undetermined)"; break;
  }
  return s + "\nprefix: " + render_prefix(prefix);
}

ProbeResult probe_run(const Specification& wfSpec, const EpWord& x, std::size_t prefixLen, EvalBudget budget) {
  Evaluator engine(wfSpec);
  engine.bind_stream(ExternalStream::of("X", x));
  Term t = Term::app("run", {Term::bit(1), Term::constant("X", Sort::S)}, Sort::S);
  ProbeResult r;
  r.prefix = engine.stream_prefix(t, prefixLen, budget);
  for (std::size_t i = 0; i < r.prefix.size(); ++i) {
    if (!r.prefix[i]) {
      r.verdict = ProbeResult::Verdict::Unknown;
      r.position = i;
      return r;
    }
    if (*r.prefix[i] == 1) {
      r.verdict = ProbeResult::Verdict::ConsistentWithWellFounded;
      r.position = i;
      r.prefix.resize(i + 1);
      return r;
    }
  }
  r.verdict = ProbeResult::Verdict::WitnessOfChain;
  r.position = prefixLen;
  return r;
}

bool chain_accepted(const TuringMachine& m, const EpWord& x, std::size_t pairs, std::uint64_t maxSteps) {
  auto chain = decode_chain(x, pairs + 1);
  if (!chain) return false;
  for (std::size_t i = 0; i < pairs; ++i) {
    DirectRun r = run_direct(m, {(*chain)[i], (*chain)[i + 1]}, {}, maxSteps);
    if (!r.halted || r.output != 1) return false;
  }
  return true;
}

std::vector<std::optional<int>> probe_full(const Specification& fullSpec, int n, const FullProbe& probe,
                                           std::size_t prefixLen, EvalBudget budget) {
  if (probe.taus.size() != static_cast<std::size_t>(n / 2))
    throw std::invalid_argument("expected " + std::to_string(n / 2) + " stream assignments");
  Evaluator engine(fullSpec);
  for (const auto& [name, fn] : probe.trials) engine.bind_function(name, fn);
  std::vector<Term> taus;
  for (std::size_t i = 0; i < probe.taus.size(); ++i) {
    std::string name = "#tau" + std::to_string(2 * i + 1);
    engine.bind_stream(ExternalStream::of(name, probe.taus[i]));
    taus.push_back(Term::constant(name, Sort::S));
  }
  std::vector<Term> tape;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    tape.push_back(taus[i]);
    std::vector<Term> before(taus.begin(), taus.begin() + static_cast<std::ptrdiff_t>(i + 1));
    tape.push_back(Term::app("g" + std::to_string(2 * (i + 1)), before, Sort::S));
  }
  Term t = Term::app("run", {Term::bit(1), zip_term(tape), Term::constant("zeros", Sort::S)}, Sort::S);
  return engine.stream_prefix(t, prefixLen, budget);
}

}  // namespace streamspec
