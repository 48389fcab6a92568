#include "streamspec/models.hpp"

#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace streamspec {

std::string HiddenElem::to_string() const {
  switch (kind) {
    case Kind::Z: return "z_" + (word.empty() ? std::string("ε") : word);
    case Kind::O: return "o_" + (word.empty() ? std::string("ε") : word);
    case Kind::W: return stream.to_string();
  }
  return "?";
}

EpWord emb(const HiddenElem& e) {
  switch (e.kind) {
    case HiddenElem::Kind::Z: return EpWord(e.word, "0");
    case HiddenElem::Kind::O: return EpWord(e.word, "1");
    case HiddenElem::Kind::W: return e.stream;
  }
  return e.stream;
}

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Bit: return bit ? "1" : "0";
    case Kind::Nat: return "nat(" + std::to_string(nat) + ")";
    case Kind::Stream: return elem.to_string();
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Algebra evaluation

std::optional<Value> StreamAlgebra::apply(const std::string& op, std::span<const Value> args) const {
  auto it = ops.find(op);
  if (it == ops.end()) throw ModelError("model '" + name + "' does not interpret '" + op + "'");
  return it->second(args);
}

std::optional<Value> StreamAlgebra::eval(const Term& term, const Assignment& assignment) const {
  switch (term.kind()) {
    case TermKind::Var: {
      auto it = assignment.find(term.name());
      if (it == assignment.end()) throw ModelError("no value assigned to variable '" + term.name() + "'");
      return it->second;
    }
    case TermKind::Bit:
      return Value::of_bit(term.bit_value());
    case TermKind::Cons:
    case TermKind::App: {
      std::vector<Value> args;
      for (const auto& a : term.args()) {
        auto v = eval(a, assignment);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      return apply(term.kind() == TermKind::Cons ? std::string(":") : term.name(), args);
    }
    case TermKind::Ext:
      break;
  }
  throw ModelError("cannot interpret an external stream position");
}

EpWord StreamAlgebra::observe(const HiddenElem& start) const {
  std::map<HiddenElem, std::size_t> seen;
  Word bits;
  HiddenElem e = start;
  while (true) {
    auto [it, fresh] = seen.emplace(e, bits.size());
    if (!fresh) return EpWord(bits.substr(0, it->second), bits.substr(it->second));
    Value v = Value::of_elem(e);
    auto h = apply("#head", std::span<const Value>(&v, 1));
    auto t = apply("#tail", std::span<const Value>(&v, 1));
    if (!h || !t || h->kind != Value::Kind::Bit || t->kind != Value::Kind::Stream)
      throw ModelError("observers of model '" + name + "' are not total");
    bits.push_back(static_cast<char>('0' + h->bit));
    e = t->elem;
  }
}

void install_stream_basics(StreamAlgebra& alg) {
  using K = HiddenElem::Kind;
  alg.ops["#head"] = [](std::span<const Value> a) -> std::optional<Value> {
    const HiddenElem& e = a[0].elem;
    if (e.kind == K::W) return Value::of_bit(e.stream.head());
    if (e.word.empty()) return Value::of_bit(e.kind == K::O ? 1 : 0);
    return Value::of_bit(e.word[0] - '0');
  };
  alg.ops["#tail"] = [](std::span<const Value> a) -> std::optional<Value> {
    const HiddenElem& e = a[0].elem;
    if (e.kind == K::W) return Value::of_stream(e.stream.tail());
    if (e.word.empty()) return a[0];
    return Value::of_elem({e.kind, e.word.substr(1), {}});
  };
  alg.ops[":"] = [](std::span<const Value> a) -> std::optional<Value> {
    const HiddenElem& e = a[1].elem;
    if (e.kind == K::W) return Value::of_stream(cons(a[0].bit, e.stream));
    return Value::of_elem({e.kind, Word(1, static_cast<char>('0' + a[0].bit)) + e.word, {}});
  };
}

// ---------------------------------------------------------------------------
// Canonical model

namespace {

using StreamFn1 = EpWord (*)(const EpWord&);

Operation lift1(StreamFn1 f) {
  return [f](std::span<const Value> a) -> std::optional<Value> { return Value::of_stream(f(emb(a[0].elem))); };
}

Operation constant_stream(EpWord w) {
  return [w](std::span<const Value>) -> std::optional<Value> { return Value::of_stream(w); };
}

std::optional<Operation> library_op(const Symbol& sym) {
  const std::string& n = sym.name;
  const std::size_t k = sym.arity();
  static const std::map<std::string, StreamFn1> unary = {
      {"is_zeros", is_zeros_sem}, {"uhd", uhd_sem},   {"utl", utl_sem},   {"natstr", natstr_sem},
      {"nat", nat_sem},           {"inv", inv_sem},   {"dup", dup_sem},   {"even", even_sem},
      {"nxor", nxor_sem},         {"ntl", utl_sem},
  };
  if (k == 0) {
    if (n == "zeros") return constant_stream(EpWord::constant(0));
    if (n == "ones") return constant_stream(EpWord::constant(1));
    if (n == "blink") return constant_stream(EpWord("", "01"));
    return std::nullopt;
  }
  if (k == 1 && sym.argSorts[0] == Sort::S) {
    if (auto it = unary.find(n); it != unary.end()) return lift1(it->second);
    if (n == "head" || n == "hd")
      return [](std::span<const Value> a) -> std::optional<Value> { return Value::of_bit(emb(a[0].elem).head()); };
    if (n == "tail" || n == "tl")
      return [](std::span<const Value> a) -> std::optional<Value> { return Value::of_stream(emb(a[0].elem).tail()); };
    if (n == "nhd")
      return [](std::span<const Value> a) -> std::optional<Value> {
        auto ones = leading_ones(emb(a[0].elem));
        if (!ones) return std::nullopt;  // 1^ω encodes no natural
        return Value::of_nat(*ones);
      };
  }
  if (k == 1 && sym.argSorts[0] == Sort::N && n == "unary")
    return [](std::span<const Value> a) -> std::optional<Value> { return Value::of_stream(unary_word(a[0].nat)); };
  if (k == 2 && n == "leq")
    return [](std::span<const Value> a) -> std::optional<Value> {
      return Value::of_stream(leq_sem(emb(a[0].elem), emb(a[1].elem)));
    };
  static const std::regex zipName("zip([1-9][0-9]*)");
  std::smatch m;
  if (std::regex_match(n, m, zipName) && std::stoul(m[1]) == k)
    return [](std::span<const Value> a) -> std::optional<Value> {
      std::vector<EpWord> ws;
      for (const auto& v : a) ws.push_back(emb(v.elem));
      return Value::of_stream(zip_k(ws));
    };
  return std::nullopt;
}

}  // namespace

StreamAlgebra canonical_model(const Specification& spec, CanonicalOptions opts) {
  StreamAlgebra alg;
  alg.name = "canonical";
  install_stream_basics(alg);
  if (spec.natSort) {
    alg.ops[std::string(kNatZero)] = [](std::span<const Value>) -> std::optional<Value> { return Value::of_nat(0); };
    alg.ops[std::string(kNatSucc)] = [](std::span<const Value> a) -> std::optional<Value> {
      return Value::of_nat(a[0].nat + 1);
    };
  }
  std::shared_ptr<const Specification> tmes;
  if (opts.machine) tmes = std::make_shared<Specification>(compile_tmes(*opts.machine, {1}));
  std::vector<std::string> unsupported;
  for (const auto& sym : spec.symbols) {
    if (auto op = library_op(sym)) {
      alg.ops[sym.name] = *op;
      continue;
    }
    bool isState = opts.machine && sym.arity() == 2 &&
                   std::find(opts.machine->states.begin(), opts.machine->states.end(), sym.name) !=
                       opts.machine->states.end();
    if (isState) {
      alg.ops[sym.name] = [tmes, q = sym.name, budget = opts.budget](std::span<const Value> a) -> std::optional<Value> {
        Evaluator engine(*tmes);
        engine.bind_stream(ExternalStream::of("#left", emb(a[0].elem)));
        engine.bind_stream(ExternalStream::of("#right", emb(a[1].elem)));
        Term t = Term::app(q, {Term::constant("#left", Sort::S), Term::constant("#right", Sort::S)}, Sort::B);
        auto r = engine.eval_bit(t, budget);
        if (!r.got()) return std::nullopt;
        return Value::of_bit(*r.bit);
      };
      continue;
    }
    unsupported.push_back(sym.name);
  }
  if (!unsupported.empty()) {
    std::string msg = "no canonical interpretation for:";
    for (const auto& n : unsupported) msg += " " + n;
    throw ModelError(msg);
  }
  return alg;
}

// ---------------------------------------------------------------------------
// Hidden models

Word join(const Word& a, const Word& b) {
  Word out;
  const Word* first = &a;
  const Word* second = &b;
  std::size_t i = 0, j = 0;
  // Alternate while the side whose turn it is still has letters.
  while (true) {
    if (i >= first->size()) {
      out += second->substr(j);
      return out;
    }
    out.push_back((*first)[i++]);
    std::swap(first, second);
    std::swap(i, j);
  }
}

FinOrInf join(const FinOrInf& a, const FinOrInf& b) {
  if (std::holds_alternative<Word>(a) && std::holds_alternative<Word>(b))
    return join(std::get<Word>(a), std::get<Word>(b));
  struct Side {
    const FinOrInf* src;
    bool exhausted(std::uint64_t i) const {
      return std::holds_alternative<Word>(*src) && i >= std::get<Word>(*src).size();
    }
    int at(std::uint64_t i) const {
      return std::holds_alternative<Word>(*src) ? std::get<Word>(*src)[i] - '0' : std::get<EpWord>(*src).at(i);
    }
    std::uint64_t next(std::uint64_t i) const {
      return std::holds_alternative<Word>(*src) ? i + 1 : std::get<EpWord>(*src).normalize(i + 1);
    }
  };
  const Side sides[2] = {{&a}, {&b}};
  // (index into a, index into b, side on turn, only that side remains)
  using State = std::tuple<std::uint64_t, std::uint64_t, int, bool>;
  return EpWord::unfold(State{0, 0, 0, false}, [&](State s) {
    auto [i, j, turn, drain] = s;
    std::uint64_t& pos = turn == 0 ? i : j;
    if (!drain && sides[turn].exhausted(pos)) {
      drain = true;
      turn = 1 - turn;
    }
    std::uint64_t& p = turn == 0 ? i : j;
    int bit = sides[turn].at(p);
    p = sides[turn].next(p);
    if (!drain) turn = 1 - turn;
    return std::pair{bit, State{i, j, turn, drain}};
  });
}

namespace {

void install_constants(StreamAlgebra& alg) {
  alg.ops["zeros"] = [](std::span<const Value>) -> std::optional<Value> { return Value::of_elem(HiddenElem::z("")); };
  alg.ops["ones"] = [](std::span<const Value>) -> std::optional<Value> { return Value::of_elem(HiddenElem::o("")); };
  alg.ops["blink"] = constant_stream(EpWord("", "01"));
}

std::optional<Value> emb_zip(std::span<const Value> a) {
  return Value::of_stream(zip2(emb(a[0].elem), emb(a[1].elem)));
}

}  // namespace

StreamAlgebra counterexample_model() {
  using K = HiddenElem::Kind;
  StreamAlgebra alg;
  alg.name = "counterexample";
  alg.hidden = true;
  install_stream_basics(alg);
  install_constants(alg);
  alg.ops["zip2"] = [](std::span<const Value> a) -> std::optional<Value> {
    const HiddenElem& x = a[0].elem;
    const HiddenElem& y = a[1].elem;
    if (x.kind == K::Z && y.kind == K::O) {
      if (x.word.size() == y.word.size()) return Value::of_stream(EpWord(join(x.word, y.word), "0"));
      return Value::of_stream(zip2(EpWord(x.word, "0"), EpWord(y.word, "1")));
    }
    if (x.kind == K::O && y.kind == K::Z) {
      if (x.word.size() == y.word.size() + 1) return Value::of_stream(EpWord(join(x.word, y.word), "0"));
      return Value::of_stream(zip2(EpWord(x.word, "1"), EpWord(y.word, "0")));
    }
    return emb_zip(a);
  };
  return alg;
}

StreamAlgebra confusion_model() {
  StreamAlgebra alg;
  alg.name = "confusion";
  alg.hidden = true;
  install_stream_basics(alg);
  install_constants(alg);
  alg.ops["zip2"] = emb_zip;
  return alg;
}

bool behavioral_equiv(const StreamAlgebra& alg, const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Bit: return a.bit == b.bit;
    case Value::Kind::Nat: return a.nat == b.nat;
    case Value::Kind::Stream: return a.elem == b.elem || alg.observe(a.elem) == alg.observe(b.elem);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Samples and checking

std::vector<EpWord> ep_grid(std::size_t maxPrefix, std::size_t maxPeriod) {
  auto words = [](std::size_t len) {
    std::vector<Word> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      Word w;
      for (std::size_t i = 0; i < len; ++i) w.push_back((bits >> (len - 1 - i)) & 1 ? '1' : '0');
      out.push_back(w);
    }
    return out;
  };
  std::vector<EpWord> out;
  std::set<EpWord> seen;
  for (std::size_t pl = 0; pl <= maxPrefix; ++pl)
    for (const auto& u : words(pl))
      for (std::size_t vl = 1; vl <= maxPeriod; ++vl)
        for (const auto& v : words(vl)) {
          EpWord w(u, v);
          if (seen.insert(w).second) out.push_back(w);
        }
  return out;
}

DomainSamples canonical_samples(std::size_t maxPrefix, std::size_t maxPeriod) {
  DomainSamples s;
  for (auto& w : ep_grid(maxPrefix, maxPeriod)) s.streams.push_back(Value::of_stream(w));
  for (std::uint64_t n = 0; n <= 3; ++n) s.nats.push_back(Value::of_nat(n));
  return s;
}

std::vector<EpWord> stream_samples() {
  return {EpWord::parse("(0)"), EpWord::parse("(1)"),   EpWord::parse("(01)"),  EpWord::parse("(10)"),
          EpWord::parse("1(0)"), EpWord::parse("0(1)"), EpWord::parse("(001)"), EpWord::parse("(110)")};
}

DomainSamples hidden_samples(std::size_t maxWord) {
  DomainSamples s;
  s.streams.push_back(Value::of_elem(HiddenElem::z("")));
  s.streams.push_back(Value::of_elem(HiddenElem::o("")));
  for (auto& w : stream_samples()) s.streams.push_back(Value::of_stream(w));
  for (std::size_t len = 1; len <= maxWord; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      Word w;
      for (std::size_t i = 0; i < len; ++i) w.push_back((bits >> (len - 1 - i)) & 1 ? '1' : '0');
      s.streams.push_back(Value::of_elem(HiddenElem::z(w)));
      s.streams.push_back(Value::of_elem(HiddenElem::o(w)));
    }
  return s;
}

namespace {

const std::vector<Value>& samples_for(const DomainSamples& s, Sort sort) {
  switch (sort) {
    case Sort::B: return s.bits;
    case Sort::S: return s.streams;
    case Sort::N: return s.nats;
  }
  return s.bits;
}

void collect_vars(const Term& t, std::vector<std::pair<std::string, Sort>>& out) {
  for (auto& v : variables_of(t))
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

std::vector<Assignment> assignment_grid(const Equation& eq, const DomainSamples& samples) {
  std::vector<std::pair<std::string, Sort>> vars;
  collect_vars(eq.lhs, vars);
  collect_vars(eq.rhs, vars);
  std::vector<Assignment> out{Assignment{}};
  for (const auto& [name, sort] : vars) {
    std::vector<Assignment> next;
    for (const auto& partial : out)
      for (const auto& v : samples_for(samples, sort)) {
        Assignment a = partial;
        a[name] = v;
        next.push_back(std::move(a));
      }
    out = std::move(next);
  }
  return out;
}

EquationCheck check_equation(const StreamAlgebra& alg, const Equation& eq, const std::vector<Assignment>& assignments,
                             Comparison cmp) {
  EquationCheck res;
  bool haveUnknown = false;
  for (const auto& a : assignments) {
    ++res.checked;
    auto l = alg.eval(eq.lhs, a);
    auto r = alg.eval(eq.rhs, a);
    if (!l || !r) {
      ++res.unknown;
      if (!haveUnknown) {
        haveUnknown = true;
        res.at = a;
        res.lhs = l;
        res.rhs = r;
      }
      continue;
    }
    bool same = cmp == Comparison::Exact ? *l == *r : behavioral_equiv(alg, *l, *r);
    if (!same) {
      res.verdict = EquationCheck::Verdict::Fails;
      res.at = a;
      res.lhs = l;
      res.rhs = r;
      return res;
    }
  }
  res.verdict = haveUnknown ? EquationCheck::Verdict::Unknown : EquationCheck::Verdict::AllHold;
  return res;
}

namespace {

std::string assignment_text(const Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a) s += (s.empty() ? "" : ", ") + k + "=" + v.to_string();
  return s.empty() ? "-" : s;
}

const char* verdict_name(EquationCheck::Verdict v) {
  switch (v) {
    case EquationCheck::Verdict::AllHold: return "holds";
    case EquationCheck::Verdict::Fails: return "fails";
    case EquationCheck::Verdict::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace

bool SatisfactionReport::all_hold() const {
  return std::all_of(equations.begin(), equations.end(),
                     [](const auto& e) { return e.result.verdict == EquationCheck::Verdict::AllHold; });
}

std::string SatisfactionReport::to_text() const {
  std::ostringstream out;
  out << "model: " << model << '\n';
  for (const auto& e : equations) {
    out << "  [" << verdict_name(e.result.verdict) << "] " << e.equation << "  (" << e.result.checked
        << " assignments";
    if (e.result.unknown) out << ", " << e.result.unknown << " undetermined";
    out << ")\n";
    if (e.result.verdict != EquationCheck::Verdict::AllHold) {
      out << "      at " << assignment_text(e.result.at) << ": lhs = "
          << (e.result.lhs ? e.result.lhs->to_string() : "?") << ", rhs = "
          << (e.result.rhs ? e.result.rhs->to_string() : "?") << '\n';
    }
  }
  bool fails = std::any_of(equations.begin(), equations.end(),
                           [](const auto& e) { return e.result.verdict == EquationCheck::Verdict::Fails; });
  out << "verdict: " << (all_hold() ? "satisfied" : fails ? "not satisfied" : "undetermined") << '\n';
  return out.str();
}

std::string SatisfactionReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["satisfied"] = all_hold();
  j["equations"] = nlohmann::json::array();
  for (const auto& e : equations) {
    nlohmann::json q;
    q["equation"] = e.equation;
    q["verdict"] = verdict_name(e.result.verdict);
    q["checked"] = e.result.checked;
    q["unknown"] = e.result.unknown;
    if (e.result.verdict != EquationCheck::Verdict::AllHold) {
      nlohmann::json at = nlohmann::json::object();
      for (const auto& [k, v] : e.result.at) at[k] = v.to_string();
      q["assignment"] = at;
      q["lhs"] = e.result.lhs ? e.result.lhs->to_string() : "?";
      q["rhs"] = e.result.rhs ? e.result.rhs->to_string() : "?";
    }
    j["equations"].push_back(q);
  }
  return j.dump(2);
}

SatisfactionReport check_model(const StreamAlgebra& alg, const Specification& spec, const DomainSamples& samples,
                               Comparison cmp) {
  SatisfactionReport rep;
  rep.model = alg.name;
  for (const auto& eq : spec.equations)
    rep.equations.push_back({print_equation(eq), check_equation(alg, eq, assignment_grid(eq, samples), cmp)});
  return rep;
}

SatisfactionReport behaviorally_satisfies(const StreamAlgebra& alg, const Specification& spec,
                                          const DomainSamples& samples) {
  return check_model(alg, spec, samples, Comparison::Behavioral);
}

std::string CongruenceViolation::to_text() const {
  std::ostringstream out;
  out << "congruence fails at '" << symbol << "' argument " << argIndex << ": " << first.to_string()
      << " ≡ " << second.to_string() << " but " << symbol << "(";
  auto render = [&](const Value& replaced) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i)
      s += (i ? ", " : "") + (i == argIndex ? replaced : args[i]).to_string();
    return s;
  };
  out << render(first) << ") = " << result1.to_string() << " and " << symbol << "(" << render(second)
      << ") = " << result2.to_string();
  return out.str();
}

QuotientResult quotient_by_equiv(const StreamAlgebra& alg, const Specification& spec, const DomainSamples& samples) {
  std::vector<std::pair<std::string, std::vector<Sort>>> ops{{":", {Sort::B, Sort::S}}};
  for (const auto& s : spec.symbols)
    if (std::find(s.argSorts.begin(), s.argSorts.end(), Sort::S) != s.argSorts.end())
      ops.emplace_back(s.name, s.argSorts);

  std::map<EpWord, Value> classHead;
  std::vector<std::pair<Value, Value>> pairs;  // (class head, equivalent sample)
  for (const auto& v : samples.streams) {
    auto [it, fresh] = classHead.emplace(alg.observe(v.elem), v);
    if (!fresh) pairs.emplace_back(it->second, v);
  }

  QuotientResult res;
  for (const auto& [head, other] : pairs) {
    for (const auto& [name, sorts] : ops) {
      for (std::size_t pos = 0; pos < sorts.size(); ++pos) {
        if (sorts[pos] != Sort::S) continue;
        std::vector<std::vector<Value>> tuples{{}};
        for (std::size_t i = 0; i < sorts.size(); ++i) {
          std::vector<std::vector<Value>> next;
          for (const auto& t : tuples) {
            if (i == pos) {
              auto u = t;
              u.push_back(head);
              next.push_back(std::move(u));
              continue;
            }
            for (const auto& v : samples_for(samples, sorts[i])) {
              auto u = t;
              u.push_back(v);
              next.push_back(std::move(u));
            }
          }
          tuples = std::move(next);
        }
        for (auto& args : tuples) {
          auto r1 = alg.apply(name, args);
          auto swapped = args;
          swapped[pos] = other;
          auto r2 = alg.apply(name, swapped);
          if (r1 && r2 && !behavioral_equiv(alg, *r1, *r2)) {
            res.violation = CongruenceViolation{name, pos, head, other, *r1, *r2, args};
            return res;
          }
        }
      }
    }
  }

  auto base = std::make_shared<StreamAlgebra>(alg);
  StreamAlgebra q;
  q.name = alg.name + "/≡";
  for (const auto& [name, op] : alg.ops) {
    q.ops[name] = [base, name = name](std::span<const Value> args) -> std::optional<Value> {
      std::vector<Value> lifted;
      for (const auto& a : args)
        lifted.push_back(a.kind == Value::Kind::Stream ? Value::of_elem(base->represent(emb(a.elem))) : a);
      auto r = base->apply(name, lifted);
      if (r && r->kind == Value::Kind::Stream) return Value::of_stream(base->observe(r->elem));
      return r;
    };
  }
  res.quotient = std::move(q);
  return res;
}

int zip_case(const HiddenElem& sigma, const HiddenElem& tau) {
  using K = HiddenElem::Kind;
  static const std::map<std::pair<K, K>, int> cases = {
      {{K::Z, K::O}, 1}, {{K::O, K::Z}, 2}, {{K::W, K::W}, 3}, {{K::Z, K::W}, 4}, {{K::O, K::W}, 5},
      {{K::W, K::Z}, 6}, {{K::W, K::O}, 7}, {{K::Z, K::Z}, 8}, {{K::O, K::O}, 9},
  };
  return cases.at({sigma.kind, tau.kind});
}

}  // namespace streamspec
