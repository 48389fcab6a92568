#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <json.hpp>
#include <random>
#include <sstream>

#include "streamspec/checks.hpp"
#include "streamspec/corpus.hpp"
#include "streamspec/lambda.hpp"
#include "streamspec/models.hpp"
#include "streamspec/reductions.hpp"
#include "streamspec/rewrite.hpp"
#include "streamspec/spec.hpp"
#include "streamspec/turing.hpp"

namespace streamspec::cli {

namespace {

using nlohmann::json;

// Input that could not be loaded or parsed; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  try {
    return load_text(path);
  } catch (const std::out_of_range&) {
    throw InputError("cannot open '" + path + "' (neither a file nor a corpus entry)");
  }
}

bool is_loadable(const std::string& path) { return std::filesystem::is_regular_file(path) || corpus_has(path); }

Specification load_spec(const std::string& path) {
  std::string name = std::filesystem::path(path).stem().string();
  return parse_spec(read_input(path), name);
}

EpWord parse_word(const std::string& text) {
  try {
    return EpWord::parse(text);
  } catch (const std::exception& e) {
    throw InputError("bad word '" + text + "': " + e.what());
  }
}

lambda::Term load_lambda(const std::string& arg) {
  return lambda::parse(is_loadable(arg) ? read_input(arg) : arg);
}

lambda::FormKind parse_kind(const std::string& k) {
  if (k == "whnf") return lambda::FormKind::WHNF;
  if (k == "hnf") return lambda::FormKind::HNF;
  if (k == "nf") return lambda::FormKind::NF;
  throw UsageError("--kind must be nf, hnf or whnf");
}

json bits_json(const std::vector<std::optional<int>>& bits) {
  json a = json::array();
  for (const auto& b : bits) a.push_back(b ? json(*b) : json(nullptr));
  return a;
}

// ---------------------------------------------------------------------------

struct Common {
  std::string spec = "zip_alt.spec";
  std::string term;
  std::size_t prefix = 16;
  std::uint64_t budget = 10000;
  std::size_t depth = 4;
  std::uint64_t seed = 20240601;
  std::size_t jobs = 1;
  bool json = false;
  std::vector<std::string> binds;
};

// Declares and binds NAME=WORD streams.
void apply_binds(const std::vector<std::string>& binds, Specification& spec, Evaluator* engine) {
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects NAME=WORD, got '" + b + "'");
    std::string name = b.substr(0, eq);
    EpWord w = parse_word(b.substr(eq + 1));
    if (!spec.find(name)) spec.declare(Symbol{name, {}, Sort::S});
    if (engine) engine->bind_stream(ExternalStream::of(name, w));
  }
}

std::vector<Specification> corpus_specs() {
  std::vector<Specification> out;
  for (const auto& p : corpus_paths("specs")) out.push_back(load_spec(p));
  return out;
}

int cmd_eval(const Common& c, std::size_t properties, std::ostream& out) {
  if (properties > 0) {
    CheckTally t = check_engine_properties(corpus_specs(), properties, c.seed);
    if (c.json) {
      out << json{{"cases", t.cases}, {"failures", t.failures}}.dump(2) << '\n';
    } else {
      out << "engine properties: " << t.summary() << '\n';
    }
    return kOk;
  }
  if (c.term.empty()) throw UsageError("eval needs --term");
  Specification spec = load_spec(c.spec);
  apply_binds(c.binds, spec, nullptr);
  Term t = parse_term(spec, c.term);
  Evaluator engine(spec);
  apply_binds(c.binds, spec, &engine);
  if (t.sort() == Sort::B) {
    BitOutcome b = engine.eval_bit(t, {c.budget});
    if (c.json)
      out << json{{"term", to_string(t)}, {"bit", b.bit ? json(*b.bit) : json(nullptr)}, {"steps", b.steps}}.dump(2)
          << '\n';
    else
      out << (b.bit ? std::to_string(*b.bit) : "?") << '\n';
    return kOk;
  }
  if (t.sort() != Sort::S) throw UsageError("eval needs a term of sort S or B");
  auto bits = engine.stream_prefix(t, c.prefix, {c.budget});
  if (c.json)
    out << json{{"term", to_string(t)}, {"prefix", render_prefix(bits)}, {"bits", bits_json(bits)}}.dump(2) << '\n';
  else
    out << render_prefix(bits) << '\n';
  return kOk;
}

int cmd_compare(const Common& c, const std::string& t1, const std::string& t2, const std::string& spec2Path,
                std::ostream& out) {
  Specification s1 = load_spec(c.spec);
  Specification s2 = spec2Path.empty() ? s1 : load_spec(spec2Path);
  apply_binds(c.binds, s1, nullptr);
  apply_binds(c.binds, s2, nullptr);
  Term a = parse_term(s1, t1), b = parse_term(s2, t2);
  Evaluator e1(s1), e2(s2);
  apply_binds(c.binds, s1, &e1);
  apply_binds(c.binds, s2, &e2);
  PrefixComparison r = prefix_equal(e1, a, e2, b, c.prefix, {c.budget});
  static const char* names[] = {"Equal", "Diff", "Unknown"};
  const char* kind = names[static_cast<int>(r.kind)];
  if (c.json) {
    json j{{"result", kind}, {"length", c.prefix}};
    if (r.kind != PrefixComparison::Kind::Equal) j["index"] = r.index;
    if (r.kind == PrefixComparison::Kind::Diff) j["bits"] = {r.bit1, r.bit2};
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << kind;
  if (r.kind == PrefixComparison::Kind::Diff) out << " at " << r.index << ": " << r.bit1 << " vs " << r.bit2;
  if (r.kind == PrefixComparison::Kind::Unknown) out << " at " << r.index;
  out << '\n';
  return kOk;
}

int cmd_tm_compile(const std::string& machine, bool solutions, int maxZip, std::ostream& out) {
  auto m = parse_machine(read_input(machine));
  if (auto* tm = std::get_if<TuringMachine>(&m)) {
    if (solutions) throw UsageError("--solutions needs a nondeterministic machine");
    out << print_spec(compile_tmes(*tm, {maxZip}));
  } else {
    const NTM& ntm = std::get<NTM>(m);
    out << print_spec(solutions ? compile_solutions_spec(ntm) : compile_tmesn(ntm));
  }
  return kOk;
}

std::vector<std::string> default_machines() {
  return {"machines/halt_one.tm", "machines/parity.tm", "machines/oracle_reader.tm", "machines/halts_below_3.tm",
          "machines/invert_oracle.tm"};
}

int cmd_tm_run(const Common& c, std::vector<std::string> machines, const std::vector<std::uint64_t>& inputs,
               const std::vector<std::string>& oracleTexts, bool crosscheck, std::ostream& out) {
  if (crosscheck) {
    if (machines.empty()) machines = default_machines();
    std::vector<std::uint64_t> ns = inputs;
    if (ns.empty()) ns = {0, 1, 2, 3, 4, 5};
    std::vector<std::vector<EpWord>> settings{{}, {EpWord::parse("(10)")}};
    if (!oracleTexts.empty()) {
      settings = {{}};
      for (const auto& o : oracleTexts) settings.push_back({parse_word(o)});
    }
    CheckTally all;
    for (const auto& path : machines) {
      CheckTally t = crosscheck_machine(parse_tm(read_input(path)), path, ns, settings, c.budget);
      if (!c.json) out << path << ": " << t.cases << " cases, " << t.failures.size() << " failures\n";
      all.merge(t);
    }
    if (c.json)
      out << json{{"cases", all.cases}, {"failures", all.failures}}.dump(2) << '\n';
    else
      out << "total: " << all.summary() << '\n';
    return kOk;
  }
  if (machines.size() != 1) throw UsageError("tm-run needs exactly one --machine (or --crosscheck)");
  TuringMachine m = parse_tm(read_input(machines[0]));
  std::vector<EpWord> oracles;
  for (const auto& o : oracleTexts) oracles.push_back(parse_word(o));
  DirectRun d = run_direct(m, inputs, oracles, c.budget);
  RewriteRun r = run_via_rewriting(m, inputs, oracles, {c.budget * 200});
  if (c.json) {
    out << json{{"direct", {{"halted", d.halted}, {"output", d.output}, {"steps", d.steps}}},
                {"rewriting",
                 {{"output", r.output ? json(*r.output) : json(nullptr)},
                  {"transitions", r.transitions},
                  {"rewriteSteps", r.totalSteps}}}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "direct:    ";
  if (d.halted)
    out << "halted with " << d.output << " after " << d.steps << " steps\n";
  else
    out << "still running after " << d.steps << " steps\n";
  out << "rewriting: ";
  if (r.output)
    out << "output " << *r.output << " after " << r.transitions << " transitions (" << r.totalSteps
        << " rewrite steps)\n";
  else
    out << "undetermined after " << r.totalSteps << " rewrite steps\n";
  return kOk;
}

int cmd_ntm_run(const Common& c, const std::string& machine, const std::string& tape, const std::string& choices,
                std::uint64_t threshold, std::ostream& out) {
  NTM m = parse_ntm(read_input(machine));
  RunReport r = run_ntm(m, parse_word(tape), parse_word(choices), c.budget, threshold);
  if (c.json) {
    json visits = json::object();
    for (const auto& [p, n] : r.visitCounts) visits[std::to_string(p)] = n;
    out << json{{"steps", r.stepsTaken},
                {"stuck", r.stuck},
                {"completeUpTo", r.completeUpTo},
                {"oscillation", r.oscillation ? json(*r.oscillation) : json(nullptr)},
                {"visits", visits}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "steps: " << r.stepsTaken << (r.stuck ? " (stuck at the left end)" : "") << '\n';
  out << "visited every position up to: " << r.completeUpTo << '\n';
  if (r.oscillation) out << "position " << *r.oscillation << " visited more than " << threshold << " times\n";
  out << "visits:";
  for (const auto& [p, n] : r.visitCounts) out << ' ' << p << ':' << n;
  out << '\n';
  return kOk;
}

StreamAlgebra pick_model(const std::string& model, const Specification& spec, const TuringMachine* machine) {
  if (model == "canonical") return canonical_model(spec, {machine, {100000}});
  if (model == "counterexample") return counterexample_model();
  if (model == "confusion") return confusion_model();
  throw UsageError("--model must be canonical, counterexample or confusion");
}

int cmd_model_check(const Common& c, const std::string& model, const std::string& machine, bool behavioral,
                    const std::string& lemmas, std::size_t samples, std::ostream& out) {
  if (!lemmas.empty()) {
    std::mt19937_64 rng(c.seed);
    CheckTally t;
    if (lemmas == "zip") {
      for (std::size_t i = 0; i < samples; ++i)
        for (std::size_t k = 1; k <= 4; ++k) {
          std::vector<EpWord> ws;
          for (std::size_t j = 0; j < k; ++j) ws.push_back(random_epword(rng));
          t.merge(check_zip_law(ws, 51));
        }
    } else if (lemmas == "aux") {
      std::vector<EpWord> words = ep_grid(4, 3);
      for (std::size_t i = 0; i < samples; ++i) words.push_back(random_epword(rng));
      t = check_aux_lemmas(words);
    } else {
      throw UsageError("--lemmas must be zip or aux");
    }
    if (c.json)
      out << json{{"cases", t.cases}, {"failures", t.failures}}.dump(2) << '\n';
    else
      out << lemmas << " lemmas: " << t.summary() << '\n';
    return kOk;
  }
  Specification spec = load_spec(c.spec);
  std::optional<TuringMachine> tm;
  if (!machine.empty()) tm = parse_tm(read_input(machine));
  StreamAlgebra alg = pick_model(model, spec, tm ? &*tm : nullptr);
  DomainSamples s = alg.hidden ? hidden_samples(c.depth) : canonical_samples(c.depth, 3);
  if (spec.natSort)
    for (std::uint64_t n = 0; n < 4; ++n) s.nats.push_back(Value::of_nat(n));
  SatisfactionReport rep = behavioral ? behaviorally_satisfies(alg, spec, s)
                                      : check_model(alg, spec, s, Comparison::Exact);
  out << (c.json ? rep.to_json() + "\n" : rep.to_text());
  return kOk;
}

int cmd_hidden_demo(const Common& c, std::ostream& out) {
  Specification spec = parse_spec(corpus_text("specs/zip_alt.spec"), "zip_alt");
  Specification goal = parse_spec(corpus_text("specs/zip_alt_goal.spec"), "zip_alt_goal");
  StreamAlgebra alg = counterexample_model();
  DomainSamples samples = hidden_samples(c.depth);
  SatisfactionReport sat = behaviorally_satisfies(alg, spec, samples);
  SatisfactionReport refuted = behaviorally_satisfies(alg, goal, samples);
  auto lhs = alg.eval(parse_term(spec, "zip2(zeros, ones)"), {});
  auto rhs = alg.eval(parse_term(spec, "blink"), {});
  const bool equiv = lhs && rhs && behavioral_equiv(alg, *lhs, *rhs);
  QuotientResult q = quotient_by_equiv(alg, spec, samples);
  if (c.json) {
    json j;
    j["spec"] = json::parse(sat.to_json());
    j["goal"] = json::parse(refuted.to_json());
    j["zip2(zeros, ones)"] = lhs ? alg.observe(lhs->elem).to_string() : "?";
    j["blink"] = rhs ? alg.observe(rhs->elem).to_string() : "?";
    j["equivalent"] = equiv;
    j["congruence"] = q.violation ? json(q.violation->to_text()) : json(nullptr);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "# zip_alt in the counterexample model (behavioral satisfaction)\n" << sat.to_text();
  out << "# goal zip2(zeros, ones) = blink\n" << refuted.to_text();
  out << "observations: zip2(zeros, ones) -> " << (lhs ? alg.observe(lhs->elem).to_string() : "?")
      << ", blink -> " << (rhs ? alg.observe(rhs->elem).to_string() : "?") << '\n';
  out << "zip2(zeros, ones) " << (equiv ? "≡" : "≢") << " blink\n";
  if (q.violation)
    out << q.violation->to_text() << '\n';
  else
    out << "behavioral equivalence is a congruence on the samples\n";
  return kOk;
}

int cmd_tree(const Common& c, bool levyLongo, const std::string& with, std::ostream& out) {
  if (c.term.empty()) throw UsageError("needs --term (a λ-term or a .lam file)");
  lambda::TreeOptions opts;
  opts.budgetPerNode = c.budget;
  auto build = [&](const lambda::Term& t) {
    return levyLongo ? lambda::levy_longo_tree(t, c.depth, opts) : lambda::bohm_tree(t, c.depth, opts);
  };
  lambda::Tree a = build(load_lambda(c.term));
  if (with.empty()) {
    std::string s = lambda::to_string(a);
    out << (c.json ? json{{"tree", s}}.dump(2) : s) << '\n';
    return kOk;
  }
  lambda::Tree b = build(load_lambda(with));
  lambda::TreeComparison r = lambda::tree_equal(a, b, c.depth);
  static const char* names[] = {"Equal", "Diff", "Unknown"};
  if (c.json) {
    out << json{{"result", names[static_cast<int>(r.kind)]},
                {"path", r.path_string()},
                {"first", lambda::to_string(a)},
                {"second", lambda::to_string(b)}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << lambda::to_string(a) << '\n' << lambda::to_string(b) << '\n' << names[static_cast<int>(r.kind)];
  if (r.kind != lambda::TreeComparison::Kind::Equal) out << " at " << r.path_string();
  out << " (depth " << c.depth << ")\n";
  return kOk;
}

std::string describe(const lambda::Reduction& r, lambda::FormKind k) {
  switch (r.status) {
    case lambda::Reduction::Status::Found:
      return std::string(lambda::form_name(k)) + " after " + std::to_string(r.steps) + " steps";
    case lambda::Reduction::Status::Diverges: return "loops after " + std::to_string(r.steps) + " steps";
    case lambda::Reduction::Status::Unknown: break;
  }
  return "no " + std::string(lambda::form_name(k)) + " within " + std::to_string(r.steps) + " steps";
}

int cmd_obs_refute(const Common& c, const std::string& m, const std::string& n, const std::string& kind,
                   std::size_t size, std::ostream& out) {
  lambda::RefuteOptions opts;
  opts.kind = parse_kind(kind);
  opts.contextBound = size;
  opts.budget = c.budget;
  opts.jobs = c.jobs;
  lambda::Refutation r = lambda::obs_refute(load_lambda(m), load_lambda(n), opts);
  if (c.json) {
    json j{{"contextsTried", r.contextsTried}};
    j["context"] = r.context ? json(r.context->to_string()) : json(nullptr);
    if (r.context) {
      j["first"] = describe(r.first, opts.kind);
      j["second"] = describe(r.second, opts.kind);
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  if (!r.context) {
    out << "no separating context up to size " << size << " (" << r.contextsTried << " tried)\n";
    return kOk;
  }
  out << r.context->to_string() << '\n';
  out << "  C[M]: " << describe(r.first, opts.kind) << "\n  C[N]: " << describe(r.second, opts.kind) << '\n';
  return kOk;
}

Relation named_relation(const std::string& name) {
  if (name == "empty") return [](std::uint64_t, std::uint64_t) { return false; };
  if (name == "total") return [](std::uint64_t, std::uint64_t) { return true; };
  if (name == "cycle") return [](std::uint64_t n, std::uint64_t m) { return (n == 1 && m == 2) || (n == 2 && m == 1); };
  throw UsageError("--relation must be empty, total or cycle");
}

constexpr std::uint64_t kDeciderBound = 16;

TuringMachine machine_for(const std::string& relation, const std::string& machine) {
  if (!machine.empty()) return parse_tm(read_input(machine));
  if (relation.empty()) throw UsageError("needs --relation or --machine");
  return relation_decider(named_relation(relation), kDeciderBound);
}

int cmd_reduce(const std::string& kind, const std::string& relation, const std::string& machine, int quantifiers,
               std::uint64_t a, const std::string& golden, std::ostream& out) {
  Specification spec;
  if (kind == "solutions") {
    if (machine.empty()) throw UsageError("--kind solutions needs --machine");
    spec = compile_solutions_spec(parse_ntm(read_input(machine)));
  } else if (kind == "union-inv" || kind == "union-nxor") {
    auto [inv, nxor] = compile_union_demo();
    spec = kind == "union-inv" ? inv : nxor;
  } else {
    TuringMachine m = machine_for(relation, machine);
    if (kind == "wf")
      spec = compile_wf_spec(m);
    else if (kind == "full")
      spec = compile_full_spec(m, quantifiers, a);
    else if (kind == "confusion")
      spec = compile_confusion_spec(m);
    else
      throw UsageError("--kind must be wf, full, confusion, solutions, union-inv or union-nxor");
  }
  std::string text = print_spec(spec);
  if (golden.empty()) {
    out << text;
    return kOk;
  }
  Specification expected = parse_spec(read_input(golden), "golden");
  std::string want = print_spec(expected);
  if (want == text) {
    out << "matches " << golden << '\n';
  } else {
    out << "differs from " << golden << "\n--- compiled\n" << text << "--- golden\n" << want;
  }
  return kOk;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) {
      try {
        v.push_back(std::stoull(item));
      } catch (const std::exception&) {
        throw UsageError("bad number list '" + s + "'");
      }
    }
  return v;
}

int cmd_probe(const Common& c, const std::string& relation, const std::string& machine, const std::string& x,
              const std::string& chain, const std::string& cycle, std::ostream& out) {
  TuringMachine m = machine_for(relation, machine);
  if (x.empty() && cycle.empty()) throw UsageError("probe needs --x WORD or --cycle LIST");
  EpWord word = !x.empty() ? parse_word(x) : encode_chain(parse_list(chain), parse_list(cycle));
  ProbeResult r = probe_run(compile_wf_spec(m), word, c.prefix, {c.budget});
  std::size_t pairs = r.verdict == ProbeResult::Verdict::WitnessOfChain ? r.prefix.size() : r.position;
  const bool accepted = chain_accepted(m, word, pairs);
  if (c.json) {
    out << json{{"x", word.to_string()},
                {"verdict", verdict_name(r.verdict)},
                {"prefix", render_prefix(r.prefix)},
                {"position", r.position},
                {"directRunsAgree", accepted}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "X = " << word.to_string() << '\n' << r.to_text() << '\n';
  out << "direct runs on the first " << pairs << " pairs: " << (accepted ? "all related" : "not all related")
      << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for equational bitstream specifications", "streamspec-cli"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool withTerm, bool withPrefix = true) {
    s->add_option("--spec", c.spec, "specification file or corpus entry");
    if (withTerm) s->add_option("--term", c.term, "term to evaluate");
    if (withPrefix) s->add_option("-n,--prefix", c.prefix, "number of stream elements");
    s->add_option("--budget", c.budget, "step budget");
    s->add_option("--depth", c.depth, "tree depth or sample size");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--jobs", c.jobs, "parallel jobs");
    s->add_flag("--json", c.json, "JSON output");
    s->add_option("--bind", c.binds, "NAME=WORD binds a stream constant");
  };

  std::size_t properties = 0;
  auto* eval = app.add_subcommand("eval", "evaluate a stream prefix");
  common(eval, true);
  eval->add_option("--properties", properties, "run this many randomized engine property cases instead");

  std::string t1, t2, spec2;
  auto* compare = app.add_subcommand("compare", "compare two stream prefixes");
  common(compare, false);
  compare->add_option("first", t1)->required();
  compare->add_option("second", t2)->required();
  compare->add_option("--spec2", spec2, "specification for the second term");

  std::vector<std::string> machines;
  bool solutions = false;
  int maxZip = 2;
  auto* tmCompile = app.add_subcommand("tm-compile", "print the rewrite system simulating a machine");
  tmCompile->add_option("--machine", machines)->required()->expected(1);
  tmCompile->add_flag("--solutions", solutions, "five-argument run system of a nondeterministic machine");
  tmCompile->add_option("--zip", maxZip, "largest zip arity");

  std::vector<std::uint64_t> inputs;
  std::vector<std::string> oracles;
  bool crosscheck = false;
  auto* tmRun = app.add_subcommand("tm-run", "run a machine directly and by rewriting");
  common(tmRun, false);
  tmRun->add_option("--machine", machines);
  tmRun->add_option("--input", inputs);
  tmRun->add_option("--oracle", oracles);
  tmRun->add_flag("--crosscheck", crosscheck, "compare both runs over inputs 0..5 and two oracle settings");

  std::string tape = "(0)", choices = "(0)";
  std::uint64_t threshold = 10;
  auto* ntmRun = app.add_subcommand("ntm-run", "run a nondeterministic machine under a choice sequence");
  common(ntmRun, false);
  ntmRun->add_option("--machine", machines)->required()->expected(1);
  ntmRun->add_option("--tape", tape);
  ntmRun->add_option("--choices", choices);
  ntmRun->add_option("--threshold", threshold);

  std::string model = "canonical", lemmas;
  bool behavioral = false;
  std::size_t samples = 100;
  auto* modelCheck = app.add_subcommand("model-check", "check equations in a model on a sample grid");
  common(modelCheck, false);
  modelCheck->add_option("--model", model);
  modelCheck->add_option("--machine", machines)->expected(1);
  modelCheck->add_flag("--behavioral", behavioral);
  modelCheck->add_option("--lemmas", lemmas, "zip or aux: check stream-function laws instead");
  modelCheck->add_option("--samples", samples, "random samples for --lemmas");

  auto* hidden = app.add_subcommand("hidden-demo", "the zip/blink counterexample model");
  common(hidden, false);

  std::string with;
  auto* bohm = app.add_subcommand("bohm", "Böhm tree of a λ-term");
  common(bohm, true);
  bohm->add_option("--with", with, "second term to compare with");
  auto* lt = app.add_subcommand("lt", "Lévy–Longo tree of a λ-term");
  common(lt, true);
  lt->add_option("--with", with, "second term to compare with");

  std::string mTerm, nTerm, kind = "whnf";
  std::size_t size = 4;
  auto* refute = app.add_subcommand("obs-refute", "search a context separating two λ-terms");
  common(refute, false, false);
  refute->add_option("--m", mTerm)->required();
  refute->add_option("--n", nTerm)->required();
  refute->add_option("--kind", kind);
  refute->add_option("--size", size, "largest context size");

  std::string reduceKind = "wf", relation, golden;
  int quantifiers = 2;
  std::uint64_t aParam = 0;
  auto* reduce = app.add_subcommand("reduce", "print a reduction template instance");
  reduce->add_option("--kind", reduceKind);
  reduce->add_option("--relation", relation);
  reduce->add_option("--machine", machines)->expected(1);
  reduce->add_option("--quantifiers", quantifiers);
  reduce->add_option("--a", aParam);
  reduce->add_option("--golden", golden, "compare with a transcribed specification");

  std::string x, chain, cycle;
  auto* probe = app.add_subcommand("probe", "evaluate run(1, X) of the well-foundedness template");
  common(probe, false);
  probe->add_option("--relation", relation);
  probe->add_option("--machine", machines)->expected(1);
  probe->add_option("--x", x, "X as a word u(v)");
  probe->add_option("--chain", chain, "chain prefix n0,n1,..");
  probe->add_option("--cycle", cycle, "repeated part of the chain");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  if (c.prefix == 0 && !compare->parsed()) c.prefix = 1;
  const std::string machine = machines.empty() ? "" : machines.front();

  try {
    if (eval->parsed()) return cmd_eval(c, properties, out);
    if (compare->parsed()) return cmd_compare(c, t1, t2, spec2, out);
    if (tmCompile->parsed()) return cmd_tm_compile(machine, solutions, maxZip, out);
    if (tmRun->parsed()) return cmd_tm_run(c, machines, inputs, oracles, crosscheck, out);
    if (ntmRun->parsed()) return cmd_ntm_run(c, machine, tape, choices, threshold, out);
    if (modelCheck->parsed()) return cmd_model_check(c, model, machine, behavioral, lemmas, samples, out);
    if (hidden->parsed()) return cmd_hidden_demo(c, out);
    if (bohm->parsed()) return cmd_tree(c, false, with, out);
    if (lt->parsed()) return cmd_tree(c, true, with, out);
    if (refute->parsed()) return cmd_obs_refute(c, mTerm, nTerm, kind, size, out);
    if (reduce->parsed()) return cmd_reduce(reduceKind, relation, machine, quantifiers, aParam, golden, out);
    if (probe->parsed()) return cmd_probe(c, relation, machine, x, chain, cycle, out);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kInput;
  } catch (const MachineError& e) {
    err << "machine error: " << e.what() << '\n';
    return kInput;
  } catch (const lambda::ParseError& e) {
    err << "λ-term error: " << e.what() << '\n';
    return kInput;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::runtime_error& e) {
    // unreadable files and the like
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}

}  // namespace streamspec::cli
