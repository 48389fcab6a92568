#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "streamspec/turing.hpp"

namespace streamspec::lambda {

// Nameless λ-term. Bound variables are de Bruijn indices; names that are not
// bound anywhere stay symbolic (Free). Abstractions keep the surface name
// only as a printing hint, so == is α-equivalence.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Free, Abs, App, Hole };

  Term();  // the hole
  static Term var(std::uint32_t index);
  static Term free(std::string name);
  static Term abs(Term body, std::string hint = "x");
  static Term app(Term fn, Term arg);
  static Term hole();
  // abs over several binders, outermost first
  static Term abs(const std::vector<std::string>& hints, Term body);
  static Term apps(Term fn, const std::vector<Term>& args);

  Kind kind() const;
  std::uint32_t index() const;
  const std::string& name() const;  // Free name or Abs hint
  const Term& body() const;
  const Term& fn() const;
  const Term& arg() const;

  std::size_t hash() const;
  std::size_t size() const;
  // One more than the largest loose index; 0 for terms without loose indices.
  std::uint32_t loose() const;
  bool has_hole() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `\x y. body` or `λx y. body`, juxtaposition, parentheses, ☐ for a hole.
// Lines `let NAME = term` define abbreviations for the lines after them; the
// remaining lines form the main term. '#' starts a comment.
Term parse(std::string_view text);

struct PrintOptions {
  bool ascii = false;  // '\' instead of 'λ'
  // Closed subterms equal to one of these print as the name.
  std::vector<std::pair<std::string, Term>> abbreviations;
};
std::string to_string(const Term& t, const PrintOptions& opts = {});

// t[0 := s] for the body t of an abstraction.
Term instantiate(const Term& body, const Term& s);
Term shift(const Term& t, std::int64_t by, std::uint32_t cutoff = 0);
// Literal substitution of the hole; free names of t bound by a binder of the
// context with the same name are captured.
Term plug(const Term& context, const Term& t);

// ---------------------------------------------------------------------------
// Reduction

std::optional<Term> weak_head_step(const Term& t);
std::optional<Term> head_step(const Term& t);
std::optional<Term> lo_step(const Term& t);

bool is_whnf(const Term& t);
bool is_hnf(const Term& t);
bool is_nf(const Term& t);

enum class FormKind { NF, HNF, WHNF };
std::string_view form_name(FormKind k);

struct Reduction {
  enum class Status { Found, Unknown, Diverges } status = Status::Unknown;
  Term term;  // the form when Found, else the last term reached
  std::uint64_t steps = 0;
  bool found() const { return status == Status::Found; }
};

struct ReduceOptions {
  std::uint64_t budget = 10000;
  // Report Diverges when the reduction sequence revisits a term.
  bool detectLoops = true;
};

Reduction find_whnf(const Term& t, ReduceOptions opts = {});
Reduction find_hnf(const Term& t, ReduceOptions opts = {});
Reduction find_nf(const Term& t, ReduceOptions opts = {});
Reduction find_form(const Term& t, FormKind kind, ReduceOptions opts = {});

// ---------------------------------------------------------------------------
// Trees

// A head variable inside a tree: bound (de Bruijn index counting the tree
// binders above it) or free.
struct TreeVar {
  std::variant<std::uint32_t, std::string> ref;
  friend bool operator==(const TreeVar&, const TreeVar&) = default;
};

struct Tree {
  enum class Kind : std::uint8_t { Bottom, Lam, Node, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<std::string> binders;  // Böhm nodes: λx1..xn; Lam: one hint
  TreeVar head;
  std::vector<Tree> children;  // Lam: exactly one
  std::uint64_t spent = 0;     // Unknown: steps used before giving up

  static Tree bottom() { return {Kind::Bottom, {}, {}, {}, 0}; }
  static Tree unknown(std::uint64_t spent) { return {Kind::Unknown, {}, {}, {}, spent}; }
};

struct TreeOptions {
  std::uint64_t budgetPerNode = 10000;
  bool detectLoops = true;
  std::size_t maxLambdaRun = 64;  // consecutive Lam nodes before giving up
};

// Nodes deeper than depth become Unknown(0). Lévy–Longo depth counts
// application nodes only; a chain of abstractions stays on its level.
Tree bohm_tree(const Term& t, std::size_t depth, TreeOptions opts = {});
Tree levy_longo_tree(const Term& t, std::size_t depth, TreeOptions opts = {});

std::string to_string(const Tree& t);

struct TreeComparison {
  enum class Kind { Equal, Diff, Unknown } kind = Kind::Equal;
  std::vector<std::size_t> path;  // child indices from the root
  std::string path_string() const;
};

// Compares the levels above depth; a resolved difference wins over an
// Unknown met earlier.
TreeComparison tree_equal(const Tree& a, const Tree& b, std::size_t depth);

// ---------------------------------------------------------------------------
// Observational refutation

struct Seed {
  std::string name;
  Term term;
};

// I, K, the numerals 0, 1, 2 and Ω.
std::vector<Seed> default_seeds();

// (λx1..xr.☐) S1..Sr P1..Pk; plain ☐ P1..Pk when there are no binders.
struct Context {
  std::vector<std::string> binders;
  std::vector<Seed> binderArgs;
  std::vector<Seed> args;

  std::size_t size() const { return 1 + binders.size() + args.size(); }
  Term term() const;
  std::string to_string() const;
};

struct RefuteOptions {
  FormKind kind = FormKind::WHNF;
  std::size_t contextBound = 4;
  std::uint64_t budget = 10000;
  std::size_t jobs = 1;
  std::vector<Seed> seeds = default_seeds();
};

struct Refutation {
  std::optional<Context> context;
  Reduction first;   // plugged M
  Reduction second;  // plugged N
  std::size_t contextsTried = 0;
};

// Semi-decision: a context is reported when one side reaches the form within
// budget/4 steps while the other side loops or uses up the whole budget.
Refutation obs_refute(const Term& m, const Term& n, const RefuteOptions& opts = {});

// ---------------------------------------------------------------------------
// Builders

Term I();
Term K();
Term KI();
Term Omega();
Term zer();
Term succ();
Term church(std::uint64_t k);
Term build_M();
Term build_Tpp(const Term& T);
Term build_Tprime(const Term& T);
Term build_Nprime(const Term& T);
Term build_N(const Term& T);

// Steps after which the machine halts on input n, for n <= maxInput;
// nullopt when it runs longer than maxSteps.
using HaltingTable = std::vector<std::optional<std::uint64_t>>;
HaltingTable halting_table(const TuringMachine& m, std::size_t maxInput = 32, std::uint64_t maxSteps = 32);

// T n m →* K when table[n] <= m, else K I. Numerals past the table end are
// clamped to its last entry.
Term build_T(const HaltingTable& table);

// Surface text of N built from table, with let-abbreviations for its parts.
std::string render_gadget_N(const HaltingTable& table);
std::string render_gadget_M();

}  // namespace streamspec::lambda
