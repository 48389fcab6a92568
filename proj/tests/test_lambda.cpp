#include <doctest.h>

#include "streamspec/corpus.hpp"
#include "streamspec/lambda.hpp"

using namespace streamspec::lambda;
using streamspec::corpus_text;
using streamspec::parse_tm;
using streamspec::run_direct;
using streamspec::DirectRun;
using streamspec::TuringMachine;

namespace {

Term nf(const Term& t, std::uint64_t budget = 100000) {
  Reduction r = find_nf(t, {budget, true});
  REQUIRE(r.found());
  return r.term;
}

HaltingTable table_of(const char* machine) {
  return halting_table(parse_tm(corpus_text(std::string("machines/") + machine)));
}

}  // namespace

TEST_CASE("parsing, printing and alpha equivalence") {
  CHECK(parse("\\x. x") == parse("λy. y"));
  CHECK_FALSE(parse("\\x y. x") == parse("\\x y. y"));
  CHECK(parse("\\x y. x") == K());
  CHECK(parse("let I = \\x. x\nI I") == Term::app(I(), I()));
  CHECK(to_string(parse("\\f x. f (f x)")) == "λf x. f (f x)");
  CHECK(to_string(parse("\\f x. f (f x)"), {true, {}}) == "\\f x. f (f x)");
  CHECK(to_string(parse("a b c")) == "a b c");
  CHECK(to_string(parse("a (b c)")) == "a (b c)");
  CHECK(parse("☐ a").has_hole());
  CHECK(parse("x").kind() == Term::Kind::Free);
  CHECK_THROWS_AS(parse("\\x. (x"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  for (const char* s : {"\\x. x x", "\\a b c. a c (b c)", "(\\x. x x) (\\x. x x)", "\\z f x. f (z f x)", "y (\\x. y x)"})
    CHECK(parse(to_string(parse(s))) == parse(s));
}

TEST_CASE("substitution and plugging") {
  // (λx. λy. x)[x := y] must not capture
  Term body = parse("\\x. \\y. x").body();
  Term inst = instantiate(body, Term::free("y"));
  CHECK(to_string(inst) != "λy. y");
  CHECK(nf(Term::app(inst, Term::free("z"))) == Term::free("y"));
  // plugging captures by name
  Term ctx = parse("\\x. ☐");
  CHECK(plug(ctx, Term::free("x")) == I());
  CHECK(plug(parse("☐ a"), I()) == Term::app(I(), Term::free("a")));
  CHECK(shift(Term::var(0), 2) == Term::var(2));
  CHECK(shift(Term::var(0), 2, 1) == Term::var(0));
}

TEST_CASE("normal forms and divergence") {
  CHECK(is_nf(I()));
  CHECK_FALSE(is_whnf(Term::app(I(), I())));
  CHECK(is_whnf(parse("\\x. (\\y. y) x")));
  CHECK_FALSE(is_hnf(parse("\\x. (\\y. y) x")));
  CHECK(is_hnf(parse("\\x. x ((\\y. y) x)")));
  CHECK_FALSE(is_nf(parse("\\x. x ((\\y. y) x)")));

  Reduction om = find_whnf(Omega());
  CHECK(om.status == Reduction::Status::Diverges);
  Reduction noLoop = find_whnf(Omega(), {50, false});
  CHECK(noLoop.status == Reduction::Status::Unknown);
  CHECK(noLoop.steps == 50);
  // K I Ω has a normal form only under a lazy strategy
  CHECK(nf(Term::apps(K(), {I(), Omega()})) == I());
  CHECK(form_name(FormKind::HNF) == "hnf");
}

TEST_CASE("numeral arithmetic") {
  Term add = parse("\\m n f x. m f (n f x)");
  Term mul = parse("\\m n f. m (n f)");
  CHECK(church(0) == zer());
  for (std::uint64_t k = 0; k < 6; ++k) {
    CHECK(nf(Term::app(succ(), church(k))) == church(k + 1));
    for (std::uint64_t l = 0; l < 5; ++l) {
      CHECK(nf(Term::apps(add, {church(k), church(l)})) == church(k + l));
      CHECK(nf(Term::apps(mul, {church(k), church(l)})) == church(k * l));
    }
  }
}

TEST_CASE("halting tables follow direct runs") {
  TuringMachine m = parse_tm(corpus_text("machines/halts_below_3.tm"));
  HaltingTable t = halting_table(m, 8, 32);
  REQUIRE(t.size() == 9);
  for (std::uint64_t n = 0; n <= 8; ++n) {
    DirectRun r = run_direct(m, {n}, {}, 32);
    if (r.halted) CHECK(t[n] == r.steps);
    else CHECK_FALSE(t[n].has_value());
  }
  HaltingTable h = table_of("halt_one.tm");
  CHECK(h.size() == 33);
  for (const auto& e : h) CHECK(e == std::uint64_t{0});
}

TEST_CASE("T selects by the halting table") {
  HaltingTable table{2, std::nullopt, 0, 3};
  Term T = build_T(table);
  Term a = Term::free("a"), b = Term::free("b");
  for (std::uint64_t n = 0; n < 6; ++n)
    for (std::uint64_t m = 0; m < 5; ++m) {
      auto entry = table[std::min<std::size_t>(n, table.size() - 1)];
      bool halts = entry && *entry <= m;
      CHECK(nf(Term::apps(T, {church(n), church(m), a, b}), 1000000) == (halts ? a : b));
    }
}

TEST_CASE("gadget files match the builders") {
  CHECK(parse(corpus_text("gadgets/M.lam")) == build_M());
  CHECK(parse(render_gadget_M()) == build_M());
  HaltingTable t3 = table_of("halts_below_3.tm");
  CHECK(parse(corpus_text("gadgets/N(T3).lam")) == build_N(build_T(t3)));
  CHECK(parse(render_gadget_N(t3)) == build_N(build_T(t3)));
  CHECK(parse(corpus_text("gadgets/N(T_halt).lam")) == build_N(build_T(table_of("halt_one.tm"))));
}

TEST_CASE("trees") {
  Tree k = bohm_tree(K(), 3);
  CHECK(k.kind == Tree::Kind::Node);
  CHECK(k.binders.size() == 2);
  CHECK(k.head.ref == TreeVar{std::uint32_t{1}}.ref);
  CHECK(k.children.empty());
  CHECK(bohm_tree(Omega(), 3).kind == Tree::Kind::Bottom);
  // λx. Ω is ⊥ in the Böhm tree but not in the Lévy–Longo tree
  Term lamOmega = Term::abs(Omega());
  CHECK(bohm_tree(lamOmega, 3).kind == Tree::Kind::Bottom);
  CHECK(levy_longo_tree(lamOmega, 3).kind == Tree::Kind::Lam);

  Term a = parse("\\x. x (\\y. y) x");
  Term b = parse("\\z. z (\\w. w) z");
  CHECK(tree_equal(bohm_tree(a, 4), bohm_tree(b, 4), 4).kind == TreeComparison::Kind::Equal);
  TreeComparison d = tree_equal(bohm_tree(a, 4), bohm_tree(parse("\\x. x (\\y. x) x"), 4), 4);
  CHECK(d.kind == TreeComparison::Kind::Diff);
  CHECK(d.path == std::vector<std::size_t>{0});
}

TEST_CASE("M and N have equal trees at small depth") {
  Term M = build_M();
  Term Nh = build_N(build_T(table_of("halt_one.tm")));
  auto cmp = tree_equal(levy_longo_tree(M, 6), levy_longo_tree(Nh, 6), 6);
  CHECK(cmp.kind == TreeComparison::Kind::Equal);
}

TEST_CASE("observational refutation") {
  Term M = build_M();
  Term N3 = build_N(build_T(table_of("halts_below_3.tm")));
  RefuteOptions opts;
  opts.contextBound = 4;
  Refutation r = obs_refute(M, N3, opts);
  REQUIRE(r.context.has_value());
  // the reported context really separates the two terms
  Reduction first = find_whnf(plug(r.context->term(), M), {opts.budget / 4, true});
  Reduction second = find_whnf(plug(r.context->term(), N3), {opts.budget, true});
  CHECK(first.found() != second.found());

  Refutation same = obs_refute(I(), parse("\\y. y"), {FormKind::WHNF, 3, 2000});
  CHECK_FALSE(same.context.has_value());
  CHECK(same.contextsTried > 0);
  CHECK(default_seeds().size() == 6);
}

TEST_CASE("long terms are released without deep recursion") {
  Term t = Term::free("x");
  for (int i = 0; i < 1000000; ++i) t = Term::app(Term::free("f"), t);
  CHECK(t.size() > 1000000);
  t = I();
  CHECK(t == I());
}
