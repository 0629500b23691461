#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chartdist/bisim.hpp"
#include "chartdist/errors.hpp"
#include "chartdist/expr.hpp"
#include "generators.hpp"

using namespace chartdist;
using namespace chartdist::testing;

namespace {

const char* kTwoLoopsLeft = "a.(a.0 + b.mu v1.a.v1)+b.mu v1.a.v1";

Expr P(const char* s) { return parse_expr(s); }

bool has_transition(const StepResult& r, Letter a, const Expr& target) {
    for (const auto& [b, t] : r.transitions)
        if (b == a && alpha_equivalent(t, target)) return true;
    return false;
}

}  // namespace

TEST_CASE("parse: literals and structure") {
    CHECK(P("0").kind() == ExprKind::Zero);
    Expr m = P("mu v1.v1");
    REQUIRE(m.kind() == ExprKind::Mu);
    CHECK(m.index() == 1);
    CHECK(m.body() == Expr::var(1));

    Expr loops = P(kTwoLoopsLeft);
    REQUIRE(loops.kind() == ExprKind::Sum);
    CHECK(loops.left().kind() == ExprKind::Prefix);
    CHECK(loops.right() == Expr::prefix('b', Expr::mu(1, Expr::prefix('a', Expr::var(1)))));
    CHECK(loops.left().body().kind() == ExprKind::Sum);
    CHECK(loops.free_vars().empty());
}

TEST_CASE("parse: prefix and mu bind tighter than +") {
    CHECK(P("a.b.0 + c.0") == Expr::sum(P("a.b.0"), P("c.0")));
    CHECK(P("mu v1.a.v1 + b.0") == Expr::sum(P("mu v1.a.v1"), P("b.0")));
    CHECK(P("  a . ( v1+ v2 ) ") == Expr::prefix('a', Expr::sum(Expr::var(1), Expr::var(2))));
}

TEST_CASE("parse: errors carry positions") {
    try {
        parse_expr("a.0 + ");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.position() == 6);
    }
    CHECK_THROWS_AS(parse_expr("a.0 +* b.0"), ParseError);
    CHECK_THROWS_AS(parse_expr("v"), ParseError);
    CHECK_THROWS_AS(parse_expr("v0"), ParseError);
    CHECK_THROWS_AS(parse_expr("mu x.a.0"), ParseError);
    CHECK_THROWS_AS(parse_expr("(a.0"), ParseError);
    CHECK_THROWS_AS(parse_expr("a.0 b.0"), ParseError);
    CHECK_THROWS_AS(parse_expr("A.0"), ParseError);
    CHECK_THROWS_AS(parse_expr("c.0", Alphabet{'a', 'b'}), ParseError);
    CHECK_NOTHROW(parse_expr("b.0", Alphabet{'a', 'b'}));
}

TEST_CASE("print/parse round trip on random expressions") {
    Rng rng(11);
    for (int i = 0; i < 400; ++i) {
        Expr e = random_expr(rng, 1 + static_cast<int>(pick(rng, 14)), 3);
        Expr back = parse_expr(print(e));
        CHECK(alpha_equivalent(back, e));
        CHECK(back == e);
    }
}

TEST_CASE("alpha normal form is idempotent and respects alpha-equivalence") {
    CHECK(alpha_equivalent(P("mu v1.a.v1"), P("mu v7.a.v7")));
    CHECK_FALSE(alpha_equivalent(P("mu v1.a.v2"), P("mu v2.a.v2")));
    CHECK(print(alpha_normalize(P("mu v5.(a.v5 + mu v5.b.v5 + v2)"))) == "mu v3.(a.v3 + mu v4.b.v4 + v2)");
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        Expr e = random_expr(rng, 12, 3);
        Expr n = alpha_normalize(e);
        CHECK(alpha_normalize(n) == n);
        CHECK(n.free_vars() == e.free_vars());
    }
}

TEST_CASE("substitute: worked examples") {
    CHECK(substitute(P("a.v1 + v2"), {{2, P("b.0")}}) == P("a.v1 + b.0"));
    CHECK(substitute(P("mu v1.a.v2"), {{2, P("v1")}}) == P("mu v3.a.v1"));
    CHECK(substitute(P("v1"), {{1, P("a.0")}}) == P("a.0"));
    // simultaneous, not sequential
    CHECK(substitute(P("v1 + v2"), {{1, P("v2")}, {2, P("v1")}}) == P("v2 + v1"));
    // bound occurrences untouched
    CHECK(substitute(P("mu v1.(v1 + v2)"), {{1, P("a.0")}}) == P("mu v1.(v1 + v2)"));
    // fresh index avoids the body's own free variables
    CHECK(substitute(P("mu v1.(a.v2 + v3)"), {{2, P("v1")}}) == P("mu v4.(a.v1 + v3)"));
    CHECK_THROWS_AS(substitute(P("v1"), {{1, P("0")}, {1, P("0")}}), std::invalid_argument);
}

TEST_CASE("step: worked examples") {
    StepResult r = step(P("a.0 + b.v1"));
    CHECK(r.transitions.size() == 2);
    CHECK(has_transition(r, 'a', P("0")));
    CHECK(has_transition(r, 'b', P("v1")));
    CHECK(r.outputs.empty());

    Expr loop = P("mu v1.(v1 + a.v1)");
    r = step(loop);
    REQUIRE(r.transitions.size() == 1);
    CHECK(has_transition(r, 'a', loop));
    CHECK(r.outputs.empty());

    r = step(P("mu v1.v1"));
    CHECK(r.transitions.empty());
    CHECK(r.outputs.empty());

    r = step(P("v3 + v1 + mu v2.(v2 + v4)"));
    CHECK(r.outputs == std::vector<VarIndex>{1, 3, 4});

    // prefix derivative is the body itself
    r = step(P("a.b.v1"));
    REQUIRE(r.transitions.size() == 1);
    CHECK(r.transitions[0].second == P("b.v1"));
}

TEST_CASE("expand: reachable charts") {
    ExpandedChart c = expand(P("a.0"));
    CHECK(c.chart.prechart.size() == 2);
    CHECK(c.chart.prechart.transition_count() == 1);

    c = expand(P("mu v1.a.v1"));
    CHECK(c.chart.prechart.size() == 1);
    CHECK(c.chart.prechart.transitions(0) == std::vector<std::pair<Letter, StateId>>{{'a', 0}});

    // Brute-force BFS with pairwise alpha-equivalence is the oracle.
    Expr loops = P(kTwoLoopsLeft);
    std::size_t oracle = naive_derivative_count(loops);
    CHECK(oracle == 4);
    CHECK(expand(loops).chart.prechart.size() == oracle);

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Expr e = random_expr(rng, 10, 2);
        CHECK(expand(e).chart.prechart.size() == naive_derivative_count(e));
    }
}

TEST_CASE("expand: start state agrees with step") {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        Expr e = random_expr(rng, 12, 3);
        ExpandedChart c = expand(e);
        StepResult r = step(e);
        CHECK(c.chart.prechart.outputs(c.chart.start) == r.outputs);
        CHECK(c.chart.prechart.transitions(c.chart.start).size() == r.transitions.size());
        for (auto [a, t] : c.chart.prechart.transitions(c.chart.start)) CHECK(has_transition(r, a, c.exprs[t]));
    }
}

TEST_CASE("expand: state budget") {
    CHECK_THROWS_AS(expand(P("a.b.c.0"), 3), BudgetError);
    CHECK_NOTHROW(expand(P("a.b.c.0"), 4));
}

TEST_CASE("substitution composition lemma holds up to bisimilarity") {
    Rng rng(21);
    for (int i = 0; i < 150; ++i) {
        // fv(e) within v1,v2 ; fv(f) within v1,v2 ; g arbitrary
        Expr e = random_expr_free_in(rng, 8, 2);
        Bindings f{{1, random_expr_free_in(rng, 6, 2)}, {2, random_expr_free_in(rng, 6, 2)}};
        Bindings g{{1, random_expr(rng, 6, 3)}, {2, random_expr(rng, 6, 3)}};
        Expr lhs = substitute(substitute(e, f), g);
        Bindings fg{{1, substitute(f[0].second, g)}, {2, substitute(f[1].second, g)}};
        Expr rhs = substitute(e, fg);
        CHECK(bisimilar(expand(lhs).chart, expand(rhs).chart).bisimilar);
    }
}

TEST_CASE("expansion always terminates within the cap") {
    Rng rng(99);
    for (int i = 0; i < 300; ++i) {
        Expr e = random_expr(rng, 18, 3, 3);
        CHECK_NOTHROW(expand(e, 2000));
    }
}
