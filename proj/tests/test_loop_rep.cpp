// Tests for the loop Lie algebra action.
//
// Oracles:
//   * the generating states of the action are frozen from their defining
//     formulas (currents, scaled coefficient forms, derivations with their
//     matrix-current corrections, and the conformal combination for the
//     loop derivative, whose f = 1 specialization must act as scaled
//     Virasoro modes);
//   * all twelve pairwise product-identity families are verified over the
//     full index grid and sample coefficients;
//   * the bracket tables are validated at the operator level against
//     honest commutators of the represented operators, including
//     antisymmetry and Jacobi combinations;
//   * transported elements reproduce the chain rule on the inversion
//     chart, and the chart homomorphism intertwines the action;
//   * differentials of loop functions act as zero.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vx/loop.hpp"
#include "vx/sampler.hpp"

using namespace vx;

namespace {

Engine make_engine(int N) {
    EngineConfig cfg;
    cfg.N = N;
    cfg.algebra = sl2();
    cfg.level = 1;
    return Engine(cfg);
}

std::vector<RatFunc> samples_for(int N) {
    std::vector<std::string> texts =
        (N >= 2) ? std::vector<std::string>{"1", "x1", "x1*x2", "1/x1"}
                 : std::vector<std::string>{"1", "x1", "1/x1"};
    std::vector<RatFunc> out;
    for (const auto& t : texts) out.push_back(parse_ratfunc(t, N));
    return out;
}

} // namespace

TEST_CASE("loop element text round trips and rejects junk") {
    Engine e = make_engine(2);
    std::vector<std::string> ok = {"t^3 * x1/x2 * d/dx1", "t^-1 * x2 * dt",
                                   "t^0 * 1 * [e]", "t^2 * x1*x2 * dx2",
                                   "t^-2 * 1/x1 * d/dt"};
    for (const auto& text : ok) {
        LoopElement el = parse_loop_element(text, e);
        CHECK(loop_str(el, e) == text);
    }
    LoopElement parened = parse_loop_element("t^3 * (x1/x2) * d/dx1", e);
    CHECK(parened.kind == LoopKind::VectDx);
    CHECK(parened.idx == 1);
    CHECK(parened.power == 3);
    CHECK(parened.f == parse_ratfunc("x1/x2", 2));

    CHECK_THROWS_AS(parse_loop_element("x1 * dt", e), std::invalid_argument);
    CHECK_THROWS_AS(parse_loop_element("t^1 * x1", e), std::invalid_argument);
    CHECK_THROWS_AS(parse_loop_element("t^1 * x1 * dq", e), std::invalid_argument);
    CHECK_THROWS_AS(parse_loop_element("t^1 * x1 * dx3", e), std::invalid_argument);
    CHECK_THROWS_AS(parse_loop_element("t^1 * x1 * [zz]", e), std::invalid_argument);
}

TEST_CASE("generating states match their defining formulas") {
    Engine e = make_engine(2);
    RatFunc one = RatFunc::one(2);
    RatFunc f = parse_ratfunc("x1*x2", 2);

    // derivation with constant coefficient: no matrix-current correction
    CHECK(rho_state(e, parse_loop_element("t^0 * 1 * d/dx1", e)) ==
          e.generator(mode_v(1, -1), one));
    // with a varying coefficient the corrections appear
    CHECK(rho_state(e, LoopElement{LoopKind::VectDx, 1, 0, f}) ==
          e.generator(mode_v(1, -1), f) + e.generator(mode_e(1, 1, -1), parse_ratfunc("x2", 2)) +
              e.generator(mode_e(2, 1, -1), parse_ratfunc("x1", 2)));
    // coefficient forms scale by the current level
    CHECK(rho_state(e, parse_loop_element("t^5 * x1 * dt", e)) ==
          e.vacuum_with(parse_ratfunc("x1", 2)));
    CHECK(rho_state(e, parse_loop_element("t^5 * x1 * dx2", e)) ==
          e.generator(mode_u(2, -1), parse_ratfunc("x1", 2)));

    // the constant-coefficient form acts only through its -1 mode
    State x = e.parse_state("E(1,2)(-1) v1(-1) | x2");
    for (int j = -3; j <= 2; ++j) {
        LoopElement dt{LoopKind::FormDt, 0, j, one};
        if (j == -1)
            CHECK(rho_apply(e, dt, x) == x);
        else
            CHECK(rho_apply(e, dt, x).is_zero());
    }

    // the constant loop derivative acts by modes of the total conformal vector
    for (int j = -2; j <= 2; ++j) {
        LoopElement ddt{LoopKind::VectDt, 0, j, one};
        CHECK(rho_apply(e, ddt, x) == e.nth_product(e.omega(), j, x) * Rational(-1));
    }
}

TEST_CASE("every product-identity family passes over the full grid") {
    Engine e2 = make_engine(2);
    auto s2 = samples_for(2);
    for (const std::string& fam : relation_families()) {
        auto results = verify_relation_family(e2, fam, s2);
        CHECK(!results.empty());
        for (const auto& r : results) {
            if (!r.pass)
                MESSAGE(fam, " ", r.id, " lhs=", r.lhs, " rhs=", r.rhs);
            CHECK(r.pass);
        }
    }
    Engine e1 = make_engine(1);
    auto s1 = samples_for(1);
    for (const std::string& fam : relation_families())
        CHECK(all_pass(verify_relation_family(e1, fam, s1)));
}

TEST_CASE("bracket tables agree with operator commutators") {
    Engine e = make_engine(2);
    auto samples = samples_for(2);
    auto results = relation_operator_checks(e, samples, 42, 40);
    CHECK(results.size() == 40);
    for (const auto& r : results) {
        if (!r.pass) MESSAGE(r.id, " lhs=", r.lhs, " rhs=", r.rhs);
        CHECK(r.pass);
    }
}

TEST_CASE("bracket antisymmetry and Jacobi hold through the action") {
    Engine e = make_engine(2);
    auto samples = samples_for(2);
    Prng rng(7);

    auto random_element = [&]() {
        LoopElement el;
        switch (rng.range(0, 4)) {
            case 0: el.kind = LoopKind::Current; el.idx = static_cast<int>(rng.index(3)); break;
            case 1: el.kind = LoopKind::FormDt; break;
            case 2: el.kind = LoopKind::FormDx; el.idx = static_cast<int>(rng.range(1, 2)); break;
            case 3: el.kind = LoopKind::VectDx; el.idx = static_cast<int>(rng.range(1, 2)); break;
            default: el.kind = LoopKind::VectDt; break;
        }
        el.power = static_cast<int>(rng.range(-2, 2));
        el.f = samples[rng.index(samples.size())];
        return el;
    };
    auto bracket_sum = [&](const LoopSum& xs, const LoopElement& c) {
        LoopSum out;
        for (const auto& x : xs)
            for (const auto& part : loop_bracket(e, x, c)) out.push_back(part);
        return out;
    };

    for (int trial = 0; trial < 12; ++trial) {
        LoopElement A = random_element(), B = random_element(), C = random_element();
        State x = random_state(e, rng, 2, samples);
        // antisymmetry through the action
        State anti = rho_apply(e, loop_bracket(e, A, B), x) +
                     rho_apply(e, loop_bracket(e, B, A), x);
        CHECK(anti.is_zero());
        // Jacobi: [[A,B],C] + [[B,C],A] + [[C,A],B] acts as zero
        State jac = rho_apply(e, bracket_sum(loop_bracket(e, A, B), C), x) +
                    rho_apply(e, bracket_sum(loop_bracket(e, B, C), A), x) +
                    rho_apply(e, bracket_sum(loop_bracket(e, C, A), B), x);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("transported elements follow the chain rule") {
    Engine e1 = make_engine(1);
    ChartTransition inv;
    inv.n = 1;
    inv.forward = {parse_ratfunc("1/x1", 1)};
    inv.inverse = {parse_ratfunc("1/x1", 1)};
    ChartMap map(e1, inv);

    LoopElement ddx = parse_loop_element("t^4 * 1 * d/dx1", e1);
    LoopSum tx = theta(map, ddx);
    REQUIRE(tx.size() == 1);
    CHECK(tx[0].kind == LoopKind::VectDx);
    CHECK(tx[0].power == 4);
    CHECK(tx[0].f == parse_ratfunc("-x1^2", 1));

    LoopElement dx = parse_loop_element("t^4 * 1 * dx1", e1);
    LoopSum txf = theta(map, dx);
    REQUIRE(txf.size() == 1);
    CHECK(txf[0].kind == LoopKind::FormDx);
    CHECK(txf[0].f == parse_ratfunc("-1/x1^2", 1));

    // coefficients of untouched kinds are re-expressed
    LoopElement cur = parse_loop_element("t^1 * x1 * [h]", e1);
    LoopSum tc = theta(map, cur);
    REQUIRE(tc.size() == 1);
    CHECK(tc[0].kind == LoopKind::Current);
    CHECK(tc[0].f == parse_ratfunc("1/x1", 1));

    // identity chart transports nothing
    Engine e2 = make_engine(2);
    ChartTransition id2;
    id2.n = 2;
    id2.forward = {parse_ratfunc("x1", 2), parse_ratfunc("x2", 2)};
    id2.inverse = id2.forward;
    ChartMap idmap(e2, id2);
    LoopElement el2 = parse_loop_element("t^2 * x1*x2 * d/dx2", e2);
    LoopSum tid = theta(idmap, el2);
    REQUIRE(tid.size() == 1);
    CHECK(tid[0].f == el2.f);
    CHECK(tid[0].idx == 2);
}

TEST_CASE("the chart homomorphism intertwines the action") {
    Engine e1 = make_engine(1);
    Engine e2 = make_engine(2);
    ChartTransition inv;
    inv.n = 1;
    inv.forward = {parse_ratfunc("1/x1", 1)};
    inv.inverse = {parse_ratfunc("1/x1", 1)};
    ChartTransition tri;
    tri.n = 2;
    tri.forward = {parse_ratfunc("x1", 2), parse_ratfunc("x2 + x1^2", 2)};
    tri.inverse = {parse_ratfunc("x1", 2), parse_ratfunc("x2 - x1^2", 2)};
    ChartTransition sp;
    sp.n = 2;
    sp.forward = {parse_ratfunc("2*x2", 2), parse_ratfunc("x1", 2)};
    sp.inverse = {parse_ratfunc("x2", 2), parse_ratfunc("1/2*x1", 2)};

    CHECK(all_pass(verify_equivariance(e1, inv, samples_for(1))));
    CHECK(all_pass(verify_equivariance(e2, tri, samples_for(2))));
    CHECK(all_pass(verify_equivariance(e2, sp, samples_for(2))));

    // operator-level instance: transport commutes with application
    ChartMap map(e2, tri);
    LoopElement el = parse_loop_element("t^1 * x1*x2 * d/dx1", e2);
    for (const std::string& text : {"v1(-1) | x2", "E(1,2)(-1) u1(-1) | 1"}) {
        State xt = e2.parse_state(text);
        State lhs = map.phi(rho_apply(e2, el, xt));
        State rhs = rho_apply(e2, theta(map, el), map.phi(xt));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("differentials of loop functions act trivially") {
    Engine e = make_engine(2);
    auto results = verify_exact_form_triviality(e, samples_for(2), -2, 2, 42, 5);
    CHECK(!results.empty());
    for (const auto& r : results) {
        if (!r.pass) MESSAGE(r.id, " -> ", r.lhs);
        CHECK(r.pass);
    }
}
