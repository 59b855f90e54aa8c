// Tests for the induced highest-weight modules.
//
// Oracles:
//   * zero-mode top actions are written out by hand (matrix units on the
//     W factor, algebra matrices on the S factor, the scalar h, the
//     coefficient derivative for the v family);
//   * products by pure function states are recomputed through a second,
//     independently coded path that commutes the function modes rightward
//     through the word and expands the creation-only oscillator series at
//     the top;
//   * the top eigenvalue of the degree-grading mode is hand-derived from
//     the quadratic Casimir values of the chosen W and S together with h,
//     and the eigenvalue on a degree-d word must shift by exactly d;
//   * the commutator expansion of two algebra states acting on module
//     elements is compared against the sum of their n-th products acting
//     once;
//   * coordinate transport is frozen on the one-variable inversion chart
//     (the top twists by the forward Jacobian -1/x^2), must invert under
//     the swapped transition, and must intertwine every generator mode
//     against the homomorphism images, including annihilators;
//   * graded dimensions are counted twice: by the closed-form product
//     count and by explicitly enumerating canonical words and building
//     each one through the module's creation machinery.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vx/chart.hpp"
#include "vx/engine.hpp"
#include "vx/prng.hpp"
#include "vx/sampler.hpp"
#include "vx/verma.hpp"

#include <algorithm>
#include <functional>
#include <vector>

using namespace vx;

namespace {

Engine make_engine(int N) {
    EngineConfig cfg;
    cfg.N = N;
    cfg.algebra = sl2();
    cfg.level = 1;
    return Engine(cfg);
}

ChartTransition make_chart(int n, std::vector<std::string> fwd,
                           std::vector<std::string> inv) {
    ChartTransition t;
    t.n = n;
    for (const auto& s : fwd) t.forward.push_back(parse_ratfunc(s, n));
    for (const auto& s : inv) t.inverse.push_back(parse_ratfunc(s, n));
    return t;
}

ChartTransition identity2() { return make_chart(2, {"x1", "x2"}, {"x1", "x2"}); }
ChartTransition inversion1() { return make_chart(1, {"1/x1"}, {"1/x1"}); }
ChartTransition triangular2() {
    return make_chart(2, {"x1", "x2 + x1^2"}, {"x1", "x2 - x1^2"});
}

VermaConfig make_config(int tensor, int det, std::string s, const Rational& h,
                        int cutoff) {
    VermaConfig cfg;
    cfg.tensor_power = tensor;
    cfg.det_power = det;
    cfg.s_rep = std::move(s);
    cfg.h = h;
    cfg.cutoff = cutoff;
    return cfg;
}

std::vector<RatFunc> samples_for(int n) {
    std::vector<RatFunc> s;
    s.push_back(RatFunc::one(n));
    s.push_back(parse_ratfunc("x1", n));
    s.push_back(n >= 2 ? parse_ratfunc("x1*x2", n) : parse_ratfunc("x1^2", n));
    s.push_back(parse_ratfunc("1/x1", n));
    return s;
}

// Direct evaluation of the function-state action: commute the mode past
// the word (only the v family reacts, producing a derivative correction at
// a shifted mode) and expand the creation-only oscillator series on the
// top. This never touches the module's annihilator machinery.
ModuleState direct_function_base(const VermaModule& mod, const RatFunc& f, long n,
                                 int wi, int si, const RatFunc& coeff) {
    ModuleState out;
    long total = -n - 1;
    if (total < 0) return out;
    int N = mod.engine().N();
    std::vector<std::pair<int, long>> parts; // (direction, positive size)
    std::function<void(int, long, long)> rec = [&](int p, long rem, long lmax) {
        if (p > N) {
            if (rem != 0) return;
            Rational c = 1;
            std::vector<long> dcount(N, 0);
            for (std::size_t i = 0; i < parts.size();) {
                std::size_t j = i;
                while (j < parts.size() && parts[j] == parts[i]) ++j;
                long mult = static_cast<long>(j - i);
                for (long q = 0; q < mult; ++q) c *= Rational(1, parts[i].second);
                c /= Rational(factorial(mult));
                dcount[parts[i].first - 1] += mult;
                i = j;
            }
            RatFunc df = f;
            for (int q = 1; q <= N && !df.is_zero(); ++q)
                for (long t = 0; t < dcount[q - 1] && !df.is_zero(); ++t)
                    df = df.derivative(q);
            if (df.is_zero()) return;
            Word w;
            for (const auto& [dir, l] : parts) w.push_back(mode_u(dir, static_cast<int>(-l)));
            out += mod.build(w, wi, si, coeff * df * c);
            return;
        }
        rec(p + 1, rem, rem); // close out this direction
        for (long l = std::min(rem, lmax); l >= 1; --l) {
            parts.emplace_back(p, l);
            rec(p, rem - l, l);
            parts.pop_back();
        }
    };
    rec(1, total, total);
    return out;
}

ModuleState direct_function_mode(const VermaModule& mod, const RatFunc& f, long n,
                                 const Word& y, int wi, int si, const RatFunc& coeff) {
    if (y.empty()) return direct_function_base(mod, f, n, wi, si, coeff);
    Mode head = y[0];
    Word rest(y.begin() + 1, y.end());
    ModuleState r = mod.apply_mode(head, direct_function_mode(mod, f, n, rest, wi, si, coeff));
    if (head.kind == Kind::V)
        r -= direct_function_mode(mod, f.derivative(head.a), n + head.level, rest, wi,
                                  si, coeff);
    return r;
}

} // namespace

TEST_CASE("configuration parsing and validation") {
    VermaConfig cfg = verma_config_from_json_text(
        R"({"W": {"tensor_power": 1, "det_power": 0}, "S": "sl2:dim2", "h": "1/2", "cutoff": 3})");
    CHECK(cfg.tensor_power == 1);
    CHECK(cfg.det_power == 0);
    CHECK(cfg.s_rep == "sl2:dim2");
    CHECK(cfg.h == Rational(1, 2));
    CHECK(cfg.cutoff == 3);

    Engine e = make_engine(2);
    VermaModule mod(e, cfg);
    CHECK(mod.dim_w() == 2);
    CHECK(mod.dim_s() == 2);
    CHECK(mod.top_dim() == 4);

    // integer h and the plain names for S
    VermaConfig c2 = verma_config_from_json_text(R"({"S": "trivial", "h": 2})");
    CHECK(c2.h == Rational(2));
    CHECK(VermaModule(e, c2).dim_s() == 1);
    VermaConfig c3 = verma_config_from_json_text(R"({"S": "sl2:dim1", "h": 0})");
    CHECK(VermaModule(e, c3).dim_s() == 1);

    CHECK_THROWS_AS(verma_config_from_json_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(verma_config_from_json_text(R"({"cutoff": "three"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(VermaModule(e, make_config(1, 0, "sl3:dim3", 0, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(VermaModule(e, make_config(1, 0, "sl2:dim5", 0, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(VermaModule(e, make_config(1, 0, "mystery", 0, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(VermaModule(e, make_config(1, 0, "trivial", 0, -1)),
                    std::invalid_argument);
}

TEST_CASE("zero modes act on the top by the configured data") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 2), 3));
    RatFunc one = RatFunc::one(2);
    RatFunc x1 = parse_ratfunc("x1", 2);

    // L(0) multiplies by h
    ModuleState m = mod.top(0, 1, x1);
    CHECK(mod.apply_mode(mode_l(0), m) == m * Rational(1, 2));

    // v_1(0) differentiates the coefficient: w (.) s (.) x1 -> w (.) s (.) 1
    CHECK(mod.apply_mode(mode_v(1, 0), m) == mod.top(0, 1, one));
    CHECK(mod.apply_mode(mode_v(2, 0), m).is_zero());

    // u_p(0) kills the top even with a variable coefficient
    CHECK(mod.apply_mode(mode_u(1, 0), m).is_zero());

    // E_12 on the natural W: sends basis vector w1 to w0 and w0 to zero
    CHECK(mod.apply_mode(mode_e(1, 2, 0), mod.top(1, 0, one)) == mod.top(0, 0, one));
    CHECK(mod.apply_mode(mode_e(1, 2, 0), mod.top(0, 0, one)).is_zero());
    CHECK(mod.apply_mode(mode_e(1, 1, 0), mod.top(0, 0, one)) == mod.top(0, 0, one));
    CHECK(mod.apply_mode(mode_e(2, 2, 0), mod.top(0, 0, one)).is_zero());

    // the auxiliary currents act on the S factor: e s1 = s0, f s0 = s1,
    // h s0 = s0, h s1 = -s1 in the natural sl2 module
    int ie = e.algebra().index_of("e");
    int ih = e.algebra().index_of("h");
    int iff = e.algebra().index_of("f");
    CHECK(mod.apply_mode(mode_g(ie, 0), mod.top(0, 1, one)) == mod.top(0, 0, one));
    CHECK(mod.apply_mode(mode_g(iff, 0), mod.top(0, 0, one)) == mod.top(0, 1, one));
    CHECK(mod.apply_mode(mode_g(ih, 0), mod.top(0, 0, one)) == mod.top(0, 0, one));
    CHECK(mod.apply_mode(mode_g(ih, 0), mod.top(0, 1, one)) ==
          mod.top(0, 1, one) * Rational(-1));

    // positive modes kill the top
    CHECK(mod.apply_mode(mode_u(1, 1), m).is_zero());
    CHECK(mod.apply_mode(mode_v(2, 3), m).is_zero());
    CHECK(mod.apply_mode(mode_e(2, 1, 2), m).is_zero());
    CHECK(mod.apply_mode(mode_g(ie, 1), m).is_zero());
    CHECK(mod.apply_mode(mode_l(1), m).is_zero());
    CHECK(mod.apply_mode(mode_l(-1), m).is_zero());
}

TEST_CASE("oscillators pair against module words as in the algebra") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "trivial", Rational(1, 2), 4));
    RatFunc one = RatFunc::one(2);

    // u_1(1) v_1(-1) top = top; mismatched directions vanish
    ModuleState v1 = mod.apply_mode(mode_v(1, -1), mod.top(0, 0, one));
    CHECK(mod.apply_mode(mode_u(1, 1), v1) == mod.top(0, 0, one));
    CHECK(mod.apply_mode(mode_u(2, 1), v1).is_zero());

    // v_1(0) reaches the coefficient through unrelated creations
    RatFunc x1 = parse_ratfunc("x1", 2);
    ModuleState w = mod.build(Word{mode_e(1, 2, -1), mode_g(0, -1)}, 1, 0, x1);
    CHECK(mod.apply_mode(mode_v(1, 0), w) ==
          mod.build(Word{mode_e(1, 2, -1), mode_g(0, -1)}, 1, 0, one));

    // a matrix current annihilator lands on the top action, not zero:
    // E_21(1) E_12(-1) top = (E_22(-0)... ) -> [E_21, E_12](0) + central;
    // on the top the bracket gives (E_22 - E_11)(0) + 1, so on w0 (weight
    // E_11 = 1): 1 - 1 + ... check concretely against hand value
    ModuleState top0 = mod.top(0, 0, one);
    ModuleState eword = mod.apply_mode(mode_e(1, 2, -1), top0);
    ModuleState res = mod.apply_mode(mode_e(2, 1, 1), eword);
    // [E_21(1), E_12(-1)] = E_22(0) - E_11(0) + 1 (level-one central term);
    // on w0 = e_1: E_22 -> 0, E_11 -> 1, so the total is 0 - 1 + 1 = 0
    CHECK(res.is_zero());
    // on w1 = e_2: E_22 -> 1, E_11 -> 0, total 1 - 0 + 1 = 2
    ModuleState eword1 = mod.apply_mode(mode_e(1, 2, -1), mod.top(1, 0, one));
    CHECK(mod.apply_mode(mode_e(2, 1, 1), eword1) == mod.top(1, 0, one) * Rational(2));
}

TEST_CASE("module action of generator states matches single modes") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 3), 6));
    RatFunc one = RatFunc::one(2);
    std::vector<RatFunc> samples = samples_for(2);

    Prng rng(2026);
    std::vector<ModuleState> targets;
    for (int i = 0; i < 4; ++i)
        targets.push_back(random_module_state(mod, rng, 2, samples));
    targets.push_back(mod.top(1, 0, parse_ratfunc("x2", 2)));

    std::vector<Mode> gens = {mode_u(1, -1), mode_v(2, -1), mode_e(2, 1, -1),
                              mode_g(1, -1)};
    for (const Mode& g : gens) {
        State a = e.generator(g, one);
        for (long n = -2; n <= 2; ++n) {
            Mode m{g.kind, static_cast<int>(n), g.a, g.b};
            for (const ModuleState& x : targets)
                CHECK(mod.act(a, n, x) == mod.apply_mode(m, x));
        }
    }
    // the Virasoro factor vector acts by the shifted modes
    for (long n = -1; n <= 3; ++n)
        for (const ModuleState& x : targets)
            CHECK(mod.act(e.omega_vir(), n, x) ==
                  mod.apply_mode(mode_l(static_cast<int>(n - 1)), x));
    // and the vacuum acts as the identity in its minus-first mode
    for (const ModuleState& x : targets) {
        CHECK(mod.act(e.vacuum(), -1, x) == x);
        CHECK(mod.act(e.vacuum(), 0, x).is_zero());
    }
}

TEST_CASE("function states multiply the top and obey the derivative rule") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 2), 4));
    RatFunc x1 = parse_ratfunc("x1", 2);
    RatFunc fx = parse_ratfunc("x1*x2 + 1/x1", 2);

    // f_(-1) on the top is multiplication on the coefficient factor
    ModuleState m = mod.top(1, 1, x1);
    CHECK(mod.function_mode(fx, -1, m) == mod.top(1, 1, RatFunc(x1 * fx)));
    // f_(n) kills the top for n >= 0
    CHECK(mod.function_mode(fx, 0, m).is_zero());
    CHECK(mod.function_mode(fx, 2, m).is_zero());

    // compatibility on the top: v_p(0) f m - f v_p(0) m = (d_p f) m
    for (int p = 1; p <= 2; ++p) {
        ModuleState lhs = mod.apply_mode(mode_v(p, 0), mod.function_mode(fx, -1, m)) -
                          mod.function_mode(fx, -1, mod.apply_mode(mode_v(p, 0), m));
        CHECK(lhs == mod.function_mode(fx.derivative(p), -1, m));
    }
}

TEST_CASE("function-state action agrees with the direct series expansion") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 2), 7));
    std::vector<RatFunc> samples = samples_for(2);

    Prng rng(99);
    int checked = 0;
    for (int trial = 0; trial < 24; ++trial) {
        int budget = static_cast<int>(rng.range(0, 2));
        Word y;
        while (budget > 0) {
            Mode m = random_mode(e, rng, budget);
            budget += m.level;
            y.push_back(m);
        }
        int wi = static_cast<int>(rng.index(2));
        int si = static_cast<int>(rng.index(2));
        RatFunc f = samples[rng.index(samples.size())];
        long n = rng.range(-3, 1);

        ModuleState via_engine =
            mod.act(e.vacuum_with(f), n, mod.build(y, wi, si, RatFunc::one(2)));
        ModuleState direct =
            direct_function_mode(mod, f, n, y, wi, si, RatFunc::one(2));
        CHECK(via_engine == direct);
        ++checked;
    }
    CHECK(checked == 24);
}

TEST_CASE("degree grading: the weight-one mode is diagonal with hand-computed top weight") {
    // Natural W has vanishing matrix-current weight (the quadratic Casimir
    // term (1 + N)/(2(N+1)) cancels the linear -1/2 trace term), trivial S
    // contributes nothing, so the top eigenvalue is h alone.
    Engine e2 = make_engine(2);
    VermaModule nat(e2, make_config(1, 0, "trivial", Rational(1, 2), 6));
    RatFunc one2 = RatFunc::one(2);
    State omega2 = e2.omega();
    for (int wi = 0; wi < 2; ++wi) {
        ModuleState t = nat.top(wi, 0, one2);
        CHECK(nat.act(omega2, 1, t) == t * Rational(1, 2));
    }

    // det^2 contributes N m (m-1) / 2 = 1, the natural sl2 module carries
    // Casimir 3/2 over 2(c + 2) = 6, i.e. 1/4, and h = 1/3:
    // total 1 + 1/4 + 1/3 = 19/12.
    Engine e1 = make_engine(1);
    VermaModule det2(e1, make_config(0, 2, "sl2:dim2", Rational(1, 3), 6));
    RatFunc one1 = RatFunc::one(1);
    State omega1 = e1.omega();
    Rational weight = Rational(19, 12);
    for (int si = 0; si < 2; ++si) {
        ModuleState t = det2.top(0, si, one1);
        CHECK(det2.act(omega1, 1, t) == t * weight);
    }

    // on a degree-d word the eigenvalue shifts by exactly d
    std::vector<Word> words = {
        {mode_u(1, -1)},
        {mode_v(1, -1)},
        {mode_g(2, -1)},
        {mode_e(1, 1, -2)},
        {mode_l(-2)},
        {mode_u(1, -1), mode_v(1, -1)},
        {mode_g(0, -1), mode_g(2, -2)},
    };
    for (const Word& y : words) {
        ModuleState m = det2.build(y, 0, 1, one1);
        CHECK(det2.act(omega1, 1, m) == m * Rational(weight + word_degree(y)));
    }
    // a coefficient does not disturb the grading
    ModuleState mx = det2.build({mode_l(-2)}, 0, 0, parse_ratfunc("1/x1", 1));
    CHECK(det2.act(omega1, 1, mx) == mx * Rational(weight + 2));
}

TEST_CASE("commutators of algebra states hold on module elements") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "trivial", Rational(1, 2), 12));
    std::vector<RatFunc> samples = samples_for(2);

    Prng rng(424242);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        State a = random_state(e, rng, 2, samples);
        State b = random_state(e, rng, 2, samples);
        ModuleState x = random_module_state(mod, rng, 2, samples);
        long m = rng.range(-1, 1);
        long k = rng.range(-1, 1);
        if (a.is_zero() || b.is_zero() || x.is_zero()) continue;

        ModuleState lhs =
            mod.act(a, m, mod.act(b, k, x)) - mod.act(b, k, mod.act(a, m, x));
        ModuleState rhs;
        for (long n = 0; n <= a.degree() + b.degree() - 1; ++n) {
            Rational cb = binomial(m, n);
            if (cb == 0) continue;
            State anb = e.nth_product(a, n, b);
            if (anb.is_zero()) continue;
            rhs += mod.act(anb, m + k - n, x) * cb;
        }
        CHECK(lhs == rhs);
        ++checked;
    }
    CHECK(checked >= 9);
}

TEST_CASE("coordinate transport of the top and its inverse") {
    Engine e = make_engine(1);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 2), 8));
    ChartMap fwd(e, inversion1());
    ChartMap back(e, swapped(inversion1()));
    RatFunc one = RatFunc::one(1);

    // frozen: the top twists by the forward Jacobian of x -> 1/x
    CHECK(mod.psi(fwd, mod.top(0, 1, one)) ==
          mod.top(0, 1, parse_ratfunc("-1/x1^2", 1)));
    // a coefficient is pulled back alongside
    CHECK(mod.psi(fwd, mod.top(0, 0, parse_ratfunc("x1^2", 1))) ==
          mod.top(0, 0, parse_ratfunc("-1/x1^4", 1)));

    // identity transport fixes everything
    Engine e2 = make_engine(2);
    VermaModule mod2(e2, make_config(1, 0, "trivial", Rational(1, 3), 8));
    ChartMap id2(e2, identity2());
    std::vector<RatFunc> samples2 = samples_for(2);
    Prng rng2(7);
    for (int i = 0; i < 6; ++i) {
        ModuleState m = random_module_state(mod2, rng2, 2, samples2);
        CHECK(mod2.psi(id2, m) == m);
    }

    // the swapped transition inverts the transport, including on words
    std::vector<RatFunc> samples1 = samples_for(1);
    Prng rng(31337);
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        ModuleState m = random_module_state(mod, rng, 2, samples1);
        CHECK(mod.psi(back, mod.psi(fwd, m)) == m);
        ++checked;
    }
    CHECK(checked == 20);

    // and the same on the two-variable triangular chart
    ChartMap tri(e2, triangular2());
    ChartMap tri_back(e2, swapped(triangular2()));
    for (int i = 0; i < 10; ++i) {
        ModuleState m = random_module_state(mod2, rng, 2, samples2);
        CHECK(mod2.psi(tri_back, mod2.psi(tri, m)) == m);
    }
}

TEST_CASE("transport intertwines every generator mode with its image") {
    Engine e = make_engine(1);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 2), 10));
    ChartMap fwd(e, inversion1());
    std::vector<RatFunc> samples = samples_for(1);

    Prng rng(5150);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        ModuleState m = random_module_state(mod, rng, 2, samples);
        if (m.is_zero()) continue;
        // draw any mode, creation or annihilator
        int kindpick = static_cast<int>(rng.range(0, 4));
        int lvl = static_cast<int>(rng.range(-2, 2));
        Mode md;
        switch (kindpick) {
            case 0: md = mode_u(1, lvl); break;
            case 1: md = mode_v(1, lvl); break;
            case 2: md = mode_e(1, 1, lvl); break;
            case 3: md = mode_g(static_cast<int>(rng.index(3)), lvl); break;
            default: md = mode_l(lvl < -1 ? lvl : lvl - 2); break;
        }
        long khat = md.kind == Kind::L ? md.level + 1 : md.level;
        ModuleState lhs = mod.psi(fwd, mod.apply_mode(md, m));
        ModuleState rhs = mod.act(fwd.gen_image(md), khat, mod.psi(fwd, m));
        CHECK(lhs == rhs);
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("top equivariance reports pass on the reference transitions") {
    Engine e1 = make_engine(1);
    VermaModule m1(e1, make_config(1, 0, "sl2:dim2", Rational(1, 2), 8));
    ChartMap inv(e1, inversion1());
    auto r1 = m1.verify_top_equivariance(inv, samples_for(1));
    CHECK(!r1.empty());
    CHECK(all_pass(r1));

    Engine e2 = make_engine(2);
    VermaModule m2(e2, make_config(1, 0, "trivial", Rational(1, 3), 8));
    ChartMap id2(e2, identity2());
    ChartMap tri(e2, triangular2());
    CHECK(all_pass(m2.verify_top_equivariance(id2, samples_for(2))));
    auto r2 = m2.verify_top_equivariance(tri, samples_for(2));
    CHECK(static_cast<int>(r2.size()) == (2 + 4) * 2 * 4);
    CHECK(all_pass(r2));

    // determinant twists ride through the same check
    VermaModule m3(e2, make_config(0, 1, "trivial", 0, 8));
    CHECK(all_pass(m3.verify_top_equivariance(tri, samples_for(2))));
}

TEST_CASE("graded dimensions: closed count equals explicit word enumeration") {
    Engine e1 = make_engine(1);
    VermaModule mod(e1, make_config(1, 0, "trivial", Rational(1, 2), 3));
    // 1-variable reference: per level the generators are u, v, E_11 and the
    // three sl2 currents, plus the Virasoro mode from level 2 on
    std::vector<long> ch = mod.character();
    CHECK(ch == std::vector<long>{1, 6, 28, 105});

    // degree-zero and degree-one closed forms in two variables
    Engine e2 = make_engine(2);
    VermaModule nat(e2, make_config(1, 0, "sl2:dim2", 0, 2));
    std::vector<long> ch2 = nat.character();
    CHECK(ch2[0] == 4);
    CHECK(ch2[1] == (2 * 2 + 4 + 3) * 4);

    // independent oracle: enumerate canonical words explicitly and build
    // each one through the creation machinery, confirming reachability
    auto enumerate = [](const Engine& e, const VermaModule& m, int maxdeg) {
        std::vector<Mode> gens;
        for (int lvl = 1; lvl <= maxdeg; ++lvl) {
            for (int p = 1; p <= e.N(); ++p) gens.push_back(mode_u(p, -lvl));
            for (int p = 1; p <= e.N(); ++p) gens.push_back(mode_v(p, -lvl));
            for (int a = 1; a <= e.N(); ++a)
                for (int b = 1; b <= e.N(); ++b) gens.push_back(mode_e(a, b, -lvl));
            for (int i = 0; i < e.algebra().dim(); ++i) gens.push_back(mode_g(i, -lvl));
            if (lvl >= 2) gens.push_back(mode_l(-lvl));
        }
        std::vector<long> counts(maxdeg + 1, 0);
        RatFunc one = RatFunc::one(e.N());
        std::function<void(std::size_t, Word&, long)> rec =
            [&](std::size_t from, Word& w, long deg) {
                counts[deg] += m.top_dim();
                // spot-check reachability: the straightened build of a
                // canonical word is exactly that word
                if (!w.empty()) {
                    Word sorted = w;
                    std::sort(sorted.begin(), sorted.end(),
                              [](const Mode& x, const Mode& y) { return mode_less(x, y); });
                    ModuleState built = m.build(sorted, 0, 0, one);
                    ModuleState expect;
                    expect.add(sorted, 0, one);
                    if (built != expect) counts[0] = -1000; // loud failure
                }
                for (std::size_t i = from; i < gens.size(); ++i) {
                    long d = -gens[i].level;
                    if (deg + d > maxdeg) continue;
                    w.push_back(gens[i]);
                    rec(i, w, deg + d);
                    w.pop_back();
                }
            };
        Word w;
        rec(0, w, 0);
        return counts;
    };
    CHECK(enumerate(e1, mod, 3) == ch);
    CHECK(enumerate(e2, nat, 2) == ch2);
}

TEST_CASE("creations past the cutoff raise a loud truncation error") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "trivial", Rational(1, 2), 2));
    RatFunc one = RatFunc::one(2);

    ModuleState deg2 = mod.build({mode_u(1, -1), mode_v(2, -1)}, 0, 0, one);
    CHECK(deg2.degree() == 2);
    CHECK_THROWS_AS(mod.apply_mode(mode_u(1, -1), deg2), std::overflow_error);
    CHECK_THROWS_AS(mod.build({mode_l(-2), mode_g(0, -1)}, 0, 0, one),
                    std::overflow_error);
    CHECK_THROWS_AS(mod.act(e.generator(mode_u(1, -1), one), -2, deg2),
                    std::overflow_error);
    // annihilators and in-budget creations still work
    CHECK_NOTHROW(mod.apply_mode(mode_u(1, 1), deg2));
    CHECK_NOTHROW(mod.apply_mode(mode_g(1, -1), mod.top(0, 0, one)));
}

TEST_CASE("module text rendering") {
    Engine e = make_engine(2);
    VermaModule mod(e, make_config(1, 0, "sl2:dim2", Rational(1, 2), 3));
    CHECK(mod.str(mod.zero()) == "0");
    ModuleState m = mod.build({mode_u(1, -1)}, 1, 0, parse_ratfunc("x2", 2));
    CHECK(mod.str(m) == "u1(-1) (w1*s0) | x2");
    CHECK(mod.str(mod.top(0, 1, RatFunc::one(2))) == "(w0*s1) | 1");
}
