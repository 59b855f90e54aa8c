#include "vx/suites.hpp"

#include "vx/loop.hpp"
#include "vx/prng.hpp"
#include "vx/sampler.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace vx {
namespace {

// ---------------------------------------------------------------------
// shared helpers

Engine engine_at(const SuiteConfig& cfg, int n) {
    EngineConfig ec = cfg.engine;
    ec.N = n;
    return Engine(ec);
}

std::string tag(int i, int width = 3) {
    std::string s = std::to_string(i);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

std::string clip(std::string s, std::size_t cap = 400) {
    if (s.size() > cap) {
        s.resize(cap);
        s += " ...";
    }
    return s;
}

struct Labeled {
    std::string label;
    State state;
};

// Degree-one generator states plus the conformal vector and one pure
// function state per sample; the labels double as check-id fragments.
std::vector<Labeled> generator_states(const Engine& eng,
                                      const std::vector<RatFunc>& samples) {
    std::vector<Labeled> out;
    const RatFunc one = RatFunc::one(eng.N());
    for (int p = 1; p <= eng.N(); ++p)
        out.push_back({"u" + std::to_string(p), eng.generator(mode_u(p, -1), one)});
    for (int p = 1; p <= eng.N(); ++p)
        out.push_back({"v" + std::to_string(p), eng.generator(mode_v(p, -1), one)});
    for (int a = 1; a <= eng.N(); ++a)
        for (int b = 1; b <= eng.N(); ++b)
            out.push_back({"E" + std::to_string(a) + std::to_string(b),
                           eng.generator(mode_e(a, b, -1), one)});
    for (int i = 0; i < eng.algebra().dim(); ++i)
        out.push_back({"G" + eng.algebra().labels()[i],
                       eng.generator(mode_g(i, -1), one)});
    out.push_back({"omega", eng.omega()});
    for (std::size_t fi = 0; fi < samples.size(); ++fi)
        out.push_back({"f" + std::to_string(fi), eng.vacuum_with(samples[fi])});
    return out;
}

// One consolidated record over several (lhs, rhs) state pairs: the first
// mismatch is printed, otherwise a stable note records how many identities
// were compared.
CheckResult compare_row(const Engine& eng, std::string id, std::string ref,
                        const std::vector<std::pair<State, State>>& sides) {
    for (const auto& [l, r] : sides)
        if (l != r)
            return {std::move(id), std::move(ref), false, clip(eng.str(l)),
                    clip(eng.str(r))};
    std::string note = "agree (" + std::to_string(sides.size()) + " identities)";
    return {std::move(id), std::move(ref), true, note, note};
}

// ---------------------------------------------------------------------
// axioms: vacuum/creation laws, grading, translation covariance, the
// conformal self-products, the current commutation relations for each
// dimension up to three, and the seeded main-identity checks.

std::vector<CheckResult> axioms_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Engine eng(cfg.engine);
    const std::vector<RatFunc> samples = samples_at(cfg, eng.N());
    Prng rng(cfg.seed + 11);

    std::vector<Labeled> gens = generator_states(eng, samples);
    std::vector<Labeled> states = gens;
    for (int i = 0; i < 50; ++i)
        states.push_back(
            {"r" + tag(i), random_state(eng, rng, cfg.degree_bound, samples)});

    const State vac = eng.vacuum();
    for (const auto& [label, a] : states) {
        std::vector<std::pair<State, State>> sides;
        sides.push_back({eng.nth_product(a, -1, vac), a});
        long d = std::max<long>(a.degree(), 0);
        for (long n = 0; n <= d + 1; ++n)
            sides.push_back({eng.nth_product(a, n, vac), eng.zero()});
        sides.push_back({eng.nth_product(a, -2, vac), eng.translate(a)});
        sides.push_back({eng.nth_product(vac, -1, a), a});
        sides.push_back({eng.nth_product(vac, 0, a), eng.zero()});
        out.push_back(compare_row(eng, "vacuum/" + label,
                                  "vacuum and creation laws", sides));
    }

    const State om = eng.omega();
    for (const auto& [label, a] : states) {
        long d = std::max<long>(a.degree(), 0);
        out.push_back(compare_row(eng, "grading/" + label,
                                  "first conformal mode reads the degree",
                                  {{eng.nth_product(om, 1, a), a * Rational(d)}}));
        out.push_back(compare_row(eng, "translation/" + label,
                                  "zeroth conformal mode is the translation",
                                  {{eng.nth_product(om, 0, a), eng.translate(a)}}));
    }

    // translation is a derivation of every product, and shifting a mode of
    // a translated state lowers the index
    auto derivation_row = [&](const Labeled& x, const Labeled& y) {
        std::vector<std::pair<State, State>> sides;
        State tx = eng.translate(x.state);
        State ty = eng.translate(y.state);
        for (long n = -2; n <= 1; ++n) {
            State prod = eng.nth_product(x.state, n, y.state);
            sides.push_back({eng.translate(prod),
                             eng.nth_product(tx, n, y.state) +
                                 eng.nth_product(x.state, n, ty)});
            sides.push_back({eng.nth_product(tx, n, y.state),
                             eng.nth_product(x.state, n - 1, y.state) *
                                 Rational(-n)});
        }
        out.push_back(compare_row(eng, "derivation/" + x.label + "|" + y.label,
                                  "translation acts as a derivation", sides));
    };
    for (const auto& x : gens)
        for (const auto& y : gens) derivation_row(x, y);
    for (std::size_t i = gens.size(); i < states.size(); ++i) {
        derivation_row(states[i], gens[0]);
        derivation_row(states[i], gens.back());
    }

    // conformal self-products
    out.push_back(compare_row(eng, "self/n0", "conformal vector reproduces itself",
                              {{eng.nth_product(om, 0, om), eng.translate(om)}}));
    out.push_back(compare_row(eng, "self/n1", "conformal vector has degree two",
                              {{eng.nth_product(om, 1, om), om * Rational(2)}}));
    out.push_back(compare_row(eng, "self/n2", "conformal self-product vanishes",
                              {{eng.nth_product(om, 2, om), eng.zero()}}));
    out.push_back(compare_row(eng, "self/n3", "total central charge is zero",
                              {{eng.nth_product(om, 3, om), eng.zero()}}));

    // current relations for every index combination in dimensions 1..3
    for (int k = 1; k <= 3; ++k) {
        Engine ek = engine_at(cfg, k);
        const RatFunc onek = RatFunc::one(k);
        const State vack = ek.vacuum();
        auto egen = [&](int a, int b) { return ek.generator(mode_e(a, b, -1), onek); };
        for (int a = 1; a <= k; ++a)
            for (int b = 1; b <= k; ++b)
                for (int c = 1; c <= k; ++c)
                    for (int d2 = 1; d2 <= k; ++d2) {
                        State x = egen(a, b), y = egen(c, d2);
                        State e0 = ek.zero();
                        if (c == b) e0 += egen(a, d2);
                        if (a == d2) e0 -= egen(c, b);
                        State e1 = (c == b && a == d2) ? vack : ek.zero();
                        out.push_back(compare_row(
                            ek,
                            "affine/N" + std::to_string(k) + "/E" +
                                std::to_string(a) + std::to_string(b) + "|E" +
                                std::to_string(c) + std::to_string(d2),
                            "matrix currents close with the level term",
                            {{ek.nth_product(x, 0, y), e0},
                             {ek.nth_product(x, 1, y), e1},
                             {ek.nth_product(x, 2, y), ek.zero()}}));
                    }
        const LieAlgebra& la = ek.algebra();
        for (int i = 0; i < la.dim(); ++i)
            for (int j = 0; j < la.dim(); ++j) {
                State x = ek.generator(mode_g(i, -1), onek);
                State y = ek.generator(mode_g(j, -1), onek);
                State e0 = ek.zero();
                for (const auto& [idx, coef] : la.bracket(i, j))
                    e0 += ek.generator(mode_g(idx, -1), onek) * coef;
                State e1 = vack * Rational(ek.level() * la.form(i, j));
                out.push_back(compare_row(
                    ek,
                    "affine/N" + std::to_string(k) + "/G" + la.labels()[i] + "|G" +
                        la.labels()[j],
                    "auxiliary currents close with the level term",
                    {{ek.nth_product(x, 0, y), e0},
                     {ek.nth_product(x, 1, y), e1},
                     {ek.nth_product(x, 2, y), ek.zero()}}));
            }
        for (int p = 1; p <= k; ++p)
            for (int q = 1; q <= k; ++q) {
                State up = ek.generator(mode_u(p, -1), onek);
                State vq = ek.generator(mode_v(q, -1), onek);
                State e1 = (p == q) ? vack : ek.zero();
                out.push_back(compare_row(
                    ek,
                    "affine/N" + std::to_string(k) + "/u" + std::to_string(p) +
                        "|v" + std::to_string(q),
                    "oscillator pairing",
                    {{ek.nth_product(up, 0, vq), ek.zero()},
                     {ek.nth_product(up, 1, vq), e1},
                     {ek.nth_product(vq, 1, up), e1}}));
            }
    }

    // seeded instances of the main recursion identity
    for (int t = 0; t < 200; ++t) {
        State a = random_state(eng, rng, cfg.degree_bound, samples);
        State b = random_state(eng, rng, cfg.degree_bound, samples);
        State c = random_state(eng, rng, cfg.degree_bound, samples);
        long k = rng.range(-3, 3);
        long n = rng.range(-3, 3);
        auto [lhs, rhs] = eng.borcherds_sides(a, k, b, n, c);
        out.push_back(compare_row(eng, "borcherds/t" + tag(t),
                                  "main recursion identity", {{lhs, rhs}}));
    }

    // seeded instances of the commutator expansion, each on five states
    for (int t = 0; t < 100; ++t) {
        State a = random_state(eng, rng, cfg.degree_bound, samples);
        State b = random_state(eng, rng, cfg.degree_bound, samples);
        long m = rng.range(-2, 2);
        long k = rng.range(-2, 2);
        std::vector<std::pair<State, State>> sides;
        for (int s = 0; s < 5; ++s) {
            State x = random_state(eng, rng, 3, samples);
            sides.push_back(eng.commutator_sides(a, m, b, k, x));
        }
        out.push_back(compare_row(eng, "commutator/p" + tag(t),
                                  "mode commutator expansion", sides));
    }
    return out;
}

// ---------------------------------------------------------------------
// gluing: each transition induces an algebra homomorphism.

std::vector<CheckResult> gluing_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < cfg.charts.size(); ++i) {
        const ChartTransition& t = cfg.charts[i];
        Engine eng = engine_at(cfg, t.n);
        std::vector<std::string> fails;
        bool ok = verify_gluing(eng, t, samples_at(cfg, t.n), &fails);
        std::string lhs = ok ? "all generator products transform consistently"
                             : clip([&] {
                                   std::string s;
                                   for (const auto& f : fails) {
                                       if (!s.empty()) s += " ; ";
                                       s += f;
                                   }
                                   return s;
                               }(), 800);
        out.push_back({"chart/" + cfg.chart_names[i],
                       "coordinate change induces a homomorphism", ok, lhs,
                       std::to_string(fails.size()) + " mismatches"});
    }
    return out;
}

// ---------------------------------------------------------------------
// cocycle: composing two transitions matches the composed transition, and
// a transition against its own inverse is the identity.

std::vector<CheckResult> cocycle_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < cfg.charts.size(); ++i) {
        const ChartTransition& ti = cfg.charts[i];
        Engine eng = engine_at(cfg, ti.n);
        std::vector<RatFunc> samples = samples_at(cfg, ti.n);
        std::vector<Labeled> gens = generator_states(eng, samples);

        ChartMap fwd(eng, ti);
        ChartMap back(eng, swapped(ti));
        for (const auto& [label, g] : gens)
            out.push_back(compare_row(
                eng, "inverse/" + cfg.chart_names[i] + "/" + label,
                "transition composed with its inverse is the identity",
                {{fwd.phi(back.phi(g)), g}}));

        for (std::size_t j = 0; j < cfg.charts.size(); ++j) {
            const ChartTransition& tj = cfg.charts[j];
            if (tj.n != ti.n) continue;
            std::string pair_id =
                "pair/" + cfg.chart_names[i] + "|" + cfg.chart_names[j];
            try {
                ChartMap a(eng, ti), b(eng, tj);
                ChartMap c(eng, composed(ti, tj));
                for (const auto& [label, g] : gens)
                    out.push_back(compare_row(
                        eng, pair_id + "/" + label,
                        "homomorphisms compose along transitions",
                        {{a.phi(b.phi(g)), c.phi(g)}}));
            } catch (const std::exception& e) {
                out.push_back({pair_id + "/compose",
                               "homomorphisms compose along transitions", false,
                               clip(e.what()), "composable transition"});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// omega: how each conformal factor transports through a transition.

std::vector<CheckResult> omega_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < cfg.charts.size(); ++i) {
        const ChartTransition& t = cfg.charts[i];
        Engine eng = engine_at(cfg, t.n);
        ChartMap cm(eng, t);
        const State corr = cm.correction();
        const std::string base = "factor/" + cfg.chart_names[i] + "/";
        out.push_back(compare_row(
            eng, base + "oscillator",
            "oscillator conformal vector shifts down by the correction",
            {{cm.phi(eng.omega_hei()), eng.omega_hei() - corr}}));
        out.push_back(compare_row(
            eng, base + "matrix",
            "matrix conformal vector shifts up by the correction",
            {{cm.phi(eng.omega_gl()), eng.omega_gl() + corr}}));
        out.push_back(compare_row(eng, base + "current",
                                  "auxiliary-current conformal vector is fixed",
                                  {{cm.phi(eng.omega_g()), eng.omega_g()}}));
        out.push_back(compare_row(eng, base + "virasoro",
                                  "pure Virasoro conformal vector is fixed",
                                  {{cm.phi(eng.omega_vir()), eng.omega_vir()}}));
        out.push_back(compare_row(eng, base + "total",
                                  "total conformal vector is preserved",
                                  {{cm.phi(eng.omega()), eng.omega()}}));
    }
    return out;
}

// ---------------------------------------------------------------------
// relations: the pairwise product-identity families of the loop algebra,
// seeded operator-level commutators, and triviality of exact one-forms.

std::vector<CheckResult> relations_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Engine eng(cfg.engine);
    const std::vector<RatFunc> samples = samples_at(cfg, eng.N());
    for (const auto& family : relation_families()) {
        auto rows = verify_relation_family(eng, family, samples);
        out.insert(out.end(), rows.begin(), rows.end());
    }
    auto ops = relation_operator_checks(eng, samples, cfg.seed + 55, 50);
    out.insert(out.end(), ops.begin(), ops.end());
    auto exact = verify_exact_form_triviality(eng, samples, -2, 2, cfg.seed + 56, 20);
    out.insert(out.end(), exact.begin(), exact.end());
    return out;
}

// ---------------------------------------------------------------------
// equivariance: transporting a loop element and then representing it
// agrees with representing it and then applying the chart homomorphism;
// the two vector-field images are also spelled out explicitly.

std::vector<CheckResult> equivariance_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < cfg.charts.size(); ++i) {
        const ChartTransition& t = cfg.charts[i];
        Engine eng = engine_at(cfg, t.n);
        std::vector<RatFunc> samples = samples_at(cfg, t.n);
        const std::string name = cfg.chart_names[i];

        for (auto& r : verify_equivariance(eng, t, samples)) {
            r.id = "theta/" + name + "/" + r.id;
            out.push_back(std::move(r));
        }

        ChartMap cm(eng, t);
        const int n = eng.N();
        for (std::size_t fi = 0; fi < samples.size(); ++fi) {
            const RatFunc& f = samples[fi];
            RatFunc pf = cm.pull(f);

            // image of a coordinate vector field, written out: the
            // oscillator part twists by the inverse Jacobian and the
            // matrix part absorbs its derivatives
            for (int a = 1; a <= n; ++a) {
                State lhs = cm.phi(
                    rho_state(eng, LoopElement{LoopKind::VectDx, a, 0, f}));
                State rhs = eng.zero();
                for (int s = 1; s <= n; ++s) {
                    RatFunc g = cm.jac_inverse()[a - 1][s - 1] * pf;
                    rhs += eng.generator(mode_v(s, -1), g);
                    for (int k = 1; k <= n; ++k)
                        rhs += eng.generator(mode_e(k, s, -1), g.derivative(k));
                }
                out.push_back(compare_row(
                    eng, "display/" + name + "/dx" + std::to_string(a) + "/f" +
                             std::to_string(fi),
                    "coordinate vector field transports by the written-out formula",
                    {{lhs, rhs}}));
            }

            // image of the loop vector field, written out term by term
            {
                State lhs = cm.phi(
                    rho_state(eng, LoopElement{LoopKind::VectDt, 0, 0, f}));
                State rhs = eng.nth_product(eng.omega(), -1, eng.vacuum_with(pf));
                for (int s = 1; s <= n; ++s)
                    for (int k = 1; k <= n; ++k)
                        rhs += eng.normal_order(Word{mode_u(k, -1), mode_e(s, k, -1)},
                                                pf.derivative(s));
                for (int p = 1; p <= n; ++p)
                    rhs -= eng.generator(mode_u(p, -2), pf.derivative(p));
                rhs = eng.zero() - rhs;
                out.push_back(compare_row(
                    eng, "display/" + name + "/dt/f" + std::to_string(fi),
                    "loop vector field transports by the written-out formula",
                    {{lhs, rhs}}));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// verma: module transport round trips, intertwines every generator mode,
// and fixes the top action; function states match their direct expansion;
// graded dimensions match explicit enumeration.

// Independent expansion of a function state acting on a plain top vector:
// a sum over direction-colored partitions of the degree, with one inverse
// factorial per repeated part and one derivative per part color.
ModuleState series_base(const VermaModule& mod, const RatFunc& f, long n, int wi,
                        int si, const RatFunc& coeff) {
    ModuleState out;
    long total = -n - 1;
    if (total < 0) return out;
    int N = mod.engine().N();
    std::vector<std::pair<int, long>> parts;
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
                for (long r = 0; r < dcount[q - 1] && !df.is_zero(); ++r)
                    df = df.derivative(q);
            if (df.is_zero()) return;
            Word w;
            for (const auto& [dir, l] : parts)
                w.push_back(mode_u(dir, static_cast<int>(-l)));
            out += mod.build(w, wi, si, coeff * df * c);
            return;
        }
        rec(p + 1, rem, rem);
        for (long l = std::min(rem, lmax); l >= 1; --l) {
            parts.emplace_back(p, l);
            rec(p, rem - l, l);
            parts.pop_back();
        }
    };
    rec(1, total, total);
    return out;
}

// ... and on a word-dressed top vector, by commuting the head mode out
// (only the derivative modes interact with a function state).
ModuleState series_mode(const VermaModule& mod, const RatFunc& f, long n,
                        const Word& y, int wi, int si, const RatFunc& coeff) {
    if (y.empty()) return series_base(mod, f, n, wi, si, coeff);
    Mode head = y[0];
    Word rest(y.begin() + 1, y.end());
    ModuleState r =
        mod.apply_mode(head, series_mode(mod, f, n, rest, wi, si, coeff));
    if (head.kind == Kind::V)
        r -= series_mode(mod, f.derivative(head.a), n + head.level, rest, wi, si,
                         coeff);
    return r;
}

// Count the canonical creation words of each degree by direct enumeration
// over the mode alphabet (independent of the closed-form product count).
std::vector<long> enumerated_character(const VermaModule& mod) {
    const Engine& eng = mod.engine();
    int cutoff = mod.config().cutoff;
    std::vector<Mode> alphabet;
    for (int l = -1; l >= -cutoff; --l) {
        for (int p = 1; p <= eng.N(); ++p) alphabet.push_back(mode_u(p, l));
        for (int p = 1; p <= eng.N(); ++p) alphabet.push_back(mode_v(p, l));
        for (int a = 1; a <= eng.N(); ++a)
            for (int b = 1; b <= eng.N(); ++b) alphabet.push_back(mode_e(a, b, l));
        for (int i = 0; i < eng.algebra().dim(); ++i)
            alphabet.push_back(mode_g(i, l));
        if (l <= -2) alphabet.push_back(mode_l(l));
    }
    std::vector<long> counts(cutoff + 1, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int deg) {
        ++counts[deg];
        for (std::size_t i = pos; i < alphabet.size(); ++i) {
            int d = deg - alphabet[i].level;
            if (d <= cutoff) rec(i, d);
        }
    };
    rec(0, 0);
    for (auto& c : counts) c *= mod.top_dim();
    return counts;
}

std::vector<CheckResult> verma_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    Engine eng(cfg.engine);
    const std::vector<RatFunc> samples = samples_at(cfg, eng.N());
    Prng rng(cfg.seed + 77);

    auto module_row = [](const VermaModule& mod, std::string id, std::string ref,
                         const ModuleState& lhs, const ModuleState& rhs) {
        bool ok = lhs == rhs;
        return CheckResult{std::move(id), std::move(ref), ok,
                           clip(mod.str(lhs)), clip(mod.str(rhs))};
    };

    for (std::size_t ci = 0; ci < cfg.charts.size(); ++ci) {
        const ChartTransition& t = cfg.charts[ci];
        Engine en = engine_at(cfg, t.n);
        VermaModule mn(en, cfg.verma);
        ChartMap fwd(en, t);
        ChartMap back(en, swapped(t));
        std::vector<RatFunc> sn = samples_at(cfg, t.n);
        const std::string name = cfg.chart_names[ci];

        for (int k = 0; k < 20; ++k) {
            ModuleState m = random_module_state(mn, rng, 2, sn);
            out.push_back(module_row(mn, "roundtrip/" + name + "/m" + tag(k, 2),
                                     "module transport round-trips to the identity",
                                     mn.psi(back, mn.psi(fwd, m)), m));
        }

        for (auto& r : mn.verify_top_equivariance(fwd, sn)) {
            r.id = "top/" + name + "/" + r.id;
            out.push_back(std::move(r));
        }

        for (int k = 0; k < 10; ++k) {
            ModuleState m = random_module_state(mn, rng, 2, sn);
            int pick = static_cast<int>(rng.range(0, 4));
            int lvl = static_cast<int>(rng.range(-2, 2));
            Mode md;
            switch (pick) {
                case 0: md = mode_u(static_cast<int>(rng.range(1, en.N())), lvl); break;
                case 1: md = mode_v(static_cast<int>(rng.range(1, en.N())), lvl); break;
                case 2:
                    md = mode_e(static_cast<int>(rng.range(1, en.N())),
                                static_cast<int>(rng.range(1, en.N())), lvl);
                    break;
                case 3:
                    md = mode_g(static_cast<int>(rng.index(en.algebra().dim())), lvl);
                    break;
                default:
                    // keep the creation side of the alphabet (level <= -2)
                    // while still exercising the level -1 annihilator
                    md = mode_l(lvl <= -2 ? lvl : (lvl >= 1 ? -1 : -3));
                    break;
            }
            long khat = (md.kind == Kind::L) ? md.level + 1 : md.level;
            out.push_back(module_row(
                mn, "intertwine/" + name + "/k" + tag(k, 2),
                "transport intertwines every generator mode",
                mn.psi(fwd, mn.apply_mode(md, m)),
                mn.act(fwd.gen_image(md), khat, mn.psi(fwd, m))));
        }
    }

    // function states on the reference module: module action versus the
    // independent series expansion
    VermaModule mod(eng, cfg.verma);
    for (int k = 0; k < 20; ++k) {
        int budget = static_cast<int>(rng.range(0, 2));
        Word w;
        while (budget > 0) {
            Mode m = random_mode(eng, rng, budget);
            budget += m.level;
            w.push_back(m);
        }
        int wi = static_cast<int>(rng.index(mod.dim_w()));
        int si = static_cast<int>(rng.index(mod.dim_s()));
        const RatFunc& coeff = samples[rng.index(samples.size())];
        const RatFunc& f = samples[rng.index(samples.size())];
        long n = rng.range(-3, 1);
        ModuleState via_module =
            mod.function_mode(f, n, mod.build(w, wi, si, coeff));
        ModuleState direct = series_mode(mod, f, n, w, wi, si, coeff);
        out.push_back(module_row(mod, "series/t" + tag(k, 2),
                                 "function states act by the direct expansion",
                                 via_module, direct));
    }

    // graded dimensions against explicit enumeration
    VermaConfig c3 = cfg.verma;
    c3.cutoff = 3;
    VermaModule m3(eng, c3);
    std::vector<long> ch = m3.character();
    std::vector<long> expect = enumerated_character(m3);
    for (int d = 0; d <= 3; ++d)
        out.push_back({"character/deg" + std::to_string(d),
                       "graded dimension matches explicit enumeration",
                       ch[d] == expect[d], std::to_string(ch[d]),
                       std::to_string(expect[d])});
    return out;
}

} // namespace

// ---------------------------------------------------------------------
// configuration, dispatch, reports

const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> names = {
        "axioms", "gluing",       "cocycle", "omega",
        "relations", "equivariance", "verma"};
    return names;
}

std::vector<RatFunc> samples_at(const SuiteConfig& cfg, int n) {
    std::vector<RatFunc> out;
    for (const auto& text : cfg.sample_texts) {
        try {
            out.push_back(parse_ratfunc(text, n));
        } catch (const std::exception&) {
            // sample uses more variables than this dimension has
        }
    }
    if (out.empty()) out.push_back(RatFunc::one(n));
    return out;
}

EngineConfig engine_config_from_json_text(const std::string& text, EngineConfig base) {
    nlohmann::json je;
    try {
        je = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("engine block is not valid JSON: ") +
                                    e.what());
    }
    if (!je.is_object())
        throw std::invalid_argument("engine block must be a JSON object");
    try {
        base.N = je.value("N", base.N);
        if (je.contains("algebra")) {
            if (je.at("algebra").is_string()) {
                std::string a = je.at("algebra").get<std::string>();
                if (a == "sl2")
                    base.algebra = sl2();
                else if (a == "sl3")
                    base.algebra = sl3();
                else
                    throw std::invalid_argument("unknown algebra name: " + a);
            } else {
                base.algebra = lie_from_json_text(je.at("algebra").dump());
            }
        }
        if (je.contains("level"))
            base.level = je.at("level").is_string()
                             ? parse_rational(je.at("level").get<std::string>())
                             : Rational(je.at("level").get<long>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed engine block: ") + e.what());
    }
    return base;
}

SuiteConfig suite_config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("run config is not valid JSON: ") +
                                    e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("run config must be a JSON object");

    SuiteConfig cfg;
    cfg.engine.N = 2;
    cfg.verma.tensor_power = 1;
    cfg.verma.det_power = 0;
    cfg.verma.s_rep = "natural";
    cfg.verma.h = Rational(1, 2);
    cfg.verma.cutoff = 8;
    try {
        if (j.contains("engine"))
            cfg.engine = engine_config_from_json_text(j.at("engine").dump(), cfg.engine);
        if (j.contains("charts")) {
            int i = 0;
            for (const auto& entry : j.at("charts")) {
                cfg.charts.push_back(chart_from_json_text(entry.dump()));
                cfg.chart_names.push_back(
                    entry.is_object() ? entry.value("name", "chart" + std::to_string(i))
                                      : "chart" + std::to_string(i));
                ++i;
            }
        }
        std::set<std::string> seen;
        for (const auto& nm : cfg.chart_names)
            if (!seen.insert(nm).second)
                throw std::invalid_argument("duplicate chart name: " + nm);
        if (j.contains("samples")) {
            cfg.sample_texts.clear();
            for (const auto& s : j.at("samples"))
                cfg.sample_texts.push_back(s.get<std::string>());
        } else {
            cfg.sample_texts = {"1", "x1"};
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.degree_bound = j.value("degree_bound", 4);
        if (cfg.degree_bound < 1)
            throw std::invalid_argument("degree_bound must be at least 1");
        if (j.contains("suites")) {
            cfg.suites.clear();
            for (const auto& s : j.at("suites"))
                cfg.suites.push_back(s.get<std::string>());
        } else {
            cfg.suites = all_suite_names();
        }
        for (const auto& s : cfg.suites) {
            const auto& names = all_suite_names();
            if (std::find(names.begin(), names.end(), s) == names.end())
                throw std::invalid_argument("unknown suite: " + s);
        }
        if (j.contains("verma"))
            cfg.verma = verma_config_from_json_text(j.at("verma").dump());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed run config: ") + e.what());
    }

    // constructing the engine validates the dimension and levels; the
    // module is probed only when the run will actually use one
    Engine probe(cfg.engine);
    if (j.contains("verma") ||
        std::find(cfg.suites.begin(), cfg.suites.end(), "verma") != cfg.suites.end()) {
        VermaModule probe_module(probe, cfg.verma);
        (void)probe_module;
    }
    return cfg;
}

std::vector<CheckResult> run_suite(const SuiteConfig& cfg, const std::string& name) {
    std::vector<CheckResult> rows;
    if (name == "axioms")
        rows = axioms_suite(cfg);
    else if (name == "gluing")
        rows = gluing_suite(cfg);
    else if (name == "cocycle")
        rows = cocycle_suite(cfg);
    else if (name == "omega")
        rows = omega_suite(cfg);
    else if (name == "relations")
        rows = relations_suite(cfg);
    else if (name == "equivariance")
        rows = equivariance_suite(cfg);
    else if (name == "verma")
        rows = verma_suite(cfg);
    else
        throw std::invalid_argument("unknown suite: " + name);
    for (auto& r : rows) r.id = name + "/" + r.id;
    return rows;
}

std::vector<ReportEntry> run_suites(const SuiteConfig& cfg, int jobs) {
    std::vector<std::string> names;
    for (const auto& n : all_suite_names())
        if (std::find(cfg.suites.begin(), cfg.suites.end(), n) != cfg.suites.end())
            names.push_back(n);

    // force the lazily cached form inverse before any worker copies it
    (void)cfg.engine.algebra.form_inverse();

    std::vector<std::vector<CheckResult>> buckets(names.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= names.size()) break;
            try {
                buckets[i] = run_suite(cfg, names[i]);
            } catch (const std::exception& e) {
                buckets[i] = {CheckResult{names[i] + "/error", "suite execution",
                                          false, clip(e.what()),
                                          "completes without raising"}};
            }
        }
    };
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(names.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<ReportEntry> out;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (auto& r : buckets[i]) out.push_back(ReportEntry{names[i], std::move(r)});
    std::sort(out.begin(), out.end(), [](const ReportEntry& a, const ReportEntry& b) {
        if (a.check.id != b.check.id) return a.check.id < b.check.id;
        return a.suite < b.suite;
    });
    return out;
}

bool report_all_pass(const std::vector<ReportEntry>& entries) {
    for (const auto& e : entries)
        if (!e.check.pass) return false;
    return true;
}

std::string report_text(const std::vector<ReportEntry>& entries) {
    std::map<std::string, std::pair<long, long>> per_suite; // passed, total
    long failures = 0;
    for (const auto& e : entries) {
        auto& [p, t] = per_suite[e.suite];
        ++t;
        if (e.check.pass)
            ++p;
        else
            ++failures;
    }
    std::ostringstream os;
    os << "checks: " << entries.size() << "  failures: " << failures << "\n\n";
    for (const auto& e : entries) {
        os << (e.check.pass ? "PASS  " : "FAIL  ") << e.check.id << "  ["
           << e.check.ref << "]\n";
        if (!e.check.pass)
            os << "      lhs: " << e.check.lhs << "\n      rhs: " << e.check.rhs
               << "\n";
    }
    os << "\n";
    for (const auto& [suite, pt] : per_suite)
        os << suite << ": " << pt.first << "/" << pt.second << " passed\n";
    os << "result: " << (failures == 0 ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string report_json(const std::vector<ReportEntry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json obj;
        obj["suite"] = e.suite;
        obj["check_id"] = e.check.id;
        obj["ref"] = e.check.ref;
        obj["pass"] = e.check.pass;
        obj["lhs"] = e.check.lhs;
        obj["rhs"] = e.check.rhs;
        arr.push_back(std::move(obj));
    }
    return arr.dump(1) + "\n";
}

} // namespace vx
