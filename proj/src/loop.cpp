#include "vx/loop.hpp"

#include "vx/sampler.hpp"

#include <sstream>

namespace vx {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

LoopSum negated(LoopSum xs) {
    for (auto& x : xs) x.f = -x.f;
    return xs;
}

void push_part(LoopSum& out, LoopKind kind, int idx, int power, RatFunc f) {
    if (f.is_zero()) return;
    out.push_back(LoopElement{kind, idx, power, std::move(f)});
}

int kind_rank(LoopKind k) {
    switch (k) {
        case LoopKind::VectDt: return 0;
        case LoopKind::VectDx: return 1;
        case LoopKind::Current: return 2;
        default: return 3; // forms
    }
}

// image of the derivation along direction a with coefficient f
State vect_dx_state(const Engine& eng, int a, const RatFunc& f) {
    State out = eng.generator(mode_v(a, -1), f);
    for (int p = 1; p <= eng.N(); ++p)
        out += eng.generator(mode_e(p, a, -1), f.derivative(p));
    return out;
}

} // namespace

State vt_base_state(const Engine& eng, const RatFunc& f) {
    State out = eng.nth_product(eng.omega(), -1, eng.vacuum_with(f));
    for (int s = 1; s <= eng.N(); ++s) {
        RatFunc ds = f.derivative(s);
        if (ds.is_zero()) continue;
        for (int k = 1; k <= eng.N(); ++k)
            out += eng.normal_order(Word{mode_u(k, -1), mode_e(s, k, -1)}, ds);
    }
    for (int p = 1; p <= eng.N(); ++p)
        out -= eng.generator(mode_u(p, -2), f.derivative(p));
    return out;
}

State rho_state(const Engine& eng, const LoopElement& e) {
    Rational c = eng.level();
    switch (e.kind) {
        case LoopKind::Current: return eng.generator(mode_g(e.idx, -1), e.f);
        case LoopKind::FormDt: return eng.vacuum_with(e.f) * c;
        case LoopKind::FormDx: return eng.generator(mode_u(e.idx, -1), e.f) * c;
        case LoopKind::VectDx: return vect_dx_state(eng, e.idx, e.f);
        case LoopKind::VectDt: return vt_base_state(eng, e.f) * Rational(-1);
    }
    throw std::logic_error("unknown loop kind");
}

State rho_apply(const Engine& eng, const LoopElement& e, const State& x) {
    return eng.nth_product(rho_state(eng, e), e.power, x);
}

State rho_apply(const Engine& eng, const LoopSum& es, const State& x) {
    State out = eng.zero();
    for (const auto& e : es) out += rho_apply(eng, e, x);
    return out;
}

LoopElement parse_loop_element(const std::string& text, const Engine& eng) {
    std::string s = trim(text);
    if (s.rfind("t^", 0) != 0)
        throw std::invalid_argument("loop element must start with t^<power>: " + text);
    std::size_t pos = 2;
    std::size_t star = s.find('*', pos);
    if (star == std::string::npos)
        throw std::invalid_argument("loop element needs 't^j * f * tail': " + text);
    int power;
    try {
        power = std::stoi(trim(s.substr(pos, star - pos)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad loop power in: " + text);
    }
    std::size_t last = s.rfind('*');
    if (last == star)
        throw std::invalid_argument("loop element needs 't^j * f * tail': " + text);
    RatFunc f = parse_ratfunc(trim(s.substr(star + 1, last - star - 1)), eng.N());
    std::string tail = trim(s.substr(last + 1));

    LoopElement e;
    e.power = power;
    e.f = f;
    if (tail == "dt") {
        e.kind = LoopKind::FormDt;
    } else if (tail == "d/dt") {
        e.kind = LoopKind::VectDt;
    } else if (tail.rfind("d/dx", 0) == 0) {
        e.kind = LoopKind::VectDx;
        e.idx = std::stoi(tail.substr(4));
    } else if (tail.rfind("dx", 0) == 0) {
        e.kind = LoopKind::FormDx;
        e.idx = std::stoi(tail.substr(2));
    } else if (tail.size() >= 3 && tail.front() == '[' && tail.back() == ']') {
        e.kind = LoopKind::Current;
        e.idx = eng.algebra().index_of(tail.substr(1, tail.size() - 2));
    } else {
        throw std::invalid_argument("unknown loop element tail: " + tail);
    }
    if ((e.kind == LoopKind::FormDx || e.kind == LoopKind::VectDx) &&
        (e.idx < 1 || e.idx > eng.N()))
        throw std::invalid_argument("direction index out of range in: " + text);
    return e;
}

std::string loop_str(const LoopElement& e, const Engine& eng) {
    std::ostringstream out;
    out << "t^" << e.power << " * " << e.f.str() << " * ";
    switch (e.kind) {
        case LoopKind::Current: out << "[" << eng.algebra().labels()[e.idx] << "]"; break;
        case LoopKind::FormDt: out << "dt"; break;
        case LoopKind::FormDx: out << "dx" << e.idx; break;
        case LoopKind::VectDt: out << "d/dt"; break;
        case LoopKind::VectDx: out << "d/dx" << e.idx; break;
    }
    return out.str();
}

LoopSum loop_bracket(const Engine& eng, const LoopElement& a, const LoopElement& b) {
    if (kind_rank(a.kind) > kind_rank(b.kind))
        return negated(loop_bracket(eng, b, a));

    int N = eng.N();
    int m = a.power, k = b.power;
    const RatFunc& f = a.f;
    const RatFunc& h = b.f;
    LoopSum out;

    switch (a.kind) {
        case LoopKind::VectDt:
            switch (b.kind) {
                case LoopKind::VectDt:
                    push_part(out, LoopKind::VectDt, 0, m + k - 1,
                              f * h * Rational(k - m));
                    break;
                case LoopKind::VectDx:
                    push_part(out, LoopKind::VectDx, b.idx, m + k - 1,
                              f * h * Rational(k));
                    push_part(out, LoopKind::VectDt, 0, m + k,
                              -(h * f.derivative(b.idx)));
                    break;
                case LoopKind::Current:
                    push_part(out, LoopKind::Current, b.idx, m + k - 1,
                              f * h * Rational(k));
                    break;
                case LoopKind::FormDt:
                    for (int p = 1; p <= N; ++p)
                        push_part(out, LoopKind::FormDx, p, m + k,
                                  -(f * h.derivative(p)));
                    break;
                case LoopKind::FormDx:
                    push_part(out, LoopKind::FormDx, b.idx, m + k - 1,
                              f * h * Rational(k));
                    break;
            }
            break;

        case LoopKind::VectDx:
            switch (b.kind) {
                case LoopKind::VectDx:
                    push_part(out, LoopKind::VectDx, b.idx, m + k,
                              f * h.derivative(a.idx));
                    push_part(out, LoopKind::VectDx, a.idx, m + k,
                              -(h * f.derivative(b.idx)));
                    break;
                case LoopKind::Current:
                    push_part(out, LoopKind::Current, b.idx, m + k,
                              f * h.derivative(a.idx));
                    break;
                case LoopKind::FormDt:
                    push_part(out, LoopKind::FormDt, 0, m + k, f * h.derivative(a.idx));
                    break;
                case LoopKind::FormDx:
                    push_part(out, LoopKind::FormDx, b.idx, m + k,
                              f * h.derivative(a.idx));
                    if (a.idx == b.idx) {
                        push_part(out, LoopKind::FormDt, 0, m + k - 1,
                                  f * h * Rational(m));
                        for (int p = 1; p <= N; ++p)
                            push_part(out, LoopKind::FormDx, p, m + k,
                                      h * f.derivative(p));
                    }
                    break;
                default: break;
            }
            break;

        case LoopKind::Current:
            if (b.kind == LoopKind::Current) {
                for (const auto& [t, coeff] : eng.algebra().bracket(a.idx, b.idx))
                    push_part(out, LoopKind::Current, t, m + k, f * h * coeff);
                Rational kappa = eng.algebra().form(a.idx, b.idx);
                if (kappa != 0) {
                    push_part(out, LoopKind::FormDt, 0, m + k - 1,
                              f * h * Rational(kappa * m));
                    for (int p = 1; p <= N; ++p)
                        push_part(out, LoopKind::FormDx, p, m + k,
                                  h * f.derivative(p) * kappa);
                }
            }
            // currents commute with the coefficient forms
            break;

        default:
            // form-form: abelian
            break;
    }
    return out;
}

LoopSum theta(const ChartMap& map, const LoopElement& e) {
    const Engine& eng = map.engine();
    RatFunc pf = map.pull(e.f);
    LoopSum out;
    switch (e.kind) {
        case LoopKind::Current:
        case LoopKind::FormDt:
        case LoopKind::VectDt:
            push_part(out, e.kind, e.idx, e.power, pf);
            break;
        case LoopKind::VectDx:
            for (int s = 1; s <= eng.N(); ++s)
                push_part(out, LoopKind::VectDx, s, e.power,
                          map.jac_inverse()[e.idx - 1][s - 1] * pf);
            break;
        case LoopKind::FormDx:
            for (int p = 1; p <= eng.N(); ++p)
                push_part(out, LoopKind::FormDx, p, e.power,
                          map.jac_forward()[p - 1][e.idx - 1] * pf);
            break;
    }
    return out;
}

const std::vector<std::string>& relation_families() {
    static const std::vector<std::string> fams = {
        "cur-cur", "vx-cur", "vx-dt", "vx-dx", "vx-vx", "form-form",
        "cur-form", "vt-cur", "vt-dt", "vt-dx", "vt-vx", "vt-vt"};
    return fams;
}

std::vector<CheckResult> verify_relation_family(const Engine& eng,
                                                const std::string& family,
                                                const std::vector<RatFunc>& samples) {
    std::vector<CheckResult> out;
    int N = eng.N();
    int dim = eng.algebra().dim();
    Rational c = eng.level();

    auto check = [&](const std::string& id, const std::string& ref, const State& a,
                     long n, const State& b, const State& expect) {
        State lhs = eng.nth_product(a, n, b);
        out.push_back(CheckResult{id + "/n" + std::to_string(n), ref,
                                  lhs == expect, eng.str(lhs), eng.str(expect)});
    };
    auto cur = [&](int i, const RatFunc& f) { return eng.generator(mode_g(i, -1), f); };
    auto dt = [&](const RatFunc& f) { return eng.vacuum_with(f) * c; };
    auto dx = [&](int a, const RatFunc& f) {
        return eng.generator(mode_u(a, -1), f) * c;
    };
    auto vx = [&](int a, const RatFunc& f) { return vect_dx_state(eng, a, f); };
    auto vt = [&](const RatFunc& f) { return vt_base_state(eng, f); };

    for (std::size_t fi = 0; fi < samples.size(); ++fi) {
        for (std::size_t hi = 0; hi < samples.size(); ++hi) {
            const RatFunc& f = samples[fi];
            const RatFunc& h = samples[hi];
            std::string fh = "/f" + std::to_string(fi) + "h" + std::to_string(hi);

            if (family == "cur-cur") {
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) {
                        std::string id = family + "/g" + std::to_string(i) + "g" +
                                         std::to_string(j) + fh;
                        State e0 = eng.zero();
                        for (const auto& [t, coef] : eng.algebra().bracket(i, j))
                            e0 += cur(t, f * h * coef);
                        Rational kappa = eng.algebra().form(i, j);
                        for (int p = 1; p <= N; ++p)
                            e0 += eng.generator(mode_u(p, -1),
                                                h * f.derivative(p) * Rational(kappa * c));
                        check(id, "current-current products", cur(i, f), 0, cur(j, h), e0);
                        check(id, "current-current products", cur(i, f), 1, cur(j, h),
                              eng.vacuum_with(f * h * Rational(kappa * c)));
                    }
            } else if (family == "vx-cur") {
                for (int a = 1; a <= N; ++a)
                    for (int i = 0; i < dim; ++i) {
                        std::string id = family + "/a" + std::to_string(a) + "g" +
                                         std::to_string(i) + fh;
                        check(id, "derivation-current products", vx(a, f), 0, cur(i, h),
                              cur(i, f * h.derivative(a)));
                        check(id, "derivation-current products", vx(a, f), 1, cur(i, h),
                              eng.zero());
                    }
            } else if (family == "vx-dt") {
                for (int a = 1; a <= N; ++a) {
                    std::string id = family + "/a" + std::to_string(a) + fh;
                    check(id, "derivation-form products", vx(a, f), 0, dt(h),
                          dt(f * h.derivative(a)));
                    check(id, "derivation-form products", vx(a, f), 1, dt(h), eng.zero());
                }
            } else if (family == "vx-dx") {
                for (int a = 1; a <= N; ++a)
                    for (int b = 1; b <= N; ++b) {
                        std::string id = family + "/a" + std::to_string(a) + "b" +
                                         std::to_string(b) + fh;
                        State e0 = dx(b, f * h.derivative(a));
                        State e1 = eng.zero();
                        if (a == b) {
                            for (int p = 1; p <= N; ++p)
                                e0 += dx(p, h * f.derivative(p));
                            e1 = dt(f * h);
                        }
                        check(id, "derivation-form products", vx(a, f), 0, dx(b, h), e0);
                        check(id, "derivation-form products", vx(a, f), 1, dx(b, h), e1);
                    }
            } else if (family == "vx-vx") {
                for (int a = 1; a <= N; ++a)
                    for (int b = 1; b <= N; ++b) {
                        std::string id = family + "/a" + std::to_string(a) + "b" +
                                         std::to_string(b) + fh;
                        State e0 = vx(b, f * h.derivative(a)) - vx(a, h * f.derivative(b));
                        check(id, "derivation-derivation products", vx(a, f), 0,
                              vx(b, h), e0);
                        check(id, "derivation-derivation products", vx(a, f), 1,
                              vx(b, h), eng.zero());
                    }
            } else if (family == "form-form") {
                std::vector<std::pair<std::string, State>> forms;
                forms.push_back({"dt", dt(f)});
                for (int a = 1; a <= N; ++a)
                    forms.push_back({"dx" + std::to_string(a), dx(a, f)});
                std::vector<std::pair<std::string, State>> formsh;
                formsh.push_back({"dt", dt(h)});
                for (int a = 1; a <= N; ++a)
                    formsh.push_back({"dx" + std::to_string(a), dx(a, h)});
                for (const auto& [la, A] : forms)
                    for (const auto& [lb, B] : formsh) {
                        std::string id = family + "/" + la + "-" + lb + fh;
                        check(id, "form-form products", A, 0, B, eng.zero());
                        check(id, "form-form products", A, 1, B, eng.zero());
                    }
            } else if (family == "cur-form") {
                for (int i = 0; i < dim; ++i) {
                    std::string id0 = family + "/g" + std::to_string(i) + "-dt" + fh;
                    check(id0, "current-form products", cur(i, f), 0, dt(h), eng.zero());
                    check(id0, "current-form products", cur(i, f), 1, dt(h), eng.zero());
                    for (int b = 1; b <= N; ++b) {
                        std::string id = family + "/g" + std::to_string(i) + "-dx" +
                                         std::to_string(b) + fh;
                        check(id, "current-form products", cur(i, f), 0, dx(b, h),
                              eng.zero());
                        check(id, "current-form products", cur(i, f), 1, dx(b, h),
                              eng.zero());
                    }
                }
            } else if (family == "vt-cur") {
                for (int i = 0; i < dim; ++i) {
                    std::string id = family + "/g" + std::to_string(i) + fh;
                    check(id, "loop-derivation vs current", vt(f), 0, cur(i, h),
                          eng.translate(cur(i, f * h)));
                    check(id, "loop-derivation vs current", vt(f), 1, cur(i, h),
                          cur(i, f * h));
                    check(id, "loop-derivation vs current", vt(f), 2, cur(i, h),
                          eng.zero());
                }
            } else if (family == "vt-dt") {
                std::string id = family + fh;
                State e0 = eng.zero();
                for (int p = 1; p <= N; ++p) e0 += dx(p, f * h.derivative(p));
                check(id, "loop-derivation vs form", vt(f), 0, dt(h), e0);
                check(id, "loop-derivation vs form", vt(f), 1, dt(h), eng.zero());
                check(id, "loop-derivation vs form", vt(f), 2, dt(h), eng.zero());
            } else if (family == "vt-dx") {
                for (int a = 1; a <= N; ++a) {
                    std::string id = family + "/a" + std::to_string(a) + fh;
                    check(id, "loop-derivation vs form", vt(f), 0, dx(a, h),
                          eng.translate(dx(a, f * h)));
                    check(id, "loop-derivation vs form", vt(f), 1, dx(a, h), dx(a, f * h));
                    check(id, "loop-derivation vs form", vt(f), 2, dx(a, h), eng.zero());
                }
            } else if (family == "vt-vx") {
                for (int a = 1; a <= N; ++a) {
                    std::string id = family + "/a" + std::to_string(a) + fh;
                    State e0 = eng.translate(vx(a, f * h)) - vt(h * f.derivative(a));
                    check(id, "loop-derivation vs derivation", vt(f), 0, vx(a, h), e0);
                    check(id, "loop-derivation vs derivation", vt(f), 1, vx(a, h),
                          vx(a, f * h));
                    check(id, "loop-derivation vs derivation", vt(f), 2, vx(a, h),
                          eng.zero());
                }
            } else if (family == "vt-vt") {
                std::string id = family + fh;
                check(id, "loop-derivation self products", vt(f), 0, vt(h),
                      eng.translate(vt(f * h)));
                check(id, "loop-derivation self products", vt(f), 1, vt(h),
                      vt(f * h) * Rational(2));
                check(id, "loop-derivation self products", vt(f), 2, vt(h), eng.zero());
                check(id, "loop-derivation self products", vt(f), 3, vt(h), eng.zero());
            } else {
                throw std::invalid_argument("unknown relation family: " + family);
            }
        }
    }
    return out;
}

std::vector<CheckResult> relation_operator_checks(const Engine& eng,
                                                  const std::vector<RatFunc>& samples,
                                                  std::uint64_t seed, int count) {
    std::vector<CheckResult> out;
    Prng rng(seed);
    int N = eng.N();
    int dim = eng.algebra().dim();

    auto random_element = [&]() {
        LoopElement e;
        switch (rng.range(0, 4)) {
            case 0:
                e.kind = LoopKind::Current;
                e.idx = static_cast<int>(rng.index(dim));
                break;
            case 1: e.kind = LoopKind::FormDt; break;
            case 2:
                e.kind = LoopKind::FormDx;
                e.idx = static_cast<int>(rng.range(1, N));
                break;
            case 3:
                e.kind = LoopKind::VectDx;
                e.idx = static_cast<int>(rng.range(1, N));
                break;
            default: e.kind = LoopKind::VectDt; break;
        }
        e.power = static_cast<int>(rng.range(-2, 2));
        e.f = samples[rng.index(samples.size())];
        return e;
    };

    for (int trial = 0; trial < count; ++trial) {
        LoopElement A = random_element();
        LoopElement B = random_element();
        State x = random_state(eng, rng, 3, samples);
        State lhs = rho_apply(eng, A, rho_apply(eng, B, x)) -
                    rho_apply(eng, B, rho_apply(eng, A, x));
        State rhs = rho_apply(eng, loop_bracket(eng, A, B), x);
        out.push_back(CheckResult{"op-comm/" + std::to_string(trial),
                                  "operator commutators",
                                  lhs == rhs, eng.str(lhs), eng.str(rhs)});
    }
    return out;
}

std::vector<CheckResult> verify_equivariance(const Engine& eng, const ChartTransition& t,
                                             const std::vector<RatFunc>& samples) {
    std::vector<CheckResult> out;
    ChartMap map(eng, t);
    int N = eng.N();

    std::vector<std::pair<std::string, LoopElement>> elems;
    for (int i = 0; i < eng.algebra().dim(); ++i)
        elems.push_back({"cur" + std::to_string(i),
                         LoopElement{LoopKind::Current, i, 0, RatFunc::one(N)}});
    elems.push_back({"dt", LoopElement{LoopKind::FormDt, 0, 0, RatFunc::one(N)}});
    for (int a = 1; a <= N; ++a) {
        elems.push_back({"dx" + std::to_string(a),
                         LoopElement{LoopKind::FormDx, a, 0, RatFunc::one(N)}});
        elems.push_back({"ddx" + std::to_string(a),
                         LoopElement{LoopKind::VectDx, a, 0, RatFunc::one(N)}});
    }
    elems.push_back({"ddt", LoopElement{LoopKind::VectDt, 0, 0, RatFunc::one(N)}});

    for (auto& [label, base] : elems) {
        for (std::size_t fi = 0; fi < samples.size(); ++fi) {
            LoopElement e = base;
            e.f = samples[fi];
            State lhs = map.phi(rho_state(eng, e));
            State rhs = eng.zero();
            for (const auto& part : theta(map, e)) rhs += rho_state(eng, part);
            out.push_back(CheckResult{"equiv/" + label + "/f" + std::to_string(fi),
                                      "chart transport of the loop action",
                                      lhs == rhs, eng.str(lhs), eng.str(rhs)});
        }
    }
    return out;
}

std::vector<CheckResult> verify_exact_form_triviality(const Engine& eng,
                                                      const std::vector<RatFunc>& samples,
                                                      int jlo, int jhi,
                                                      std::uint64_t seed, int count) {
    std::vector<CheckResult> out;
    Prng rng(seed);
    std::vector<State> states;
    for (int i = 0; i < count; ++i) states.push_back(random_state(eng, rng, 3, samples));

    for (int j = jlo; j <= jhi; ++j) {
        for (std::size_t fi = 0; fi < samples.size(); ++fi) {
            const RatFunc& f = samples[fi];
            // differential of t^j f: j t^{j-1} f dt + sum_p t^j (d_p f) dx_p
            LoopSum d;
            if (j != 0)
                d.push_back(LoopElement{LoopKind::FormDt, 0, j - 1, f * Rational(j)});
            for (int p = 1; p <= eng.N(); ++p) {
                RatFunc dp = f.derivative(p);
                if (!dp.is_zero())
                    d.push_back(LoopElement{LoopKind::FormDx, p, j, dp});
            }
            for (std::size_t si = 0; si < states.size(); ++si) {
                State r = rho_apply(eng, d, states[si]);
                out.push_back(CheckResult{
                    "exact/j" + std::to_string(j) + "/f" + std::to_string(fi) + "/s" +
                        std::to_string(si),
                    "exact one-forms act trivially", r.is_zero(), eng.str(r), "0"});
            }
        }
    }
    return out;
}

} // namespace vx
