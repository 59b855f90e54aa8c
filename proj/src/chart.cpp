#include "vx/chart.hpp"

#include "json.hpp"

#include <sstream>

namespace vx {

namespace {

RatFunc subst_checked(const RatFunc& f, const std::vector<RatFunc>& repl,
                      const char* what) {
    try {
        return f.substitute(repl);
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string(what) + ": " + e.what());
    }
}

} // namespace

void validate_transition(const ChartTransition& t) {
    if (t.n <= 0) throw std::invalid_argument("transition needs n >= 1");
    if (static_cast<int>(t.forward.size()) != t.n ||
        static_cast<int>(t.inverse.size()) != t.n)
        throw std::invalid_argument("transition needs n forward and n inverse entries");
    for (int p = 1; p <= t.n; ++p) {
        RatFunc xp = RatFunc::variable(t.n, p);
        if (subst_checked(t.inverse[p - 1], t.forward, "inverse(forward)") != xp)
            throw std::invalid_argument("inverse(forward) is not the identity in slot " +
                                        std::to_string(p));
        if (subst_checked(t.forward[p - 1], t.inverse, "forward(inverse)") != xp)
            throw std::invalid_argument("forward(inverse) is not the identity in slot " +
                                        std::to_string(p));
    }
}

ChartTransition swapped(const ChartTransition& t) { return {t.n, t.inverse, t.forward}; }

ChartTransition composed(const ChartTransition& ij, const ChartTransition& jk) {
    if (ij.n != jk.n) throw std::invalid_argument("transition dimension mismatch");
    ChartTransition ik;
    ik.n = ij.n;
    for (int s = 0; s < ij.n; ++s)
        ik.forward.push_back(subst_checked(jk.forward[s], ij.forward, "compose forward"));
    for (int p = 0; p < ij.n; ++p)
        ik.inverse.push_back(subst_checked(ij.inverse[p], jk.inverse, "compose inverse"));
    return ik;
}

ChartTransition chart_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad chart json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("forward") ||
        !j.contains("inverse"))
        throw std::invalid_argument("chart json needs n, forward, inverse");
    ChartTransition t;
    t.n = j.at("n").get<int>();
    if (t.n <= 0) throw std::invalid_argument("chart json: n must be >= 1");
    for (const auto& s : j.at("forward"))
        t.forward.push_back(parse_ratfunc(s.get<std::string>(), t.n));
    for (const auto& s : j.at("inverse"))
        t.inverse.push_back(parse_ratfunc(s.get<std::string>(), t.n));
    validate_transition(t);
    return t;
}

ChartMap::ChartMap(const Engine& eng, ChartTransition t)
    : eng_(eng), t_(std::move(t)) {
    if (t_.n != eng_.N())
        throw std::invalid_argument("transition dimension does not match engine");
    validate_transition(t_);
    int n = t_.n;
    jf_ = mat_zero(n, n, RatFunc::zero(n));
    ji_ = mat_zero(n, n, RatFunc::zero(n));
    for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) {
            jf_[r - 1][s - 1] = t_.forward[s - 1].derivative(r);
            ji_[r - 1][s - 1] =
                subst_checked(t_.inverse[s - 1].derivative(r), t_.forward, "jacobian");
        }
    // the two Jacobians must be mutually inverse
    Mat<RatFunc> id = mat_identity(n, RatFunc::zero(n), RatFunc::one(n));
    if (mat_mul(jf_, ji_) != id || mat_mul(ji_, jf_) != id)
        throw std::invalid_argument("transition Jacobians are not mutually inverse");
}

RatFunc ChartMap::pull(const RatFunc& f) const {
    return subst_checked(f, t_.forward, "pullback");
}

RatFunc ChartMap::tilde_derivative(const RatFunc& f, int a) const {
    RatFunc out = RatFunc::zero(t_.n);
    for (int p = 1; p <= t_.n; ++p) out += ji_[a - 1][p - 1] * f.derivative(p);
    return out;
}

State ChartMap::phi_u(int a) const {
    State out = eng_.zero();
    for (int p = 1; p <= t_.n; ++p)
        out += eng_.generator(mode_u(p, -1), jf_[p - 1][a - 1]);
    return out;
}

State ChartMap::phi_v(int a) const {
    State out = eng_.zero();
    for (int p = 1; p <= t_.n; ++p) {
        out += eng_.generator(mode_v(p, -1), ji_[a - 1][p - 1]);
        for (int s = 1; s <= t_.n; ++s)
            out += eng_.generator(mode_e(s, p, -1), ji_[a - 1][p - 1].derivative(s));
    }
    return out;
}

State ChartMap::phi_e(int a, int b) const {
    State out = eng_.zero();
    for (int s = 1; s <= t_.n; ++s) {
        for (int p = 1; p <= t_.n; ++p)
            out += eng_.generator(mode_e(s, p, -1),
                                  jf_[s - 1][a - 1] * ji_[b - 1][p - 1]);
        out += eng_.generator(mode_u(s, -1), tilde_derivative(jf_[s - 1][a - 1], b));
    }
    return out;
}

State ChartMap::gen_image(const Mode& m) const {
    switch (m.kind) {
        case Kind::U: return phi_u(m.a);
        case Kind::V: return phi_v(m.a);
        case Kind::E: return phi_e(m.a, m.b);
        case Kind::G: return eng_.generator(mode_g(m.a, -1), RatFunc::one(t_.n));
        case Kind::L: return eng_.omega_vir();
    }
    throw std::logic_error("unknown mode kind");
}

State ChartMap::phi(const State& s) const {
    State out = eng_.zero();
    for (const auto& [w, f] : s.terms()) {
        State cur = eng_.vacuum_with(pull(f));
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            long nhat = (it->kind == Kind::L) ? it->level + 1 : it->level;
            cur = eng_.nth_product(gen_image(*it), nhat, cur);
        }
        out += cur;
    }
    return out;
}

State ChartMap::correction() const {
    int n = t_.n;
    State out = eng_.zero();
    for (int k = 1; k <= n; ++k)
        for (int p = 1; p <= n; ++p)
            out += eng_.function_mode(jf_[k - 1][p - 1], -3,
                                      eng_.vacuum_with(ji_[p - 1][k - 1]));
    for (int s = 1; s <= n; ++s)
        for (int m = 1; m <= n; ++m) {
            State inner = eng_.zero();
            for (int a = 1; a <= n; ++a)
                inner += eng_.function_mode(jf_[s - 1][a - 1], -2,
                                            eng_.vacuum_with(ji_[a - 1][m - 1]));
            out += eng_.apply_mode(mode_e(s, m, -1), inner);
        }
    return out;
}

bool verify_gluing(const Engine& eng, const ChartTransition& t,
                   const std::vector<RatFunc>& samples,
                   std::vector<std::string>* failures) {
    ChartMap map(eng, t);
    int n = eng.N();
    bool ok = true;
    auto record = [&](const std::string& msg) {
        ok = false;
        if (failures) failures->push_back(msg);
    };

    // generator states in the new coordinates, with printable labels
    std::vector<std::pair<std::string, State>> gens;
    RatFunc one = RatFunc::one(n);
    for (int a = 1; a <= n; ++a) {
        gens.push_back({"u" + std::to_string(a), eng.generator(mode_u(a, -1), one)});
        gens.push_back({"v" + std::to_string(a), eng.generator(mode_v(a, -1), one)});
    }
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            gens.push_back({"E(" + std::to_string(a) + "," + std::to_string(b) + ")",
                            eng.generator(mode_e(a, b, -1), one)});
    for (int i = 0; i < eng.algebra().dim(); ++i)
        gens.push_back({"G(" + eng.algebra().labels()[i] + ")",
                        eng.generator(mode_g(i, -1), one)});
    gens.push_back({"Lvac", eng.omega_vir()});
    for (std::size_t i = 0; i < samples.size(); ++i)
        gens.push_back({"sample" + std::to_string(i), eng.vacuum_with(samples[i])});

    // vacuum and translation compatibility
    if (map.phi(eng.vacuum()) != eng.vacuum()) record("phi(vacuum) != vacuum");
    for (const auto& [la, a] : gens)
        if (map.phi(eng.translate(a)) != eng.translate(map.phi(a)))
            record("phi does not commute with translation on " + la);

    // the homomorphism property on every generator pair
    std::vector<State> images;
    images.reserve(gens.size());
    for (const auto& [la, a] : gens) images.push_back(map.phi(a));
    for (std::size_t ia = 0; ia < gens.size(); ++ia) {
        const auto& [la, a] = gens[ia];
        const State& fa = images[ia];
        for (std::size_t ib = 0; ib < gens.size(); ++ib) {
            const auto& [lb, b] = gens[ib];
            const State& fb = images[ib];
            long hi = a.degree() + b.degree(); // products vanish from this index on
            for (long k = -2; k < hi; ++k) {
                State lhs = map.phi(eng.nth_product(a, k, b));
                State rhs = eng.nth_product(fa, k, fb);
                if (lhs != rhs) {
                    std::ostringstream msg;
                    msg << la << " _(" << k << ") " << lb << ": phi(a_(n)b) != phi(a)_(n)phi(b)";
                    record(msg.str());
                }
            }
        }
    }
    return ok;
}

} // namespace vx
