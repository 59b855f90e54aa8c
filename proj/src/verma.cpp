#include "vx/verma.hpp"

#include "json.hpp"
#include "vx/sampler.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vx {

namespace {

GRep resolve_s_rep(const LieAlgebra& g, const std::string& text) {
    if (text == "trivial") return GRep::trivial(g);
    if (text == "natural") return GRep::natural(g);
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string name = text.substr(0, colon);
        std::string tail = text.substr(colon + 1);
        if (name != g.name())
            throw std::invalid_argument("module description names algebra '" + name +
                                        "' but the engine uses '" + g.name() + "'");
        if (tail.rfind("dim", 0) != 0)
            throw std::invalid_argument("malformed module description: " + text);
        int d = 0;
        try {
            d = std::stoi(tail.substr(3));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed module description: " + text);
        }
        if (d == 1) return GRep::trivial(g);
        GRep nat = GRep::natural(g);
        if (d == nat.dim) return nat;
        throw std::invalid_argument("no built-in " + g.name() + " module of dimension " +
                                    std::to_string(d));
    }
    throw std::invalid_argument("unknown module description: " + text);
}

int parity_sign(long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

// A colored partition part: positive size j in a direction p.
struct Part {
    int p;
    long j;
};

// Enumerate multisets of parts (j, p) with total size `total`, parts listed
// in non-increasing (j, then p) order to visit each multiset exactly once.
void enum_colored_partitions(long total, long max_j, int max_p_at_max_j, int n_colors,
                             std::vector<Part>& acc,
                             const std::function<void(const std::vector<Part>&)>& emit) {
    if (total == 0) {
        emit(acc);
        return;
    }
    for (long j = std::min(total, max_j); j >= 1; --j) {
        int p_hi = (j == max_j) ? max_p_at_max_j : n_colors;
        for (int p = p_hi; p >= 1; --p) {
            acc.push_back({p, j});
            enum_colored_partitions(total - j, j, p, n_colors, acc, emit);
            acc.pop_back();
        }
    }
}

} // namespace

VermaConfig verma_config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("module config is not valid JSON: ") +
                                    e.what());
    }
    VermaConfig cfg;
    try {
        if (j.contains("W")) {
            cfg.tensor_power = j["W"].value("tensor_power", 0);
            cfg.det_power = j["W"].value("det_power", 0);
        }
        if (j.contains("S")) cfg.s_rep = j["S"].get<std::string>();
        if (j.contains("h")) {
            if (j["h"].is_string())
                cfg.h = parse_rational(j["h"].get<std::string>());
            else
                cfg.h = Rational(j["h"].get<long>());
        }
        if (j.contains("cutoff")) cfg.cutoff = j["cutoff"].get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed module config: ") + e.what());
    }
    return cfg;
}

VermaModule::VermaModule(const Engine& eng, VermaConfig cfg)
    : eng_(&eng),
      cfg_(std::move(cfg)),
      w_(eng.N(), cfg_.tensor_power, cfg_.det_power),
      s_(resolve_s_rep(eng.algebra(), cfg_.s_rep)) {
    if (cfg_.cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
}

ModuleState VermaModule::top(int wi, int si, const RatFunc& f) const {
    if (wi < 0 || wi >= dim_w() || si < 0 || si >= dim_s())
        throw std::invalid_argument("top basis index out of range");
    ModuleState s;
    s.add(Word{}, top_index(wi, si), f);
    return s;
}

ModuleState VermaModule::build(const Word& w, int wi, int si, const RatFunc& f) const {
    if (wi < 0 || wi >= dim_w() || si < 0 || si >= dim_s())
        throw std::invalid_argument("top basis index out of range");
    return normal_order(w, top_index(wi, si), f);
}

ModuleState VermaModule::top_action(const Mode& m, int top, const RatFunc& coeff) const {
    ModuleState out;
    if (m.level > 0) return out; // positive modes kill the top
    int wi = top / dim_s(), si = top % dim_s();
    switch (m.kind) {
        case Kind::U:
            break; // u_p(0) acts by zero
        case Kind::V: {
            RatFunc d = coeff.derivative(m.a);
            if (!d.is_zero()) out.add(Word{}, top, d);
            break;
        }
        case Kind::E: {
            const Mat<Rational>& act = w_.lie_action(m.a, m.b);
            for (int r = 0; r < dim_w(); ++r)
                if (act[r][wi] != 0)
                    out.add(Word{}, top_index(r, si), coeff * act[r][wi]);
            break;
        }
        case Kind::G: {
            const Mat<Rational>& act = s_.action[m.a];
            for (int r = 0; r < dim_s(); ++r)
                if (act[r][si] != 0)
                    out.add(Word{}, top_index(wi, r), coeff * act[r][si]);
            break;
        }
        case Kind::L:
            // L(0) multiplies by the lowest weight; the level -1 direction
            // is not part of the word alphabet and is taken to act by zero
            if (m.level == 0 && cfg_.h != 0) out.add(Word{}, top, coeff * cfg_.h);
            break;
    }
    return out;
}

ModuleState VermaModule::normal_order(const Word& w, int top, const RatFunc& coeff) const {
    ModuleState out;
    if (coeff.is_zero()) return out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!mode_less(w[i + 1], w[i])) continue;
        Word sw = w;
        std::swap(sw[i], sw[i + 1]);
        out = normal_order(sw, top, coeff);
        Engine::Bracket br = eng_->bracket(w[i], w[i + 1]);
        if (br.central != 0)
            throw std::logic_error("creation modes produced a central bracket term");
        for (const auto& [gm, gc] : br.terms) {
            Word shorter;
            shorter.reserve(w.size() - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + i);
            shorter.push_back(gm);
            shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
            out += normal_order(shorter, top, coeff * gc);
        }
        return out;
    }
    for (const Mode& m : w)
        if (!is_creation(m))
            throw std::logic_error("normal_order applied to a non-creation word");
    if (word_degree(w) > cfg_.cutoff) {
        std::ostringstream os;
        os << "module element of degree " << word_degree(w)
           << " exceeds the configured cutoff " << cfg_.cutoff;
        throw std::overflow_error(os.str());
    }
    out.add(w, top, coeff);
    return out;
}

ModuleState VermaModule::prepend(const Mode& m, const ModuleState& s) const {
    ModuleState out;
    for (const auto& [key, f] : s.terms()) {
        Word nw;
        nw.reserve(key.first.size() + 1);
        nw.push_back(m);
        nw.insert(nw.end(), key.first.begin(), key.first.end());
        out += normal_order(nw, key.second, f);
    }
    return out;
}

ModuleState VermaModule::apply_mode(const Mode& m, const ModuleState& s) const {
    if (is_creation(m)) return prepend(m, s);
    ModuleState out;
    for (const auto& [key, f] : s.terms())
        out += apply_annihilator(m, key.first, key.second, f);
    return out;
}

ModuleState VermaModule::apply_annihilator(const Mode& m, const Word& w, int top,
                                           const RatFunc& coeff) const {
    if (w.empty()) return top_action(m, top, coeff);
    ModuleState out;
    Mode beta = w[0];
    Word rest(w.begin() + 1, w.end());
    out += prepend(beta, apply_annihilator(m, rest, top, coeff));
    Engine::Bracket br = eng_->bracket(m, beta);
    if (br.central != 0) {
        ModuleState t;
        t.add(rest, top, coeff * br.central);
        out += t;
    }
    for (const auto& [gm, gc] : br.terms) {
        if (is_creation(gm)) {
            Word nw;
            nw.reserve(rest.size() + 1);
            nw.push_back(gm);
            nw.insert(nw.end(), rest.begin(), rest.end());
            out += normal_order(nw, top, coeff * gc);
        } else {
            out += apply_annihilator(gm, rest, top, coeff) * gc;
        }
    }
    return out;
}

ModuleState VermaModule::act(const State& a, long n, const ModuleState& m) const {
    ModuleState out;
    if (a.is_zero() || m.is_zero()) return out;
    long deg_b = m.degree();

    for (const auto& [w, f] : a.terms()) {
        if (w.empty()) {
            out += function_mode(f, n, m);
            continue;
        }
        // peel the leftmost mode, exactly as in the algebra's n-th product
        Mode head = w[0];
        State aprime(eng_->N());
        aprime.add(Word(w.begin() + 1, w.end()), f);
        bool head_l = head.kind == Kind::L;
        long k = head_l ? head.level + 1 : head.level;
        long deg_gen = head_l ? 2 : 1;
        auto apply_gen = [&](long s, const ModuleState& x) {
            Mode g = head_l ? mode_l(static_cast<int>(s - 1))
                            : Mode{head.kind, static_cast<int>(s), head.a, head.b};
            return apply_mode(g, x);
        };
        long deg_ap = aprime.degree();

        long jmax1 = deg_gen + deg_b - 1;
        for (long j = 0; j <= jmax1; ++j) {
            Rational cb = binomial(k, j);
            if (cb == 0) continue;
            ModuleState gjb = apply_gen(j, m);
            if (gjb.is_zero()) continue;
            ModuleState t = act(aprime, n + k - j, gjb);
            if (t.is_zero()) continue;
            out += t * Rational(cb * parity_sign(k + j + 1));
        }
        long jmax2 = deg_ap + deg_b - n - 1;
        for (long j = 0; j <= jmax2; ++j) {
            Rational cb = binomial(k, j);
            if (cb == 0) continue;
            ModuleState apb = act(aprime, n + j, m);
            if (apb.is_zero()) continue;
            out += apply_gen(k - j, apb) * Rational(cb * parity_sign(j));
        }
    }
    return out;
}

ModuleState VermaModule::function_mode(const RatFunc& f, long n, const ModuleState& m) const {
    ModuleState out;
    if (f.is_zero() || m.is_zero()) return out;
    int N = eng_->N();

    for (const auto& [key, h] : m.terms()) {
        const Word& w = key.first;
        int top = key.second;
        std::vector<std::tuple<int, long, long>> vmodes; // (p, m, multiplicity)
        for (const Mode& md : w) {
            if (md.kind != Kind::V) continue;
            long lvl = -md.level;
            bool merged = false;
            for (auto& [p, mm, mult] : vmodes)
                if (p == md.a && mm == lvl) { ++mult; merged = true; break; }
            if (!merged) vmodes.emplace_back(md.a, lvl, 1);
        }

        std::vector<long> take(vmodes.size(), 0);
        std::function<void(std::size_t)> recurse = [&](std::size_t idx) {
            if (idx < vmodes.size()) {
                for (long t = 0; t <= std::get<2>(vmodes[idx]); ++t) {
                    take[idx] = t;
                    recurse(idx + 1);
                }
                take[idx] = 0;
                return;
            }
            long ann_sum = 0;
            for (std::size_t i = 0; i < vmodes.size(); ++i)
                ann_sum += take[i] * std::get<1>(vmodes[i]);
            long c_total = ann_sum - n - 1;
            if (c_total < 0) return;

            Rational ann_coeff = 1;
            std::vector<long> deriv(N, 0);
            for (std::size_t i = 0; i < vmodes.size(); ++i) {
                if (take[i] == 0) continue;
                auto [p, mm, mult] = vmodes[i];
                for (long t = 0; t < take[i]; ++t) ann_coeff *= Rational(-1, mm);
                ann_coeff /= Rational(factorial(take[i]));
                deriv[p - 1] += take[i];
            }

            std::vector<Part> acc;
            enum_colored_partitions(
                c_total, c_total == 0 ? 1 : c_total, N, N, acc,
                [&](const std::vector<Part>& parts) {
                    Rational coeff = ann_coeff;
                    std::vector<long> dcount = deriv;
                    for (std::size_t i = 0; i < parts.size();) {
                        std::size_t jj = i;
                        while (jj < parts.size() && parts[jj].p == parts[i].p &&
                               parts[jj].j == parts[i].j)
                            ++jj;
                        long mult = static_cast<long>(jj - i);
                        for (long t = 0; t < mult; ++t) coeff *= Rational(1, parts[i].j);
                        coeff /= Rational(factorial(mult));
                        dcount[parts[i].p - 1] += mult;
                        i = jj;
                    }
                    RatFunc df = f;
                    for (int p = 1; p <= N && !df.is_zero(); ++p)
                        for (long t = 0; t < dcount[p - 1] && !df.is_zero(); ++t)
                            df = df.derivative(p);
                    if (df.is_zero()) return;

                    ModuleState cur;
                    cur.add(w, top, h * df * coeff);
                    for (std::size_t i = 0; i < vmodes.size() && !cur.is_zero(); ++i) {
                        auto [p, mm, mult] = vmodes[i];
                        for (long t = 0; t < take[i] && !cur.is_zero(); ++t)
                            cur = apply_mode(mode_u(p, static_cast<int>(mm)), cur);
                    }
                    for (const Part& part : parts) {
                        if (cur.is_zero()) break;
                        cur = apply_mode(mode_u(part.p, static_cast<int>(-part.j)), cur);
                    }
                    out += cur;
                });
        };
        recurse(0);
    }
    return out;
}

ModuleState VermaModule::psi(const ChartMap& chart, const ModuleState& m) const {
    if (chart.engine().N() != eng_->N())
        throw std::invalid_argument("chart and module use different variable counts");
    int N = eng_->N();
    Mat<RatFunc> rho =
        w_.group_action(chart.jac_forward(), RatFunc::zero(N), RatFunc::one(N));

    ModuleState out;
    for (const auto& [key, f] : m.terms()) {
        int wi = key.second / dim_s(), si = key.second % dim_s();
        RatFunc pf = chart.pull(f);
        ModuleState cur;
        for (int r = 0; r < dim_w(); ++r)
            if (!rho[r][wi].is_zero())
                cur.add(Word{}, top_index(r, si), rho[r][wi] * pf);
        // carry the word along, rightmost mode first, through the images
        // of its generator modes
        for (auto it = key.first.rbegin(); it != key.first.rend(); ++it) {
            if (cur.is_zero()) break;
            long khat = (it->kind == Kind::L) ? it->level + 1 : it->level;
            cur = act(chart.gen_image(*it), khat, cur);
        }
        out += cur;
    }
    return out;
}

std::vector<CheckResult> VermaModule::verify_top_equivariance(
    const ChartMap& chart, const std::vector<RatFunc>& samples) const {
    std::vector<CheckResult> results;
    int N = eng_->N();

    auto run = [&](const std::string& id, const std::string& ref, const Mode& tilde_mode,
                   const State& image, int t, const RatFunc& f) {
        ModuleState start = top(t / dim_s(), t % dim_s(), f);
        ModuleState lhs = psi(chart, apply_mode(tilde_mode, start));
        ModuleState rhs = act(image, 0, psi(chart, start));
        CheckResult r;
        r.id = id;
        r.ref = ref;
        r.pass = lhs == rhs;
        r.lhs = str(lhs);
        r.rhs = str(rhs);
        results.push_back(std::move(r));
    };

    for (int a = 1; a <= N; ++a) {
        State image = chart.phi_v(a);
        for (int t = 0; t < top_dim(); ++t)
            for (std::size_t fi = 0; fi < samples.size(); ++fi) {
                std::ostringstream id;
                id << "vtop/v" << a << "/t" << t << "/f" << fi;
                run(id.str(), "module transport intertwines the derivative zero modes",
                    mode_v(a, 0), image, t, samples[fi]);
            }
    }
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
            State image = chart.phi_e(a, b);
            for (int t = 0; t < top_dim(); ++t)
                for (std::size_t fi = 0; fi < samples.size(); ++fi) {
                    std::ostringstream id;
                    id << "vtop/E" << a << b << "/t" << t << "/f" << fi;
                    run(id.str(),
                        "module transport intertwines the matrix-current zero modes",
                        mode_e(a, b, 0), image, t, samples[fi]);
                }
        }
    return results;
}

std::vector<long> VermaModule::character() const {
    int N = eng_->N();
    int per_level = 2 * N + N * N + eng_->algebra().dim();
    std::vector<long> ways(cfg_.cutoff + 1, 0);
    ways[0] = 1;
    for (int lvl = 1; lvl <= cfg_.cutoff; ++lvl) {
        int gens = per_level + (lvl >= 2 ? 1 : 0); // Virasoro joins at level 2
        for (int g = 0; g < gens; ++g)
            for (int d = lvl; d <= cfg_.cutoff; ++d) ways[d] += ways[d - lvl];
    }
    long top = top_dim();
    for (long& x : ways) x *= top;
    return ways;
}

std::string VermaModule::str(const ModuleState& s) const {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, f] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        for (const Mode& m : key.first) os << eng_->mode_str(m) << " ";
        os << "(w" << key.second / dim_s() << "*s" << key.second % dim_s() << ") | "
           << f.str();
    }
    return os.str();
}

ModuleState random_module_state(const VermaModule& mod, Prng& rng, int max_degree,
                                const std::vector<RatFunc>& samples) {
    int budget = static_cast<int>(rng.range(0, max_degree));
    Word w;
    while (budget > 0) {
        Mode m = random_mode(mod.engine(), rng, budget);
        budget += m.level;
        w.push_back(m);
    }
    int wi = static_cast<int>(rng.index(static_cast<std::size_t>(mod.dim_w())));
    int si = static_cast<int>(rng.index(static_cast<std::size_t>(mod.dim_s())));
    RatFunc f = samples[rng.index(samples.size())];
    return mod.build(w, wi, si, f);
}

} // namespace vx
