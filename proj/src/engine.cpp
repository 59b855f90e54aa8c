#include "vx/engine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vx {

Engine::Engine(EngineConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.N < 1) throw std::invalid_argument("N must be at least 1");
    if (cfg_.level == 0)
        throw std::invalid_argument("current level c must be nonzero");
    Rational denom = cfg_.level + cfg_.algebra.dual_coxeter();
    if (denom == 0)
        throw std::invalid_argument(
            "current level c must differ from the critical value -h∨");
    Rational num = cfg_.level * Rational(cfg_.algebra.dim());
    c_vir_ = Rational(-num / denom);
}

State Engine::generator(Mode m, const RatFunc& f) const {
    if (!is_creation(m)) throw std::invalid_argument("generator mode must be a creation mode");
    State s(cfg_.N);
    s.add(Word{m}, f);
    return s;
}

Engine::Bracket Engine::bracket(const Mode& x, const Mode& y) const {
    Bracket br;
    br.central = 0;
    auto add_term = [&br](Mode m, Rational c) {
        if (c == 0) return;
        for (auto& [tm, tc] : br.terms) {
            if (tm == m) {
                tc += c;
                return;
            }
        }
        br.terms.emplace_back(m, std::move(c));
    };

    if ((x.kind == Kind::U && y.kind == Kind::V) ||
        (x.kind == Kind::V && y.kind == Kind::U)) {
        // [u_p(m), v_q(s)] = m delta_pq delta_{m,-s} (central constant 1)
        if (x.a == y.a && x.level + y.level == 0) br.central = x.level;
    } else if (x.kind == Kind::E && y.kind == Kind::E) {
        int m = x.level, s = y.level;
        if (x.b == y.a) add_term(mode_e(x.a, y.b, m + s), 1);
        if (y.b == x.a) add_term(mode_e(y.a, x.b, m + s), -1);
        if (m + s == 0 && x.b == y.a && y.b == x.a) br.central = m; // level 1
    } else if (x.kind == Kind::G && y.kind == Kind::G) {
        for (const auto& [k, c] : cfg_.algebra.bracket(x.a, y.a))
            add_term(mode_g(k, x.level + y.level), c);
        if (x.level + y.level == 0)
            br.central = Rational(x.level) * cfg_.algebra.form(x.a, y.a) * cfg_.level;
    } else if (x.kind == Kind::L && y.kind == Kind::L) {
        long m = x.level, s = y.level;
        if (m != s) add_term(mode_l(static_cast<int>(m + s)), Rational(m - s));
        if (m + s == 0)
            br.central = Rational(m * m * m - m) / 12 * c_vir_;
    }
    // all other pairs commute (different tensor factors, or an abelian family)
    return br;
}

State Engine::normal_order(const Word& w, const RatFunc& coeff) const {
    State out(cfg_.N);
    if (coeff.is_zero()) return out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!mode_less(w[i + 1], w[i])) continue;
        // transpose the inverted neighbors and add the bracket correction
        Word sw = w;
        std::swap(sw[i], sw[i + 1]);
        out = normal_order(sw, coeff);
        Bracket br = bracket(w[i], w[i + 1]);
        if (br.central != 0)
            throw std::logic_error("creation modes produced a central bracket term");
        for (const auto& [gm, gc] : br.terms) {
            Word shorter;
            shorter.reserve(w.size() - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + i);
            shorter.push_back(gm);
            shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
            out += normal_order(shorter, coeff * gc);
        }
        return out;
    }
    for (const Mode& m : w)
        if (!is_creation(m))
            throw std::logic_error("normal_order applied to a non-creation word");
    out.add(w, coeff);
    return out;
}

State Engine::prepend(const Mode& m, const State& s) const {
    State out(cfg_.N);
    for (const auto& [w, f] : s.terms()) {
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(m);
        nw.insert(nw.end(), w.begin(), w.end());
        out += normal_order(nw, f);
    }
    return out;
}

State Engine::apply_mode(const Mode& m, const State& s) const {
    if (is_creation(m)) return prepend(m, s);
    State out(cfg_.N);
    for (const auto& [w, f] : s.terms()) out += apply_annihilator(m, w, f);
    return out;
}

State Engine::apply_annihilator(const Mode& m, const Word& w, const RatFunc& coeff) const {
    State out(cfg_.N);
    if (w.empty()) {
        // action on the function vacuum: the V family differentiates the
        // coefficient at level 0; every other annihilator kills it
        if (m.kind == Kind::V && m.level == 0) {
            RatFunc d = coeff.derivative(m.a);
            if (!d.is_zero()) out.add(Word{}, d);
        }
        return out;
    }
    Mode beta = w[0];
    Word rest(w.begin() + 1, w.end());
    out += prepend(beta, apply_annihilator(m, rest, coeff));
    Bracket br = bracket(m, beta);
    if (br.central != 0) {
        State t(cfg_.N);
        t.add(rest, coeff * br.central);
        out += t;
    }
    for (const auto& [gm, gc] : br.terms) {
        if (is_creation(gm)) {
            Word nw;
            nw.reserve(rest.size() + 1);
            nw.push_back(gm);
            nw.insert(nw.end(), rest.begin(), rest.end());
            out += normal_order(nw, coeff * gc);
        } else {
            out += apply_annihilator(gm, rest, coeff) * gc;
        }
    }
    return out;
}

namespace {

int parity_sign(long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

} // namespace

State Engine::nth_product(const State& a, long n, const State& b) const {
    State out(cfg_.N);
    if (a.is_zero() || b.is_zero()) return out;
    long deg_b = b.degree();

    for (const auto& [w, f] : a.terms()) {
        if (w.empty()) {
            out += function_mode(f, n, b);
            continue;
        }
        // peel the leftmost mode: this monomial is gen_(k) a' where gen is a
        // degree-1 generator (or the Virasoro vector, degree 2, with the
        // usual index shift) and a' is the strictly shorter tail
        Mode head = w[0];
        State aprime(cfg_.N);
        aprime.add(Word(w.begin() + 1, w.end()), f);
        bool head_l = head.kind == Kind::L;
        long k = head_l ? head.level + 1 : head.level;
        long deg_gen = head_l ? 2 : 1;
        auto apply_gen = [&](long s, const State& x) {
            Mode m = head_l ? mode_l(static_cast<int>(s - 1))
                            : Mode{head.kind, static_cast<int>(s), head.a, head.b};
            return apply_mode(m, x);
        };
        long deg_ap = aprime.degree();

        // first sum: (-1)^{k+j+1} C(k,j) a'_(n+k-j) (gen_(j) b)
        long jmax1 = deg_gen + deg_b - 1;
        for (long j = 0; j <= jmax1; ++j) {
            Rational cb = binomial(k, j);
            if (cb == 0) continue;
            State gjb = apply_gen(j, b);
            if (gjb.is_zero()) continue;
            State t = nth_product(aprime, n + k - j, gjb);
            if (t.is_zero()) continue;
            out += t * Rational(cb * parity_sign(k + j + 1));
        }
        // second sum: (-1)^j C(k,j) gen_(k-j) (a'_(n+j) b)
        long jmax2 = deg_ap + deg_b - n - 1;
        for (long j = 0; j <= jmax2; ++j) {
            Rational cb = binomial(k, j);
            if (cb == 0) continue;
            State apb = nth_product(aprime, n + j, b);
            if (apb.is_zero()) continue;
            out += apply_gen(k - j, apb) * Rational(cb * parity_sign(j));
        }
    }
    return out;
}

namespace {

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

State Engine::function_mode(const RatFunc& f, long n, const State& b) const {
    State out(cfg_.N);
    if (f.is_zero() || b.is_zero()) return out;

    for (const auto& [w, h] : b.terms()) {
        // multiset of V-modes in this word, as (direction, positive level) pairs
        std::vector<std::tuple<int, long, long>> vmodes; // (p, m, multiplicity)
        for (const Mode& m : w) {
            if (m.kind != Kind::V) continue;
            long lvl = -m.level;
            bool merged = false;
            for (auto& [p, mm, mult] : vmodes)
                if (p == m.a && mm == lvl) { ++mult; merged = true; break; }
            if (!merged) vmodes.emplace_back(m.a, lvl, 1);
        }

        // enumerate how many oscillators annihilate against each V value
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

            // base coefficient and derivative counts from the annihilators
            Rational ann_coeff = 1;
            std::vector<long> deriv(cfg_.N, 0);
            for (std::size_t i = 0; i < vmodes.size(); ++i) {
                if (take[i] == 0) continue;
                auto [p, m, mult] = vmodes[i];
                for (long t = 0; t < take[i]; ++t) ann_coeff *= Rational(-1, m);
                ann_coeff /= Rational(factorial(take[i]));
                deriv[p - 1] += take[i];
            }

            std::vector<Part> acc;
            enum_colored_partitions(
                c_total, c_total == 0 ? 1 : c_total, cfg_.N, cfg_.N, acc,
                [&](const std::vector<Part>& parts) {
                    Rational coeff = ann_coeff;
                    std::vector<long> dcount = deriv;
                    // per-value multiplicity factorials for the creations
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
                    // derivative of the function factor
                    RatFunc df = f;
                    for (int p = 1; p <= cfg_.N && !df.is_zero(); ++p)
                        for (long t = 0; t < dcount[p - 1] && !df.is_zero(); ++t)
                            df = df.derivative(p);
                    if (df.is_zero()) return;

                    State cur(cfg_.N);
                    cur.add(w, h * df * coeff);
                    // annihilators first (they only shrink the word) ...
                    for (std::size_t i = 0; i < vmodes.size() && !cur.is_zero(); ++i) {
                        auto [p, m, mult] = vmodes[i];
                        for (long t = 0; t < take[i] && !cur.is_zero(); ++t)
                            cur = apply_mode(mode_u(p, static_cast<int>(m)), cur);
                    }
                    // ... then the creations
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

State Engine::translate(const State& a) const {
    State out(cfg_.N);
    for (const auto& [w, h] : a.terms()) {
        // Leibniz over the word: shift each mode down by one level
        for (std::size_t i = 0; i < w.size(); ++i) {
            Mode m = w[i];
            Rational c = m.kind == Kind::L ? Rational(-(m.level + 1)) : Rational(-m.level);
            if (c == 0) continue;
            Word nw = w;
            nw[i].level -= 1;
            out += normal_order(nw, h * c);
        }
        // plus the derivation of the coefficient, paired with oscillators
        for (int p = 1; p <= cfg_.N; ++p) {
            RatFunc dh = h.derivative(p);
            if (dh.is_zero()) continue;
            Word nw;
            nw.reserve(w.size() + 1);
            nw.push_back(mode_u(p, -1));
            nw.insert(nw.end(), w.begin(), w.end());
            out += normal_order(nw, dh);
        }
    }
    return out;
}

State Engine::omega_hei() const {
    State out(cfg_.N);
    RatFunc one = RatFunc::one(cfg_.N);
    for (int p = 1; p <= cfg_.N; ++p)
        out += normal_order(Word{mode_v(p, -1), mode_u(p, -1)}, one);
    return out;
}

State Engine::omega_gl() const {
    State out(cfg_.N);
    int n = cfg_.N;
    RatFunc r = RatFunc::constant(n, Rational(1, 2 * (n + 1)));
    for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
            out += normal_order(Word{mode_e(a, a, -1), mode_e(b, b, -1)}, r);
            out += normal_order(Word{mode_e(a, b, -1), mode_e(b, a, -1)}, r);
        }
        out += normal_order(Word{mode_e(a, a, -2)}, RatFunc::constant(n, Rational(1, 2)));
    }
    return out;
}

State Engine::omega_g() const {
    State out(cfg_.N);
    const LieAlgebra& g = cfg_.algebra;
    Rational denom = cfg_.level + g.dual_coxeter();
    Rational r = Rational(1) / (2 * denom);
    const Mat<Rational>& ki = g.form_inverse();
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = 0; j < g.dim(); ++j) {
            if (ki[i][j] == 0) continue;
            out += normal_order(Word{mode_g(j, -1), mode_g(i, -1)},
                                RatFunc::constant(cfg_.N, Rational(r * ki[i][j])));
        }
    }
    return out;
}

State Engine::omega_vir() const {
    State out(cfg_.N);
    out.add(Word{mode_l(-2)}, RatFunc::one(cfg_.N));
    return out;
}

State Engine::omega() const {
    return omega_hei() + omega_gl() + omega_g() + omega_vir();
}

std::pair<State, State> Engine::borcherds_sides(const State& a, long k,
                                                const State& b, long n,
                                                const State& c) const {
    State lhs = nth_product(nth_product(a, k, b), n, c);
    State rhs(cfg_.N);
    long deg_a = a.degree(), deg_b = b.degree(), deg_c = c.degree();
    for (long j = 0; j <= deg_a + deg_c - 1; ++j) {
        Rational cb = binomial(k, j);
        if (cb == 0) continue;
        State ajc = nth_product(a, j, c);
        if (ajc.is_zero()) continue;
        rhs += nth_product(b, n + k - j, ajc) * Rational(cb * parity_sign(k + j + 1));
    }
    for (long j = 0; j <= deg_b + deg_c - n - 1; ++j) {
        Rational cb = binomial(k, j);
        if (cb == 0) continue;
        State bnc = nth_product(b, n + j, c);
        if (bnc.is_zero()) continue;
        rhs += nth_product(a, k - j, bnc) * Rational(cb * parity_sign(j));
    }
    return {lhs, rhs};
}

std::pair<State, State> Engine::commutator_sides(const State& a, long m,
                                                 const State& b, long k,
                                                 const State& x) const {
    State lhs = nth_product(a, m, nth_product(b, k, x)) -
                nth_product(b, k, nth_product(a, m, x));
    State rhs(cfg_.N);
    for (long n = 0; n <= a.degree() + b.degree() - 1; ++n) {
        Rational cb = binomial(m, n);
        if (cb == 0) continue;
        State anb = nth_product(a, n, b);
        if (anb.is_zero()) continue;
        rhs += nth_product(anb, m + k - n, x) * cb;
    }
    return {lhs, rhs};
}

// ----------------------------- text ---------------------------------------

std::string Engine::mode_str(const Mode& m) const {
    std::ostringstream out;
    switch (m.kind) {
        case Kind::U: out << "u" << m.a; break;
        case Kind::V: out << "v" << m.a; break;
        case Kind::E: out << "E(" << m.a << "," << m.b << ")"; break;
        case Kind::G: out << "G(" << cfg_.algebra.labels().at(m.a) << ")"; break;
        case Kind::L: out << "L"; break;
    }
    out << "(" << m.level << ")";
    return out.str();
}

std::string Engine::str(const State& s) const {
    if (s.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, f] : s.terms()) {
        if (!first) out << " + ";
        first = false;
        if (w.empty()) {
            out << "1";
        } else {
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) out << " ";
                out << mode_str(w[i]);
            }
        }
        out << " | " << f.str();
    }
    return out.str();
}

namespace {

bool looks_like_mode_start(const std::string& t, std::size_t i) {
    auto at = [&](std::size_t k) { return k < t.size() ? t[k] : '\0'; };
    char c = at(i);
    if ((c == 'u' || c == 'v') && std::isdigit(static_cast<unsigned char>(at(i + 1))))
        return true;
    if ((c == 'E' || c == 'G' || c == 'L') && at(i + 1) == '(') return true;
    if (c == '|') return true;
    if (std::isdigit(static_cast<unsigned char>(c))) {
        // a vacuum marker: digits, then whitespace, then '|'
        std::size_t k = i;
        while (std::isdigit(static_cast<unsigned char>(at(k)))) ++k;
        while (at(k) == ' ' || at(k) == '\t') ++k;
        return at(k) == '|';
    }
    return false;
}

} // namespace

State Engine::parse_state(const std::string& text) const {
    // split into signed terms at top-level +/- that begin a new `word | coeff`
    struct RawTerm {
        int sign;
        std::string body;
    };
    std::vector<RawTerm> raw;
    int depth = 0;
    int sign = 1;
    std::string cur;
    std::size_t i = 0;
    auto flush = [&]() {
        if (cur.find_first_not_of(" \t") == std::string::npos) {
            if (!raw.empty() || sign != 1)
                throw std::invalid_argument("empty term in state expression");
            return;
        }
        raw.push_back({sign, cur});
        cur.clear();
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            std::size_t k = i + 1;
            while (k < text.size() && (text[k] == ' ' || text[k] == '\t')) ++k;
            if (looks_like_mode_start(text, k)) {
                flush();
                sign = ch == '+' ? 1 : -1;
                ++i;
                continue;
            }
        }
        cur += ch;
        ++i;
    }
    flush();
    if (raw.empty()) throw std::invalid_argument("empty state expression");

    State out(cfg_.N);
    for (const RawTerm& rt : raw) {
        const std::string& t = rt.body;
        std::size_t p = 0;
        auto skip_ws = [&]() { while (p < t.size() && std::isspace(static_cast<unsigned char>(t[p]))) ++p; };
        auto expect = [&](char c) {
            skip_ws();
            if (p >= t.size() || t[p] != c)
                throw std::invalid_argument(std::string("expected '") + c + "' in state term: " + t);
            ++p;
        };
        auto read_int = [&]() {
            skip_ws();
            std::size_t start = p;
            if (p < t.size() && (t[p] == '-' || t[p] == '+')) ++p;
            std::size_t d = p;
            while (p < t.size() && std::isdigit(static_cast<unsigned char>(t[p]))) ++p;
            if (p == d) throw std::invalid_argument("expected integer in state term: " + t);
            return std::stoi(t.substr(start, p - start));
        };

        Word word;
        bool vacuum_marker = false;
        for (;;) {
            skip_ws();
            if (p >= t.size()) throw std::invalid_argument("missing '|' in state term: " + t);
            char c = t[p];
            if (c == '|') { ++p; break; }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                if (vacuum_marker || !word.empty())
                    throw std::invalid_argument("unexpected integer in state word: " + t);
                if (read_int() != 1)
                    throw std::invalid_argument("only '1' denotes the vacuum in a state word");
                vacuum_marker = true;
                continue;
            }
            Mode m{};
            if (c == 'u' || c == 'v') {
                ++p;
                std::size_t d = p;
                while (p < t.size() && std::isdigit(static_cast<unsigned char>(t[p]))) ++p;
                if (p == d) throw std::invalid_argument("missing direction index in state term: " + t);
                int idx = std::stoi(t.substr(d, p - d));
                if (idx < 1 || idx > cfg_.N)
                    throw std::invalid_argument("direction index out of range in state term: " + t);
                expect('(');
                int lvl = read_int();
                expect(')');
                m = c == 'u' ? mode_u(idx, lvl) : mode_v(idx, lvl);
            } else if (c == 'E') {
                ++p;
                expect('(');
                int a = read_int();
                expect(',');
                int b = read_int();
                expect(')');
                if (a < 1 || a > cfg_.N || b < 1 || b > cfg_.N)
                    throw std::invalid_argument("gl index out of range in state term: " + t);
                expect('(');
                int lvl = read_int();
                expect(')');
                m = mode_e(a, b, lvl);
            } else if (c == 'G') {
                ++p;
                expect('(');
                std::size_t close = t.find(')', p);
                if (close == std::string::npos)
                    throw std::invalid_argument("unterminated label in state term: " + t);
                std::string label = t.substr(p, close - p);
                p = close + 1;
                int gi = cfg_.algebra.index_of(label);
                expect('(');
                int lvl = read_int();
                expect(')');
                m = mode_g(gi, lvl);
            } else if (c == 'L') {
                ++p;
                expect('(');
                int lvl = read_int();
                expect(')');
                m = mode_l(lvl);
            } else {
                throw std::invalid_argument(std::string("unexpected character '") + c +
                                            "' in state word: " + t);
            }
            if (!is_creation(m))
                throw std::invalid_argument("state words may only contain creation modes: " +
                                            mode_str(m));
            if (vacuum_marker)
                throw std::invalid_argument("modes may not follow the vacuum marker: " + t);
            word.push_back(m);
        }
        RatFunc coeff = parse_ratfunc(t.substr(p), cfg_.N);
        if (rt.sign < 0) coeff = -coeff;
        out += normal_order(word, coeff);
    }
    return out;
}

} // namespace vx
