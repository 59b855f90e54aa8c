#include "vx/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vx {

bool GrlexLess::operator()(const Expo& a, const Expo& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("negative variable count");
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Expo(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    if (index < 1 || index > nvars)
        throw std::invalid_argument("variable index out of range");
    MultiPoly p(nvars);
    Expo e(nvars, 0);
    e[index - 1] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Expo& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

bool MultiPoly::is_one() const { return is_constant() && constant_value() == 1; }

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const Expo& e = terms_.rbegin()->first; // grlex max has max total degree
    int d = 0;
    for (int x : e) d += x;
    return d;
}

int MultiPoly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var - 1]);
    return d;
}

bool MultiPoly::uses_var(int var) const {
    for (const auto& [e, c] : terms_)
        if (e[var - 1] > 0) return true;
    return false;
}

void MultiPoly::add_term(const Expo& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw std::invalid_argument("exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    MultiPoly r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Expo e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 1 || var > nvars_) throw std::invalid_argument("variable index out of range");
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var - 1] == 0) continue;
        Expo d = e;
        d[var - 1] -= 1;
        r.add_term(d, c * Rational(e[var - 1]));
    }
    return r;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& pt) const {
    if (static_cast<int>(pt.size()) != nvars_)
        throw std::invalid_argument("evaluation point length mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        acc += t;
    }
    return acc;
}

const Rational& MultiPoly::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading_coeff of zero polynomial");
    return terms_.rbegin()->second;
}

Rational MultiPoly::rational_content() const {
    if (terms_.empty()) return 1;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational u(num_gcd, den_lcm);
    u.canonicalize();
    if (leading_coeff() < 0) u = -u;
    return u;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Descending graded-lex: leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Expo& e = it->first;
        Rational c = it->second;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        std::string mon;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mon.empty()) mon += "*";
            mon += "x" + std::to_string(i + 1);
            if (e[i] > 1) mon += "^" + std::to_string(e[i]);
        }
        if (mon.empty()) {
            out << to_string(c);
        } else if (c == 1) {
            out << mon;
        } else {
            out << to_string(c) << "*" << mon;
        }
    }
    return out.str();
}

namespace {

// ---- helpers for the primitive remainder sequence ------------------------

// Coefficient of v^d when the polynomial is read as a univariate in
// variable v (1-based); the v-exponent is zeroed in the result.
MultiPoly coeff_of(const MultiPoly& p, int v, int d) {
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[v - 1] != d) continue;
        Expo f = e;
        f[v - 1] = 0;
        r.add_term(f, c);
    }
    return r;
}

MultiPoly mul_vpow(const MultiPoly& p, int v, int d) {
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Expo f = e;
        f[v - 1] += d;
        r.add_term(f, c);
    }
    return r;
}

MultiPoly unit_normalize(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / p.rational_content());
}

// Pseudo-remainder of a by b in variable v: repeatedly scale by the leading
// v-coefficient of b and cancel the leading v-term. Exact in Q[x].
MultiPoly prem(MultiPoly a, const MultiPoly& b, int v) {
    int db = b.degree_in(v);
    MultiPoly lcb = coeff_of(b, v, db);
    int da;
    while (!a.is_zero() && (da = a.degree_in(v)) >= db) {
        MultiPoly lca = coeff_of(a, v, da);
        a = a * lcb - mul_vpow(lca * b, v, da - db);
    }
    return a;
}

// GCD of the v-coefficients (a polynomial in the remaining variables).
MultiPoly content_wrt(const MultiPoly& p, int v) {
    MultiPoly acc(p.nvars());
    for (int d = 0; d <= p.degree_in(v); ++d) {
        MultiPoly cd = coeff_of(p, v, d);
        if (cd.is_zero()) continue;
        acc = poly_gcd(acc, cd);
        if (acc.is_one()) break;
    }
    return acc;
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
    if (a.is_zero()) return unit_normalize(b);
    if (b.is_zero()) return unit_normalize(a);
    if (a.is_constant() || b.is_constant())
        return MultiPoly::constant(a.nvars(), 1);

    int v = 0;
    for (int i = a.nvars(); i >= 1; --i) {
        if (a.uses_var(i) || b.uses_var(i)) { v = i; break; }
    }

    MultiPoly ca = content_wrt(a, v);
    MultiPoly cb = content_wrt(b, v);
    MultiPoly ppa = divide_exact(a, ca);
    MultiPoly ppb = divide_exact(b, cb);
    MultiPoly cg = poly_gcd(ca, cb);

    MultiPoly A = ppa, B = ppb;
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    while (!B.is_zero()) {
        MultiPoly R = prem(A, B, v);
        A = B;
        if (R.is_zero()) {
            B = R;
        } else {
            B = divide_exact(R, content_wrt(R, v));
            B = unit_normalize(B);
        }
    }
    if (A.degree_in(v) == 0) A = MultiPoly::constant(a.nvars(), 1);
    return unit_normalize(cg * A);
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& d) {
    if (d.is_zero()) throw std::logic_error("exact division by zero polynomial");
    MultiPoly q(a.nvars());
    MultiPoly r = a;
    const Expo& ed = d.terms().rbegin()->first;
    const Rational& cd = d.terms().rbegin()->second;
    while (!r.is_zero()) {
        const Expo& er = r.terms().rbegin()->first;
        const Rational& cr = r.terms().rbegin()->second;
        Expo eq(a.nvars());
        for (int i = 0; i < a.nvars(); ++i) {
            eq[i] = er[i] - ed[i];
            if (eq[i] < 0) throw std::logic_error("inexact polynomial division");
        }
        Rational cq = cr / cd;
        MultiPoly t(a.nvars());
        t.add_term(eq, cq);
        q = q + t;
        r = r - t * d;
    }
    return q;
}

} // namespace vx
