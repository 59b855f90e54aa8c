// Modes of the generating fields and exact linear combinations of
// PBW-ordered words applied to function coefficients.
//
// A State is a finite sum  sum_w  w ⊗ f_w  where each word w is a product
// of creation modes in canonical order (levels non-decreasing left to
// right, ties broken by kind U < V < E < G < L, then by indices) and each
// coefficient f_w is a nonzero rational function. The zero state has no
// terms. Degree of a monomial is the sum of |level| over its modes.
#pragma once

#include "vx/ratfunc.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace vx {

/// The five families of generating modes:
///   U, V  — the two oscillator families, indexed by a direction 1..N;
///   E     — gl_N currents E_ab, indexed by a, b in 1..N;
///   G     — currents of the auxiliary Lie algebra, indexed by basis slot;
///   L     — Virasoro modes.
enum class Kind : int { U = 0, V = 1, E = 2, G = 3, L = 4 };

struct Mode {
    Kind kind;
    int level; // the mode number: alpha(level)
    int a = 0; // U/V: direction 1..N; E: row; G: basis index (0-based)
    int b = 0; // E: column; unused otherwise

    std::tuple<int, int, int, int> key() const {
        return {level, static_cast<int>(kind), a, b};
    }
    bool operator==(const Mode& o) const { return key() == o.key() && kind == o.kind; }
    bool operator!=(const Mode& o) const { return !(*this == o); }
};

inline Mode mode_u(int p, int level) { return {Kind::U, level, p, 0}; }
inline Mode mode_v(int p, int level) { return {Kind::V, level, p, 0}; }
inline Mode mode_e(int a, int b, int level) { return {Kind::E, level, a, b}; }
inline Mode mode_g(int i, int level) { return {Kind::G, level, i, 0}; }
inline Mode mode_l(int level) { return {Kind::L, level, 0, 0}; }

inline bool mode_less(const Mode& x, const Mode& y) { return x.key() < y.key(); }

/// Creation modes are the strictly negative levels, except that the
/// Virasoro family starts at level -2 (L(-1) annihilates the vacuum).
inline bool is_creation(const Mode& m) {
    return m.kind == Kind::L ? m.level <= -2 : m.level <= -1;
}

using Word = std::vector<Mode>;

/// Degree contributed by a creation word: sum of |level|.
inline long word_degree(const Word& w) {
    long d = 0;
    for (const Mode& m : w) d += -static_cast<long>(m.level);
    return d;
}

struct WordLess {
    bool operator()(const Word& x, const Word& y) const {
        auto ix = x.begin(), iy = y.begin();
        for (; ix != x.end() && iy != y.end(); ++ix, ++iy) {
            if (ix->key() < iy->key()) return true;
            if (iy->key() < ix->key()) return false;
        }
        return iy != y.end();
    }
};

class State {
public:
    State() : nvars_(0) {}
    explicit State(int nvars) : nvars_(nvars) {}

    static State vacuum_with(int nvars, const RatFunc& f) {
        State s(nvars);
        s.add(Word{}, f);
        return s;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Word, RatFunc, WordLess>& terms() const { return terms_; }

    /// Largest monomial degree present; -1 for the zero state.
    long degree() const {
        long d = -1;
        for (const auto& [w, f] : terms_) d = std::max(d, word_degree(w));
        return d;
    }

    /// Accumulate coeff * word, dropping the term if it cancels.
    void add(const Word& w, const RatFunc& coeff) {
        if (coeff.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    State operator+(const State& o) const {
        State r = *this;
        for (const auto& [w, f] : o.terms_) r.add(w, f);
        return r;
    }
    State operator-(const State& o) const {
        State r = *this;
        for (const auto& [w, f] : o.terms_) r.add(w, -f);
        return r;
    }
    State& operator+=(const State& o) {
        for (const auto& [w, f] : o.terms_) add(w, f);
        return *this;
    }
    State& operator-=(const State& o) {
        for (const auto& [w, f] : o.terms_) add(w, -f);
        return *this;
    }
    State operator*(const RatFunc& c) const {
        State r(nvars_);
        for (const auto& [w, f] : terms_) r.add(w, f * c);
        return r;
    }
    State operator*(const Rational& c) const {
        State r(nvars_);
        for (const auto& [w, f] : terms_) r.add(w, f * c);
        return r;
    }
    bool operator==(const State& o) const { return terms_ == o.terms_; }
    bool operator!=(const State& o) const { return !(*this == o); }

private:
    int nvars_;
    std::map<Word, RatFunc, WordLess> terms_;
};

} // namespace vx
