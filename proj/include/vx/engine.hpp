// The exact vertex-operator engine.
//
// States live in the tensor product of a rank-2N oscillator system, level-1
// gl_N currents, level-c currents of a configured Lie algebra g, and a
// Virasoro factor, with coefficients in Q(x1..xN). The engine provides:
//   * normal ordering of creation words (PBW straightening);
//   * application of a single mode to a state (commuting annihilators
//     rightward through the relation tables until they hit the coefficient);
//   * the full n-th product a_(n) b by structural recursion that peels the
//     leftmost mode of a and re-expands with binomial coefficients;
//   * products by pure function states, via the exponential expansion of
//     the oscillator field acting on derivatives of the coefficient;
//   * the translation operator, conformal vectors of the four factors,
//     and identity checkers used by the verification suites.
#pragma once

#include "vx/lie_algebra.hpp"
#include "vx/state.hpp"

#include <string>
#include <utility>
#include <vector>

namespace vx {

struct EngineConfig {
    int N = 1;                 // number of directions / variables
    LieAlgebra algebra = sl2();
    Rational level = 1;        // the central charge c of the g currents
};

class Engine {
public:
    /// Validates the configuration: N >= 1, c != 0 and c != -h∨ (both make
    /// the Virasoro normalization singular). Throws std::invalid_argument.
    explicit Engine(EngineConfig cfg);

    int N() const { return cfg_.N; }
    const LieAlgebra& algebra() const { return cfg_.algebra; }
    const Rational& level() const { return cfg_.level; }
    /// Central charge of the Virasoro factor: -c dim(g) / (c + h∨).
    const Rational& virasoro_central() const { return c_vir_; }

    State zero() const { return State(cfg_.N); }
    State vacuum() const { return State::vacuum_with(cfg_.N, RatFunc::one(cfg_.N)); }
    State vacuum_with(const RatFunc& f) const { return State::vacuum_with(cfg_.N, f); }
    /// Single creation mode applied to the vacuum with coefficient f.
    State generator(Mode m, const RatFunc& f) const;

    // ---- commutation data --------------------------------------------

    struct Bracket {
        Rational central;                            // coefficient of the identity
        std::vector<std::pair<Mode, Rational>> terms; // mode contributions
    };
    /// [x, y] as a sum of modes plus a central scalar.
    Bracket bracket(const Mode& x, const Mode& y) const;

    // ---- core operations ---------------------------------------------

    /// Straighten an arbitrary word of creation modes into canonical order,
    /// inserting bracket corrections for each transposition.
    State normal_order(const Word& w, const RatFunc& coeff) const;

    /// Apply a single mode (creation or annihilator) to a state.
    State apply_mode(const Mode& m, const State& s) const;

    /// The n-th product a_(n) b.
    State nth_product(const State& a, long n, const State& b) const;

    /// The n-th product f_(n) b of a pure function state.
    State function_mode(const RatFunc& f, long n, const State& b) const;

    /// The translation operator (the derivation generating -d/dz).
    State translate(const State& a) const;

    // ---- conformal vectors --------------------------------------------

    State omega_hei() const; // oscillator factor, rank 2N
    State omega_gl() const;  // gl_N factor, rank -2N
    State omega_g() const;   // g factor (dual-basis normalization)
    State omega_vir() const; // Virasoro factor
    State omega() const;     // total conformal vector, rank 0

    // ---- identity checkers --------------------------------------------

    /// Both sides of the main recursion identity
    ///   (a_(k) b)_(n) c  =  sum_j ...  for the given k, n.
    std::pair<State, State> borcherds_sides(const State& a, long k,
                                            const State& b, long n,
                                            const State& c) const;

    /// Both sides of the commutator expansion
    ///   [a_(m), b_(k)] x  =  sum_{n>=0} C(m,n) (a_(n)b)_(m+k-n) x.
    std::pair<State, State> commutator_sides(const State& a, long m,
                                             const State& b, long k,
                                             const State& x) const;

    // ---- text ----------------------------------------------------------

    std::string mode_str(const Mode& m) const;
    std::string str(const State& s) const;
    /// Parse a state expression: terms `modes | coeff` joined by top-level
    /// `+`/`-`; modes like `u1(-2) v2(-1) E(1,2)(-1) G(e)(-1) L(-2)`; a
    /// pure vacuum term is written `1 | coeff` (or just `| coeff`). Words
    /// may be written in any order; the result is normal-ordered.
    State parse_state(const std::string& text) const;

private:
    State apply_annihilator(const Mode& m, const Word& w, const RatFunc& coeff) const;
    State prepend(const Mode& m, const State& s) const;

    EngineConfig cfg_;
    Rational c_vir_;
};

} // namespace vx
