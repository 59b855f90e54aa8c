// Coordinate changes and the induced vertex-algebra homomorphism.
//
// A transition stores a birational change of variables: `forward[s]` gives
// the new coordinate y_s as a function of the old variables, and
// `inverse[p]` gives the old coordinate x_p as a function of the new
// variables (written with the same variable symbols x1..xN standing for the
// new coordinates).  Both compositions must be the identity.
//
// ChartMap turns a validated transition into the algebra map `phi` that
// rewrites states expressed in the new coordinates as states in the old
// ones: coefficients are pulled back through `forward`, oscillators
// transform by the forward Jacobian, derivations pick up current
// corrections from the second derivatives, and the Virasoro factor is
// untouched.  `verify_gluing` machine-checks that these generator images
// respect every n-th product, i.e. that phi really is a homomorphism.
#pragma once

#include "vx/engine.hpp"
#include "vx/matrix.hpp"

#include <string>
#include <vector>

namespace vx {

struct ChartTransition {
    int n = 0;
    std::vector<RatFunc> forward; // new coords as functions of the old
    std::vector<RatFunc> inverse; // old coords as functions of the new
};

// Throws std::invalid_argument unless both compositions are the identity.
void validate_transition(const ChartTransition& t);

// The opposite transition (swap the roles of old and new coordinates).
ChartTransition swapped(const ChartTransition& t);

// Compose two transitions sharing the middle chart: if `ij` maps chart i to
// chart j coordinates and `jk` maps chart j to chart k, the result maps
// chart i directly to chart k.
ChartTransition composed(const ChartTransition& ij, const ChartTransition& jk);

// Parse {"n": 2, "forward": ["...", ...], "inverse": ["...", ...]}.
ChartTransition chart_from_json_text(const std::string& text);

class ChartMap {
public:
    ChartMap(const Engine& eng, ChartTransition t);

    const ChartTransition& transition() const { return t_; }
    const Engine& engine() const { return eng_; }

    // Jacobians, both expressed in the old coordinates:
    //   jac_forward()[r][s] = d(new_s)/d(old_r)
    //   jac_inverse()[a][p] = d(old_p)/d(new_a) pulled back through forward
    const Mat<RatFunc>& jac_forward() const { return jf_; }
    const Mat<RatFunc>& jac_inverse() const { return ji_; }

    // Pull a coefficient in the new coordinates back to the old ones.
    RatFunc pull(const RatFunc& f) const;

    // Derivative along the a-th new coordinate of a function of the old
    // ones: sum_p jac_inverse()[a][p] * d_p f.
    RatFunc tilde_derivative(const RatFunc& f, int a) const;

    // Images of the degree-one generator states (1-based indices).
    State phi_u(int a) const;
    State phi_v(int a) const;
    State phi_e(int a, int b) const;

    // Image of a single generator mode as a degree-one state.
    State gen_image(const Mode& m) const;

    // The full homomorphism on an arbitrary state.
    State phi(const State& s) const;

    // Shared correction term: the conformal vectors of the oscillator and
    // matrix-current factors individually shift by this state under phi
    // (with opposite signs); the total conformal vector is preserved.
    State correction() const;

private:
    const Engine& eng_;
    ChartTransition t_;
    Mat<RatFunc> jf_, ji_;
};

// Check that phi is a homomorphism for every pair of generator states
// (including sample coefficient functions) and every relevant product
// index.  Returns true when all checks pass; failure descriptions are
// appended to `failures` when provided.
bool verify_gluing(const Engine& eng, const ChartTransition& t,
                   const std::vector<RatFunc>& samples,
                   std::vector<std::string>* failures = nullptr);

} // namespace vx
