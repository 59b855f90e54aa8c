// The loop Lie algebra acting on the vertex algebra.
//
// Basis elements are monomials t^j * f * X where X is one of:
//   [label]   a current valued in the auxiliary Lie algebra,
//   dt, dxa   coefficient one-forms (central directions),
//   d/dt, d/dxa  vector fields on the loop.
//
// `rho_state` gives the vertex-algebra state whose modes represent the
// element: the t-power only selects which mode acts.  `loop_bracket`
// expands commutators into basis elements using the finite per-kind-pair
// tables (valid up to elements that act trivially, namely exact one-forms).
// `theta` transports elements through a coordinate change so that the
// square with the chart homomorphism commutes.
#pragma once

#include "vx/chart.hpp"
#include "vx/check.hpp"
#include "vx/engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vx {

enum class LoopKind { Current, FormDt, FormDx, VectDt, VectDx };

struct LoopElement {
    LoopKind kind = LoopKind::FormDt;
    int idx = 0;   // basis index (0-based) for Current; direction (1-based) for *Dx
    int power = 0; // exponent of the loop variable
    RatFunc f;     // coefficient function
};

using LoopSum = std::vector<LoopElement>;

// Text form: "t^<int> * <coefficient> * <tail>" with tail one of
// "[label]", "dt", "dx<idx>", "d/dt", "d/dx<idx>".
LoopElement parse_loop_element(const std::string& text, const Engine& eng);
std::string loop_str(const LoopElement& e, const Engine& eng);

// Generating state of the action; the element acts as its power-th mode.
State rho_state(const Engine& eng, const LoopElement& e);
State rho_apply(const Engine& eng, const LoopElement& e, const State& x);
State rho_apply(const Engine& eng, const LoopSum& es, const State& x);

// The (-t^j f d/dt)-oriented combination used throughout the product
// tables; rho of a d/dt element is minus this state.
State vt_base_state(const Engine& eng, const RatFunc& f);

// Commutator of two basis elements, expanded into basis elements.  The
// result is canonical only up to elements acting trivially; consumers
// compare through rho.
LoopSum loop_bracket(const Engine& eng, const LoopElement& a, const LoopElement& b);

// Transport through a coordinate change (element given in the new
// coordinates, result expressed in the old ones; powers preserved).
LoopSum theta(const ChartMap& map, const LoopElement& e);

// Names of the pairwise product-identity families, in a fixed order.
const std::vector<std::string>& relation_families();

// Check every n-th product identity of one family over all basis indices
// and all sample coefficient pairs.
std::vector<CheckResult> verify_relation_family(const Engine& eng,
                                                const std::string& family,
                                                const std::vector<RatFunc>& samples);

// Seeded operator-level commutator checks: [rho(A), rho(B)] x equals
// rho(loop_bracket(A, B)) x on random states.
std::vector<CheckResult> relation_operator_checks(const Engine& eng,
                                                  const std::vector<RatFunc>& samples,
                                                  std::uint64_t seed, int count);

// Chart equivariance: the chart homomorphism applied to rho of an element
// in the new coordinates equals rho of the transported element.
std::vector<CheckResult> verify_equivariance(const Engine& eng, const ChartTransition& t,
                                             const std::vector<RatFunc>& samples);

// Exact one-forms act trivially: the differential of t^j * f, applied to
// seeded states, annihilates them for every sampled j and f.
std::vector<CheckResult> verify_exact_form_triviality(const Engine& eng,
                                                      const std::vector<RatFunc>& samples,
                                                      int jlo, int jhi,
                                                      std::uint64_t seed, int count);

} // namespace vx
