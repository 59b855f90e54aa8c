// Finite-dimensional Lie algebra data: basis labels, structure constants,
// an invariant symmetric bilinear form, and the dual Coxeter number.
//
// Algebras are either built in (sl2, sl3, with their trace forms) or loaded
// from JSON. validate_algebra checks antisymmetry, the Jacobi identity,
// and symmetry/invariance of the form, and throws on the first violation.
#pragma once

#include "vx/matrix.hpp"
#include "vx/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vx {

class LieAlgebra {
public:
    LieAlgebra(std::string name,
               std::vector<std::string> labels,
               std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets,
               Mat<Rational> form,
               Rational dual_coxeter);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Index of a basis label; throws std::invalid_argument if unknown.
    int index_of(const std::string& label) const;

    /// [g_i, g_j] as a sparse list of (basis index, coefficient).
    const std::vector<std::pair<int, Rational>>& bracket(int i, int j) const;

    /// Invariant symmetric bilinear form (g_i | g_j).
    const Rational& form(int i, int j) const { return form_[i][j]; }
    const Mat<Rational>& form_matrix() const { return form_; }
    /// Inverse of the form matrix (for dual bases). Cached.
    const Mat<Rational>& form_inverse() const;

    const Rational& dual_coxeter() const { return dual_coxeter_; }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets_;
    Mat<Rational> form_;
    Rational dual_coxeter_;
    mutable Mat<Rational> form_inverse_; // lazily computed
};

/// sl2 with basis e, h, f and the 2x2 trace form; dual Coxeter number 2.
LieAlgebra sl2();

/// sl3 with the standard matrix basis E12, E13, E23, H1, H2, E21, E31, E32
/// and the 3x3 trace form; dual Coxeter number 3.
LieAlgebra sl3();

/// Look up a built-in by name ("sl2", "sl3"); throws if unknown.
LieAlgebra lie_by_name(const std::string& name);

/// Build an algebra from parsed JSON text of the shape
///   {"name": "...", "basis": ["e", ...],
///    "brackets": [[i, j, k, "c"], ...],   // [g_i,g_j] += c g_k, 0-based
///    "form": [["0", ...], ...], "dual_coxeter": "2"}
/// The result is validated before being returned.
LieAlgebra lie_from_json_text(const std::string& json_text);

/// Check antisymmetry, the Jacobi identity, and that the form is symmetric
/// and invariant: ([x,y]|z) = (x|[y,z]). Throws std::invalid_argument
/// naming the first failing triple.
void validate_algebra(const LieAlgebra& g);

/// A representation of a Lie algebra: one matrix per basis element.
struct GRep {
    int dim = 1;
    std::vector<Mat<Rational>> action; // action[i] is the matrix of g_i

    static GRep trivial(const LieAlgebra& g);
    /// Natural (defining) matrix representation; available for sl2 and sl3.
    static GRep natural(const LieAlgebra& g);
};

/// Check [rho(g_i), rho(g_j)] == rho([g_i, g_j]) for all pairs.
void validate_rep(const LieAlgebra& g, const GRep& rep);

} // namespace vx
