// Finite-dimensional gl_N modules of the form W = (C^N)^{tensor k} ⊗ det^m.
//
// Basis vectors of W are index tuples (i1..ik) in {1..N}^k, ordered
// row-major. lie_action gives the matrix of E_ab; group_action gives the
// matrix of an invertible g (tensor power times det(g)^m) over any exact
// field, which is what coordinate-change Jacobians require.
#pragma once

#include "vx/matrix.hpp"
#include "vx/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace vx {

class GLNRep {
public:
    GLNRep(int N, int tensor_power, int det_power);

    int N() const { return n_; }
    int tensor_power() const { return k_; }
    int det_power() const { return m_; }
    int dim() const { return dim_; }

    /// Matrix of E_ab (1-based indices a, b <= N) acting on W:
    /// the sum over tensor slots, plus det_power * delta_ab * Id.
    const Mat<Rational>& lie_action(int a, int b) const;

    /// Index tuple (1-based entries) of the basis vector with this index.
    std::vector<int> tuple_of(int index) const;
    int index_of_tuple(const std::vector<int>& t) const;

    /// Matrix of an invertible g: g^{tensor k} * det(g)^m. Works over any
    /// exact field with +,-,*,/ (Rational, RatFunc). `zero`/`one` supply the
    /// field constants. Throws std::domain_error if det(g) is zero.
    template <class F>
    Mat<F> group_action(const Mat<F>& g, const F& zero, const F& one) const {
        if (static_cast<int>(g.size()) != n_)
            throw std::invalid_argument("group element has wrong size");
        F det = mat_det(g);
        if (det == zero) throw std::domain_error("group element is singular");
        F scale = one;
        for (int i = 0; i < (m_ >= 0 ? m_ : -m_); ++i) scale = scale * det;
        if (m_ < 0) scale = one / scale;
        Mat<F> r = mat_zero(dim_, dim_, zero);
        for (int row = 0; row < dim_; ++row) {
            std::vector<int> ti = tuple_of(row);
            for (int col = 0; col < dim_; ++col) {
                std::vector<int> tj = tuple_of(col);
                F p = scale;
                for (int t = 0; t < k_; ++t) p = p * g[ti[t] - 1][tj[t] - 1];
                r[row][col] = p;
            }
        }
        return r;
    }

private:
    int n_, k_, m_, dim_;
    std::vector<Mat<Rational>> e_; // cached E_ab matrices, index (a-1)*N+(b-1)
};

} // namespace vx
