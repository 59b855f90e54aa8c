#include "vx/gln_rep.hpp"

namespace vx {

GLNRep::GLNRep(int N, int tensor_power, int det_power)
    : n_(N), k_(tensor_power), m_(det_power) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    if (tensor_power < 0) throw std::invalid_argument("tensor power must be nonnegative");
    dim_ = 1;
    for (int t = 0; t < k_; ++t) dim_ *= n_;

    e_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int a = 1; a <= n_; ++a) {
        for (int b = 1; b <= n_; ++b) {
            Mat<Rational> mat = mat_zero<Rational>(dim_, dim_, 0);
            for (int col = 0; col < dim_; ++col) {
                std::vector<int> t = tuple_of(col);
                for (int slot = 0; slot < k_; ++slot) {
                    if (t[slot] != b) continue;
                    std::vector<int> s = t;
                    s[slot] = a;
                    mat[index_of_tuple(s)][col] += 1;
                }
                if (a == b) mat[col][col] += Rational(m_);
            }
            e_.push_back(std::move(mat));
        }
    }
}

const Mat<Rational>& GLNRep::lie_action(int a, int b) const {
    if (a < 1 || a > n_ || b < 1 || b > n_)
        throw std::invalid_argument("gl index out of range");
    return e_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)];
}

std::vector<int> GLNRep::tuple_of(int index) const {
    if (index < 0 || index >= dim_) throw std::invalid_argument("basis index out of range");
    std::vector<int> t(k_, 1);
    for (int slot = k_ - 1; slot >= 0; --slot) {
        t[slot] = index % n_ + 1;
        index /= n_;
    }
    return t;
}

int GLNRep::index_of_tuple(const std::vector<int>& t) const {
    if (static_cast<int>(t.size()) != k_)
        throw std::invalid_argument("tuple length mismatch");
    int idx = 0;
    for (int slot = 0; slot < k_; ++slot) {
        if (t[slot] < 1 || t[slot] > n_) throw std::invalid_argument("tuple entry out of range");
        idx = idx * n_ + (t[slot] - 1);
    }
    return idx;
}

} // namespace vx
