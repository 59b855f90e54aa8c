// Small dense matrices over an exact field (Rational or RatFunc).
//
// Only the operations the engine needs: product, addition, scaling,
// identity, trace, determinant (Laplace, exact), and Gaussian inverse.
#pragma once

#include "vx/rational.hpp"

#include <stdexcept>
#include <vector>

namespace vx {

template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
Mat<F> mat_zero(int rows, int cols, const F& zero) {
    return Mat<F>(rows, std::vector<F>(cols, zero));
}

template <class F>
Mat<F> mat_identity(int n, const F& zero, const F& one) {
    Mat<F> m = mat_zero(n, n, zero);
    for (int i = 0; i < n; ++i) m[i][i] = one;
    return m;
}

template <class F>
Mat<F> mat_mul(const Mat<F>& a, const Mat<F>& b) {
    if (a.empty() || b.empty() || a[0].size() != b.size())
        throw std::invalid_argument("matrix dimension mismatch");
    Mat<F> r(a.size(), std::vector<F>(b[0].size(), a[0][0] - a[0][0]));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <class F>
Mat<F> mat_add(const Mat<F>& a, const Mat<F>& b) {
    Mat<F> r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[i][j] += b[i][j];
    return r;
}

template <class F>
Mat<F> mat_scale(const Mat<F>& a, const F& c) {
    Mat<F> r = a;
    for (auto& row : r)
        for (auto& x : row) x = x * c;
    return r;
}

template <class F>
F mat_trace(const Mat<F>& a) {
    F t = a[0][0];
    for (std::size_t i = 1; i < a.size(); ++i) t += a[i][i];
    return t;
}

/// Determinant by Laplace expansion along the first row; exact and
/// division-free. Intended for the small matrices used here.
template <class F>
F mat_det(const Mat<F>& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    F acc = a[0][0] - a[0][0]; // zero of the field
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j, sign = -sign) {
        Mat<F> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<F> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        F term = a[0][j] * mat_det(minor);
        if (sign > 0) acc += term; else acc -= term;
    }
    return acc;
}

/// Inverse of a rational matrix by Gauss-Jordan elimination.
/// Throws std::domain_error if the matrix is singular.
inline Mat<Rational> mat_inverse(Mat<Rational> a) {
    int n = static_cast<int>(a.size());
    Mat<Rational> inv = mat_identity<Rational>(n, 0, 1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (a[row][col] != 0) { pivot = row; break; }
        if (pivot < 0) throw std::domain_error("singular matrix has no inverse");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        Rational p = a[col][col];
        for (int j = 0; j < n; ++j) { a[col][j] /= p; inv[col][j] /= p; }
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rational f = a[row][col];
            for (int j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace vx
