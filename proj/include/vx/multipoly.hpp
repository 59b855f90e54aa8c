// Exact multivariate polynomials over the rationals.
//
// Terms are kept in a map ordered by graded lexicographic order on exponent
// vectors, so iteration order (and therefore printing) is canonical. All
// arithmetic is exact; GCDs use a primitive polynomial remainder sequence.
#pragma once

#include "vx/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace vx {

/// Exponent vector; length equals the number of variables.
using Expo = std::vector<int>;

/// Graded lexicographic order: compare total degree first, then
/// lexicographically on exponents.
struct GrlexLess {
    bool operator()(const Expo& a, const Expo& b) const;
};

class MultiPoly {
public:
    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars);

    static MultiPoly constant(int nvars, const Rational& c);
    /// Variable x<index>, 1-based.
    static MultiPoly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    /// True for zero or degree-0 polynomials.
    bool is_constant() const;
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rational constant_value() const;
    bool is_one() const;
    /// Total degree; -1 for the zero polynomial.
    int total_degree() const;
    /// Degree in one variable (1-based); -1 for the zero polynomial.
    int degree_in(int var) const;
    /// True if the variable (1-based) appears with positive exponent.
    bool uses_var(int var) const;
    std::size_t term_count() const { return terms_.size(); }

    /// Accumulate c * x^e, pruning the term if the result is zero.
    void add_term(const Expo& e, const Rational& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& c) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Partial derivative with respect to variable `var` (1-based).
    MultiPoly derivative(int var) const;

    /// Evaluate at a rational point; pt.size() must equal nvars().
    Rational evaluate(const std::vector<Rational>& pt) const;

    const std::map<Expo, Rational, GrlexLess>& terms() const { return terms_; }

    /// Leading (grlex-largest) coefficient; requires a nonzero polynomial.
    const Rational& leading_coeff() const;

    /// Rational scalar u such that (*this)/u has coprime integer
    /// coefficients and positive leading coefficient; 1 for zero input.
    Rational rational_content() const;

    /// Canonical text form, terms in descending graded-lex order.
    std::string str() const;

private:
    int nvars_;
    std::map<Expo, Rational, GrlexLess> terms_;
};

/// Greatest common divisor in Q[x1..xn], unit-normalized: the result has
/// coprime integer coefficients and positive leading coefficient (1 when
/// either argument is a nonzero constant; 0 only if both are zero).
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

/// Exact quotient a / d. Throws std::logic_error if d does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& d);

} // namespace vx
