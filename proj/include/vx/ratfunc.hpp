// Exact rational functions in x1..xN over the rationals.
//
// Canonical form invariants, maintained by every operation:
//   * the denominator is never zero;
//   * numerator and denominator are coprime;
//   * the denominator has coprime integer coefficients and positive
//     leading coefficient (so the zero function is 0/1 and equality is
//     structural equality).
#pragma once

#include "vx/multipoly.hpp"

#include <string>
#include <vector>

namespace vx {

class RatFunc {
public:
    RatFunc() : num_(0), den_(MultiPoly::constant(0, 1)) {}
    /// The zero function in the given number of variables.
    explicit RatFunc(int nvars);
    /// num/den, canonicalized. Throws std::domain_error if den is zero.
    RatFunc(MultiPoly num, MultiPoly den);

    static RatFunc constant(int nvars, const Rational& c);
    static RatFunc variable(int nvars, int index);
    static RatFunc from_poly(MultiPoly p);
    static RatFunc zero(int nvars) { return RatFunc(nvars); }
    static RatFunc one(int nvars) { return constant(nvars, 1); }

    int nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    /// Throws std::domain_error when dividing by the zero function.
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator*(const Rational& c) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    /// Total order consistent with canonical form (for use as a map key).
    bool operator<(const RatFunc& o) const;

    /// Integer power; negative exponents invert. Throws on 0^negative.
    RatFunc pow(long e) const;

    /// Partial derivative with respect to variable `var` (1-based).
    RatFunc derivative(int var) const;

    /// Evaluate at a rational point. Throws std::domain_error if the
    /// denominator vanishes there.
    Rational evaluate(const std::vector<Rational>& pt) const;

    /// Substitute images[i] for x(i+1). All images must share a common
    /// variable count, which becomes the result's. Throws std::domain_error
    /// if the substituted denominator is identically zero.
    RatFunc substitute(const std::vector<RatFunc>& images) const;

    /// Canonical text form; parse_ratfunc(str(), nvars()) round-trips.
    std::string str() const;

private:
    void canonicalize();

    MultiPoly num_, den_;
};

/// Parse an arithmetic expression in integers, x1..x<nvars>, `+ - * / ^`
/// and parentheses. Throws std::invalid_argument on malformed input and
/// std::domain_error on division by zero.
RatFunc parse_ratfunc(const std::string& text, int nvars);

} // namespace vx
