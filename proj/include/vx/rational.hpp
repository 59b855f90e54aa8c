// Exact rational scalars.
//
// Thin layer over GMP's mpq_class: always stored reduced with positive
// denominator (GMP canonicalization), which is exactly the invariant the
// rest of the code base relies on for printing and equality.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace vx {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parse "p", "-p" or "p/q" into a reduced rational. Throws on malformed
/// input or zero denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

/// Canonical text form "p" or "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// n! as an exact integer. Requires n >= 0.
inline Integer factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    Integer acc = 1;
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

/// Binomial coefficient C(k, j) for arbitrary integer k and j >= 0,
/// via the falling factorial k(k-1)...(k-j+1)/j!. Defined for negative k.
inline Rational binomial(long k, long j) {
    if (j < 0) return 0;
    Integer num = 1;
    for (long i = 0; i < j; ++i) num *= Integer(k - i);
    return Rational(num) / Rational(factorial(j));
}

} // namespace vx
