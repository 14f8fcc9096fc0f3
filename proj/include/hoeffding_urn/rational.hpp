#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hoeffding_urn {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts optional leading '-', decimal digits, optional "/digits" with a
// nonzero denominator. Anything else (spaces, '+', decimals) throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Rational pow(const Rational& base, unsigned long exponent);

// Round-to-nearest conversion; only used at the statistical boundary.
double to_double(const Rational& q);

}  // namespace hoeffding_urn
