#pragma once

#include "hoeffding_urn/rational.hpp"

namespace hoeffding_urn {

// C(n, k) with the convention C(n, k) = 0 whenever k < 0, k > n or n < 0.
Integer binomial(long n, long k);

inline Rational binomial_q(long n, long k) { return Rational(binomial(n, k)); }

// (-1)^k as a small integer.
constexpr int alternating_sign(long k) noexcept { return (k % 2 == 0) ? 1 : -1; }

}  // namespace hoeffding_urn
