#pragma once

#include "piseries/ball.hpp"

namespace piseries {

// pi with radius <= 10^-digits. Machin arctangent formula with exact binary
// splitting; never uses any conjectural series.
Ball const_pi(int digits);

// Independent second route (atan(1/2) + atan(1/3) decomposition), for cross-checks.
Ball const_pi_alt(int digits);

// K = L(2, (./3)) = sum_{k>=1} (k/3)/k^2, radius <= 10^-digits.
Ball const_K(int digits);

// zeta(3), radius <= 10^-digits.
Ball const_zeta3(int digits);

// sqrt(r) for rational r >= 0, radius <= 10^-digits.
Ball sqrt_ball(const BigRat& r, int digits);

// Hurwitz-style tail sum_{j>=0} (j+a)^-s by direct summation plus exact
// Euler-Maclaurin correction; the remainder bound is folded into the radius.
Ball hurwitz_zeta(long s, const BigRat& a, int digits);

}  // namespace piseries
