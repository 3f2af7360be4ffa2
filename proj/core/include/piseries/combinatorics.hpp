#pragma once

#include <vector>

#include "piseries/rational.hpp"

namespace piseries {

// Generalized binomial coefficient: zero for 0 <= n < k, defined for negative n.
// k < 0 is a domain error.
BigInt binom_int(long n, long k);

// binom(x, k) = prod_{j=0}^{k-1} (x - j) / k!  for rational x, integer k >= 0.
BigRat binom_rat(const BigRat& x, long k);

// Legendre symbol (a/p) for an odd prime p.
int legendre(const BigInt& a, const BigInt& p);

// Exact Bernoulli number B_n, convention B_1 = -1/2. Cached; n capped at 400.
BigRat bernoulli(long n);

BigInt factorial(long n);

bool is_prime(const BigInt& n);

// Row of rational binomials binom(x, 0..upto); cached per x.
const std::vector<BigRat>& binom_rat_row(const BigRat& x, long upto);

// Central binomial binom(2k, k); cached.
const BigInt& central_binom(long k);

}  // namespace piseries
