#pragma once

#include <string>
#include <vector>

#include "piseries/ball.hpp"
#include "piseries/rational.hpp"

namespace piseries {

// The four q-polynomial families conjectured to be q-logconvex.
enum class PolyFamily { AperyQ, S1Q, S2Q, WQ };

// Coefficients of P_n(q) (degree n, index = power of q).
std::vector<BigInt> qpoly(PolyFamily fam, long n);

struct QlcVerdict {
    long n;
    bool nonnegative;
    long first_negative_power = -1;   // when !nonnegative
};

// Exact coefficients of P_{n-1} P_{n+1} - P_n^2 checked for nonnegativity,
// for each 1 <= n <= n_max.
std::vector<QlcVerdict> qlogconvex_check(PolyFamily fam, long n_max);

// T_n(b,c) divided by its leading asymptotic term
// (b+2 sqrt c)^(n+1/2) / (2 c^(1/4) sqrt(n pi)), as a ball.
Ball asymptotic_check(long b, long c, long n, int digits = 20);

struct SuiteResult {
    std::string name;
    bool pass;
    long fail_index = -1;   // first failing n, when pass == false
};

// Aggregated combinatorial side identities (multi-form kernel equalities,
// special evaluations, symmetry and divisibility facts, recurrence cross-checks).
std::vector<SuiteResult> run_identity_suite(long n_max);

}  // namespace piseries
