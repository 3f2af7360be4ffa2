#pragma once

#include <optional>
#include <string>
#include <vector>

#include "piseries/catalog.hpp"
#include "piseries/rational.hpp"

namespace piseries {

// Nonnegative solution of a x^2 + b y^2 = target_mult * p, minimal y then x.
struct FormRepresentation {
    BigInt p;
    long a = 1, b = 1;
    int target_mult = 1;   // 1 -> p, 2 -> 2p
    bool found = false;
    BigInt x, y;
};

FormRepresentation represent_form(const BigInt& p, long a, long b, int target_mult);

// Exact residue of sum_{k=0}^{p-1} of the identity's summand mod p^e, with
// rational parts realized by modular inverses. Throws if p divides a term
// denominator (the message names the offending k).
BigInt partial_sum_mod(const Identity& id, const BigInt& p, int e);

// The mod-p^6 supercongruence attached to the zeta(3) series: partial sum of
// (28k^2+18k+3) binom(2k,k)^4 binom(3k,k) (-64)^-k against 3p^2 - 7/2 p^5 B_{p-3}.
struct Congruence6Report {
    BigInt p;
    BigInt computed;    // residue mod p^6
    BigInt predicted;
    bool holds = false;
};
Congruence6Report check_mod_p6_congruence(const BigInt& p);

// Oracle route: exact rational partial sum reduced mod p^e (for cross-checks).
BigInt partial_sum_mod_oracle(const Identity& id, const BigInt& p, int e);

struct CongruenceReport {
    BigInt p;
    int modulus_power = 2;
    BigInt computed;
    BigInt predicted;
    std::string case_tag;     // quadratic-form case description
    bool degenerate = false;  // p | 105: the case analysis does not apply
    bool holds = false;
    std::optional<FormRepresentation> rep;
};

// Both congruences of the quintic-kernel family: the linear-weight sum against
// p (-1/p) (54 + 49 (p/15)) and the plain sum against the nine-case
// quadratic-form classification. Requires p > 5.
std::pair<CongruenceReport, CongruenceReport> check_conj5_congruences(const BigInt& p);

}  // namespace piseries
