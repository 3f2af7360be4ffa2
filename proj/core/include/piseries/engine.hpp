#pragma once

#include <optional>
#include <string>

#include "piseries/catalog.hpp"

namespace piseries {

enum class Verdict { Verified, Refuted, Inconclusive };

struct EvalReport {
    std::string code;
    int digits = 0;                 // requested
    Verdict verdict = Verdict::Inconclusive;
    int achieved_digits = 0;        // floor(-log10(combined radius)) when Verified
    std::string lhs;                // LHS enclosure (midpoint + radius)
    std::string rhs;                // RHS enclosure
    std::string diff_bound_log10;   // upper bound of |LHS-RHS|, as a log10 string
    long terms = 0;
    bool used_alt_rhs = false;
    bool empirical_ratio = false;   // tail model was estimated, not exact
    std::string diagnostic;         // non-empty for Inconclusive
};

struct RatioResult {
    QuadSurd ratio;   // signed limit, or oscillation modulus carrying the base's sign
    bool osc = false; // termwise ratio oscillates; |t_k|^(1/k) -> |ratio|
};

// Exact convergence ratio lim t_{k+1}/t_k as a quadratic surd.
// Throws std::domain_error for kernels without a known closed-form growth.
QuadSurd convergence_ratio(const Identity& id);
std::optional<RatioResult> try_convergence_ratio(const Identity& id);

struct EvalOptions {
    bool published_rhs = false;   // judge against the published rhs even when an
                                  // alt-rhs correction exists
    long max_terms = 2'000'000;
};

// High-precision verification of one identity with a guarded geometric tail
// bound; the guard itself is part of the report (violations -> Inconclusive).
EvalReport evaluate(const Identity& id, int digits, const EvalOptions& opt = {});

// Estimate of the number of terms needed for the given digit target.
long terms_needed(const Identity& id, int digits);

// Section-4 transforms. Both return a new identity in catalog form.
Identity transform_dual(const Identity& id);
Identity transform_binomial(const Identity& id);

}  // namespace piseries
