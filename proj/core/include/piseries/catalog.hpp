#pragma once

#include <optional>
#include <string>
#include <vector>

#include "piseries/ball.hpp"
#include "piseries/kernels.hpp"
#include "piseries/quadsurd.hpp"

namespace piseries {

enum class BaseConst { InvPi, PiSq, InvPiSq, Zeta3, KL2 };

struct RhsTerm {
    BigRat coeff;
    unsigned long rad = 1;   // squarefree
};

// value = (sum coeff * sqrt(rad)) * base
struct RHSExpr {
    BaseConst base = BaseConst::InvPi;
    std::vector<RhsTerm> terms;
    std::string str() const;
};

enum class Status { Conjectural, Proved, Corrected };

// One catalogued series. Summand at index k:
//   (w2 k^2 + w1 k + w0) / k^kpow * prod(kernels at k) / base^k
struct Identity {
    std::string code;
    Status status = Status::Conjectural;
    int start = 0;
    BigRat w2, w1, w0;
    int kpow = 0;
    BigRat base;
    std::vector<Kernel> kernels;
    RHSExpr rhs;
    std::optional<RHSExpr> alt_rhs;
    std::optional<QuadSurd> ratio;             // convergence ratio as catalogued
    std::optional<QuadSurd> ratio_corrected;   // set when the catalogued value is a misprint
    std::string note;

    BigRat weight(long k) const;
    bool quadratic_weight() const { return w2 != 0; }
};

struct Catalog {
    int version = 0;
    std::vector<Identity> identities;

    const Identity* find(const std::string& code) const;
    const Identity& at(const std::string& code) const;   // throws on unknown code
};

// Exact rational value of the k-th summand; k < start is a domain error.
BigRat term_value(const Identity& id, long k);

// Ball enclosing the right-hand-side constant, radius <= 10^-digits.
Ball rhs_value(const RHSExpr& rhs, int digits);

Catalog parse_catalog(const std::string& text);
Catalog load_catalog(const std::string& path);
// The canonical serialization; load(serialize(c)) is the identity and
// serialize(load(file)) reproduces a canonical file byte for byte.
std::string serialize_catalog(const Catalog& c);
std::string serialize_identity(const Identity& id);

// Bundled catalog (embedded at build time), with optional override by the
// PISERIES_CATALOG environment variable.
const Catalog& builtin_catalog();
Catalog load_catalog_or_builtin(const std::string& path_override);

}  // namespace piseries
