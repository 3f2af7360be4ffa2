#pragma once

#include <optional>
#include <string>
#include <vector>

#include "piseries/quadsurd.hpp"
#include "piseries/rational.hpp"

namespace piseries {

// Sequence families appearing in the catalogued summands. Each kernel yields an
// exact rational for every index k >= 0.
enum class KernelTag {
    BinomProd,   // binom(a k, b k)^e, (a,b) in {(2,1),(3,1),(4,2)}
    Trinomial,   // T_{mult k}(b,c)^e
    AperyA,      // sum_j binom(k,j)^2 binom(k+j,j) x^(k-j)
    AperyQ,      // sum_j binom(k,j)^2 binom(k+j,j) x^j
    S1,          // sum_j binom(k,j) binom(2j,j) binom(2(k-j),k-j) x^(k-j)
    S2,          // sum_j binom(2j,j)^2 binom(2(k-j),k-j) x^(k-j)
    W,           // sum_j binom(k+j,2j) binom(2j,j)^2 binom(2(k-j),k-j) x^-(k+j)
    FPlus,       // x^-k f_k(x^2)
    FMinus,      // x^-k f_k(-x^2)
    FRaw,        // f_k(x) = sum_j binom(k,j)^2 binom(2j,k) x^j
    G,           // sum_j binom(k,j)^2 binom(2j,j) x^j
    SConj5,      // sum_j binom(k,j) binom(k+2j,2j) binom(2j,j) x^-(k+j)
    SConj5Pos,   // sum_j binom(k,j) binom(k+2j,2j) binom(2j,j) x^(k-j)
    PConj6,      // sum_j binom(2j,j)^2 binom(j,k-j) x^(k-j)
    CLF,         // Catalan-Larcombe-French numbers
    SConj6,      // sum_j 5^j binom(2j,j)^2 binom(2(k-j),k-j)^2 / binom(k,j)
    AQ, BQ, CQ,  // alternating rational-binomial convolutions (levels 3, 4, 6)
    V3,          // sum_j binom(k,j) binom(2j,k) binom(2j,j) binom(2(k-j),k-j) x^(2j-k)
    Domb,        // sum_j binom(k,j)^2 binom(2j,j) binom(2(k-j),k-j)
    Conv,        // general rational-binomial convolution
    Dual,        // sum_j binom(k,j) (-1)^j * (inner kernel product at j)
};

struct ConvFactor {
    BigRat x;
    bool on_j = true;   // argument index: j (true) or k-j (false)
    int exp = 1;
};

struct ConvSpec {
    bool alt = false;   // (-1)^j
    bool cbj = false;   // binom(2j,j)
    bool cbnj = false;  // binom(2(k-j),k-j)
    std::vector<ConvFactor> factors;
};

struct Kernel {
    KernelTag tag{};
    long ba = 0, bb = 0;           // BinomProd: binom(ba*k, bb*k)
    int exp = 1;                   // BinomProd / Trinomial exponent
    long tb = 0, tc = 0;           // Trinomial b, c
    int tmult = 1;                 // Trinomial index multiplier (1, 2, 3)
    BigRat x;                      // parameter of the x-families
    ConvSpec conv;
    std::vector<Kernel> inner;     // Dual

    static Kernel binom_prod(long a, long b, int e);
    static Kernel trinomial(long b, long c, int mult, int e);
    static Kernel family(KernelTag tag, const BigRat& x = BigRat(0));
    static Kernel conv_kernel(ConvSpec spec);
    static Kernel dual_of(std::vector<Kernel> inner);

    std::string str() const;
    bool operator==(const Kernel& o) const;
};

// T_n(b,c): coefficient of x^n in (x^2+bx+c)^n, by the three-term recurrence.
BigInt trinomial_T(long n, long b, long c);
// Same value by the direct sum (oracle route).
BigInt trinomial_T_direct(long n, long b, long c);

BigInt clf_direct(long n);
BigInt sconj6_direct(long n);

// Exact value of the k-th kernel term.
BigRat kernel_term(const Kernel& k, long idx);

// Terms 0..upto (uses recurrences where available).
std::vector<BigRat> kernel_stream(const Kernel& k, long upto);

// Dual sequence a*_n = sum_k binom(n,k) (-1)^k a_k of a finite prefix.
std::vector<BigRat> dual_sequence(const std::vector<BigRat>& a);

// Signed limit of f(k+1)/f(k), when the family's leading growth is known in
// closed form. osc = true means the value is an oscillation modulus (complex
// singularity pair): |f(k)|^(1/k) -> value but the termwise ratio oscillates.
struct Growth {
    QuadSurd value;
    bool osc = false;
};
std::optional<Growth> kernel_growth(const Kernel& k);

Kernel parse_kernel(const std::string& tok);
std::vector<Kernel> parse_kernel_product(const std::string& s);
std::string kernel_product_str(const std::vector<Kernel>& ks);

}  // namespace piseries
