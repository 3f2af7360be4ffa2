#include "piseries/congruences.hpp"

#include <stdexcept>

#include "piseries/combinatorics.hpp"

namespace piseries {

namespace {

BigInt mod_inverse(const BigInt& a, const BigInt& mod) {
    BigInt r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()))
        throw std::domain_error("mod_inverse: not invertible");
    return r;
}

BigInt reduce_rat(const BigRat& q, const BigInt& mod) {
    BigInt num = q.get_num() % mod;
    if (num < 0) num += mod;
    BigInt den = q.get_den() % mod;
    return num * mod_inverse(den, mod) % mod;
}

}  // namespace

FormRepresentation represent_form(const BigInt& p, long a, long b, int target_mult) {
    if (a < 1 || b < 1) throw std::domain_error("represent_form: form coefficients must be >= 1");
    if (target_mult != 1 && target_mult != 2)
        throw std::domain_error("represent_form: target must be p or 2p");
    FormRepresentation rep;
    rep.p = p;
    rep.a = a;
    rep.b = b;
    rep.target_mult = target_mult;
    BigInt target = target_mult * p;
    for (BigInt y(0); b * y * y <= target; ++y) {
        BigInt rem = target - b * y * y;
        BigInt quo, rmd;
        mpz_fdiv_qr_ui(quo.get_mpz_t(), rmd.get_mpz_t(), rem.get_mpz_t(),
                       static_cast<unsigned long>(a));
        if (rmd != 0) continue;
        if (mpz_perfect_square_p(quo.get_mpz_t())) {
            BigInt x;
            mpz_sqrt(x.get_mpz_t(), quo.get_mpz_t());
            rep.found = true;
            rep.x = x;
            rep.y = y;
            return rep;
        }
    }
    return rep;
}

BigInt partial_sum_mod(const Identity& id, const BigInt& p, int e) {
    if (!is_prime(p)) throw std::domain_error("partial_sum_mod: p not prime");
    if (e < 1) throw std::domain_error("partial_sum_mod: e < 1");
    BigInt mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    if (!p.fits_slong_p()) throw std::domain_error("partial_sum_mod: p too large");
    long pl = p.get_si();
    BigInt s(0);
    for (long k = id.start; k < pl; ++k) {
        BigRat t = id.weight(k);
        for (const auto& kern : id.kernels) t *= kernel_term(kern, k);
        t *= pow_rat(id.base, -k);
        if (id.kpow) t /= pow_rat(BigRat(k), id.kpow);
        if (mpz_divisible_p(t.get_den().get_mpz_t(), p.get_mpz_t()))
            throw std::domain_error("partial_sum_mod: p divides the denominator at k = " +
                                    std::to_string(k));
        s = (s + reduce_rat(t, mod)) % mod;
    }
    return s;
}

BigInt partial_sum_mod_oracle(const Identity& id, const BigInt& p, int e) {
    if (!p.fits_slong_p()) throw std::domain_error("partial_sum_mod_oracle: p too large");
    long pl = p.get_si();
    BigInt mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    BigRat s(0);
    for (long k = id.start; k < pl; ++k) {
        BigRat t = id.weight(k);
        for (const auto& kern : id.kernels) t *= kernel_term(kern, k);
        t *= pow_rat(id.base, -k);
        if (id.kpow) t /= pow_rat(BigRat(k), id.kpow);
        s += t;
    }
    if (mpz_divisible_p(s.get_den().get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("partial_sum_mod_oracle: p divides the common denominator");
    return reduce_rat(s, mod);
}

Congruence6Report check_mod_p6_congruence(const BigInt& p) {
    if (!is_prime(p) || p == 2) throw std::domain_error("check_mod_p6_congruence: need odd prime");
    Congruence6Report rep;
    rep.p = p;
    BigInt mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), 6);
    long pl = p.get_si();
    BigInt inv64 = mod_inverse((BigInt(-64) % mod + mod) % mod, mod);
    BigInt s(0), ik(1);
    for (long k = 0; k < pl; ++k) {
        BigInt b2 = central_binom(k) % mod;
        BigInt t = BigInt(28 * k * k + 18 * k + 3) % mod;
        BigInt b2sq = b2 * b2 % mod;
        t = t * (b2sq * b2sq % mod) % mod;
        t = t * (binom_int(3 * k, k) % mod) % mod;
        s = (s + t * ik) % mod;
        ik = ik * inv64 % mod;
    }
    rep.computed = s;
    // 3 p^2 - 7/2 p^5 B_{p-3}; B_0 = 1 covers p = 3
    BigRat rhs = 3 * BigRat(p) * BigRat(p) -
                 BigRat(7, 2) * pow_rat(BigRat(p), 5) * bernoulli(pl - 3);
    rep.predicted = reduce_rat(rhs, mod);
    rep.holds = (rep.computed == rep.predicted);
    return rep;
}

namespace {

// sum_j binom(n,j) binom(n+2j,2j) binom(2j,j) (-324)^(n-j)  mod m
BigInt conj5_inner_mod(long n, const BigInt& mod) {
    BigInt s(0);
    std::vector<BigInt> pows(static_cast<size_t>(n) + 1);
    pows[0] = BigInt(1) % mod;
    BigInt base = (BigInt(-324) % mod + mod) % mod;
    for (long i = 1; i <= n; ++i) pows[static_cast<size_t>(i)] = pows[static_cast<size_t>(i - 1)] * base % mod;
    for (long j = 0; j <= n; ++j) {
        BigInt t = binom_int(n, j) % mod;
        t = t * (binom_int(n + 2 * j, 2 * j) % mod) % mod;
        t = t * (central_binom(j) % mod) % mod;
        t = t * pows[static_cast<size_t>(n - j)] % mod;
        s = (s + t) % mod;
    }
    return s;
}

}  // namespace

std::pair<CongruenceReport, CongruenceReport> check_conj5_congruences(const BigInt& p) {
    if (!is_prime(p) || p <= 5) throw std::domain_error("check_conj5_congruences: need prime > 5");
    long pl = p.get_si();
    BigInt mod = p * p;
    BigInt inv2160 = mod_inverse(BigInt(2160), mod);

    BigInt s_lin(0), s_plain(0), ik(1);
    for (long n = 0; n < pl; ++n) {
        BigInt ic = conj5_inner_mod(n, mod);
        BigInt cb = central_binom(n) % mod;
        BigInt common = cb * ic % mod * ik % mod;
        s_lin = (s_lin + BigInt(357 * n + 103) * common) % mod;
        s_plain = (s_plain + common) % mod;
        ik = ik * inv2160 % mod;
    }

    int l1 = legendre(BigInt(-1), p);
    int l3 = legendre(p, BigInt(3));
    int l5 = legendre(p, BigInt(5));
    int l7 = legendre(p, BigInt(7));

    CongruenceReport lin;
    lin.p = p;
    lin.computed = s_lin;
    BigInt pred = p * l1 * (54 + 49 * l3 * l5) % mod;
    if (pred < 0) pred += mod;
    lin.predicted = pred;
    lin.case_tag = "p (-1/p) (54 + 49 (p/15))";
    lin.holds = (lin.computed == lin.predicted);

    CongruenceReport form;
    form.p = p;
    form.computed = s_plain;
    struct Case {
        int l1, l3, l5, l7;
        long a, b;
        int mult;
        long coeff;   // predicted = coeff * x^2 + sign2p * 2p with sign folded below
        long pterm;   // multiple of p added: predicted = coeff x^2 + pterm * p
        const char* tag;
    };
    static const Case cases[] = {
        {+1, +1, +1, +1, 1, 105, 1, 4, -2, "p = x^2+105y^2: 4x^2-2p"},
        {+1, -1, -1, +1, 1, 105, 2, 2, -2, "2p = x^2+105y^2: 2x^2-2p"},
        {-1, -1, -1, -1, 3, 35, 1, -12, 2, "p = 3x^2+35y^2: 2p-12x^2"},
        {-1, +1, +1, -1, 3, 35, 2, -6, 2, "2p = 3x^2+35y^2: 2p-6x^2"},
        {+1, -1, +1, -1, 5, 21, 1, 20, -2, "p = 5x^2+21y^2: 20x^2-2p"},
        {+1, +1, -1, -1, 5, 21, 2, 10, -2, "2p = 5x^2+21y^2: 10x^2-2p"},
        {-1, +1, -1, +1, 7, 15, 1, 28, -2, "p = 7x^2+15y^2: 28x^2-2p"},
        {-1, -1, +1, +1, 7, 15, 2, 14, -2, "2p = 7x^2+15y^2: 14x^2-2p"},
    };
    if (l3 == 0 || l5 == 0 || l7 == 0) {
        form.degenerate = true;
        form.case_tag = "degenerate: p divides 105";
        form.holds = false;
        return {lin, form};
    }
    bool matched = false;
    for (const auto& cs : cases) {
        if (cs.l1 == l1 && cs.l3 == l3 && cs.l5 == l5 && cs.l7 == l7) {
            matched = true;
            form.case_tag = cs.tag;
            FormRepresentation fr = represent_form(p, cs.a, cs.b, cs.mult);
            form.rep = fr;
            if (!fr.found) {
                form.holds = false;
                form.case_tag += " [no representation found]";
            } else {
                BigInt predicted = (cs.coeff * fr.x * fr.x + cs.pterm * p) % mod;
                if (predicted < 0) predicted += mod;
                form.predicted = predicted;
                form.holds = (form.computed == form.predicted);
            }
            break;
        }
    }
    if (!matched) {
        int lm105 = legendre(BigInt(-105), p);
        form.case_tag = "(-105/p) = -1: 0 mod p^2";
        form.predicted = 0;
        form.holds = (lm105 == -1 && form.computed == 0);
    }
    return {lin, form};
}

}  // namespace piseries
