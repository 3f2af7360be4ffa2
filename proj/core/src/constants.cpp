#include "piseries/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "piseries/combinatorics.hpp"

namespace piseries {

namespace {

// Partial sum of atan(1/q) = sum_j (-1)^j / ((2j+1) q^(2j+1)) as an exact
// rational, by balanced recursion; terms j in [lo, hi).
BigRat atan_partial(long q, long lo, long hi) {
    if (hi - lo == 1) {
        BigRat t(1);
        t /= BigRat((2 * lo + 1));
        BigRat qq = pow_rat(BigRat(q), 2 * lo + 1);
        t /= qq;
        if (lo & 1) t = -t;
        return t;
    }
    long mid = lo + (hi - lo) / 2;
    return atan_partial(q, lo, mid) + atan_partial(q, mid, hi);
}

// Ball enclosure of atan(1/q), q >= 2.
Ball atan_inv(long q, mpfr_prec_t prec) {
    // terms decay like q^-2; alternate, so the first омitted term bounds the tail
    double bits_per_term = 2 * std::log2(static_cast<double>(q));
    long terms = static_cast<long>(static_cast<double>(prec + 16) / bits_per_term) + 2;
    BigRat partial = atan_partial(q, 0, terms);
    Ball b = Ball::from_q(partial, prec);
    // |tail| <= 1/((2T+1) q^(2T+1))
    double tail_log2 = -(2 * terms + 1) * std::log2(static_cast<double>(q));
    b.add_error(Mag::pow2(static_cast<long>(tail_log2) + 2));
    return b;
}

mpfr_prec_t prec_for_const(int digits) {
    return prec_for_digits(digits) + 32;
}

}  // namespace

Ball const_pi(int digits) {
    if (digits < 1) throw std::domain_error("const_pi: digits < 1");
    mpfr_prec_t p = prec_for_const(digits);
    // pi/4 = 4 atan(1/5) - atan(1/239)
    Ball a5 = atan_inv(5, p);
    Ball a239 = atan_inv(239, p);
    return a5.mul_si(4).sub(a239).mul_si(4);
}

Ball const_pi_alt(int digits) {
    if (digits < 1) throw std::domain_error("const_pi_alt: digits < 1");
    mpfr_prec_t p = prec_for_const(digits);
    // pi/4 = atan(1/2) + atan(1/3)
    return atan_inv(2, p).add(atan_inv(3, p)).mul_si(4);
}

Ball hurwitz_zeta(long s, const BigRat& a, int digits) {
    if (s < 2) throw std::domain_error("hurwitz_zeta: s < 2");
    if (a <= 0) throw std::domain_error("hurwitz_zeta: a <= 0");
    mpfr_prec_t p = prec_for_const(digits);
    long N = digits + 12;
    if (N < 24) N = 24;
    long E = (4 * N) / 5;
    if (2 * E + 2 > 400) { E = 199; N = (5 * E) / 4; }

    BigRat direct(0);
    for (long j = 0; j < N; ++j)
        direct += pow_rat(BigRat(j) + a, -s);

    BigRat x = BigRat(N) + a;
    // integral term x^(1-s)/(s-1) and half-term x^-s/2
    BigRat tail = pow_rat(x, 1 - s) / (s - 1) + pow_rat(x, -s) / 2;
    // + sum_{i=1..E} B_2i/(2i)! (s)_(2i-1) x^-(s+2i-1)
    BigRat poch(1);
    BigInt fact(1);
    long t = 0;  // factors consumed: poch = (s)(s+1)...(s+t-1), fact = t!
    auto advance_to = [&](long target) {
        while (t < target) {
            poch *= (s + t);
            ++t;
            fact *= t;
        }
    };
    for (long i = 1; i <= E; ++i) {
        advance_to(2 * i - 1);
        BigRat term = bernoulli(2 * i) * poch / BigRat(fact * (2 * i)) * pow_rat(x, -(s + 2 * i - 1));
        tail += term;
    }
    // remainder bounded by twice the first omitted correction term
    advance_to(2 * E + 1);
    BigRat bound = bernoulli(2 * E + 2) * poch / BigRat(fact * (2 * E + 2)) *
                   pow_rat(x, -(s + 2 * E + 1));
    if (bound < 0) bound = -bound;
    bound *= 2;

    Ball out = Ball::from_q(direct + tail, p);
    if (bound != 0) {
        mpfr_t tmp;
        mpfr_init2(tmp, 64);
        mpfr_set_q(tmp, bound.get_mpq_t(), MPFR_RNDA);
        out.add_error(mag_upper_from_mpfr(tmp));
        mpfr_clear(tmp);
    }
    return out;
}

Ball const_K(int digits) {
    if (digits < 1) throw std::domain_error("const_K: digits < 1");
    // K = (zeta(2,1/3) - zeta(2,2/3)) / 9, grouping the character sum in period-3 blocks
    Ball a = hurwitz_zeta(2, BigRat(1, 3), digits + 4);
    Ball b = hurwitz_zeta(2, BigRat(2, 3), digits + 4);
    return a.sub(b).div_si(9);
}

Ball const_zeta3(int digits) {
    if (digits < 1) throw std::domain_error("const_zeta3: digits < 1");
    return hurwitz_zeta(3, BigRat(1), digits);
}

Ball sqrt_ball(const BigRat& r, int digits) {
    if (r < 0) throw std::domain_error("sqrt_ball: negative radicand");
    if (digits < 1) throw std::domain_error("sqrt_ball: digits < 1");
    mpfr_prec_t p = prec_for_const(digits);
    return Ball::from_q(r, p).sqrt();
}

}  // namespace piseries
