#pragma once

#include <mpfr.h>

#include <string>

#include "piseries/mag.hpp"
#include "piseries/rational.hpp"

namespace piseries {

// Midpoint-radius enclosure: the represented value lies in [mid-rad, mid+rad].
// The midpoint is an MPFR number at a fixed working precision, the radius a
// dyadic upper bound. Arithmetic never shrinks an enclosure of an exact input.
class Ball {
public:
    explicit Ball(mpfr_prec_t prec);
    Ball(const Ball& o);
    Ball(Ball&& o) noexcept;
    Ball& operator=(const Ball& o);
    Ball& operator=(Ball&& o) noexcept;
    ~Ball();

    static Ball from_si(long v, mpfr_prec_t prec);
    static Ball from_q(const BigRat& q, mpfr_prec_t prec);
    static Ball from_z(const BigInt& z, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const __mpfr_struct* mid() const { return mid_; }
    const Mag& rad() const { return rad_; }
    void set_rad(const Mag& m) { rad_ = m; }
    void add_error(const Mag& m) { rad_ = rad_.added(m); }

    bool mid_is_zero() const { return mpfr_zero_p(mid_); }
    bool is_exact() const { return rad_.is_zero(); }

    Ball add(const Ball& o) const;
    Ball sub(const Ball& o) const;
    Ball mul(const Ball& o) const;
    Ball div(const Ball& o) const;           // throws if o may contain 0
    Ball neg() const;
    Ball mul_q(const BigRat& q) const;
    Ball mul_si(long v) const;
    Ball div_si(long v) const;
    Ball add_q(const BigRat& q) const;
    Ball sqrt() const;                        // throws unless provably >= 0 (or exact 0)
    Ball pow_ui(unsigned long e) const;
    Ball inv() const;

    Mag abs_upper() const;                    // upper bound of |value|
    Mag abs_lower() const;                    // LOWER bound of |value| (0 if sign unknown)
    bool sign_definite() const { return !abs_lower().is_zero() || (mid_is_zero() && is_exact()); }
    int mid_sign() const { return mpfr_sgn(mid_); }

    // true only when provable
    bool certainly_contains_q(const BigRat& q) const;
    bool certainly_overlaps(const Ball& o) const;
    // disjoint with gap > factor * (sum of radii)
    bool certainly_disjoint(const Ball& o, double factor) const;
    // |this - o| <= bound, provably
    bool abs_diff_at_most(const Ball& o, const Mag& bound) const;

    double to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    std::string str(int digits) const;        // midpoint decimal + radius annotation

    // 2^(exp - prec): one ulp of the midpoint (zero midpoint -> tiny bound)
    Mag ulp() const;

private:
    mpfr_t mid_;
    Mag rad_;
    mpfr_prec_t prec_;
    Ball bin_op(const Ball& o,
                int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) const;
};

// Lower-bound magnitude of |x| (rounds down); zero if x == 0.
Mag mag_lower_from_mpfr(mpfr_srcptr x);
// Upper-bound magnitude of |x|.
Mag mag_upper_from_mpfr(mpfr_srcptr x);
// Upper bound of 1/m given a nonzero lower-bound magnitude m.
Mag mag_inv_upper(const Mag& lower);

// Working precision for a decimal-digit target: D + max(15, D/10) guard digits.
mpfr_prec_t prec_for_digits(int digits);

}  // namespace piseries
