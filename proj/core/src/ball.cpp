#include "piseries/ball.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace piseries {

namespace {
inline double nudge_down(double m) {
    m = std::nextafter(m, 0.0);
    return std::nextafter(m, 0.0);
}
}  // namespace

Mag mag_upper_from_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Mag::zero();
    long e;
    double m = mpfr_get_d_2exp(&e, x, MPFR_RNDA);   // |m| in [0.5, 1), rounded away
    return Mag::from_mantissa_exp(m, e);
}

Mag mag_lower_from_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Mag::zero();
    long e;
    double m = mpfr_get_d_2exp(&e, x, MPFR_RNDZ);
    m = nudge_down(m < 0 ? -m : m);
    if (m < 0.25) return Mag::zero();               // degenerate; stay conservative
    Mag r = Mag::from_mantissa_exp(m, e);
    // from_mantissa_exp nudges up; compensate by stepping down two ulps worth
    return Mag::from_mantissa_exp(nudge_down(nudge_down(r.mantissa())), r.exponent());
}

Mag mag_inv_upper(const Mag& lower) {
    if (lower.is_zero()) throw std::domain_error("mag_inv_upper: zero bound");
    // 1/(m*2^e) = (1/m) * 2^-e, 1/m in (1, 2]
    double inv = 1.0 / nudge_down(lower.mantissa());
    return Mag::from_mantissa_exp(inv, -lower.exponent());
}

mpfr_prec_t prec_for_digits(int digits) {
    if (digits < 1) digits = 1;
    int guard = digits / 10;
    if (guard < 15) guard = 15;
    double bits = (digits + guard) * 3.3219280948873623 + 64;
    return static_cast<mpfr_prec_t>(bits) + 1;
}

Ball::Ball(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(mid_, prec);
    mpfr_set_zero(mid_, 1);
}

Ball::Ball(const Ball& o) : rad_(o.rad_), prec_(o.prec_) {
    mpfr_init2(mid_, prec_);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
}

Ball::Ball(Ball&& o) noexcept : rad_(o.rad_), prec_(o.prec_) {
    mid_[0] = o.mid_[0];
    mpfr_init2(o.mid_, MPFR_PREC_MIN);   // leave the source valid for its destructor
}

Ball& Ball::operator=(const Ball& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, o.prec_);
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        rad_ = o.rad_;
        prec_ = o.prec_;
    }
    return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
    if (this != &o) {
        mpfr_swap(mid_, o.mid_);
        rad_ = o.rad_;
        prec_ = o.prec_;
    }
    return *this;
}

Ball::~Ball() { mpfr_clear(mid_); }

Mag Ball::ulp() const {
    if (mpfr_zero_p(mid_)) return Mag::pow2(-static_cast<long>(prec_) * 2);
    return Mag::pow2(mpfr_get_exp(mid_) - prec_);
}

Ball Ball::from_si(long v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_si(b.mid_, v, MPFR_RNDN);
    if (t != 0) b.rad_ = b.ulp();
    return b;
}

Ball Ball::from_z(const BigInt& z, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_z(b.mid_, z.get_mpz_t(), MPFR_RNDN);
    if (t != 0) b.rad_ = b.ulp();
    return b;
}

Ball Ball::from_q(const BigRat& q, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_q(b.mid_, q.get_mpq_t(), MPFR_RNDN);
    if (t != 0) b.rad_ = b.ulp();
    return b;
}

Ball Ball::bin_op(const Ball& o,
                  int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) const {
    Ball r(prec_);
    int t = op(r.mid_, mid_, o.mid_, MPFR_RNDN);
    Mag round = (t != 0) ? r.ulp() : Mag::zero();
    r.rad_ = round;
    return r;
}

Ball Ball::add(const Ball& o) const {
    Ball r = bin_op(o, mpfr_add);
    r.rad_ = r.rad_.added(rad_).added(o.rad_);
    return r;
}

Ball Ball::sub(const Ball& o) const {
    Ball r = bin_op(o, mpfr_sub);
    r.rad_ = r.rad_.added(rad_).added(o.rad_);
    return r;
}

Ball Ball::mul(const Ball& o) const {
    Ball r = bin_op(o, mpfr_mul);
    Mag am = mag_upper_from_mpfr(mid_);
    Mag bm = mag_upper_from_mpfr(o.mid_);
    r.rad_ = r.rad_.added(am.times(o.rad_)).added(bm.times(rad_)).added(rad_.times(o.rad_));
    return r;
}

Ball Ball::div(const Ball& o) const {
    Mag den_low = o.abs_lower();
    if (den_low.is_zero())
        throw std::domain_error("Ball::div: divisor may contain zero");
    Ball r = bin_op(o, mpfr_div);
    // |a/b - a'/b'| <= (ra + |a/b|*rb) / (|b'|-rb') style bound
    Mag inv = mag_inv_upper(den_low);
    Mag q_up = mag_upper_from_mpfr(r.mid_).added(r.rad_);
    r.rad_ = r.rad_.added(inv.times(rad_.added(q_up.times(o.rad_))));
    return r;
}

Ball Ball::neg() const {
    Ball r(*this);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

Ball Ball::mul_q(const BigRat& q) const {
    Ball r(prec_);
    int t = mpfr_mul_q(r.mid_, mid_, q.get_mpq_t(), MPFR_RNDN);
    Mag qm = Mag::from_double(std::abs(mpq_get_d(q.get_mpq_t()))).added(Mag::pow2(-900));
    // from_double underestimates badly if |q| overflows double; recompute via mpfr
    if (!std::isfinite(mpq_get_d(q.get_mpq_t()))) {
        mpfr_t tmp;
        mpfr_init2(tmp, 64);
        mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDA);
        qm = mag_upper_from_mpfr(tmp);
        mpfr_clear(tmp);
    }
    r.rad_ = rad_.times(qm);
    if (t != 0) r.rad_ = r.rad_.added(r.ulp());
    return r;
}

Ball Ball::mul_si(long v) const {
    Ball r(prec_);
    int t = mpfr_mul_si(r.mid_, mid_, v, MPFR_RNDN);
    r.rad_ = rad_.times(Mag::from_double(std::abs(static_cast<double>(v))));
    if (t != 0) r.rad_ = r.rad_.added(r.ulp());
    return r;
}

Ball Ball::div_si(long v) const {
    if (v == 0) throw std::domain_error("Ball::div_si: zero");
    Ball r(prec_);
    int t = mpfr_div_si(r.mid_, mid_, v, MPFR_RNDN);
    double av = std::abs(static_cast<double>(v));
    r.rad_ = rad_.times_double(std::nextafter(1.0 / av, 2.0));
    if (t != 0) r.rad_ = r.rad_.added(r.ulp());
    return r;
}

Ball Ball::add_q(const BigRat& q) const {
    Ball r(prec_);
    int t = mpfr_add_q(r.mid_, mid_, q.get_mpq_t(), MPFR_RNDN);
    r.rad_ = rad_;
    if (t != 0) r.rad_ = r.rad_.added(r.ulp());
    return r;
}

Ball Ball::sqrt() const {
    if (mid_is_zero() && is_exact()) return Ball(prec_);
    Mag low = abs_lower();
    if (low.is_zero() || mid_sign() < 0)
        throw std::domain_error("Ball::sqrt: not provably nonnegative");
    Ball r(prec_);
    int t = mpfr_sqrt(r.mid_, mid_, MPFR_RNDN);
    // sqrt lower bound of the input
    double lm = std::sqrt(low.mantissa());
    long le = low.exponent();
    if (le & 1) { lm *= std::sqrt(0.5); le += 1; }   // m*2^e = (m/2)*2^(e+1)
    Mag sq_low = Mag::from_mantissa_exp(nudge_down(nudge_down(lm)), le / 2);
    sq_low = Mag::from_mantissa_exp(nudge_down(nudge_down(sq_low.mantissa())), sq_low.exponent());
    r.rad_ = rad_.times(mag_inv_upper(sq_low)).times_pow2(-1);
    if (t != 0) r.rad_ = r.rad_.added(r.ulp());
    return r;
}

Ball Ball::pow_ui(unsigned long e) const {
    Ball r = Ball::from_si(1, prec_);
    Ball base(*this);
    while (e > 0) {
        if (e & 1) r = r.mul(base);
        e >>= 1;
        if (e) base = base.mul(base);
    }
    return r;
}

Ball Ball::inv() const { return Ball::from_si(1, prec_).div(*this); }

Mag Ball::abs_upper() const { return mag_upper_from_mpfr(mid_).added(rad_); }

Mag Ball::abs_lower() const {
    if (mpfr_zero_p(mid_)) return Mag::zero();
    Mag m = mag_lower_from_mpfr(mid_);
    if (m.cmp(rad_) <= 0) return Mag::zero();
    // m - rad, rounded down: via doubles on a common exponent
    long e = m.exponent();
    long d = e - rad_.exponent();
    double sub = (d > 80) ? 0.0 : std::ldexp(rad_.mantissa(), -static_cast<int>(d));
    double res = nudge_down(m.mantissa() - sub);
    res = nudge_down(res);
    if (res <= 0) return Mag::zero();
    Mag out = Mag::from_mantissa_exp(res, e);
    return Mag::from_mantissa_exp(nudge_down(nudge_down(out.mantissa())), out.exponent());
}

bool Ball::certainly_contains_q(const BigRat& q) const {
    mpfr_t d;
    mpfr_init2(d, prec_ + 64);
    int t = mpfr_sub_q(d, mid_, q.get_mpq_t(), MPFR_RNDN);
    Mag diff = mag_upper_from_mpfr(d);
    if (t != 0)
        diff = diff.added(Mag::pow2(mpfr_zero_p(d) ? -(long)prec_ * 4
                                                   : mpfr_get_exp(d) - (prec_ + 64)));
    mpfr_clear(d);
    return diff.cmp(rad_) <= 0;
}

bool Ball::certainly_overlaps(const Ball& o) const {
    mpfr_t d;
    mpfr_init2(d, std::max(prec_, o.prec_) + 64);
    int t = mpfr_sub(d, mid_, o.mid_, MPFR_RNDN);
    Mag diff = mag_upper_from_mpfr(d);
    if (t != 0 && !mpfr_zero_p(d))
        diff = diff.added(Mag::pow2(mpfr_get_exp(d) - (std::max(prec_, o.prec_) + 64)));
    mpfr_clear(d);
    return diff.cmp(rad_.added(o.rad_)) <= 0;
}

bool Ball::certainly_disjoint(const Ball& o, double factor) const {
    mpfr_t d;
    mpfr_init2(d, std::max(prec_, o.prec_) + 64);
    mpfr_sub(d, mid_, o.mid_, MPFR_RNDN);
    Mag low = mag_lower_from_mpfr(d);
    mpfr_clear(d);
    if (low.is_zero()) return false;
    Mag need = rad_.added(o.rad_).times_double(factor).added(Mag::pow2(low.exponent() - 60));
    return low.cmp(need) > 0;
}

bool Ball::abs_diff_at_most(const Ball& o, const Mag& bound) const {
    mpfr_t d;
    mpfr_init2(d, std::max(prec_, o.prec_) + 64);
    int t = mpfr_sub(d, mid_, o.mid_, MPFR_RNDN);
    Mag diff = mag_upper_from_mpfr(d);
    if (t != 0 && !mpfr_zero_p(d))
        diff = diff.added(Mag::pow2(mpfr_get_exp(d) - (std::max(prec_, o.prec_) + 64)));
    mpfr_clear(d);
    return diff.added(rad_).added(o.rad_).cmp(bound) <= 0;
}

std::string Ball::str(int digits) const {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), mid_, MPFR_RNDN);
    std::string out;
    if (s) {
        std::string mant(s);
        mpfr_free_str(s);
        bool neg = !mant.empty() && mant[0] == '-';
        std::string dig = neg ? mant.substr(1) : mant;
        out = (neg ? "-" : "") + ("0." + dig) + "e" + std::to_string(e);
    }
    if (!rad_.is_zero()) {
        out += " +/- 2^" + std::to_string(rad_.ceil_log2());
    } else {
        out += " (exact midpoint)";
    }
    return out;
}

}  // namespace piseries
