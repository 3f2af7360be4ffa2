#include "piseries/mag.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace piseries {

namespace {
inline double nudge_up(double m) {
    // two ulps of slack absorbs any double rounding in the caller
    m = std::nextafter(m, std::numeric_limits<double>::infinity());
    return std::nextafter(m, std::numeric_limits<double>::infinity());
}
}  // namespace

void Mag::normalize_up() {
    if (m_ == 0.0) { e_ = 0; return; }
    int ex;
    double f = std::frexp(m_, &ex);   // m_ = f * 2^ex, f in [0.5, 1)
    m_ = f;
    e_ += ex;
}

Mag Mag::pow2(long e) {
    Mag r;
    r.m_ = 0.5;
    r.e_ = e + 1;
    return r;
}

Mag Mag::from_double(double d) {
    if (d < 0) d = -d;
    if (d == 0.0) return Mag();
    if (!std::isfinite(d)) throw std::overflow_error("Mag::from_double: non-finite");
    Mag r;
    r.m_ = nudge_up(d);
    r.normalize_up();
    return r;
}

Mag Mag::from_mantissa_exp(double m, long e) {
    if (m == 0.0) return Mag();
    Mag r;
    r.m_ = nudge_up(m < 0 ? -m : m);
    r.e_ = e;
    r.normalize_up();
    return r;
}

Mag Mag::added(const Mag& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const Mag& hi = (e_ >= o.e_) ? *this : o;
    const Mag& lo = (e_ >= o.e_) ? o : *this;
    long d = hi.e_ - lo.e_;
    Mag r;
    r.e_ = hi.e_;
    if (d > 80) {
        r.m_ = nudge_up(hi.m_);   // lo contributes < 1 ulp; the nudge covers it
    } else {
        r.m_ = nudge_up(hi.m_ + std::ldexp(lo.m_, -static_cast<int>(d)));
    }
    r.normalize_up();
    return r;
}

Mag Mag::times(const Mag& o) const {
    if (is_zero() || o.is_zero()) return Mag();
    Mag r;
    r.m_ = nudge_up(m_ * o.m_);
    r.e_ = e_ + o.e_;
    r.normalize_up();
    return r;
}

Mag Mag::times_pow2(long e) const {
    if (is_zero()) return Mag();
    Mag r = *this;
    r.e_ += e;
    return r;
}

Mag Mag::times_double(double d) const {
    if (d < 0) throw std::invalid_argument("Mag::times_double: negative");
    return times(Mag::from_double(d));
}

Mag Mag::max_with(const Mag& o) const { return cmp(o) >= 0 ? *this : o; }

long Mag::ceil_log2() const {
    if (is_zero()) throw std::domain_error("Mag::ceil_log2: zero");
    return e_;   // m < 1 so value < 2^e
}

int Mag::cmp(const Mag& o) const {
    if (is_zero() && o.is_zero()) return 0;
    if (is_zero()) return -1;
    if (o.is_zero()) return 1;
    if (e_ != o.e_) return e_ < o.e_ ? -1 : 1;
    if (m_ < o.m_) return -1;
    if (m_ > o.m_) return 1;
    return 0;
}

double Mag::to_double() const {
    if (is_zero()) return 0.0;
    if (e_ > 1020) return std::numeric_limits<double>::infinity();
    if (e_ < -1060) return std::ldexp(1.0, -1060);  // round tiny values up
    return std::ldexp(m_, static_cast<int>(e_));
}

}  // namespace piseries
