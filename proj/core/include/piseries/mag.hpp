#pragma once

#include <cstdint>

namespace piseries {

// Nonnegative dyadic magnitude m * 2^e with m in [0.5, 1), or exact zero.
// Upper-bound semantics: every operation rounds up, so a Mag that bounds an
// error keeps bounding it through arithmetic.
class Mag {
public:
    Mag() = default;

    static Mag zero() { return Mag(); }
    static Mag pow2(long e);
    static Mag from_double(double d);          // upper bound of |d|
    static Mag from_mantissa_exp(double m, long e);

    bool is_zero() const { return m_ == 0.0; }
    Mag added(const Mag& o) const;
    Mag times(const Mag& o) const;
    Mag times_pow2(long e) const;
    Mag times_double(double d) const;          // d >= 0
    Mag max_with(const Mag& o) const;
    // value <= 2^ceil_log2()
    long ceil_log2() const;
    int cmp(const Mag& o) const;               // -1 / 0 / +1
    double to_double() const;                  // may overflow to inf

    double mantissa() const { return m_; }
    long exponent() const { return e_; }

private:
    double m_ = 0.0;
    long e_ = 0;
    void normalize_up();
};

}  // namespace piseries
