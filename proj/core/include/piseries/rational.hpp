#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace piseries {

using BigInt = mpz_class;
using BigRat = mpq_class;

// mpq_class(n, d) does not reduce; these do.
inline BigRat make_frac(const BigInt& n, const BigInt& d) {
    BigRat q(n, d);
    q.canonicalize();
    return q;
}
inline BigRat make_frac(long n, long d) {
    BigRat q(n, d);
    q.canonicalize();
    return q;
}

inline BigInt pow_int(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// q^e with e possibly negative; q must be nonzero for e < 0.
inline BigRat pow_rat(const BigRat& q, long e) {
    if (e == 0) return BigRat(1);
    BigRat r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (q == 0) throw std::domain_error("pow_rat: zero base with negative exponent");
        BigRat inv;
        mpq_inv(inv.get_mpq_t(), r.get_mpq_t());
        return inv;
    }
    return r;
}

// Parses "p" or "p/q" (arbitrary precision), canonicalized.
inline BigRat parse_rat(const std::string& s) {
    BigRat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const BigRat& q) { return q.get_str(); }

}  // namespace piseries
