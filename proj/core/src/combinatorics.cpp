#include "piseries/combinatorics.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace piseries {

BigInt binom_int(long n, long k) {
    if (k < 0) throw std::domain_error("binom_int: k < 0");
    if (n >= 0) {
        if (k > n) return 0;
        BigInt r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    }
    // binom(n,k) = (-1)^k binom(k-n-1, k)
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k - n - 1), static_cast<unsigned long>(k));
    if (k & 1) r = -r;
    return r;
}

BigRat binom_rat(const BigRat& x, long k) {
    if (k < 0) throw std::domain_error("binom_rat: k < 0");
    BigRat v(1);
    for (long j = 0; j < k; ++j) {
        v *= (x - j);
        v /= (j + 1);
    }
    return v;
}

int legendre(const BigInt& a, const BigInt& p) {
    if (p <= 2 || !is_prime(p)) throw std::domain_error("legendre: p must be an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

namespace {
std::mutex bernoulli_mtx;
std::vector<BigRat> bernoulli_cache;  // filled by recurrence sum binom(n+1,k) B_k = 0
}  // namespace

BigRat bernoulli(long n) {
    if (n < 0) throw std::domain_error("bernoulli: n < 0");
    if (n > 400) throw std::domain_error("bernoulli: index above desk-scale cap 400");
    std::lock_guard<std::mutex> lock(bernoulli_mtx);
    if (bernoulli_cache.empty()) {
        bernoulli_cache.push_back(BigRat(1));
        bernoulli_cache.push_back(BigRat(-1, 2));
    }
    while (static_cast<long>(bernoulli_cache.size()) <= n) {
        long m = static_cast<long>(bernoulli_cache.size());
        if (m % 2 == 1) { bernoulli_cache.push_back(BigRat(0)); continue; }
        BigRat s(0);
        for (long k = 0; k < m; ++k)
            s += BigRat(binom_int(m + 1, k)) * bernoulli_cache[k];
        bernoulli_cache.push_back(-s / (m + 1));
    }
    return bernoulli_cache[n];
}

BigInt factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: n < 0");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

bool is_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// caches are thread_local: evaluations run concurrently and the rows are cheap
// to rebuild per thread compared to locking on every term

const std::vector<BigRat>& binom_rat_row(const BigRat& x, long upto) {
    thread_local std::map<BigRat, std::vector<BigRat>> rat_rows;
    auto& row = rat_rows[x];
    if (row.empty()) row.push_back(BigRat(1));
    while (static_cast<long>(row.size()) <= upto) {
        long j = static_cast<long>(row.size());
        BigRat next = row.back() * (x - (j - 1)) / j;
        row.push_back(next);
    }
    return row;
}

const BigInt& central_binom(long k) {
    if (k < 0) throw std::domain_error("central_binom: k < 0");
    thread_local std::vector<BigInt> cb_cache;
    if (cb_cache.empty()) cb_cache.push_back(BigInt(1));
    while (static_cast<long>(cb_cache.size()) <= k) {
        long j = static_cast<long>(cb_cache.size());
        BigInt next = cb_cache.back() * (4 * j - 2);
        mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(j));
        cb_cache.push_back(next);
    }
    return cb_cache[k];
}

}  // namespace piseries
