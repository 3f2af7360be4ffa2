#include "piseries/quadsurd.hpp"

#include <stdexcept>

#include "piseries/constants.hpp"

namespace piseries {

std::pair<BigInt, BigInt> squarefree_part(const BigInt& n) {
    if (n < 0) throw std::domain_error("squarefree_part: negative");
    if (n == 0) return {BigInt(1), BigInt(0)};
    BigInt s(1), f(1), rem(n);
    for (BigInt p(2); p * p * p <= rem; ++p) {
        if (!mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) continue;
        int e = 0;
        while (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
            rem /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e & 1) f *= p;
    }
    // rem has no prime factor below its cube root: 1, prime, p^2 or a squarefree pq
    if (rem > 1 && mpz_perfect_square_p(rem.get_mpz_t())) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), rem.get_mpz_t());
        s *= r;
        rem = 1;
    }
    return {s, f * rem};
}

void QuadSurd::canonicalize() {
    if (v_ == 0) { d_ = 0; return; }
    if (d_ == 0) { v_ = 0; return; }
    auto [s, f] = squarefree_part(BigInt(static_cast<unsigned long>(d_)));
    if (f.fits_ulong_p())
        d_ = f.get_ui();
    else
        throw std::overflow_error("QuadSurd: radicand overflow");
    v_ *= BigRat(s);
    if (d_ == 1) { u_ += v_; v_ = 0; d_ = 0; }
    if (v_ == 0) d_ = 0;
}

QuadSurd::QuadSurd(const BigRat& u, const BigRat& v, unsigned long d) : u_(u), v_(v), d_(d) {
    canonicalize();
}

QuadSurd QuadSurd::sqrt_of(const BigRat& c) {
    if (c < 0) throw std::domain_error("QuadSurd::sqrt_of: negative");
    if (c == 0) return QuadSurd();
    // sqrt(p/q) = sqrt(p q)/q
    BigInt pq = c.get_num() * c.get_den();
    if (!pq.fits_ulong_p()) {
        auto [s, f] = squarefree_part(pq);
        if (!f.fits_ulong_p()) throw std::overflow_error("QuadSurd::sqrt_of: radicand overflow");
        return QuadSurd(BigRat(0), make_frac(s, c.get_den()), f.get_ui());
    }
    return QuadSurd(BigRat(0), BigRat(1, c.get_den()), pq.get_ui());
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
    if (d_ == o.d_ || v_ == 0 || o.v_ == 0) {
        unsigned long d = (v_ != 0) ? d_ : o.d_;
        return QuadSurd(u_ + o.u_, v_ + o.v_, d);
    }
    throw std::invalid_argument("QuadSurd::+: incompatible radicands");
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const { return *this + (-o); }

QuadSurd QuadSurd::operator-() const {
    QuadSurd r(*this);
    r.u_ = -r.u_;
    r.v_ = -r.v_;
    return r;
}

QuadSurd QuadSurd::operator*(const QuadSurd& o) const {
    if (v_ == 0) return QuadSurd(o.u_ * u_, o.v_ * u_, o.d_);
    if (o.v_ == 0) return QuadSurd(u_ * o.u_, v_ * o.u_, d_);
    if (d_ == o.d_)
        return QuadSurd(u_ * o.u_ + v_ * o.v_ * BigRat(d_), u_ * o.v_ + v_ * o.u_, d_);
    if (u_ == 0 && o.u_ == 0) {
        // v1 sqrt(d1) * v2 sqrt(d2) = v1 v2 sqrt(d1 d2); canonicalization splits squares
        BigInt dd = BigInt(d_) * BigInt(o.d_);
        if (!dd.fits_ulong_p()) throw std::overflow_error("QuadSurd::*: radicand overflow");
        return QuadSurd(BigRat(0), v_ * o.v_, dd.get_ui());
    }
    throw std::invalid_argument("QuadSurd::*: incompatible radicands");
}

QuadSurd QuadSurd::operator*(const BigRat& q) const { return QuadSurd(u_ * q, v_ * q, d_); }

QuadSurd QuadSurd::pow(unsigned e) const {
    QuadSurd r{BigRat(1)};
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

int QuadSurd::sign() const {
    int su = sgn(u_), sv = sgn(v_);
    if (v_ == 0) return su;
    if (u_ == 0) return sv;
    if (su == sv) return su;
    // compare u^2 against v^2 d
    BigRat uu = u_ * u_, vv = v_ * v_ * BigRat(d_);
    int cmp = (uu > vv) ? 1 : (uu < vv ? -1 : 0);
    if (cmp == 0) return 0;
    return cmp > 0 ? su : sv;
}

QuadSurd QuadSurd::abs() const { return sign() >= 0 ? *this : -*this; }

Ball QuadSurd::to_ball(int digits) const {
    Ball b = Ball::from_q(u_, prec_for_digits(digits) + 32);
    if (v_ != 0)
        b = b.add(sqrt_ball(BigRat(d_), digits + 8).mul_q(v_));
    return b;
}

std::string QuadSurd::str() const {
    if (v_ == 0) return rat_str(u_);
    std::string vs = rat_str(v_) + "*sqrt(" + std::to_string(d_) + ")";
    if (u_ == 0) return vs;
    return rat_str(u_) + (v_ > 0 ? "+" : "") + vs;
}

QuadSurd QuadSurd::parse(const std::string& s) {
    // forms: "u", "v*sqrt(d)", "u+v*sqrt(d)", "u-v*sqrt(d)"
    auto sq = s.find("*sqrt(");
    if (sq == std::string::npos) return QuadSurd(parse_rat(s));
    auto close = s.find(')', sq);
    if (close == std::string::npos) throw std::invalid_argument("QuadSurd::parse: " + s);
    unsigned long d = std::stoul(s.substr(sq + 6, close - sq - 6));
    // split off the v coefficient: scan back to the separating +/- (not a leading sign,
    // not an exponent of a fraction)
    std::string head = s.substr(0, sq);
    size_t split = std::string::npos;
    for (size_t i = 1; i < head.size(); ++i) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' &&
            head[i - 1] != '-')
            split = i;
    }
    if (split == std::string::npos)
        return QuadSurd(BigRat(0), parse_rat(head), d);
    BigRat u = parse_rat(head.substr(0, split));
    std::string vpart = head.substr(split);
    if (vpart[0] == '+') vpart = vpart.substr(1);
    return QuadSurd(u, parse_rat(vpart), d);
}

}  // namespace piseries
