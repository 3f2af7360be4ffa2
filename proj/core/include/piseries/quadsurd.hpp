#pragma once

#include <string>

#include "piseries/ball.hpp"
#include "piseries/rational.hpp"

namespace piseries {

// Exact number u + v*sqrt(d) with d squarefree and nonnegative. Canonical form:
// square factors are extracted from d, v == 0 forces d == 0, d == 1 folds into u.
class QuadSurd {
public:
    QuadSurd() : u_(0), v_(0), d_(0) {}
    explicit QuadSurd(const BigRat& u) : u_(u), v_(0), d_(0) {}
    QuadSurd(const BigRat& u, const BigRat& v, unsigned long d);

    static QuadSurd sqrt_of(const BigRat& c);   // sqrt of a nonnegative rational

    const BigRat& u() const { return u_; }
    const BigRat& v() const { return v_; }
    unsigned long d() const { return d_; }
    bool is_rational() const { return v_ == 0; }

    QuadSurd operator+(const QuadSurd& o) const;
    QuadSurd operator-(const QuadSurd& o) const;
    QuadSurd operator*(const QuadSurd& o) const;   // radicands must be compatible
    QuadSurd operator*(const BigRat& q) const;
    QuadSurd operator-() const;
    QuadSurd pow(unsigned e) const;
    QuadSurd abs() const;                          // requires a determinable sign
    bool operator==(const QuadSurd& o) const = default;

    int sign() const;                              // -1/0/+1, exact
    Ball to_ball(int digits) const;
    std::string str() const;                       // "u", "v*sqrt(d)" or "u+v*sqrt(d)"
    static QuadSurd parse(const std::string& s);

private:
    BigRat u_, v_;
    unsigned long d_;
    void canonicalize();
};

// Extracts the largest square factor: n = s^2 * f with f squarefree; returns {s, f}.
std::pair<BigInt, BigInt> squarefree_part(const BigInt& n);

}  // namespace piseries
