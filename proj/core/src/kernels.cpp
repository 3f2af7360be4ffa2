#include "piseries/kernels.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "piseries/combinatorics.hpp"

namespace piseries {

namespace {

BigRat sq(const BigRat& q) { return q * q; }

}  // namespace

Kernel Kernel::binom_prod(long a, long b, int e) {
    Kernel k;
    k.tag = KernelTag::BinomProd;
    k.ba = a;
    k.bb = b;
    k.exp = e;
    return k;
}

Kernel Kernel::trinomial(long b, long c, int mult, int e) {
    Kernel k;
    k.tag = KernelTag::Trinomial;
    k.tb = b;
    k.tc = c;
    k.tmult = mult;
    k.exp = e;
    return k;
}

Kernel Kernel::family(KernelTag tag, const BigRat& x) {
    Kernel k;
    k.tag = tag;
    k.x = x;
    return k;
}

Kernel Kernel::conv_kernel(ConvSpec spec) {
    Kernel k;
    k.tag = KernelTag::Conv;
    k.conv = std::move(spec);
    return k;
}

Kernel Kernel::dual_of(std::vector<Kernel> inner) {
    Kernel k;
    k.tag = KernelTag::Dual;
    k.inner = std::move(inner);
    return k;
}

bool Kernel::operator==(const Kernel& o) const { return str() == o.str(); }

BigInt trinomial_T(long n, long b, long c) {
    if (n < 0) throw std::domain_error("trinomial_T: n < 0");
    thread_local std::map<std::pair<long, long>, std::vector<BigInt>> cache;
    auto& v = cache[{b, c}];
    if (v.empty()) {
        v.push_back(BigInt(1));
        v.push_back(BigInt(b));
    }
    while (static_cast<long>(v.size()) <= n) {
        long m = static_cast<long>(v.size()) - 1;
        BigInt t = (2 * m + 1) * BigInt(b) * v[m] - BigInt(m) * (BigInt(b) * b - 4 * BigInt(c)) * v[m - 1];
        BigInt q;
        mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(m + 1));
        v.push_back(q);
    }
    return v[n];
}

BigInt trinomial_T_direct(long n, long b, long c) {
    if (n < 0) throw std::domain_error("trinomial_T_direct: n < 0");
    BigInt s(0);
    for (long k = 0; 2 * k <= n; ++k)
        s += binom_int(n, 2 * k) * binom_int(2 * k, k) * pow_int(BigInt(b), n - 2 * k) *
             pow_int(BigInt(c), k);
    return s;
}

BigInt clf_direct(long n) {
    BigInt s(0);
    for (long k = 0; k <= n; ++k) {
        BigInt num = central_binom(k) * central_binom(k) * central_binom(n - k) * central_binom(n - k);
        BigInt q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), binom_int(n, k).get_mpz_t());
        s += q;
    }
    return s;
}

BigInt sconj6_direct(long n) {
    BigInt s(0), p5(1);
    for (long k = 0; k <= n; ++k) {
        BigInt num = central_binom(k) * central_binom(k) * central_binom(n - k) * central_binom(n - k);
        BigInt q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), binom_int(n, k).get_mpz_t());
        s += p5 * q;
        p5 *= 5;
    }
    return s;
}

namespace {

const BigInt& clf_rec(long n) {
    thread_local std::vector<BigInt> v{BigInt(1), BigInt(8)};
    while (static_cast<long>(v.size()) <= n) {
        long k = static_cast<long>(v.size()) - 1;
        BigInt t = (24 * k * (k + 1) + 8) * v[k] - 128 * BigInt(k) * k * v[k - 1];
        BigInt q;
        mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>((k + 1) * (k + 1)));
        v.push_back(q);
    }
    return v[n];
}

const BigInt& sconj6_rec(long n) {
    thread_local std::vector<BigInt> v{BigInt(1), BigInt(24), BigInt(976)};
    while (static_cast<long>(v.size()) <= n) {
        long m = static_cast<long>(v.size()) - 3;
        BigInt t = 51200 * BigInt(m + 1) * (m + 1) * (m + 3) * v[m] -
                   1920 * BigInt(4 * m * m * m + 24 * m * m + 46 * m + 29) * v[m + 1] +
                   8 * BigInt(m + 2) * (41 * m * m + 205 * m + 255) * v[m + 2];
        BigInt den = 3 * BigInt(m + 2) * (m + 3) * (m + 3);
        BigInt q;
        mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), den.get_mpz_t());
        v.push_back(q);
    }
    return v[n];
}

BigRat apery_a(long k, const BigRat& x, bool q_form) {
    if (x == 0) throw std::domain_error("apery kernel: x = 0");
    BigRat t = q_form ? BigRat(1) : pow_rat(x, k);
    BigRat s = t;
    for (long j = 1; j <= k; ++j) {
        t *= make_frac(BigInt(k - j + 1) * (k - j + 1) * (k + j), BigInt(j) * j * j);
        if (q_form) t *= x; else t /= x;
        s += t;
    }
    return s;
}

BigRat s1_term(long k, const BigRat& x) {
    BigRat t = BigRat(central_binom(k)) * pow_rat(x, k);
    BigRat s = t;
    for (long j = 1; j <= k; ++j) {
        t *= make_frac(BigInt(k - j + 1) * (4 * j - 2) * (k - j + 1),
                       BigInt(j) * j * (2 * (k - j) + 1) * 2);
        t /= x;
        s += t;
    }
    return s;
}

BigRat s2_term(long k, const BigRat& x) {
    BigRat t = BigRat(central_binom(k)) * pow_rat(x, k);
    BigRat s = t;
    for (long j = 1; j <= k; ++j) {
        t *= make_frac(BigInt(4 * j - 2) * (4 * j - 2) * (k - j + 1),
                       BigInt(j) * j * (2 * (k - j) + 1) * 2);
        t /= x;
        s += t;
    }
    return s;
}

BigRat w_term(long k, const BigRat& x) {
    if (x == 0) throw std::domain_error("W kernel: x = 0");
    BigRat t = BigRat(central_binom(k)) * pow_rat(x, -k);
    BigRat s = t;
    for (long j = 1; j <= k; ++j) {
        t *= make_frac(BigInt(k + j) * (k - j + 1), BigInt(2 * j) * (2 * j - 1));
        t *= make_frac(BigInt(4 * j - 2) * (4 * j - 2), BigInt(j) * j);
        t *= make_frac(BigInt(k - j + 1), BigInt(2) * (2 * (k - j) + 1));
        t /= x;
        s += t;
    }
    return s;
}

BigRat f_raw(long k, const BigRat& y) {
    // f_k(y) = sum_j binom(k,j)^2 binom(2j,k) y^j, j from ceil(k/2)
    long j0 = (k + 1) / 2;
    BigRat t = BigRat(binom_int(k, j0)) * binom_int(k, j0) * binom_int(2 * j0, k) * pow_rat(y, j0);
    BigRat s = t;
    for (long j = j0 + 1; j <= k; ++j) {
        t *= sq(make_frac(k - j + 1, j)) * y;
        t *= make_frac(BigInt(2 * j) * (2 * j - 1), BigInt(2 * j - k) * (2 * j - k - 1));
        s += t;
    }
    return s;
}

BigRat g_term(long k, const BigRat& x) {
    BigRat t(1), s(1);
    for (long j = 1; j <= k; ++j) {
        t *= sq(make_frac(k - j + 1, j)) * make_frac(4 * j - 2, j) * x;
        s += t;
    }
    return s;
}

BigRat sconj5pos_term(long k, const BigRat& x) {
    if (x == 0) throw std::domain_error("sconj5 kernel: x = 0");
    BigRat t = pow_rat(x, k);
    BigRat s = t;
    for (long j = 1; j <= k; ++j) {
        t *= make_frac(k - j + 1, j);
        t *= make_frac(BigInt(k + 2 * j) * (k + 2 * j - 1), BigInt(2 * j) * (2 * j - 1));
        t *= make_frac(4 * j - 2, j);
        t /= x;
        s += t;
    }
    return s;
}

BigRat pconj6_term(long k, const BigRat& x) {
    long j0 = (k + 1) / 2;
    BigRat t = BigRat(central_binom(j0)) * central_binom(j0) * binom_int(j0, k - j0) *
               pow_rat(x, k - j0);
    BigRat s = t;
    for (long j = j0 + 1; j <= k; ++j) {
        t *= sq(make_frac(4 * j - 2, j));
        t *= make_frac(BigInt(j) * (k - j + 1), BigInt(2 * j - k) * (2 * j - k - 1));
        t /= x;
        s += t;
    }
    return s;
}

BigRat abc_q(long k, int level) {
    // level 3 -> a_n, 4 -> b_n, 6 -> c_n
    const auto& r1 = binom_rat_row(BigRat(-1, level), k);
    const auto& r2 = binom_rat_row(BigRat(1 - level, level), k);
    BigRat s(0);
    for (long j = 0; j <= k; ++j) {
        BigRat t = r1[j] * r1[j] * r2[k - j];
        if (j & 1) s -= t; else s += t;
    }
    return s;
}

BigRat v3_term(long k, const BigRat& x) {
    if (x == 0) throw std::domain_error("V3 kernel: x = 0");
    long j0 = (k + 1) / 2;
    BigRat t = BigRat(binom_int(k, j0)) * binom_int(2 * j0, k) * central_binom(j0) *
               central_binom(k - j0) * pow_rat(x, 2 * j0 - k);
    BigRat s = t;
    for (long j = j0 + 1; j <= k; ++j) {
        t *= make_frac(k - j + 1, j);
        t *= make_frac(BigInt(2 * j) * (2 * j - 1), BigInt(2 * j - k) * (2 * j - k - 1));
        t *= make_frac(4 * j - 2, j);
        t *= make_frac(BigInt(k - j + 1), BigInt(2) * (2 * (k - j) + 1));
        t *= x * x;
        s += t;
    }
    return s;
}

BigRat domb_term(long k) {
    BigRat t(central_binom(k)), s = t;
    for (long j = 1; j <= k; ++j) {
        t *= sq(make_frac(k - j + 1, j)) * make_frac(4 * j - 2, j);
        t *= make_frac(BigInt(k - j + 1), BigInt(2) * (2 * (k - j) + 1));
        s += t;
    }
    return s;
}

BigRat conv_term(long k, const ConvSpec& spec) {
    BigRat s(0);
    std::vector<const std::vector<BigRat>*> rows;
    rows.reserve(spec.factors.size());
    for (const auto& f : spec.factors) rows.push_back(&binom_rat_row(f.x, k));
    for (long j = 0; j <= k; ++j) {
        BigRat t(1);
        if (spec.alt && (j & 1)) t = -1;
        if (spec.cbj) t *= BigRat(central_binom(j));
        if (spec.cbnj) t *= BigRat(central_binom(k - j));
        for (size_t i = 0; i < spec.factors.size(); ++i) {
            const auto& row = *rows[i];
            const BigRat& v = spec.factors[i].on_j ? row[j] : row[k - j];
            for (int e = 0; e < spec.factors[i].exp; ++e) t *= v;
        }
        s += t;
    }
    return s;
}

BigRat dual_term(long k, const Kernel& kern) {
    thread_local std::map<std::string, std::vector<BigRat>> cache;
    auto& inner_vals = cache[kern.str()];
    while (static_cast<long>(inner_vals.size()) <= k) {
        long j = static_cast<long>(inner_vals.size());
        BigRat p(1);
        for (const auto& sub : kern.inner) p *= kernel_term(sub, j);
        inner_vals.push_back(p);
    }
    BigRat s(0);
    BigInt bin(1);
    for (long j = 0; j <= k; ++j) {
        BigRat t = BigRat(bin) * inner_vals[j];
        if (j & 1) s -= t; else s += t;
        bin = bin * (k - j);
        if (j + 1 <= k) mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    return s;
}

}  // namespace

BigRat kernel_term(const Kernel& k, long idx) {
    if (idx < 0) throw std::domain_error("kernel_term: negative index");
    switch (k.tag) {
        case KernelTag::BinomProd: {
            BigRat v(binom_int(k.ba * idx, k.bb * idx));
            return pow_rat(v, k.exp);
        }
        case KernelTag::Trinomial: {
            BigRat v(trinomial_T(k.tmult * idx, k.tb, k.tc));
            return pow_rat(v, k.exp);
        }
        case KernelTag::AperyA:    return apery_a(idx, k.x, false);
        case KernelTag::AperyQ:    return apery_a(idx, k.x, true);
        case KernelTag::S1:        return s1_term(idx, k.x);
        case KernelTag::S2:        return s2_term(idx, k.x);
        case KernelTag::W:         return w_term(idx, k.x);
        case KernelTag::FPlus:     return pow_rat(k.x, -idx) * f_raw(idx, k.x * k.x);
        case KernelTag::FMinus:    return pow_rat(k.x, -idx) * f_raw(idx, -(k.x * k.x));
        case KernelTag::FRaw:      return f_raw(idx, k.x);
        case KernelTag::G:         return g_term(idx, k.x);
        case KernelTag::SConj5:    return sconj5pos_term(idx, k.x) * pow_rat(k.x, -2 * idx);
        case KernelTag::SConj5Pos: return sconj5pos_term(idx, k.x);
        case KernelTag::PConj6:    return pconj6_term(idx, k.x);
        case KernelTag::CLF:       return BigRat(clf_rec(idx));
        case KernelTag::SConj6:    return BigRat(sconj6_rec(idx));
        case KernelTag::AQ:        return abc_q(idx, 3);
        case KernelTag::BQ:        return abc_q(idx, 4);
        case KernelTag::CQ:        return abc_q(idx, 6);
        case KernelTag::V3:        return v3_term(idx, k.x);
        case KernelTag::Domb:      return domb_term(idx);
        case KernelTag::Conv:      return conv_term(idx, k.conv);
        case KernelTag::Dual:      return dual_term(idx, k);
    }
    throw std::logic_error("kernel_term: bad tag");
}

std::vector<BigRat> kernel_stream(const Kernel& k, long upto) {
    if (upto < 0) throw std::domain_error("kernel_stream: upto < 0");
    std::vector<BigRat> out;
    out.reserve(static_cast<size_t>(upto) + 1);
    for (long i = 0; i <= upto; ++i) out.push_back(kernel_term(k, i));
    return out;
}

std::vector<BigRat> dual_sequence(const std::vector<BigRat>& a) {
    std::vector<BigRat> out(a.size());
    for (size_t n = 0; n < a.size(); ++n) {
        BigRat s(0);
        for (size_t j = 0; j <= n; ++j) {
            BigRat t = BigRat(binom_int(static_cast<long>(n), static_cast<long>(j))) * a[j];
            if (j & 1) s -= t; else s += t;
        }
        out[n] = s;
    }
    return out;
}

std::optional<Growth> kernel_growth(const Kernel& k) {
    using QS = QuadSurd;
    switch (k.tag) {
        case KernelTag::BinomProd: {
            BigRat base;
            if (k.ba == 2 && k.bb == 1) base = BigRat(4);
            else if (k.ba == 3 && k.bb == 1) base = BigRat(27, 4);
            else if (k.ba == 4 && k.bb == 2) base = BigRat(16);
            else return std::nullopt;
            return Growth{QS(pow_rat(base, k.exp)), false};
        }
        case KernelTag::Trinomial: {
            int pw = k.tmult * k.exp;
            if (k.tc > 0 && k.tb > 0) {
                QS root = QS(BigRat(k.tb)) + QS::sqrt_of(BigRat(k.tc)) * BigRat(2);
                return Growth{root.pow(static_cast<unsigned>(pw)), false};
            }
            if (k.tc == 0 && k.tb > 0)
                return Growth{QS(pow_rat(BigRat(k.tb), pw)), false};
            if (k.tc < 0) {
                // |T_n| <= (b^2-4c)^(n/2): oscillation modulus per step
                BigRat disc = BigRat(k.tb) * k.tb - 4 * BigRat(k.tc);
                QS mod = (pw % 2 == 0) ? QS(pow_rat(disc, pw / 2))
                                       : QS::sqrt_of(pow_rat(disc, pw));
                return Growth{mod, true};
            }
            return std::nullopt;
        }
        case KernelTag::S1:
            if (k.x > 0) return Growth{QS(4 * (k.x + 1)), false};
            if (k.x <= -1) return Growth{QS(4 * k.x), false};
            return std::nullopt;
        case KernelTag::S2: {
            BigRat ax = abs(k.x);
            if (4 * ax > 16) return Growth{QS(4 * k.x), false};
            if (k.x > 0) return Growth{QS(BigRat(16)), false};   // positive, <= confluent point
            return std::nullopt;
        }
        case KernelTag::W:
            if (k.x > 1) {
                QS g = (QS(BigRat(k.x) + 2) + QS::sqrt_of(k.x + 1) * BigRat(2)) * BigRat(4) *
                       pow_rat(k.x, -2);
                return Growth{g, false};
            }
            if (k.x < -1) return Growth{QS(4 / abs(k.x)), true};
            return std::nullopt;
        case KernelTag::FPlus:
            if (k.x > 0) return Growth{QS(4 * (k.x + 1)), false};
            return std::nullopt;
        case KernelTag::FRaw:
            if (k.x > 0) return Growth{QS(4 * k.x) + QS::sqrt_of(k.x) * BigRat(4), false};
            if (k.x < 0) return Growth{QS::sqrt_of(k.x * k.x - k.x) * BigRat(4), true};
            return std::nullopt;
        case KernelTag::FMinus:
            if (k.x != 0) return Growth{QS::sqrt_of(k.x * k.x + 1) * BigRat(4), true};
            return std::nullopt;
        case KernelTag::G:
            if (k.x > 0) return Growth{QS(1 + 4 * k.x) + QS::sqrt_of(k.x) * BigRat(4), false};
            if (k.x < 0) return Growth{QS(1 + 4 * abs(k.x)), true};
            return std::nullopt;
        case KernelTag::PConj6:
            if (k.x > 0) return Growth{QS(BigRat(8)) + QS::sqrt_of(k.x + 4) * BigRat(4), false};
            if (k.x < 0) return Growth{QS::sqrt_of(abs(k.x)) * BigRat(4), true};
            return std::nullopt;
        // the summand is divided by binom(k,j): the exponent is convex in j/k,
        // so the growth comes from the j = k endpoint, 16 * max(1, q)
        case KernelTag::CLF:    return Growth{QS(BigRat(16)), false};
        case KernelTag::SConj6: return Growth{QS(BigRat(80)), false};
        case KernelTag::AQ:
        case KernelTag::BQ:
        case KernelTag::CQ:     return Growth{QS(BigRat(-1)), false};
        case KernelTag::Domb:   return Growth{QS(BigRat(16)), false};
        case KernelTag::Conv: {
            // sign parity per slot must agree, else inner cancellation
            int aj = k.conv.alt ? 1 : 0, anj = 0;
            for (const auto& f : k.conv.factors) {
                if (f.x < 0 && f.x > -1 && (f.exp & 1)) (f.on_j ? aj : anj) += 1;
                else if (f.x <= -1) return std::nullopt;
            }
            if ((aj & 1) != (anj & 1)) return std::nullopt;
            if (k.conv.cbj != k.conv.cbnj) return std::nullopt;
            BigRat g = k.conv.cbj ? BigRat(4) : BigRat(1);
            if (anj & 1) g = -g;
            return Growth{QS(g), false};
        }
        case KernelTag::Dual: {
            QS inner{BigRat(1)};
            for (const auto& sub : k.inner) {
                auto gi = kernel_growth(sub);
                if (!gi || gi->osc) return std::nullopt;
                inner = inner * gi->value;
            }
            return Growth{QS(BigRat(1)) - inner, false};
        }
        default:
            return std::nullopt;
    }
}

// ---------- parsing / printing ----------

namespace {

std::string frac_str(const BigRat& q) { return q.get_str(); }

}  // namespace

std::string Kernel::str() const {
    std::ostringstream os;
    switch (tag) {
        case KernelTag::BinomProd:
            os << "binom(" << ba << "k," << (bb == 1 ? "k" : std::to_string(bb) + "k") << ")";
            if (exp != 1) os << "^" << exp;
            break;
        case KernelTag::Trinomial:
            os << (tmult == 1 ? "T" : tmult == 2 ? "T2k" : "T3k") << "(" << tb << "," << tc << ")";
            if (exp != 1) os << "^" << exp;
            break;
        case KernelTag::AperyA:    os << "apery(" << frac_str(x) << ")"; break;
        case KernelTag::AperyQ:    os << "aperyq(" << frac_str(x) << ")"; break;
        case KernelTag::S1:        os << "s1(" << frac_str(x) << ")"; break;
        case KernelTag::S2:        os << "s2(" << frac_str(x) << ")"; break;
        case KernelTag::W:         os << "w(" << frac_str(x) << ")"; break;
        case KernelTag::FPlus:     os << "fplus(" << frac_str(x) << ")"; break;
        case KernelTag::FMinus:    os << "fminus(" << frac_str(x) << ")"; break;
        case KernelTag::FRaw:      os << "f(" << frac_str(x) << ")"; break;
        case KernelTag::G:         os << "g(" << frac_str(x) << ")"; break;
        case KernelTag::SConj5:    os << "sconj5(" << frac_str(x) << ")"; break;
        case KernelTag::SConj5Pos: os << "sconj5pos(" << frac_str(x) << ")"; break;
        case KernelTag::PConj6:    os << "pconj6(" << frac_str(x) << ")"; break;
        case KernelTag::CLF:       os << "clf"; break;
        case KernelTag::SConj6:    os << "sconj6"; break;
        case KernelTag::AQ:        os << "aq"; break;
        case KernelTag::BQ:        os << "bq"; break;
        case KernelTag::CQ:        os << "cq"; break;
        case KernelTag::V3:        os << "v3(" << frac_str(x) << ")"; break;
        case KernelTag::Domb:      os << "domb"; break;
        case KernelTag::Conv: {
            os << "conv(";
            bool first = true;
            auto sep = [&] { if (!first) os << "; "; first = false; };
            if (conv.alt) { sep(); os << "alt"; }
            if (conv.cbj) { sep(); os << "cbj"; }
            if (conv.cbnj) { sep(); os << "cbnj"; }
            for (const auto& f : conv.factors) {
                sep();
                os << "b(" << frac_str(f.x) << "," << (f.on_j ? "j" : "nj") << ")";
                if (f.exp != 1) os << "^" << f.exp;
            }
            os << ")";
            break;
        }
        case KernelTag::Dual:
            os << "dual(" << kernel_product_str(inner) << ")";
            break;
    }
    return os.str();
}

std::string kernel_product_str(const std::vector<Kernel>& ks) {
    std::string s;
    for (size_t i = 0; i < ks.size(); ++i) {
        if (i) s += " * ";
        s += ks[i].str();
    }
    return s;
}

namespace {

// splits "a * b * c" at top level (not inside parentheses)
std::vector<std::string> split_product(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (depth == 0 && s[i] == '*' && i > 0 && s[i - 1] == ' ' && i + 1 < s.size() &&
                 s[i + 1] == ' ') {
            parts.push_back(s.substr(start, i - 1 - start));
            start = i + 2;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

int parse_exp_suffix(std::string& body) {
    auto caret = body.rfind('^');
    if (caret == std::string::npos || body.find(')', caret) != std::string::npos) return 1;
    int e = std::stoi(body.substr(caret + 1));
    body = body.substr(0, caret);
    return e;
}

}  // namespace

Kernel parse_kernel(const std::string& tok0) {
    std::string tok = trim(tok0);
    if (tok.empty()) throw std::invalid_argument("parse_kernel: empty");
    int e = parse_exp_suffix(tok);

    auto arg_of = [&](const std::string& name) -> std::string {
        return tok.substr(name.size() + 1, tok.size() - name.size() - 2);
    };
    auto starts = [&](const std::string& p) {
        return tok.rfind(p, 0) == 0;
    };

    if (starts("binom(")) {
        std::string a = arg_of("binom");
        if (a == "2k,k") return Kernel::binom_prod(2, 1, e);
        if (a == "3k,k") return Kernel::binom_prod(3, 1, e);
        if (a == "4k,2k") return Kernel::binom_prod(4, 2, e);
        throw std::invalid_argument("parse_kernel: unsupported binom " + tok);
    }
    if (starts("T2k(") || starts("T3k(") || starts("T(")) {
        int mult = starts("T2k(") ? 2 : starts("T3k(") ? 3 : 1;
        std::string a = arg_of(mult == 1 ? "T" : (mult == 2 ? "T2k" : "T3k"));
        auto comma = a.find(',');
        long b = std::stol(a.substr(0, comma));
        long c = std::stol(a.substr(comma + 1));
        return Kernel::trinomial(b, c, mult, e);
    }
    if (e != 1) throw std::invalid_argument("parse_kernel: exponent unsupported on " + tok);
    if (starts("dual(")) {
        std::string body = tok.substr(5, tok.size() - 6);
        return Kernel::dual_of(parse_kernel_product(body));
    }
    if (starts("conv(")) {
        std::string body = tok.substr(5, tok.size() - 6);
        ConvSpec spec;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ';')) {
            item = trim(item);
            if (item == "alt") spec.alt = true;
            else if (item == "cbj") spec.cbj = true;
            else if (item == "cbnj") spec.cbnj = true;
            else if (item.rfind("b(", 0) == 0) {
                int fe = parse_exp_suffix(item);
                std::string a = item.substr(2, item.size() - 3);
                auto comma = a.rfind(',');
                ConvFactor f;
                f.x = parse_rat(a.substr(0, comma));
                std::string slot = a.substr(comma + 1);
                f.on_j = (slot == "j");
                if (!f.on_j && slot != "nj")
                    throw std::invalid_argument("parse_kernel: conv slot " + slot);
                f.exp = fe;
                spec.factors.push_back(f);
            } else if (!item.empty())
                throw std::invalid_argument("parse_kernel: conv item " + item);
        }
        return Kernel::conv_kernel(std::move(spec));
    }
    static const std::map<std::string, KernelTag> plain = {
        {"clf", KernelTag::CLF}, {"sconj6", KernelTag::SConj6},
        {"aq", KernelTag::AQ}, {"bq", KernelTag::BQ}, {"cq", KernelTag::CQ},
        {"domb", KernelTag::Domb},
    };
    if (auto it = plain.find(tok); it != plain.end()) return Kernel::family(it->second);
    static const std::map<std::string, KernelTag> with_x = {
        {"apery", KernelTag::AperyA}, {"aperyq", KernelTag::AperyQ},
        {"s1", KernelTag::S1}, {"s2", KernelTag::S2}, {"w", KernelTag::W},
        {"fplus", KernelTag::FPlus}, {"fminus", KernelTag::FMinus}, {"f", KernelTag::FRaw},
        {"g", KernelTag::G}, {"sconj5pos", KernelTag::SConj5Pos}, {"sconj5", KernelTag::SConj5},
        {"pconj6", KernelTag::PConj6}, {"v3", KernelTag::V3},
    };
    auto paren = tok.find('(');
    if (paren != std::string::npos && tok.back() == ')') {
        std::string name = tok.substr(0, paren);
        if (auto it = with_x.find(name); it != with_x.end())
            return Kernel::family(it->second, parse_rat(tok.substr(paren + 1, tok.size() - paren - 2)));
    }
    throw std::invalid_argument("parse_kernel: unrecognized kernel " + tok0);
}

std::vector<Kernel> parse_kernel_product(const std::string& s) {
    std::vector<Kernel> out;
    for (const auto& part : split_product(s)) out.push_back(parse_kernel(trim(part)));
    return out;
}

}  // namespace piseries
