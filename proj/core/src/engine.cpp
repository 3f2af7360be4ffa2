#include "piseries/engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "piseries/combinatorics.hpp"
#include "piseries/constants.hpp"

namespace piseries {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;

// ---------------------------------------------------------------- streams

// Yields the full term t_k (weight * kernels / base^k / k^kpow) for
// k = start, start+1, ... as balls at a fixed precision.
class TermStream {
public:
    virtual ~TermStream() = default;
    virtual Ball next() = 0;
    virtual long index() const = 0;
};

// Exact-rational term generation; the only rounding is the final conversion.
class ExactTermStream final : public TermStream {
public:
    ExactTermStream(const Identity& id, mpfr_prec_t prec) : id_(id), prec_(prec), k_(id.start) {
        geo_ = pow_rat(id.base, -id.start);
        inv_base_ = BigRat(1) / id.base;
    }

    BigRat next_exact() {
        BigRat t = id_.weight(k_);
        for (const auto& kern : id_.kernels) t *= kernel_term(kern, k_);
        t *= geo_;
        if (id_.kpow) t /= pow_rat(BigRat(k_), id_.kpow);
        geo_ *= inv_base_;
        ++k_;
        return t;
    }

    Ball next() override { return Ball::from_q(next_exact(), prec_); }
    long index() const override { return k_; }

private:
    const Identity& id_;
    mpfr_prec_t prec_;
    long k_;
    BigRat geo_, inv_base_;
};

// Ball streaming for kernels built purely from binomial products and
// generalized central trinomial coefficients (the long trinomial-family runs).
class BallRecStream final : public TermStream {
public:
    BallRecStream(const Identity& id, mpfr_prec_t prec) : id_(id), prec_(prec), k_(id.start) {
        for (const auto& kern : id_.kernels) {
            if (kern.tag == KernelTag::BinomProd) {
                binoms_.push_back({kern, Ball::from_q(kernel_term(kern, k_), prec)});
            } else if (kern.tag == KernelTag::Trinomial && kern.tb > 0 && kern.tc > 0) {
                long t0 = kern.tmult * k_;
                TriState st{kern, Ball::from_z(trinomial_T(t0, kern.tb, kern.tc), prec),
                            Ball(prec), t0};
                if (t0 > 0)
                    st.ratio = Ball::from_q(
                        make_frac(trinomial_T(t0, kern.tb, kern.tc),
                                  trinomial_T(t0 - 1, kern.tb, kern.tc)),
                        prec);
                tris_.push_back(std::move(st));
            } else {
                throw std::logic_error("BallRecStream: unsupported kernel");
            }
        }
        geo_ = Ball::from_q(pow_rat(id.base, -id.start), prec);
        inv_base_ = BigRat(1) / id.base;
    }

    Ball next() override {
        Ball t = geo_.mul_q(id_.weight(k_));
        if (id_.kpow) t = t.mul_q(pow_rat(BigRat(k_), -id_.kpow));
        for (auto& b : binoms_) t = t.mul(b.exp_val());
        for (auto& tr : tris_) t = t.mul(tr.exp_val(prec_));
        advance();
        return t;
    }

    long index() const override { return k_; }

private:
    struct BinomState {
        Kernel kern;
        Ball val;   // binom(a k, b k), unexponentiated
        Ball exp_val() const {
            Ball v = val;
            int e = kern.exp < 0 ? -kern.exp : kern.exp;
            Ball r = v.pow_ui(static_cast<unsigned long>(e));
            return kern.exp < 0 ? r.inv() : r;
        }
        void step(long k) {
            // ratio binom(a(k+1), b(k+1)) / binom(ak, bk)
            long a = kern.ba, b = kern.bb;
            BigRat num(1), den(1);
            for (long i = a * k + 1; i <= a * (k + 1); ++i) num *= i;
            for (long i = b * k + 1; i <= b * (k + 1); ++i) den *= i;
            for (long i = (a - b) * k + 1; i <= (a - b) * (k + 1); ++i) den *= i;
            val = val.mul_q(num / den);
        }
    };
    // The three-term recurrence is numerically toxic for balls (the radius
    // recurrence has a larger characteristic root than the value), so the
    // stream tracks the consecutive ratio q_n = T_n / T_{n-1} instead:
    //   q_{n+1} = ((2n+1) b - n (b^2-4c)/q_n) / (n+1)
    // a contraction for b, c > 0, and multiplies the value ball by it.
    struct TriState {
        Kernel kern;
        Ball cur;     // T_idx
        Ball ratio;   // T_idx / T_{idx-1}, meaningful for idx >= 1
        long idx;
        Ball exp_val(mpfr_prec_t) const {
            return cur.pow_ui(static_cast<unsigned long>(kern.exp));
        }
        void step_to(long target, mpfr_prec_t prec) {
            BigRat disc = BigRat(kern.tb) * kern.tb - 4 * BigRat(kern.tc);
            while (idx < target) {
                long n = idx;
                Ball q(prec);
                if (n == 0) {
                    q = Ball::from_si(kern.tb, prec);   // T_1/T_0 = b
                } else {
                    Ball inv = Ball::from_q(BigRat(n) * disc, prec).div(ratio);
                    q = Ball::from_q(BigRat(2 * n + 1) * kern.tb, prec).sub(inv).div_si(n + 1);
                }
                cur = cur.mul(q);
                ratio = std::move(q);
                ++idx;
            }
        }
    };

    void advance() {
        for (auto& b : binoms_) b.step(k_);
        ++k_;
        for (auto& tr : tris_) tr.step_to(tr.kern.tmult * k_, prec_);
        geo_ = geo_.mul_q(inv_base_);
    }

    const Identity& id_;
    mpfr_prec_t prec_;
    long k_;
    std::vector<BinomState> binoms_;
    std::vector<TriState> tris_;
    Ball geo_{64};
    BigRat inv_base_;
};

// Ball streaming for [binom(2k,k), s2(x)] kernels with |x| >= 9: the inner sum
// in k decays geometrically (ratio bound 8/|x|), so it is truncated with a
// rigorous tail added to the radius.
class BallS2Stream final : public TermStream {
public:
    BallS2Stream(const Identity& id, mpfr_prec_t prec)
        : id_(id), prec_(prec), k_(id.start), cb_(Ball::from_si(1, prec)) {
        x_ = id.kernels.at(1).x;
        if (abs(x_) < 9) throw std::logic_error("BallS2Stream needs |x| >= 9");
        if (k_ != 0) throw std::logic_error("BallS2Stream expects start 0");
        geo_ = Ball::from_si(1, prec);
        inv_base_ = BigRat(1) / id.base;
        tail_factor_ = 8.0 / std::abs(mpq_get_d(x_.get_mpq_t()));
        tail_factor_ = tail_factor_ / (1.0 - tail_factor_);
    }

    Ball next() override {
        Ball s2 = s2_ball(k_);
        Ball t = cb_.mul(s2).mul(geo_).mul_q(id_.weight(k_));
        // advance binom(2k,k) and base^-k
        cb_ = cb_.mul_q(make_frac(4 * k_ + 2, k_ + 1));
        geo_ = geo_.mul_q(inv_base_);
        ++k_;
        return t;
    }

    long index() const override { return k_; }

private:
    Ball s2_ball(long n) {
        // sum_j binom(2j,j)^2 binom(2(n-j),n-j) x^(n-j), truncated in j
        Ball term = Ball::from_z(central_binom(n), prec_);  // j = 0 times x^n below
        Ball xpow = Ball::from_q(x_, prec_).pow_ui(static_cast<unsigned long>(n));
        term = term.mul(xpow);
        Ball sum = term;
        for (long j = 1; j <= n; ++j) {
            BigRat step = make_frac(BigInt(4 * j - 2) * (4 * j - 2) * (n - j + 1),
                                    BigInt(j) * j * (2 * (n - j) + 1) * 2);
            term = term.mul_q(step / x_);
            sum = sum.add(term);
            if (j >= 48 && j < n) {
                Mag t_up = term.abs_upper();
                // stop when the rigorous tail is below the working noise floor
                Mag tail = t_up.times_double(tail_factor_);
                if (tail.cmp(sum.abs_upper().times(Mag::pow2(-(long)prec_ - 8))) <= 0) {
                    sum.add_error(tail);
                    break;
                }
            }
        }
        return sum;
    }

    const Identity& id_;
    mpfr_prec_t prec_;
    long k_;
    Ball cb_, geo_{64};
    BigRat x_, inv_base_;
    double tail_factor_;
};

// ------------------------------------------------------------- ratio logic

std::optional<RatioResult> ratio_of(const Identity& id) {
    QuadSurd acc{BigRat(1)};
    bool osc = false;
    for (const auto& kern : id.kernels) {
        auto g = kernel_growth(kern);
        if (!g) return std::nullopt;
        osc = osc || g->osc;
        acc = acc * g->value;
    }
    acc = acc * (BigRat(1) / id.base);
    return RatioResult{acc, osc};
}

double surd_abs_double(const QuadSurd& s) {
    double u = mpq_get_d(s.u().get_mpq_t());
    double v = mpq_get_d(s.v().get_mpq_t());
    return std::abs(u + v * std::sqrt(static_cast<double>(s.d())));
}

struct TailModel {
    double rho_work;      // |ratio| (exact or estimated)
    double rho_safe;      // rho + (1-rho)/2
    bool osc;
    bool empirical;
    long burn_in;
};

// log2 of |t| from an exact rational (term magnitudes for scanning)
double log2_of_rat(const BigRat& q) {
    if (q == 0) return -1e300;
    mpfr_t tmp;
    mpfr_init2(tmp, 64);
    mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
    long e;
    double m = mpfr_get_d_2exp(&e, tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return std::log2(std::abs(m)) + static_cast<double>(e);
}

struct ScanResult {
    double rho;       // estimated |ratio|
    bool osc;
    bool nongeo;
};

// Estimates the term-ratio limit (or oscillation modulus) from exact terms.
ScanResult scan_terms(const Identity& id, long nscan) {
    ExactTermStream st(id, 64);
    std::vector<double> lt;   // log2 |t_k|
    std::vector<int> sg;
    lt.reserve(nscan);
    for (long i = 0; i < nscan; ++i) {
        BigRat t = st.next_exact();
        lt.push_back(log2_of_rat(t));
        sg.push_back(t == 0 ? 0 : (t > 0 ? 1 : -1));
        if (i > 16 && lt.back() < -4096) break;   // far below any useful scale
    }
    long n = static_cast<long>(lt.size());
    if (n < 32) return {0.25, false, false};      // converged almost immediately
    // sign regularity over the tail half
    bool regular = true;
    int flip = sg[n / 2] != 0 && sg[n / 2 + 1] != 0 ? sg[n / 2] * sg[n / 2 + 1] : 2;
    for (long i = n / 2; i + 1 < n && regular; ++i) {
        if (sg[i] == 0 || sg[i + 1] == 0) { regular = false; break; }
        if (sg[i] * sg[i + 1] != flip) regular = false;
    }
    if (regular && flip != 2) {
        // ratio sequence r_k ~ r(1 - c/k): extrapolate with two windows
        auto median_ratio = [&](long lo, long hi) {
            std::vector<double> rs;
            for (long i = std::max<long>(lo, 1); i < hi; ++i) rs.push_back(lt[i] - lt[i - 1]);
            std::nth_element(rs.begin(), rs.begin() + rs.size() / 2, rs.end());
            return rs[rs.size() / 2];
        };
        double m1 = median_ratio(n / 2 - n / 8, n / 2 + n / 8);
        double m2 = median_ratio(n - n / 4, n);
        double extrap = m2 + (m2 - m1);
        double rho = std::exp2(std::max(m2, extrap));
        return {rho, false, rho >= 0.9995};
    }
    // oscillatory: window maxima
    auto wmax = [&](long lo, long hi) {
        double m = -1e300;
        for (long i = lo; i < hi; ++i) m = std::max(m, lt[i]);
        return m;
    };
    double M1 = wmax(n / 4, n / 2), M2 = wmax(3 * n / 4, n);
    double span = static_cast<double>((3 * n / 4 + n) / 2 - (n / 4 + n / 2) / 2);
    double rho = std::exp2((M2 - M1) / span);
    rho += (1.0 - rho) / 16.0;
    return {rho, true, rho >= 0.9995};
}

Mag mag_pow10_lower(int digits) {
    // lower bound of 10^-digits
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_si(t, 10, MPFR_RNDN);
    mpfr_pow_si(t, t, -digits, MPFR_RNDD);
    Mag m = mag_lower_from_mpfr(t);
    mpfr_clear(t);
    return m;
}

std::unique_ptr<TermStream> make_stream(const Identity& id, mpfr_prec_t prec, double est_terms) {
    if (est_terms > 1200) {
        bool rec_ok = !id.kernels.empty();
        for (const auto& kern : id.kernels)
            rec_ok = rec_ok && (kern.tag == KernelTag::BinomProd ||
                                (kern.tag == KernelTag::Trinomial && kern.tb > 0 && kern.tc > 0));
        if (rec_ok) return std::make_unique<BallRecStream>(id, prec);
        if (id.kernels.size() == 2 && id.kernels[0].tag == KernelTag::BinomProd &&
            id.kernels[0].ba == 2 && id.kernels[0].exp == 1 &&
            id.kernels[1].tag == KernelTag::S2 && abs(id.kernels[1].x) >= 9 && id.start == 0)
            return std::make_unique<BallS2Stream>(id, prec);
    }
    return std::make_unique<ExactTermStream>(id, prec);
}

std::string log10_string(const Mag& m) {
    if (m.is_zero()) return "0";
    double l10 = (std::log2(m.mantissa()) + static_cast<double>(m.exponent())) / kLog2Of10;
    std::ostringstream os;
    os.precision(3);
    os << "10^" << std::fixed << l10;
    return os.str();
}

}  // namespace

std::optional<RatioResult> try_convergence_ratio(const Identity& id) { return ratio_of(id); }

QuadSurd convergence_ratio(const Identity& id) {
    auto r = ratio_of(id);
    if (!r)
        throw std::domain_error("convergence_ratio: no closed-form growth for a kernel of " +
                                id.code);
    return r->ratio;
}

EvalReport evaluate(const Identity& id, int digits, const EvalOptions& opt) {
    if (digits < 1) throw std::domain_error("evaluate: digits < 1");
    EvalReport rep;
    rep.code = id.code;
    rep.digits = digits;

    // ---- tail model
    TailModel tm{};
    auto exact = ratio_of(id);
    if (exact) {
        tm.rho_work = surd_abs_double(exact->ratio);
        tm.osc = exact->osc;
        tm.empirical = false;
    } else {
        ScanResult sc = scan_terms(id, 384);
        if (sc.rho >= 0.995 && !sc.nongeo) sc = scan_terms(id, 2048);
        tm.rho_work = sc.rho;
        tm.osc = sc.osc;
        tm.empirical = true;
        if (sc.nongeo || sc.rho >= 0.9995) {
            rep.verdict = Verdict::Inconclusive;
            rep.empirical_ratio = true;
            rep.diagnostic = "series is not geometrically convergent at desk scale "
                             "(estimated term-ratio " + std::to_string(sc.rho) + ")";
            return rep;
        }
    }
    rep.empirical_ratio = tm.empirical;
    if (tm.rho_work >= 0.9995) {
        rep.verdict = Verdict::Inconclusive;
        rep.diagnostic = "series is not geometrically convergent at desk scale (|ratio| = " +
                         std::to_string(tm.rho_work) + ")";
        return rep;
    }
    if (tm.rho_work >= 1.0) {
        rep.verdict = Verdict::Inconclusive;
        rep.diagnostic = "nonconvergent: |ratio| >= 1";
        return rep;
    }
    tm.rho_safe = tm.rho_work + (1.0 - tm.rho_work) / 2.0;
    tm.burn_in = std::max<long>(50, static_cast<long>(8.0 / (1.0 - tm.rho_work)));

    // ---- summation
    mpfr_prec_t prec = prec_for_digits(digits);
    double est_terms =
        (digits + 4) * kLog2Of10 / -std::log2(tm.rho_safe) + 96;
    std::unique_ptr<TermStream> stream = make_stream(id, prec, est_terms);

    const double log2_eps = -(digits + 2) * kLog2Of10 - 1;
    const double log2_rho = std::log2(tm.rho_safe);
    const double log2_tail_mult = std::log2(tm.rho_safe / (1.0 - tm.rho_safe));
    const long freeze_at = std::max<long>(96, std::min<long>(tm.burn_in, 4096));
    long max_terms = std::max<long>(static_cast<long>(est_terms * 3) + 512, 20000);
    if (max_terms > opt.max_terms) max_terms = opt.max_terms;

    Ball acc(prec);
    double env_log = -1e300;         // certified log2 bound of |t_k| (lim mode)
    double amp_log = -1e300;         // envelope amplitude A (osc mode): log2 A
    bool amp_frozen = false;
    long terms = 0;
    double tail_log = 1e300;
    std::string violation;

    while (terms < max_terms) {
        long k = stream->index();
        Ball t = stream->next();
        acc = acc.add(t);
        ++terms;
        Mag t_up = t.abs_upper();
        double lt = t_up.is_zero() ? -1e300
                                   : std::log2(t_up.mantissa()) + static_cast<double>(t_up.exponent());
        long rel = k - id.start;
        if (tm.osc) {
            double a = lt - rel * log2_rho;
            if (!amp_frozen) {
                amp_log = std::max(amp_log, a + 2.0);   // 4x slack
                if (rel >= freeze_at) amp_frozen = true;
            } else if (a > amp_log) {
                violation = "envelope guard violated at k = " + std::to_string(k);
                break;
            }
            tail_log = amp_log + (rel + 1) * log2_rho + log2_tail_mult - log2_rho;
        } else {
            if (rel >= tm.burn_in && lt > env_log + log2_rho + 1e-9) {
                violation = "term-ratio guard violated at k = " + std::to_string(k);
                break;
            }
            env_log = std::max(lt, env_log + log2_rho);
            tail_log = env_log + log2_tail_mult;
        }
        if (rel >= 8 && tail_log < log2_eps) break;
    }

    if (!violation.empty()) {
        rep.verdict = Verdict::Inconclusive;
        rep.terms = terms;
        rep.diagnostic = violation + " (safety ratio " + std::to_string(tm.rho_safe) + ")";
        return rep;
    }
    if (tail_log >= log2_eps) {
        rep.verdict = Verdict::Inconclusive;
        rep.terms = terms;
        rep.diagnostic = "term budget exhausted before the tail bound closed";
        return rep;
    }
    acc.add_error(Mag::pow2(static_cast<long>(tail_log) + 2));
    rep.terms = terms;

    // ---- verdict
    const RHSExpr& target = (id.alt_rhs && !opt.published_rhs) ? *id.alt_rhs : id.rhs;
    rep.used_alt_rhs = (id.alt_rhs && !opt.published_rhs);
    Ball rhs = rhs_value(target, digits + 6);
    rep.lhs = acc.str(digits + 4);
    rep.rhs = rhs.str(digits + 4);

    Mag combined = acc.rad().added(rhs.rad());
    Mag tol = mag_pow10_lower(digits);
    bool small_enough = combined.cmp(tol) <= 0;
    if (acc.certainly_overlaps(rhs) && small_enough) {
        rep.verdict = Verdict::Verified;
        double l10 = (std::log2(combined.mantissa()) + combined.exponent()) / kLog2Of10;
        rep.achieved_digits = static_cast<int>(-l10);
        rep.diff_bound_log10 = log10_string(combined);
        return rep;
    }
    if (acc.certainly_disjoint(rhs, 10.0)) {
        rep.verdict = Verdict::Refuted;
        mpfr_t d;
        mpfr_init2(d, prec);
        mpfr_sub(d, acc.mid(), rhs.mid(), MPFR_RNDN);
        rep.diff_bound_log10 = log10_string(mag_upper_from_mpfr(d).added(combined));
        mpfr_clear(d);
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.diagnostic = small_enough ? "enclosures neither overlap nor are 10x-separated"
                                  : "combined radius did not reach the digit target";
    return rep;
}

long terms_needed(const Identity& id, int digits) {
    if (digits < 0) throw std::domain_error("terms_needed: digits < 0");
    if (digits == 0) return 8;
    double rho;
    auto exact = ratio_of(id);
    if (exact) {
        rho = surd_abs_double(exact->ratio);
    } else {
        ScanResult sc = scan_terms(id, 384);
        rho = sc.rho;
    }
    if (rho >= 0.9995)
        throw std::domain_error("terms_needed: series not geometrically convergent");
    double rho_safe = rho + (1.0 - rho) / 2.0;
    // amplitude from a short scan
    ExactTermStream st(id, 64);
    double amp = -1e300;
    for (long i = 0; i < 64; ++i)
        amp = std::max(amp, log2_of_rat(st.next_exact()) - i * std::log2(rho_safe));
    double log2_eps = -(digits + 2) * kLog2Of10;
    double n = (log2_eps - amp - std::log2(rho_safe / (1 - rho_safe))) / std::log2(rho_safe);
    return std::max<long>(8, static_cast<long>(n) + 1);
}

}  // namespace piseries
