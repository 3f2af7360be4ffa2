#include <map>
#include <stdexcept>

#include "piseries/engine.hpp"

namespace piseries {

namespace {

// rhs * (u + v sqrt(d)), renormalized to the coeff*sqrt(rad) term list
RHSExpr rhs_times_surd(const RHSExpr& rhs, const QuadSurd& s) {
    std::map<unsigned long, BigRat> acc;
    for (const auto& t : rhs.terms) {
        if (s.u() != 0) acc[t.rad] += t.coeff * s.u();
        if (s.v() != 0) {
            auto [sq, f] = squarefree_part(BigInt(t.rad) * BigInt(s.d()));
            if (!f.fits_ulong_p()) throw std::overflow_error("rhs_times_surd: radicand overflow");
            acc[f.get_ui()] += t.coeff * s.v() * BigRat(sq);
        }
    }
    RHSExpr out;
    out.base = rhs.base;
    for (const auto& [rad, c] : acc)
        if (c != 0) out.terms.push_back({c, rad});
    if (out.terms.empty()) out.terms.push_back({BigRat(0), 1});
    return out;
}

// scale (nb, nc) to coprime integers with nb > 0; returns lambda with
// (nb, nc) = lambda * (out_b, out_c)
BigRat normalize_linear(BigRat& nb, BigRat& nc) {
    BigInt den_lcm;
    mpz_lcm(den_lcm.get_mpz_t(), nb.get_den().get_mpz_t(), nc.get_den().get_mpz_t());
    BigRat b2 = nb * BigRat(den_lcm), c2 = nc * BigRat(den_lcm);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), b2.get_num().get_mpz_t(), c2.get_num().get_mpz_t());
    if (g == 0) g = 1;
    if (b2 < 0) g = -g;
    BigRat lambda = make_frac(g, den_lcm);
    nb = b2 / BigRat(g);
    nc = c2 / BigRat(g);
    return lambda;
}

}  // namespace

Identity transform_dual(const Identity& id) {
    if (id.kpow != 0 || id.w2 != 0)
        throw std::invalid_argument("transform_dual: needs a plain linear weight (" + id.code + ")");
    BigRat m = id.base;
    if (m == 0 || m == 4 || (m > 0 && m < 4))
        throw std::invalid_argument("transform_dual: base must lie outside [0, 4] (" + id.code + ")");

    // peel one explicit binom(2k,k)
    std::vector<Kernel> rest = id.kernels;
    bool found = false;
    for (auto it = rest.begin(); it != rest.end(); ++it) {
        if (it->tag == KernelTag::BinomProd && it->ba == 2 && it->bb == 1 && it->exp >= 1) {
            if (it->exp == 1) rest.erase(it);
            else it->exp -= 1;
            found = true;
            break;
        }
    }
    if (!found)
        throw std::invalid_argument("transform_dual: no explicit binom(2k,k) factor (" + id.code + ")");

    // f+/f- fold: f±_k(x) = x^-k f_k(±x^2); absorbing (-1)^k makes the dual a g-kernel
    std::vector<Kernel> new_kernels;
    if (rest.size() == 1 && (rest[0].tag == KernelTag::FPlus || rest[0].tag == KernelTag::FMinus)) {
        BigRat x = rest[0].x;
        BigRat y = x * x;
        if (rest[0].tag == KernelTag::FMinus) y = -y;
        m = -(m * x);
        new_kernels = {Kernel::binom_prod(2, 1, 1), Kernel::family(KernelTag::G, y)};
    } else {
        new_kernels = {Kernel::binom_prod(2, 1, 1), Kernel::dual_of(rest)};
    }

    BigRat b = id.w1, c = id.w0;
    BigRat nb = b * m;
    BigRat nc = 2 * b + (m - 4) * c;
    BigRat lambda = normalize_linear(nb, nc);

    QuadSurd fac = QuadSurd::sqrt_of((m - 4) / m) * (m - 4) * (BigRat(1) / lambda);

    Identity out;
    out.code = id.code + "*";
    out.status = id.status;
    out.start = 0;
    out.w1 = nb;
    out.w0 = nc;
    out.base = 4 - m;
    out.kernels = std::move(new_kernels);
    out.rhs = rhs_times_surd(id.rhs, fac);
    if (id.alt_rhs) out.alt_rhs = rhs_times_surd(*id.alt_rhs, fac);
    out.note = "dual form of " + id.code;
    return out;
}

Identity transform_binomial(const Identity& id) {
    if (id.kpow != 0 || id.w2 != 0)
        throw std::invalid_argument("transform_binomial: needs a plain linear weight (" + id.code + ")");
    if (id.kernels.size() != 2 || id.kernels[0].tag != KernelTag::BinomProd ||
        id.kernels[0].ba != 2 || id.kernels[0].exp != 1)
        throw std::invalid_argument("transform_binomial: unsupported shape (" + id.code + ")");
    KernelTag q = id.kernels[1].tag;
    if (q != KernelTag::AQ && q != KernelTag::BQ && q != KernelTag::CQ)
        throw std::invalid_argument("transform_binomial: unsupported shape (" + id.code + ")");

    BigRat M = id.base;
    BigRat m = 1 + M / 4;
    if (m == 0 || m == 1)
        throw std::invalid_argument("transform_binomial: degenerate base (" + id.code + ")");
    if (abs(m) <= 1)
        throw std::invalid_argument(
            "transform_binomial: the transformed series would not converge absolutely (" +
            id.code + ")");

    BigRat B = id.w1, C = id.w0;
    BigRat b = B / m;
    BigRat c = (C - b) / (m - 1);
    BigRat lambda = normalize_linear(b, c);
    BigRat scale = m / ((m - 1) * (m - 1) * lambda);

    ConvSpec spec;
    auto add = [&](long num, long den, bool on_j) {
        spec.factors.push_back({BigRat(num, den), on_j, 1});
    };
    if (q == KernelTag::AQ) {
        add(-1, 3, true); add(-1, 6, true); add(-2, 3, false); add(-5, 6, false);
    } else if (q == KernelTag::BQ) {
        add(-1, 8, true); add(-3, 8, true); add(-5, 8, false); add(-7, 8, false);
    } else {
        add(-1, 12, true); add(-5, 12, true); add(-7, 12, false); add(-11, 12, false);
    }

    Identity out;
    out.code = id.code + "~";
    out.status = id.status;
    out.start = 0;
    out.w1 = b;
    out.w0 = c;
    out.base = m;
    out.kernels = {Kernel::conv_kernel(std::move(spec))};
    out.rhs = rhs_times_surd(id.rhs, QuadSurd(scale));
    if (id.alt_rhs) out.alt_rhs = rhs_times_surd(*id.alt_rhs, QuadSurd(scale));
    out.note = "binomial-transform form of " + id.code;
    return out;
}

}  // namespace piseries
