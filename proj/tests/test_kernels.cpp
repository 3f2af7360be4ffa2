#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "piseries/combinatorics.hpp"
#include "piseries/kernels.hpp"

using namespace piseries;

namespace {

// independent direct-sum oracles (no shared code with the kernel paths)

BigRat apery_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n, k) * binom_int(n + k, k)) * pow_rat(x, n - k);
    return s;
}

BigRat s1_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(2 * k, k) * binom_int(2 * (n - k), n - k)) *
             pow_rat(x, n - k);
    return s;
}

BigRat s2_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(2 * k, k) * binom_int(2 * k, k) * binom_int(2 * (n - k), n - k)) *
             pow_rat(x, n - k);
    return s;
}

BigRat w_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n + k, 2 * k) * binom_int(2 * k, k) * binom_int(2 * k, k) *
                    binom_int(2 * (n - k), n - k)) *
             pow_rat(x, -(n + k));
    return s;
}

BigRat f_oracle(long n, const BigRat& y) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n, k) * binom_int(2 * k, n)) * pow_rat(y, k);
    return s;
}

BigRat g_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n, k) * binom_int(2 * k, k)) * pow_rat(x, k);
    return s;
}

BigRat sc5_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n + 2 * k, 2 * k) * binom_int(2 * k, k)) *
             pow_rat(x, -(n + k));
    return s;
}

BigRat sc5pos_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n + 2 * k, 2 * k) * binom_int(2 * k, k)) *
             pow_rat(x, n - k);
    return s;
}

BigRat p6_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(2 * k, k) * binom_int(2 * k, k) * binom_int(k, n - k)) *
             pow_rat(x, n - k);
    return s;
}

BigRat v3_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(2 * k, n) * binom_int(2 * k, k) *
                    binom_int(2 * (n - k), n - k)) *
             pow_rat(x, 2 * k - n);
    return s;
}

BigRat domb_oracle(long n) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n, k) * binom_int(2 * k, k) *
                    binom_int(2 * (n - k), n - k));
    return s;
}

BigRat aperyq_oracle(long n, const BigRat& x) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k)
        s += BigRat(binom_int(n, k) * binom_int(n, k) * binom_int(n + k, k)) * pow_rat(x, k);
    return s;
}

BigRat abc_oracle(long n, int level) {
    BigRat s(0);
    for (long k = 0; k <= n; ++k) {
        BigRat t = binom_rat(BigRat(-1, level), k);
        t *= t;
        t *= binom_rat(BigRat(1 - level, level), n - k);
        if (k & 1) s -= t; else s += t;
    }
    return s;
}

}  // namespace

TEST_CASE("trinomial: seeds, recurrence vs direct sum") {
    CHECK(trinomial_T(0, 5, 7) == 1);
    CHECK(trinomial_T(1, 5, 7) == 5);
    CHECK(trinomial_T(2, 1, 1) == 3);
    std::vector<long> first{1, 1, 3, 7, 19, 51};
    for (long k = 0; k <= 5; ++k) CHECK(trinomial_T(k, 1, 1) == first[static_cast<size_t>(k)]);
    for (long b = -3; b <= 3; ++b)
        for (long c = -3; c <= 3; ++c)
            for (long n = 0; n <= 200; ++n)
                CHECK(trinomial_T(n, b, c) == trinomial_T_direct(n, b, c));
}

TEST_CASE("kernel_term spot values from the catalogue") {
    CHECK(kernel_term(Kernel::family(KernelTag::AperyA, BigRat(-8)), 1) == BigRat(-6));
    CHECK(kernel_term(Kernel::family(KernelTag::S2, BigRat(4)), 1) == BigRat(12));
    CHECK(kernel_term(Kernel::family(KernelTag::SConj6), 0) == BigRat(1));
    CHECK(kernel_term(Kernel::family(KernelTag::SConj6), 1) == BigRat(24));
    CHECK(kernel_term(Kernel::family(KernelTag::SConj6), 2) == BigRat(976));
    CHECK(kernel_term(Kernel::family(KernelTag::CLF), 2) == BigRat(80));
    CHECK(kernel_term(Kernel::family(KernelTag::W, BigRat(-8)), 1) == BigRat(-3, 16));
    CHECK(kernel_term(Kernel::binom_prod(2, 1, -2), 2) == BigRat(1, 36));
}

TEST_CASE("kernel families match direct-sum oracles") {
    for (long n = 0; n <= 25; ++n) {
        CHECK(kernel_term(Kernel::family(KernelTag::AperyA, BigRat(-8)), n) ==
              apery_oracle(n, BigRat(-8)));
        CHECK(kernel_term(Kernel::family(KernelTag::AperyQ, BigRat(-27)), n) ==
              aperyq_oracle(n, BigRat(-27)));
        CHECK(kernel_term(Kernel::family(KernelTag::S1, BigRat(16)), n) == s1_oracle(n, BigRat(16)));
        CHECK(kernel_term(Kernel::family(KernelTag::S1, BigRat(-64)), n) ==
              s1_oracle(n, BigRat(-64)));
        CHECK(kernel_term(Kernel::family(KernelTag::S2, BigRat(-14)), n) ==
              s2_oracle(n, BigRat(-14)));
        CHECK(kernel_term(Kernel::family(KernelTag::W, BigRat(12)), n) == w_oracle(n, BigRat(12)));
        CHECK(kernel_term(Kernel::family(KernelTag::FRaw, BigRat(36)), n) ==
              f_oracle(n, BigRat(36)));
        CHECK(kernel_term(Kernel::family(KernelTag::FPlus, BigRat(6)), n) ==
              pow_rat(BigRat(6), -n) * f_oracle(n, BigRat(36)));
        CHECK(kernel_term(Kernel::family(KernelTag::FMinus, BigRat(8)), n) ==
              pow_rat(BigRat(8), -n) * f_oracle(n, BigRat(-64)));
        CHECK(kernel_term(Kernel::family(KernelTag::G, BigRat(-20)), n) ==
              g_oracle(n, BigRat(-20)));
        CHECK(kernel_term(Kernel::family(KernelTag::SConj5, BigRat(-9)), n) ==
              sc5_oracle(n, BigRat(-9)));
        CHECK(kernel_term(Kernel::family(KernelTag::SConj5Pos, BigRat(486)), n) ==
              sc5pos_oracle(n, BigRat(486)));
        CHECK(kernel_term(Kernel::family(KernelTag::PConj6, BigRat(-7)), n) ==
              p6_oracle(n, BigRat(-7)));
        CHECK(kernel_term(Kernel::family(KernelTag::V3, BigRat(3)), n) == v3_oracle(n, BigRat(3)));
        CHECK(kernel_term(Kernel::family(KernelTag::Domb), n) == domb_oracle(n));
        CHECK(kernel_term(Kernel::family(KernelTag::AQ), n) == abc_oracle(n, 3));
        CHECK(kernel_term(Kernel::family(KernelTag::BQ), n) == abc_oracle(n, 4));
        CHECK(kernel_term(Kernel::family(KernelTag::CQ), n) == abc_oracle(n, 6));
        CHECK(BigRat(clf_direct(n)) == kernel_term(Kernel::family(KernelTag::CLF), n));
        CHECK(BigRat(sconj6_direct(n)) == kernel_term(Kernel::family(KernelTag::SConj6), n));
    }
}

TEST_CASE("kernel_stream equals repeated kernel_term and uses the recurrences") {
    Kernel tri = Kernel::trinomial(1, 1, 1, 1);
    auto st = kernel_stream(tri, 5);
    std::vector<long> expect{1, 1, 3, 7, 19, 51};
    for (size_t i = 0; i < expect.size(); ++i) CHECK(st[i] == BigRat(expect[i]));

    auto clf = kernel_stream(Kernel::family(KernelTag::CLF), 3);
    std::vector<long> clf_expect{1, 8, 80, 896};
    for (size_t i = 0; i < clf_expect.size(); ++i) CHECK(clf[i] == BigRat(clf_expect[i]));

    auto s6 = kernel_stream(Kernel::family(KernelTag::SConj6), 6);
    for (long n = 0; n <= 6; ++n) CHECK(s6[static_cast<size_t>(n)] == BigRat(sconj6_direct(n)));
}

TEST_CASE("dual sequence: involution and catalogue values") {
    std::vector<BigRat> ones(12, BigRat(1));
    auto d = dual_sequence(ones);
    CHECK(d[0] == 1);
    for (size_t i = 1; i < d.size(); ++i) CHECK(d[i] == 0);

    std::mt19937 rng(7);
    std::vector<BigRat> s;
    for (int i = 0; i < 20; ++i)
        s.push_back(make_frac(static_cast<long>(rng() % 199) - 99, static_cast<long>(rng() % 20) + 1));
    CHECK(dual_sequence(dual_sequence(s)) == s);

    // dual of a_k = binom(2k,k) T_k(1,16), by the direct double-sum oracle
    Kernel dk = Kernel::dual_of({Kernel::binom_prod(2, 1, 1), Kernel::trinomial(1, 16, 1, 1)});
    std::vector<BigRat> expect;
    {
        std::vector<BigRat> a;
        for (long j = 0; j <= 4; ++j)
            a.push_back(BigRat(binom_int(2 * j, j)) * BigRat(trinomial_T_direct(j, 1, 16)));
        expect = dual_sequence(a);
    }
    CHECK(expect[0] == BigRat(1));
    CHECK(expect[1] == BigRat(-1));
    CHECK(expect[2] == BigRat(195));
    CHECK(expect[3] == BigRat(-1351));
    for (long k = 0; k <= 4; ++k) CHECK(kernel_term(dk, k) == expect[static_cast<size_t>(k)]);
}

TEST_CASE("kernel growth closed forms") {
    auto growth = [](const Kernel& k) {
        auto g = kernel_growth(k);
        REQUIRE(g.has_value());
        return *g;
    };
    CHECK(growth(Kernel::binom_prod(2, 1, 1)).value == QuadSurd(BigRat(4)));
    CHECK(growth(Kernel::binom_prod(2, 1, -2)).value == QuadSurd(BigRat(1, 16)));
    CHECK(growth(Kernel::binom_prod(3, 1, 1)).value == QuadSurd(BigRat(27, 4)));
    CHECK(growth(Kernel::binom_prod(4, 2, 1)).value == QuadSurd(BigRat(16)));

    CHECK(growth(Kernel::trinomial(18, 6, 1, 1)).value == QuadSurd(BigRat(18), BigRat(2), 6));
    CHECK(growth(Kernel::trinomial(1, 16, 1, 1)).value == QuadSurd(BigRat(9)));
    CHECK(growth(Kernel::trinomial(62, 1, 2, 1)).value == QuadSurd(BigRat(4096)));
    CHECK(growth(Kernel::trinomial(10, 121, 1, 3)).value == QuadSurd(BigRat(32768)));
    auto vii5 = growth(Kernel::trinomial(3, -3, 1, 2));
    CHECK(vii5.osc);
    CHECK(vii5.value == QuadSurd(BigRat(21)));

    CHECK(growth(Kernel::family(KernelTag::S1, BigRat(16))).value == QuadSurd(BigRat(68)));
    CHECK(growth(Kernel::family(KernelTag::S1, BigRat(-64))).value == QuadSurd(BigRat(-256)));
    CHECK(growth(Kernel::family(KernelTag::S2, BigRat(-14))).value == QuadSurd(BigRat(-56)));
    CHECK(growth(Kernel::family(KernelTag::S2, BigRat(4))).value == QuadSurd(BigRat(16)));

    CHECK(growth(Kernel::family(KernelTag::W, BigRat(12))).value ==
          QuadSurd(BigRat(7, 18), BigRat(1, 18), 13));
    auto w8 = growth(Kernel::family(KernelTag::W, BigRat(-8)));
    CHECK(w8.osc);
    CHECK(w8.value == QuadSurd(BigRat(1, 2)));

    CHECK(growth(Kernel::family(KernelTag::FPlus, BigRat(6))).value == QuadSurd(BigRat(28)));
    CHECK(growth(Kernel::family(KernelTag::G, BigRat(36))).value == QuadSurd(BigRat(169)));
    auto g20 = growth(Kernel::family(KernelTag::G, BigRat(-20)));
    CHECK(g20.osc);
    CHECK(g20.value == QuadSurd(BigRat(81)));

    CHECK(growth(Kernel::family(KernelTag::PConj6, BigRat(21))).value == QuadSurd(BigRat(28)));
    auto p7 = growth(Kernel::family(KernelTag::PConj6, BigRat(-7)));
    CHECK(p7.osc);
    CHECK(p7.value == QuadSurd(BigRat(0), BigRat(4), 7));

    CHECK(growth(Kernel::family(KernelTag::CLF)).value == QuadSurd(BigRat(16)));
    CHECK(growth(Kernel::family(KernelTag::SConj6)).value == QuadSurd(BigRat(80)));
    CHECK(growth(Kernel::family(KernelTag::AQ)).value == QuadSurd(BigRat(-1)));
    CHECK(growth(Kernel::family(KernelTag::Domb)).value == QuadSurd(BigRat(16)));

    Kernel dual = Kernel::dual_of({Kernel::binom_prod(2, 1, 1), Kernel::trinomial(1, 16, 1, 1)});
    CHECK(growth(dual).value == QuadSurd(BigRat(-35)));

    CHECK_FALSE(kernel_growth(Kernel::family(KernelTag::AperyA, BigRat(-8))).has_value());
    CHECK_FALSE(kernel_growth(Kernel::family(KernelTag::SConj5, BigRat(-9))).has_value());
    CHECK_FALSE(kernel_growth(Kernel::family(KernelTag::V3, BigRat(3))).has_value());
}

TEST_CASE("kernel parse/print round-trip") {
    for (const char* s : {"binom(2k,k)^-2 * binom(3k,k)^-1",
                          "binom(2k,k)^2 * T2k(62,1)",
                          "binom(2k,k) * binom(3k,k) * T(18,6)",
                          "T(62,9025)^3",
                          "binom(2k,k) * T(171,-171)^2",
                          "binom(2k,k) * apery(-8)",
                          "w(-100)",
                          "binom(2k,k) * fminus(18)",
                          "binom(2k,k) * sconj5pos(-324)",
                          "v3(3)",
                          "binom(2k,k)^2 * domb",
                          "conv(alt; b(-1/3,j)^2; b(-2/3,nj))",
                          "conv(cbj; cbnj; b(-1/4,j); b(-3/4,nj))",
                          "binom(2k,k) * dual(binom(2k,k) * T(1,16))"}) {
        auto ks = parse_kernel_product(s);
        CHECK(kernel_product_str(ks) == s);
    }
    CHECK_THROWS_AS(parse_kernel("nope(3)"), std::invalid_argument);
}
