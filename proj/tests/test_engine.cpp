#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "piseries/constants.hpp"
#include "piseries/engine.hpp"

using namespace piseries;

namespace {

const Catalog& cat() {
    static Catalog c = load_catalog(PISERIES_CATALOG_FILE);
    return c;
}

}  // namespace

TEST_CASE("convergence_ratio reproduces catalogued trinomial-family values") {
    CHECK(convergence_ratio(cat().at("I1")) == QuadSurd::parse("-9/16"));
    CHECK(convergence_ratio(cat().at("II1")) == QuadSurd::parse("1/2+1/18*sqrt(6)"));
    CHECK(convergence_ratio(cat().at("VI2")) == QuadSurd::parse("-64/125"));
    CHECK(convergence_ratio(cat().at("II11")) == QuadSurd::parse("-7/20-27/100*sqrt(5)"));
    CHECK(convergence_ratio(cat().at("III13")) == QuadSurd::parse("5997601/6007401"));
    // section-1 examples with closed-form growth
    CHECK(convergence_ratio(cat().at("1.1")) == QuadSurd::parse("2/27"));
    CHECK(convergence_ratio(cat().at("1.2")) == QuadSurd::parse("16/27"));
    // oscillatory families carry a modulus
    auto vii5 = try_convergence_ratio(cat().at("VII5"));
    REQUIRE(vii5.has_value());
    CHECK(vii5->osc);
    CHECK(vii5->ratio == QuadSurd::parse("-7/9"));
    // unsupported families refuse
    CHECK_THROWS_AS(convergence_ratio(cat().at("2.1")), std::domain_error);
    CHECK_THROWS_AS(convergence_ratio(cat().at("5.1")), std::domain_error);
}

TEST_CASE("every catalogued ratio (or its correction) matches the computed one") {
    int with_ratio = 0;
    for (const auto& id : cat().identities) {
        if (!id.ratio) continue;
        ++with_ratio;
        auto r = try_convergence_ratio(id);
        REQUIRE_MESSAGE(r.has_value(), id.code);
        const QuadSurd& expect = id.ratio_corrected ? *id.ratio_corrected : *id.ratio;
        CHECK_MESSAGE(r->ratio == expect, id.code, " computed ", r->ratio.str());
        if (id.ratio_corrected) CHECK_MESSAGE(!(r->ratio == *id.ratio), id.code);
    }
    CHECK(with_ratio == 58);
}

TEST_CASE("evaluate verifies fast identities at thirty digits") {
    for (const char* code : {"1.1", "1.4", "1.6", "1.7", "I1", "I4", "II10", "IV4", "V1",
                             "VI1", "2.3", "3.13", "4.1", "4.22", "5.8", "6.8", "EX4.1"}) {
        EvalReport r = evaluate(cat().at(code), 30);
        CHECK_MESSAGE(r.verdict == Verdict::Verified, code, ": ", r.diagnostic);
        CHECK(r.achieved_digits >= 30);
    }
}

TEST_CASE("evaluate handles oscillatory kernels via the envelope guard") {
    for (const char* code : {"VII5", "3.1", "6.3", "5.1", "2.1", "6.1", "5.9"}) {
        EvalReport r = evaluate(cat().at(code), 25);
        CHECK_MESSAGE(r.verdict == Verdict::Verified, code, ": ", r.diagnostic);
    }
}

TEST_CASE("the corrected identity is refuted against its published value") {
    const Identity& id = cat().at("4.11");
    EvalOptions pub;
    pub.published_rhs = true;
    EvalReport r = evaluate(id, 20, pub);
    CHECK(r.verdict == Verdict::Refuted);
    CHECK_FALSE(r.used_alt_rhs);
    EvalReport ok = evaluate(id, 20);
    CHECK(ok.verdict == Verdict::Verified);
    CHECK(ok.used_alt_rhs);
}

TEST_CASE("non-geometric series are reported inconclusive with a diagnostic") {
    EvalReport r18 = evaluate(cat().at("1.8"), 30);
    CHECK(r18.verdict == Verdict::Inconclusive);
    CHECK(r18.diagnostic.find("not geometrically convergent") != std::string::npos);
    EvalReport r320 = evaluate(cat().at("3.20"), 30);
    CHECK(r320.verdict == Verdict::Inconclusive);
}

TEST_CASE("soundness: 20- and 50-digit evaluations overlap") {
    for (const char* code : {"1.2", "2.10", "3.2", "4.15", "5.2", "6.4", "I3", "II2", "IV9",
                             "VII2", "3.18'"}) {
        EvalReport a = evaluate(cat().at(code), 20);
        EvalReport b = evaluate(cat().at(code), 50);
        REQUIRE(a.verdict == Verdict::Verified);
        REQUIRE(b.verdict == Verdict::Verified);
    }
}

TEST_CASE("tail-bound honesty against a 200-term exact partial sum") {
    // |S - P_200| must be below the engine's own bound at N = 200; S from a
    // 60-digit run, P_200 exact.
    for (const char* code : {"1.2", "I1", "2.4", "3.11", "6.8"}) {
        const Identity& id = cat().at(code);
        EvalReport hi = evaluate(id, 60);
        REQUIRE(hi.verdict == Verdict::Verified);
        BigRat partial(0);
        for (long k = id.start; k < 200 + id.start; ++k) partial += term_value(id, k);
        // recompute the engine's rho_safe tail at N=200 from the exact ratio
        auto rr = try_convergence_ratio(id);
        REQUIRE(rr.has_value());
        Ball rho = rr->ratio.to_ball(20);
        double r = std::abs(rho.to_double());
        double rho_safe = r + (1 - r) / 2;
        BigRat t200 = term_value(id, 200 + id.start - 1);
        Ball bound = Ball::from_q(t200, 256);
        double scale = rho_safe / (1 - rho_safe);
        Mag tail = bound.abs_upper().times_double(scale * 1.25);
        // the high-precision value must sit within partial +- tail
        Ball p = Ball::from_q(partial, 512);
        p.add_error(tail);
        Ball s = rhs_value(id.alt_rhs ? *id.alt_rhs : id.rhs, 60);
        CHECK_MESSAGE(p.certainly_overlaps(s), code);
    }
}

TEST_CASE("terms_needed is calibrated") {
    long n_i1 = terms_needed(cat().at("I1"), 30);
    CHECK(n_i1 >= 50);
    CHECK(n_i1 <= 2000);   // on the order of 10^2
    long n_iii13 = terms_needed(cat().at("III13"), 50);
    CHECK(n_iii13 >= 10000);
    CHECK(n_iii13 <= 1000000);   // on the order of 10^4 - 10^5
    long n_zero = terms_needed(cat().at("I1"), 0);
    CHECK(n_zero <= 16);
}

TEST_CASE("empirical term ratio converges to the computed ratio") {
    // |t_{k+1}/t_k| at k = 2000 within 1e-3 of the exact value, sampled across
    // the supported families with |ratio| <= 0.9
    for (const char* code : {"I1", "I3", "II2", "III3", "IV9", "2.4", "2.13"}) {
        const Identity& id = cat().at(code);
        auto rr = try_convergence_ratio(id);
        REQUIRE(rr.has_value());
        REQUIRE_FALSE(rr->osc);
        double r = rr->ratio.to_ball(20).to_double();
        BigRat t0 = term_value(id, 2000 + id.start);
        BigRat t1 = term_value(id, 2001 + id.start);
        double emp = std::abs(Ball::from_q(t1 / t0, 128).to_double());
        CHECK_MESSAGE(std::abs(emp - std::abs(r)) < 1e-3, code, " emp=", emp, " exact=", r);
    }
}
