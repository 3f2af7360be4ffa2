// Acceptance suite: runs each acceptance criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "piseries/combinatorics.hpp"
#include "piseries/congruences.hpp"
#include "piseries/constants.hpp"
#include "piseries/engine.hpp"
#include "piseries/properties.hpp"

using namespace piseries;

namespace {

int failures = 0;

void criterion(int n, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", n, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

const Catalog& cat() {
    static Catalog c = load_catalog(PISERIES_CATALOG_FILE);
    return c;
}

// 1. verify --all --digits 30: every identity VERIFIED (4.11 against the
//    corrected rhs), under 30 minutes.
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    const auto& ids = cat().identities;
    std::vector<EvalReport> reports(ids.size());
    std::atomic<size_t> next{0};
    unsigned jobs = std::max(2u, std::thread::hardware_concurrency());
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ids.size()) break;
            try {
                reports[i] = evaluate(ids[i], 30);
            } catch (const std::exception& e) {
                reports[i].code = ids[i].code;
                reports[i].diagnostic = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int verified = 0;
    std::string stragglers;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Verified) {
            ++verified;
        } else {
            if (!stragglers.empty()) stragglers += ", ";
            stragglers += r.code + " (" + r.diagnostic + ")";
        }
    }
    std::ostringstream detail;
    detail << verified << "/" << ids.size() << " VERIFIED in " << static_cast<int>(secs) << "s";
    if (!stragglers.empty()) detail << "; not verified: " << stragglers;
    bool pass = (verified == static_cast<int>(ids.size())) && secs < 1800;
    criterion(1, "full-catalog verification at 30 digits", pass, detail.str());
}

// 2. deep-precision spot check at 100 digits (combined radius <= 10^-100).
void criterion2() {
    bool pass = true;
    std::string detail;
    for (const char* code : {"1.2", "1.4", "1.6", "I1", "IV4", "VI3", "6.8"}) {
        EvalReport r = evaluate(cat().at(code), 100);
        if (!(r.verdict == Verdict::Verified && r.achieved_digits >= 100)) {
            pass = false;
            detail += std::string(code) + " failed; ";
        }
    }
    criterion(2, "100-digit spot check (1.2, 1.4, 1.6, I1, IV4, VI3, 6.8)", pass, detail);
}

// 3. negative control: published rhs of 4.11 refuted by disjoint balls.
void criterion3() {
    EvalOptions opt;
    opt.published_rhs = true;
    EvalReport r = evaluate(cat().at("4.11"), 20, opt);
    criterion(3, "published rhs of 4.11 refuted at 20 digits", r.verdict == Verdict::Refuted,
              "|LHS-RHS| ~ " + r.diff_bound_log10);
}

// 4. K matches its thirty catalogued digits exactly: printed <= K < printed + 10^-30.
void criterion4() {
    Ball k = const_K(30);
    BigRat printed = parse_rat("781302412896486296867187429624") / pow_rat(BigRat(10), 30);
    BigRat ulp = pow_rat(BigRat(10), -30);
    Ball diff = k.add_q(-printed);
    bool nonneg = diff.mid_sign() > 0 && !diff.abs_lower().is_zero();
    Ball ub = Ball::from_q(ulp, 128);
    bool below = diff.abs_upper().cmp(mag_lower_from_mpfr(ub.mid())) < 0;
    criterion(4, "K matches all 30 printed digits", nonneg && below);
}

// 5. computed convergence ratio equals the catalogued surd for each of the 58
//    trinomial-family series (one documented misprint is checked empirically).
void criterion5() {
    int matched = 0, total = 0;
    bool pass = true;
    std::string notes;
    for (const auto& id : cat().identities) {
        if (!id.ratio) continue;
        ++total;
        auto r = try_convergence_ratio(id);
        if (!r) {
            pass = false;
            notes += id.code + ": no computed ratio; ";
            continue;
        }
        if (r->ratio == *id.ratio) {
            ++matched;
        } else if (id.ratio_corrected && r->ratio == *id.ratio_corrected) {
            // confirm against the actual terms that the computed value, not the
            // catalogued source value, is the true limit
            BigRat t0 = term_value(id, 1000);
            BigRat t1 = term_value(id, 1001);
            double emp = Ball::from_q(t1 / t0, 128).to_double();
            double comp = r->ratio.to_ball(20).to_double();
            double stated = id.ratio->to_ball(20).to_double();
            if (std::abs(emp - comp) < 0.5 * std::abs(emp - stated)) {
                ++matched;
                notes += id.code + ": catalogued " + id.ratio->str() +
                         " is a documented misprint of " + r->ratio.str() +
                         " (empirically confirmed); ";
            } else {
                pass = false;
                notes += id.code + ": correction not supported empirically; ";
            }
        } else {
            pass = false;
            notes += id.code + ": computed " + r->ratio.str() + " != " + id.ratio->str() + "; ";
        }
    }
    pass = pass && (total == 58) && (matched == 58);
    std::ostringstream d;
    d << matched << "/" << total << " match. " << notes;
    criterion(5, "convergence ratios of the 58 trinomial-family series", pass, d.str());
}

// 6. transform fidelity: dual(I1) reproduces the catalogued dual form exactly;
//    the primed identities verify at 30 digits.
void criterion6() {
    bool pass = true;
    std::string detail;
    Identity t = transform_dual(cat().at("I1"));
    const Identity& ex = cat().at("EX4.1");
    bool same = t.w1 == BigRat(48) && t.w0 == BigRat(11) && t.base == BigRat(260) &&
                t.rhs.terms.size() == 1 && t.rhs.terms[0].coeff == BigRat(39, 8) &&
                t.rhs.terms[0].rad == 65 &&
                kernel_product_str(t.kernels) == kernel_product_str(ex.kernels);
    if (!same) {
        pass = false;
        detail += "dual(I1) mismatch; ";
    }
    for (const char* code : {"3.11'", "3.12'", "3.13'", "3.14'", "3.15'", "3.16'", "3.17'",
                             "3.18'", "3.19'"}) {
        EvalReport r = evaluate(cat().at(code), 30);
        if (r.verdict != Verdict::Verified) {
            pass = false;
            detail += std::string(code) + " not verified; ";
        }
    }
    for (const char* code : {"3.11", "3.14", "3.18"}) {
        Identity tr = transform_dual(cat().at(code));
        const Identity& primed = cat().at(std::string(code) + "'");
        if (!(tr.w1 == primed.w1 && tr.w0 == primed.w0 && tr.base == primed.base)) {
            pass = false;
            detail += std::string(code) + " transform mismatch; ";
        }
    }
    criterion(6, "dual-transform fidelity (I1 and the primed family)", pass, detail);
}

// 7. congruence suites for 7 <= p <= 100, plus oracle equivalence.
void criterion7() {
    bool pass = true;
    std::string findings;
    for (long p = 7; p <= 100; ++p) {
        if (!is_prime(BigInt(p))) continue;
        Congruence6Report r6 = check_mod_p6_congruence(BigInt(p));
        if (!r6.holds) {
            pass = false;
            findings += "mod-p^6 fails at p=" + std::to_string(p) + "; ";
        }
        auto [lin, form] = check_conj5_congruences(BigInt(p));
        if (!lin.holds) {
            pass = false;
            findings += "linear congruence fails at p=" + std::to_string(p) + "; ";
        }
        if (form.degenerate) {
            findings += "finding: p=" + std::to_string(p) +
                        " is degenerate (p | 105), form case analysis not applicable; ";
        } else if (!form.holds) {
            pass = false;
            findings += "form congruence fails at p=" + std::to_string(p) + "; ";
        }
    }
    // oracle equivalence: modular-inverse route == exact-rational reduction
    Catalog tiny = parse_catalog(
        "version 1\nid c6\nweight 28 -18 3\nbase -1/64\n"
        "kernel binom(2k,k)^4 * binom(3k,k)\nrhs zeta3 -14\nend\n");
    const Identity& c6 = tiny.at("c6");
    for (long p : {5L, 7L, 11L, 13L}) {
        for (int e = 1; e <= 6; ++e) {
            if (partial_sum_mod(c6, BigInt(p), e) != partial_sum_mod_oracle(c6, BigInt(p), e)) {
                pass = false;
                findings +=
                    "oracle mismatch p=" + std::to_string(p) + " e=" + std::to_string(e) + "; ";
            }
        }
    }
    criterion(7, "supercongruence suites for 7 <= p <= 100", pass, findings);
}

// 8. property suites: kernel invariants, q-logconvexity to n = 25, asymptotic.
void criterion8() {
    bool pass = true;
    std::string detail;
    for (const auto& r : run_identity_suite(40)) {
        if (!r.pass) {
            pass = false;
            detail += r.name + " fails at n=" + std::to_string(r.fail_index) + "; ";
        }
    }
    for (PolyFamily fam : {PolyFamily::AperyQ, PolyFamily::S1Q, PolyFamily::S2Q, PolyFamily::WQ}) {
        for (const auto& v : qlogconvex_check(fam, 25)) {
            if (!v.nonnegative) {
                pass = false;
                detail += "q-logconvexity fails at n=" + std::to_string(v.n) + "; ";
            }
        }
    }
    double d3 = std::abs(asymptotic_check(1, 1, 1000).to_double() - 1.0);
    double d4 = std::abs(asymptotic_check(1, 1, 10000).to_double() - 1.0);
    if (!(d4 < 1e-2 && d4 < d3)) {
        pass = false;
        detail += "asymptotic deviation " + std::to_string(d4) + " at n=10^4; ";
    }
    criterion(8, "kernel invariants, q-logconvexity (n <= 25), trinomial asymptotic", pass,
              detail);
}

}  // namespace

int main() {
    criterion4();
    criterion5();
    criterion3();
    criterion2();
    criterion6();
    criterion7();
    criterion8();
    criterion1();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
