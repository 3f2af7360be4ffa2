// Command-line front end: verification, ratios, transforms, congruences and
// structural checks over the bundled series catalog.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <iostream>
#include <thread>

#include "piseries/combinatorics.hpp"
#include "piseries/congruences.hpp"
#include "piseries/engine.hpp"
#include "piseries/properties.hpp"

using namespace piseries;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "VERIFIED";
        case Verdict::Refuted: return "REFUTED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

struct Options {
    std::string code;
    bool all = false;
    int digits = 30;
    long pmax = 50;
    long nmax = 25;
    std::string format = "text";
    std::string catalog_path;
    bool published_rhs = false;
    unsigned jobs = 1;
};

std::vector<const Identity*> select(const Catalog& cat, const Options& opt) {
    std::vector<const Identity*> out;
    if (opt.all) {
        for (const auto& id : cat.identities) out.push_back(&id);
    } else {
        const Identity* p = cat.find(opt.code);
        if (!p) {
            std::cerr << "unknown identity code: " << opt.code << "\n";
            std::exit(kExitUsage);
        }
        out.push_back(p);
    }
    return out;
}

json report_json(const EvalReport& r) {
    json j;
    j["code"] = r.code;
    j["digits"] = r.digits;
    j["verdict"] = verdict_str(r.verdict);
    j["terms"] = r.terms;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["used_alt_rhs"] = r.used_alt_rhs;
    j["empirical_ratio"] = r.empirical_ratio;
    if (r.verdict == Verdict::Verified) j["achieved_digits"] = r.achieved_digits;
    if (!r.diff_bound_log10.empty()) j["diff_bound"] = r.diff_bound_log10;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

int cmd_verify(const Catalog& cat, const Options& opt) {
    auto ids = select(cat, opt);
    std::vector<EvalReport> reports(ids.size());
    EvalOptions eopt;
    eopt.published_rhs = opt.published_rhs;

    unsigned jobs = std::max(1u, opt.jobs);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ids.size()) break;
            try {
                reports[i] = evaluate(*ids[i], opt.digits, eopt);
            } catch (const std::exception& e) {
                reports[i].code = ids[i]->code;
                reports[i].verdict = Verdict::Inconclusive;
                reports[i].diagnostic = std::string("error: ") + e.what();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    bool any_refuted = false, any_inconclusive = false;
    json jout = json::array();
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Refuted) any_refuted = true;
        if (r.verdict == Verdict::Inconclusive) any_inconclusive = true;
        if (opt.format == "json") {
            jout.push_back(report_json(r));
        } else {
            std::cout << r.code << ": " << verdict_str(r.verdict);
            if (r.verdict == Verdict::Verified)
                std::cout << " to " << r.achieved_digits << " digits in " << r.terms << " terms"
                          << (r.used_alt_rhs ? " (corrected rhs)" : "");
            if (r.verdict == Verdict::Refuted)
                std::cout << " |LHS-RHS| ~ " << r.diff_bound_log10;
            if (!r.diagnostic.empty()) std::cout << " [" << r.diagnostic << "]";
            std::cout << "\n";
        }
    }
    if (opt.format == "json") std::cout << jout.dump(2) << "\n";
    if (any_refuted) return kExitRefuted;
    if (any_inconclusive) return kExitInconclusive;
    return kExitOk;
}

int cmd_ratio(const Catalog& cat, const Options& opt) {
    auto ids = select(cat, opt);
    json jout = json::array();
    int rc = kExitOk;
    for (const Identity* id : ids) {
        auto r = try_convergence_ratio(*id);
        if (opt.format == "json") {
            json j;
            j["code"] = id->code;
            if (r) {
                j["ratio"] = r->ratio.str();
                j["oscillatory"] = r->osc;
                if (id->ratio) j["catalogued"] = id->ratio->str();
            } else {
                j["error"] = "no closed-form growth for this kernel";
            }
            jout.push_back(j);
        } else {
            std::cout << id->code << ": ";
            if (r) {
                std::cout << r->ratio.str() << (r->osc ? " (oscillation modulus)" : "");
                if (id->ratio) {
                    bool match = (id->ratio_corrected ? *id->ratio_corrected : *id->ratio) ==
                                 r->ratio;
                    std::cout << "  catalogued " << id->ratio->str()
                              << (match ? "" : "  ** mismatch");
                }
                std::cout << "\n";
            } else {
                std::cout << "unsupported (no closed-form kernel growth)\n";
                rc = kExitInconclusive;
            }
        }
    }
    if (opt.format == "json") std::cout << jout.dump(2) << "\n";
    return rc;
}

int cmd_transform(const Catalog& cat, const Options& opt, bool binomial) {
    auto ids = select(cat, opt);
    for (const Identity* id : ids) {
        try {
            Identity t = binomial ? transform_binomial(*id) : transform_dual(*id);
            std::cout << serialize_identity(t);
        } catch (const std::exception& e) {
            std::cerr << id->code << ": " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return kExitOk;
}

int cmd_congruence(const Options& opt, bool conj5, bool mod_p6) {
    json jout = json::array();
    bool all_hold = true;
    for (long p = 3; p <= opt.pmax; ++p) {
        if (!is_prime(BigInt(p))) continue;
        if (conj5) {
            if (p <= 5) continue;
            auto [lin, form] = check_conj5_congruences(BigInt(p));
            all_hold = all_hold && lin.holds && (form.holds || form.degenerate);
            if (opt.format == "json") {
                json j;
                j["p"] = p;
                j["linear_holds"] = lin.holds;
                j["form_holds"] = form.holds;
                j["degenerate"] = form.degenerate;
                j["case"] = form.case_tag;
                if (form.rep && form.rep->found) {
                    j["x"] = form.rep->x.get_str();
                    j["y"] = form.rep->y.get_str();
                }
                jout.push_back(j);
            } else {
                std::cout << "p=" << p << ": linear " << (lin.holds ? "holds" : "FAILS")
                          << "; form " << (form.degenerate ? "degenerate (p | 105)"
                                                           : (form.holds ? "holds" : "FAILS"))
                          << " [" << form.case_tag << "]";
                if (form.rep && form.rep->found)
                    std::cout << " x=" << form.rep->x.get_str() << " y=" << form.rep->y.get_str();
                std::cout << "\n";
            }
        }
        if (mod_p6 && p > 2) {
            Congruence6Report r = check_mod_p6_congruence(BigInt(p));
            all_hold = all_hold && r.holds;
            if (opt.format == "json") {
                json j;
                j["p"] = p;
                j["holds"] = r.holds;
                j["residue"] = r.computed.get_str();
                jout.push_back(j);
            } else {
                std::cout << "p=" << p << ": mod p^6 congruence "
                          << (r.holds ? "holds" : "FAILS") << " (residue " << r.computed.get_str()
                          << ")\n";
            }
        }
    }
    if (opt.format == "json") std::cout << jout.dump(2) << "\n";
    return all_hold ? kExitOk : kExitRefuted;
}

int cmd_qlc(const Options& opt) {
    bool all_ok = true;
    json jout = json::array();
    for (auto [fam, name] : {std::pair<PolyFamily, const char*>{PolyFamily::AperyQ, "apery"},
                             {PolyFamily::S1Q, "s1"},
                             {PolyFamily::S2Q, "s2"},
                             {PolyFamily::WQ, "w"}}) {
        auto verdicts = qlogconvex_check(fam, opt.nmax);
        long bad = -1;
        for (const auto& v : verdicts)
            if (!v.nonnegative) { bad = v.n; break; }
        all_ok = all_ok && (bad < 0);
        if (opt.format == "json") {
            json j;
            j["family"] = name;
            j["n_max"] = opt.nmax;
            j["nonnegative"] = (bad < 0);
            if (bad >= 0) j["first_failure"] = bad;
            jout.push_back(j);
        } else {
            std::cout << name << ": q-logconvex through n = " << opt.nmax << ": "
                      << (bad < 0 ? "all coefficients nonnegative"
                                  : "FAILS at n = " + std::to_string(bad))
                      << "\n";
        }
    }
    if (opt.format == "json") std::cout << jout.dump(2) << "\n";
    return all_ok ? kExitOk : kExitRefuted;
}

int cmd_asymptote(const Options& opt, long b, long c, long n) {
    Ball r = asymptotic_check(b, c, n);
    if (opt.format == "json") {
        json j;
        j["b"] = b;
        j["c"] = c;
        j["n"] = n;
        j["ratio"] = r.str(12);
        j["deviation"] = std::abs(r.to_double() - 1.0);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "T_" << n << "(" << b << "," << c << ") / leading term = " << r.str(12)
                  << "  (|ratio-1| = " << std::abs(r.to_double() - 1.0) << ")\n";
    }
    return kExitOk;
}

int cmd_list(const Catalog& cat, const Options& opt) {
    if (opt.format == "json") {
        json jout = json::array();
        for (const auto& id : cat.identities) {
            json j;
            j["code"] = id.code;
            j["status"] = id.status == Status::Proved
                              ? "proved"
                              : (id.status == Status::Corrected ? "corrected" : "conjectural");
            j["rhs"] = id.rhs.str();
            j["kernel"] = kernel_product_str(id.kernels);
            if (!id.note.empty()) j["note"] = id.note;
            jout.push_back(j);
        }
        std::cout << jout.dump(2) << "\n";
    } else {
        for (const auto& id : cat.identities) {
            const char* st = id.status == Status::Proved
                                 ? "proved     "
                                 : (id.status == Status::Corrected ? "corrected  " : "conjectural");
            std::cout << id.code << "\t" << st << "\trhs = " << id.rhs.str() << "\n";
        }
        std::cout << cat.identities.size() << " identities\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification engine for a catalog of series for powers of pi"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--catalog", opt.catalog_path, "catalog file (default: bundled)")
        ->envname("PISERIES_CATALOG");
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto add_selection = [&](CLI::App* sub) {
        sub->add_option("--code", opt.code, "identity code, e.g. I1 or 3.11'");
        sub->add_flag("--all", opt.all, "run over the whole catalog");
    };

    CLI::App* verify = app.add_subcommand("verify", "evaluate identities against their rhs");
    add_selection(verify);
    verify->add_option("--digits", opt.digits, "verification digit target (default 30)")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--published-rhs", opt.published_rhs,
                     "judge corrected identities against their published rhs");
    verify->add_option("--jobs", opt.jobs, "parallel evaluations (default 1)");

    CLI::App* ratio = app.add_subcommand("ratio", "exact convergence ratios");
    add_selection(ratio);

    CLI::App* dual = app.add_subcommand("dual", "dual-sequence transform of an identity");
    add_selection(dual);

    CLI::App* tb = app.add_subcommand("transform-binomial", "binomial-transform equivalent form");
    add_selection(tb);

    CLI::App* congruence = app.add_subcommand("congruence", "supercongruence checks");
    bool conj5 = false, modp6 = false;
    congruence->add_flag("--conj5", conj5, "quadratic-form case congruences (p > 5)");
    congruence->add_flag("--mod-p6", modp6, "Bernoulli-corrected mod p^6 congruence");
    congruence->add_option("--pmax", opt.pmax, "largest prime to check (default 50)");

    CLI::App* qlc = app.add_subcommand("qlc", "q-logconvexity of the four polynomial families");
    qlc->add_option("--nmax", opt.nmax, "largest n (default 25)");

    CLI::App* asym = app.add_subcommand("asymptote", "trinomial leading-term asymptotic ratio");
    long ab = 1, ac = 1, an = 1000;
    asym->add_option("--b", ab, "trinomial b (default 1)");
    asym->add_option("--c", ac, "trinomial c (default 1)");
    asym->add_option("--n", an, "index n (default 1000)");

    CLI::App* list = app.add_subcommand("list", "list catalog entries");

    CLI11_PARSE(app, argc, argv);

    try {
        Catalog cat = load_catalog_or_builtin(opt.catalog_path);
        if (!opt.all && opt.code.empty() &&
            (verify->parsed() || ratio->parsed() || dual->parsed() || tb->parsed())) {
            std::cerr << "need --code CODE or --all\n";
            return kExitUsage;
        }
        if (verify->parsed()) return cmd_verify(cat, opt);
        if (ratio->parsed()) return cmd_ratio(cat, opt);
        if (dual->parsed()) return cmd_transform(cat, opt, false);
        if (tb->parsed()) return cmd_transform(cat, opt, true);
        if (congruence->parsed()) {
            if (!conj5 && !modp6) conj5 = modp6 = true;
            long cap = modp6 ? 100 : 300;
            if (opt.pmax > cap) {
                std::cerr << "--pmax capped at " << cap << " for this check\n";
                return kExitUsage;
            }
            return cmd_congruence(opt, conj5, modp6);
        }
        if (qlc->parsed()) return cmd_qlc(opt);
        if (asym->parsed()) return cmd_asymptote(opt, ab, ac, an);
        if (list->parsed()) return cmd_list(cat, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
