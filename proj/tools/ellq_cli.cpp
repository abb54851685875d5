// Command-line front end: classify parameter pairs against the closed-form
// table, run Tate's algorithm on explicit models, drive the enumeration
// surveys, verify the embedded reference curves, and list the X_5 / X_7
// solution sets.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget exhausted.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "ellq/classifier.hpp"
#include "ellq/fixtures.hpp"
#include "ellq/survey.hpp"

using namespace ellq;

namespace {

enum class Format { table, csv, json };

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    return Format::table;
}

int cmd_classify(const std::string& family, const std::string& a_str,
                 const std::string& b_str, bool oracle, Format fmt,
                 FactorBudget budget) {
    auto fam = family_from_name(family);
    if (!fam) {
        std::cerr << "unknown family " << family << " (use C3, C3_0, C5, C7)\n";
        return 2;
    }
    ParamSpec spec = normalize_params(*fam, Bigint(a_str),
                                      *fam == Family::C3_0 ? Bigint(0) : Bigint(b_str));
    auto g = classify_global(spec, budget);
    if (fmt == Format::csv) {
        std::printf("family,a,b,p,c_p,c_tilde_p,rule\n");
        for (const auto& lp : g.breakdown)
            std::printf("%s,%s,%s,%s,%llu,%llu,%s\n", family_name(spec.family),
                        spec.a.to_string().c_str(), spec.b.to_string().c_str(),
                        lp.p.to_string().c_str(),
                        static_cast<unsigned long long>(lp.c_p),
                        static_cast<unsigned long long>(lp.c_tilde_p),
                        lp.rule.c_str());
    } else if (fmt == Format::json) {
        std::printf("{ \"spec\": \"%s\", \"c\": %s, \"c_tilde\": %s, \"local\": [",
                    spec.to_string().c_str(), g.c.to_string().c_str(),
                    g.c_tilde.to_string().c_str());
        for (std::size_t i = 0; i < g.breakdown.size(); ++i) {
            const auto& lp = g.breakdown[i];
            std::printf("%s{ \"p\": %s, \"c_p\": %llu, \"c_tilde_p\": %llu, "
                        "\"rule\": \"%s\" }",
                        i ? ", " : "", lp.p.to_string().c_str(),
                        static_cast<unsigned long long>(lp.c_p),
                        static_cast<unsigned long long>(lp.c_tilde_p),
                        lp.rule.c_str());
        }
        std::printf("] }\n");
    } else {
        std::printf("%s\n", spec.to_string().c_str());
        std::printf("  %-8s %-6s %-10s %s\n", "p", "c_p", "c_tilde_p", "rule");
        for (const auto& lp : g.breakdown)
            std::printf("  %-8s %-6llu %-10llu %s\n", lp.p.to_string().c_str(),
                        static_cast<unsigned long long>(lp.c_p),
                        static_cast<unsigned long long>(lp.c_tilde_p),
                        lp.rule.c_str());
        std::printf("  global: c = %s, c_tilde = %s\n", g.c.to_string().c_str(),
                    g.c_tilde.to_string().c_str());
    }
    if (oracle) {
        auto pair = build_pair(spec);
        auto oe = global_tamagawa(pair.e, budget);
        auto ot = global_tamagawa(pair.e_tilde, budget);
        bool ok = oe.first == g.c && ot.first == g.c_tilde;
        std::printf("  oracle: c = %s, c_tilde = %s  [%s]\n",
                    oe.first.to_string().c_str(), ot.first.to_string().c_str(),
                    ok ? "agrees" : "MISMATCH");
        if (!ok) return 1;
    }
    return 0;
}

int cmd_tate(const std::vector<std::string>& ai, const std::string& p_opt, Format fmt,
             FactorBudget budget) {
    WModel m{Rat(Bigint(ai[0])), Rat(Bigint(ai[1])), Rat(Bigint(ai[2])),
             Rat(Bigint(ai[3])), Rat(Bigint(ai[4]))};
    invariants(m);  // throws on singular input
    std::vector<Bigint> ps;
    if (!p_opt.empty())
        ps.push_back(Bigint(p_opt));
    else
        ps = bad_primes(m, budget);
    auto mm = reduced_minimal_model(m, budget);
    if (fmt == Format::csv) std::printf("p,kodaira,c_p,f_p,v_min,reduction\n");
    if (fmt == Format::json) std::printf("[");
    bool first = true;
    for (const Bigint& p : ps) {
        auto r = tate_local(ZModel::from_w(mm), p);
        if (fmt == Format::csv) {
            std::printf("%s,%s,%llu,%llu,%llu,%s\n", p.to_string().c_str(),
                        r.kodaira.to_string().c_str(),
                        static_cast<unsigned long long>(r.c_p),
                        static_cast<unsigned long long>(r.f_p),
                        static_cast<unsigned long long>(r.v_min),
                        reduction_class_name(r.cls));
        } else if (fmt == Format::json) {
            std::printf("%s{ \"p\": %s, \"kodaira\": \"%s\", \"c_p\": %llu, "
                        "\"f_p\": %llu, \"v_min\": %llu, \"reduction\": \"%s\" }",
                        first ? "" : ", ", p.to_string().c_str(),
                        r.kodaira.to_string().c_str(),
                        static_cast<unsigned long long>(r.c_p),
                        static_cast<unsigned long long>(r.f_p),
                        static_cast<unsigned long long>(r.v_min),
                        reduction_class_name(r.cls));
        } else {
            if (first)
                std::printf("minimal model %s\n  %-8s %-6s %-4s %-4s %-6s %s\n",
                            mm.to_string().c_str(), "p", "type", "c", "f", "v", "class");
            std::printf("  %-8s %-6s %-4llu %-4llu %-6llu %s\n", p.to_string().c_str(),
                        r.kodaira.to_string().c_str(),
                        static_cast<unsigned long long>(r.c_p),
                        static_cast<unsigned long long>(r.f_p),
                        static_cast<unsigned long long>(r.v_min),
                        reduction_class_name(r.cls));
        }
        first = false;
    }
    if (fmt == Format::json) std::printf("]\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tamagawa numbers of ell-isogenous elliptic curve families"};
    app.require_subcommand(1);
    std::string format = "table";
    app.add_option("--format", format, "output format: table, csv, json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    std::uint64_t budget_opt = 50'000'000;
    app.add_option("--budget", budget_opt, "factorization work budget (rho iterations)");
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for surveys");

    auto* classify = app.add_subcommand("classify", "closed-form (c_p, c_tilde_p) table");
    std::string family, a_str, b_str = "0";
    bool oracle = false;
    classify->add_option("family", family, "C3, C3_0, C5 or C7")->required();
    classify->add_option("a", a_str)->required();
    classify->add_option("b", b_str);
    classify->add_flag("--oracle", oracle, "cross-check with Tate's algorithm");

    auto* tate = app.add_subcommand("tate", "run Tate's algorithm on a1 a2 a3 a4 a6");
    std::vector<std::string> ai;
    std::string p_opt;
    tate->add_option("a", ai, "a1 a2 a3 a4 a6")->expected(5);
    tate->add_option("--p", p_opt, "single prime (default: all bad primes)");

    auto* survey = app.add_subcommand("survey", "enumeration statistics");
    double X = 0;
    unsigned ell = 5;
    std::uint64_t intro = 0, x7count = 0, fifth = 0, sum_bound = 0;
    std::string csv_path, json_path, checkpoint;
    survey->add_option("--ell", ell, "5 or 7");
    survey->add_option("--X", X, "height cutoff (12X must be integral)");
    survey->add_option("--intro", intro, "count 5 | c_tilde over t in [1,N]");
    survey->add_option("--x7count", x7count, "distinct X_7 primes in [1,B]^2");
    survey->add_option("--fifth", fifth, "fifth-power experiment over [2,R]^2");
    survey->add_option("--csv", csv_path, "write per-representative rows");
    survey->add_option("--json", json_path, "write the summary row");
    survey->add_option("--checkpoint", checkpoint, "resumable block log");
    survey->add_option("--sum-bound", sum_bound, "override the derived a+b bound");

    auto* fixtures = app.add_subcommand("fixtures", "verify the embedded curve corpus");

    auto* xsets = app.add_subcommand("xsets", "list X_5 solutions and scan X_7 boxes");
    long long pell_bound = 1000;
    std::uint64_t x7box = 0;
    xsets->add_option("--bound", pell_bound, "box bound for the Pell solutions");
    xsets->add_option("--box", x7box, "also scan [1,B]^2 for X_7 members");

    for (auto* sub : {classify, tate, survey, fixtures, xsets}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    Format fmt = parse_format(format);
    FactorBudget budget{budget_opt};

    try {
        if (classify->parsed()) return cmd_classify(family, a_str, b_str, oracle, fmt, budget);
        if (tate->parsed()) return cmd_tate(ai, p_opt, fmt, budget);
        if (survey->parsed()) {
            if (intro) {
                std::printf("%llu\n", static_cast<unsigned long long>(intro_count(intro, jobs)));
                return 0;
            }
            if (x7count) {
                std::printf("%llu\n",
                            static_cast<unsigned long long>(x7_prime_count(x7count, jobs)));
                return 0;
            }
            if (fifth) {
                auto [ct, ce] = fifth_power_experiment(fifth, jobs);
                std::printf("%llu %llu\n", static_cast<unsigned long long>(ct),
                            static_cast<unsigned long long>(ce));
                return 0;
            }
            if (X <= 0) {
                std::cerr << "survey needs one of --X, --intro, --x7count, --fifth\n";
                return 2;
            }
            SurveyOptions opt;
            opt.jobs = jobs;
            opt.csv_path = csv_path;
            opt.json_path = json_path;
            opt.checkpoint_path = checkpoint;
            auto row = tilde_stats(ell, X, opt, sum_bound);
            std::printf("N=%llu G=%llu %.2f%%\n", static_cast<unsigned long long>(row.N),
                        static_cast<unsigned long long>(row.G), row.percent);
            return 0;
        }
        if (fixtures->parsed()) {
            auto results = run_fixture_suite();
            bool all = true;
            for (const auto& r : results) {
                std::printf("%-28s %s%s%s\n", r.label.c_str(), r.pass ? "ok" : "FAIL ",
                            r.pass ? "" : " ", r.detail.c_str());
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
        if (xsets->parsed()) {
            auto sols = pell19_solutions(pell_bound);
            std::printf("# X_5 box solutions of a^2+11ab-b^2 = 19, max <= %lld\n",
                        pell_bound);
            for (auto [a, b] : sols) {
                bool member = x5_member(Bigint(a), Bigint(b));
                std::printf("(%lld, %lld)%s\n", a, b, member ? "" : "  [not 5th-power-free]");
            }
            if (x7box) {
                std::uint64_t members = 0;
                for (std::uint64_t a = 1; a <= x7box; ++a)
                    for (std::uint64_t b = 1; b <= x7box; ++b)
                        if (x7_member(Bigint(a), Bigint(b))) ++members;
                std::printf("# X_7 members in [1,%llu]^2: %llu (distinct primes: %llu)\n",
                            static_cast<unsigned long long>(x7box),
                            static_cast<unsigned long long>(members),
                            static_cast<unsigned long long>(x7_prime_count(x7box, jobs)));
            }
            return 0;
        }
    } catch (const factor_budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
