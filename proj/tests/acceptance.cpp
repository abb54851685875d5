// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
//  1. classifier == Tate oracle at every bad prime, full sweep + row coverage
//  2. universal-family counts over the a = 1 line
//  3. tilde survey, ell = 5 (X = 4, 5, 6), exact
//  4. tilde survey, ell = 7 (X = 13, 14), exact
//  5. consecutive-cutoff ratios against the printed tables
//  6. X_7 distinct prime count
//  7. fifth-power experiment, full range plus an independent Tate recount
//  8. embedded reference-curve corpus
//  9. property suites (identities, criteria, congruences, invariance)

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "ellq/classifier.hpp"
#include "ellq/fixtures.hpp"
#include "ellq/survey.hpp"

using namespace ellq;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

unsigned hw_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// ---------------------------------------------------------------- criterion 1

const std::vector<std::string>& all_rules() {
    static const std::vector<std::string> rules = {
        "c30:ne3:1mod6", "c30:ne3:2mod6", "c30:p3:pm1", "c30:p3:pm2", "c30:p3:pm4",
        "c30:p3:0mod3",  "c3:vb",         "c3:va27:split", "c3:va27:nonsplit",
        "c3:va:1mod6",   "c3:va:2mod6",   "c3:p3:d4",   "c3:p3:e+",  "c3:p3:e-",
        "c3:p3:f+",      "c3:p3:f-",      "c3:p3:g",    "c3:p3:h+",  "c3:p3:h-",
        "c3:p3:i",       "c3:p3:j+",      "c3:p3:j-",   "c3:p3:k6+", "c3:p3:k6-",
        "c3:p3:kn+",     "c3:p3:kn-",     "c3:p3:l",    "c5:nab",    "c5:f:split",
        "c5:f:nonsplit", "c5:p5:v1",      "c5:p5:v2+",  "c7:nab",    "c7:f:split",
        "c7:f:nonsplit", "c7:p7"};
    return rules;
}

struct OracleCounters {
    std::uint64_t specs = 0, prime_checks = 0, mismatches = 0;
    std::map<std::string, std::uint64_t> coverage;
};

void oracle_check_spec(const ParamSpec& raw, OracleCounters& ctr) {
    ParamSpec s = classifier_normalize(raw);
    auto pair = build_pair(s);
    ZModel ze = ZModel::from_w(pair.e), zt = ZModel::from_w(pair.e_tilde);
    ++ctr.specs;
    for (const Bigint& p : classifier_bad_primes(s)) {
        LocalPair lp = classify_local(s, p);
        LocalReduction oe = tate_local(ze, p);
        LocalReduction ot = tate_local(zt, p);
        ++ctr.prime_checks;
        bool ok = lp.c_p == oe.c_p && lp.c_tilde_p == ot.c_p &&
                  (lp.rule == "good") == (oe.cls == ReductionClass::good);
        if (!ok) {
            ++ctr.mismatches;
            if (ctr.mismatches <= 5)
                std::printf("  mismatch %s p=%s rule=%s table=(%" PRIu64 ",%" PRIu64
                            ") oracle=(%" PRIu64 ",%" PRIu64 ")\n",
                            s.to_string().c_str(), p.to_string().c_str(),
                            lp.rule.c_str(), lp.c_p, lp.c_tilde_p, oe.c_p, ot.c_p);
        }
        ++ctr.coverage[lp.rule];
    }
}

void criterion1() {
    OracleCounters ctr;
    const long long SUM = 200;
    for (Family fam : {Family::C3, Family::C5, Family::C7}) {
        for (long long a = 1; a < SUM; ++a)
            for (long long ab = 1; a + ab <= SUM; ++ab) {
                for (long long b : {ab, -ab}) {
                    if (std::gcd(a, ab) != 1) continue;
                    ParamSpec spec{fam, Bigint(a), Bigint(b)};
                    try {
                        oracle_check_spec(spec, ctr);
                    } catch (const degenerate_parameters_error&) {
                    }
                }
            }
    }
    for (long long a = 1; a <= 500; ++a) {
        if (!is_kth_power_free(Bigint(a), 3)) continue;
        oracle_check_spec({Family::C3_0, Bigint(a), Bigint(0)}, ctr);
    }
    // targeted constructions for rows out of sweep range
    for (auto [a, b] : std::vector<std::pair<long long, long long>>{
             {729, 1}, {729, 4}, {243, 1}, {27, -1}, {27, 2}, {27, 5}, {9, 1},
             {9, 2},   {27, 4},  {27, 10}, {27, -8}, {27, 28}, {27, -26},
             {27, 82}, {27, -80}, {3, 1}}) {
        oracle_check_spec({Family::C3, Bigint(a), Bigint(b)}, ctr);
    }

    std::string missing;
    for (const auto& rule : all_rules())
        if (!ctr.coverage.count(rule)) missing += " " + rule;
    std::printf("  coverage:");
    for (const auto& [rule, n] : ctr.coverage)
        if (rule != "good") std::printf(" %s=%" PRIu64, rule.c_str(), n);
    std::printf("\n");
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%" PRIu64 " specs, %" PRIu64 " local checks, %" PRIu64
                  " mismatches%s%s",
                  ctr.specs, ctr.prime_checks, ctr.mismatches,
                  missing.empty() ? "" : ", missing rows:", missing.c_str());
    report(1, ctr.mismatches == 0 && missing.empty(), buf);
}

// ---------------------------------------------------------------- criterion 2

void criterion2() {
    struct Want { std::uint64_t X, count; };
    bool ok = true;
    std::string detail;
    for (Want w : {Want{10, 4}, {100, 59}, {1000, 705}, {10000, 7393}}) {
        std::uint64_t got = intro_count(w.X, hw_jobs());
        detail += "N(" + std::to_string(w.X) + ")=" + std::to_string(got) + " ";
        ok = ok && got == w.count;
    }
    report(2, ok, detail + "(expect 4, 59, 705, 7393)");
}

// ------------------------------------------------------------ criteria 3 to 5

std::vector<SurveyRow> rows5, rows7;

void criterion3() {
    struct Want { double X; std::uint64_t N, G; };
    bool ok = true;
    std::string detail;
    for (Want w : {Want{4, 581, 958}, {5, 4611, 7105}, {6, 35603, 52412}}) {
        SurveyOptions opt;
        opt.jobs = hw_jobs();
        if (w.X == 4) opt.oracle_subsample = 100;  // 1% Tate recheck
        auto r = tilde_stats(5, w.X, opt);
        rows5.push_back(r);
        char buf[96];
        std::snprintf(buf, sizeof buf, "X=%g: (%" PRIu64 ", %" PRIu64 ") ", w.X, r.N, r.G);
        detail += buf;
        ok = ok && r.N == w.N && r.G == w.G;
    }
    report(3, ok, detail + "(expect (581,958), (4611,7105), (35603,52412))");
}

void criterion4() {
    struct Want { double X; std::uint64_t N, G; };
    bool ok = true;
    std::string detail;
    for (Want w : {Want{13, 113594, 162440}, {14, 313490, 441616}}) {
        SurveyOptions opt;
        opt.jobs = hw_jobs();
        auto r = tilde_stats(7, w.X, opt);
        rows7.push_back(r);
        char buf[96];
        std::snprintf(buf, sizeof buf, "X=%g: (%" PRIu64 ", %" PRIu64 ") ", w.X, r.N, r.G);
        detail += buf;
        ok = ok && r.N == w.N && r.G == w.G;
    }
    report(4, ok, detail + "(expect (113594,162440), (313490,441616))");
}

void criterion5() {
    // printed ratio-table entries reachable from the criterion-3 rows
    bool ok = rows5.size() == 3;
    std::string detail;
    if (ok) {
        auto [g, n] = ratio_table(rows5);
        struct Want { double g, n; };
        Want wants[] = {{7.4165, 7.9363}, {7.3768, 7.7213}};
        for (std::size_t i = 0; i < 2; ++i) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "G%zu=%.4f N%zu=%.4f ", i + 4, g[i], i + 4,
                          n[i]);
            detail += buf;
            ok = ok && std::fabs(g[i] - wants[i].g) <= 1e-4 &&
                 std::fabs(n[i] - wants[i].n) <= 1e-4;
        }
        // the ell = 7 consecutive ratio is reported for the record; the
        // printed column in the source tables is not the ratio of its own
        // tabulated counts, so only internal consistency is asserted
        if (rows7.size() == 2) {
            auto [g7, n7] = ratio_table(rows7);
            char buf[96];
            std::snprintf(buf, sizeof buf, "(ell=7: G=%.4f N=%.4f) ", g7[0], n7[0]);
            detail += buf;
            ok = ok && std::fabs(g7[0] - 441616.0 / 162440.0) < 1e-9;
        }
    }
    report(5, ok, detail + "(expect 7.4165/7.9363, 7.3768/7.7213)");
}

// ---------------------------------------------------------------- criterion 6

void criterion6() {
    std::uint64_t got = x7_prime_count(1000, hw_jobs());
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "x7_prime_count(1000) = %" PRIu64 " (expect 32139)", got);
    report(6, got == 32139, buf);
}

// ---------------------------------------------------------------- criterion 7

void criterion7() {
    auto [ct, ce] = fifth_power_experiment(1000, hw_jobs());
    bool full_ok = ct == 18 && ce == 36180;

    // reduced run against an independent Tate recount
    auto [rct, rce] = fifth_power_experiment(100, hw_jobs());
    std::uint64_t oct = 0, oce = 0;
    for (std::uint64_t a = 2; a <= 100; ++a)
        for (std::uint64_t b = 2; b <= 100; ++b) {
            if (std::gcd(a, b) != 1) continue;
            auto pair = build_pair({Family::C5, Bigint(a).pow(5), Bigint(b).pow(5)});
            Bigint vE = global_tamagawa(pair.e).first;
            Bigint vT = global_tamagawa(pair.e_tilde).first;
            unsigned v5e = 0, v5t = 0;
            while ((vE % Bigint(5)).is_zero()) { vE = vE.divexact(Bigint(5)); ++v5e; }
            while ((vT % Bigint(5)).is_zero()) { vT = vT.divexact(Bigint(5)); ++v5t; }
            if (v5t < 5) ++oct;
            if (v5e < 5) ++oce;
        }
    bool reduced_ok = rct == oct && rce == oce;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "full = (%" PRIu64 ", %" PRIu64 ") (expect (18, 36180)); reduced(100) "
                  "= (%" PRIu64 ", %" PRIu64 ") vs oracle (%" PRIu64 ", %" PRIu64 ")",
                  ct, ce, rct, rce, oct, oce);
    report(7, full_ok && reduced_ok, buf);
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
    auto results = run_fixture_suite();
    bool ok = true;
    std::string bad;
    for (const auto& r : results) {
        if (!r.pass) {
            ok = false;
            bad += " " + r.label + " (" + r.detail + ")";
        }
    }
    report(8, ok,
           ok ? std::to_string(results.size()) + " fixture checks" : "failing:" + bad);
}

// ---------------------------------------------------------------- criterion 9

bool rat_is_square(const Rat& r) {
    if (r.sign() < 0) return false;
    Bigint ns, ds;
    return r.num().is_perfect_power(2, &ns) && r.den().is_perfect_power(2, &ds);
}

std::vector<Bigint> all_divisors(const Bigint& n) {
    std::vector<Bigint> out{Bigint(1)};
    for (const auto& [p, e] : factorize(n).factors) {
        std::size_t sz = out.size();
        Bigint pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk = pk * p;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

bool tilde_c3_torsion_brute(long long a, long long b) {
    auto pair = build_pair({Family::C3, Bigint(a), Bigint(b)});
    const WModel& m = pair.e_tilde;
    auto inv = invariants(m);
    auto psi3 = [&](const Rat& x) {
        return Rat(3) * x.pow(4) + inv.b2 * x.pow(3) + Rat(3) * inv.b4 * x * x +
               Rat(3) * inv.b6 * x + inv.b8;
    };
    Bigint A(a), B(b);
    std::vector<Rat> candidates;
    candidates.emplace_back(Rat(-A * A, Bigint(3)));
    Bigint C = A.pow(4) * B * (A + Bigint(27) * B);
    if (C.is_zero()) {
        candidates.emplace_back(Rat(0));
    } else {
        for (const Bigint& d : all_divisors(C)) {
            candidates.emplace_back(Rat(d));
            candidates.emplace_back(Rat(-d));
        }
    }
    for (const Rat& x : candidates) {
        if (!psi3(x).is_zero()) continue;
        Rat lin = m.a1 * x + m.a3;
        Rat disc = lin * lin + Rat(4) * (x.pow(3) + m.a2 * x * x + m.a4 * x + m.a6);
        if (rat_is_square(disc)) return true;
    }
    return false;
}

void criterion9() {
    bool ok = true;
    std::string detail;
    auto part = [&](const char* name, bool pass) {
        detail += std::string(name) + (pass ? " ok; " : " FAIL; ");
        ok = ok && pass;
    };

    // discriminant identities, a+b <= 300
    {
        bool pass = true;
        for (Family fam : {Family::C5, Family::C7}) {
            unsigned ell = family_ell(fam);
            for (long long a = 1; a < 300 && pass; ++a)
                for (long long b = 1; a + b <= 300 && pass; ++b) {
                    if (std::gcd(a, b) != 1 || (fam == Family::C7 && a == b)) continue;
                    auto F = family_forms(ell, Bigint(a), Bigint(b));
                    auto pair = build_pair({fam, Bigint(a), Bigint(b)});
                    pass = z_disc(ZModel::from_w(pair.e)) == -F.n_ell.pow(ell) * F.f_ell &&
                           z_disc(ZModel::from_w(pair.e_tilde)) ==
                               -F.n_ell * F.f_ell.pow(ell);
                }
        }
        part("disc-identities", pass);
    }

    // d1 d2 d3 factorization, s,t <= 30
    {
        bool pass = true;
        for (long long s = 1; s <= 30 && pass; ++s)
            for (long long t = 1; t <= 30 && pass; ++t) {
                if (std::gcd(s, t) != 1) continue;
                Bigint A = Bigint(s).pow(5), B = Bigint(t).pow(5);
                Bigint d1(s * s + s * t - t * t);
                Bigint d2 = Bigint(s).pow(4) - Bigint(3 * s * s * s * t) +
                            Bigint(4 * s * s * t * t) - Bigint(2 * s * t * t * t) +
                            Bigint(t).pow(4);
                Bigint d3 = Bigint(s).pow(4) + Bigint(2 * s * s * s * t) +
                            Bigint(4 * s * s * t * t) + Bigint(3 * s * t * t * t) +
                            Bigint(t).pow(4);
                auto pair = build_pair({Family::C5, A, B});
                pass = z_disc(ZModel::from_w(pair.e_tilde)) ==
                       -A * B * (d1 * d2 * d3).pow(5);
            }
        part("d1d2d3", pass);
    }

    // cube criterion vs brute force, a,b <= 200
    {
        bool pass = true;
        for (long long a = 1; a <= 200 && pass; ++a)
            for (long long b = 1; b <= 200 && pass; ++b) {
                if (std::gcd(a, b) != 1 || a == 27 * b) continue;
                pass = tilde_c3_torsion_brute(a, b) ==
                       tilde_c3_torsion(Bigint(a), Bigint(b)).has_value();
            }
        part("cube-criterion", pass);
    }

    // prime congruence for c^2 +- 3c + 9, c <= 10^4
    {
        bool pass = true;
        for (long long c = 1; c <= 10000 && pass; ++c) {
            for (long long val : {c * c + 3 * c + 9, c * c - 3 * c + 9}) {
                for (const auto& [p, e] : factorize(Bigint(val)).factors) {
                    if (p == Bigint(3)) continue;
                    if (!((p % Bigint(6)) == Bigint(1))) { pass = false; break; }
                }
            }
        }
        part("prime-congruence", pass);
    }

    // Pell box property at bound 1e4: generator equals brute force, and all
    // solutions satisfy the Legendre condition with gcd 1
    {
        bool pass = true;
        const long long B = 10000;
        std::set<std::pair<long long, long long>> brute;
        for (long long a = -B; a <= B; ++a) {
            // solve the quadratic in b exactly
            long long disc = 125 * a * a - 76;
            if (disc < 0) continue;
            auto sv = static_cast<long long>(std::sqrt(static_cast<double>(disc)));
            while (sv > 0 && sv * sv > disc) --sv;
            while ((sv + 1) * (sv + 1) <= disc) ++sv;
            if (sv * sv != disc) continue;
            for (long long b : {(11 * a + sv) / 2, (11 * a - sv) / 2})
                if (a * a + 11 * a * b - b * b == 19 && std::max(std::llabs(a), std::llabs(b)) <= B)
                    brute.emplace(a, b);
        }
        auto gen = pell19_solutions(B);
        pass = brute == std::set<std::pair<long long, long long>>(gen.begin(), gen.end());
        for (auto [a, b] : gen) {
            pass = pass && std::gcd(std::llabs(a), std::llabs(b)) == 1 &&
                   legendre(Bigint(-5) * (Bigint(a) * Bigint(a) + Bigint(b) * Bigint(b)),
                            Bigint(19)) == -1;
        }
        part("pell-box", pass);
    }

    // prime f_7 residue/symbol correspondence over [1,100]^2
    {
        bool pass = true;
        int tested = 0;
        for (long long a = 1; a <= 100 && pass; ++a)
            for (long long b = 1; b <= 100 && pass; ++b) {
                if (std::gcd(a, b) != 1) continue;
                Bigint q = family_forms(7, Bigint(a), Bigint(b)).f_ell.abs();
                if (!is_prime(q)) continue;
                ++tested;
                pass = f7_residue_symbol_check(Bigint(a), Bigint(b));
            }
        part("f7-residues", pass && tested > 300);
    }

    // coprimality characterization <=> classifier divisibility, a+b <= 200
    {
        bool pass = true;
        for (Family fam : {Family::C5, Family::C7}) {
            unsigned ell = family_ell(fam);
            for (long long a = 1; a < 200 && pass; ++a)
                for (long long b = 1; a + b <= 200 && pass; ++b) {
                    if (std::gcd(a, b) != 1 || (fam == Family::C7 && a == b)) continue;
                    ParamSpec s{fam, Bigint(a), Bigint(b)};
                    pass = coprime_to_ell(s) ==
                           !(classify_global(s).c_tilde % Bigint(ell)).is_zero();
                }
        }
        part("coprimality-iff", pass);
    }

    // conductor exponent is isogeny-invariant on samples
    {
        bool pass = true;
        for (Family fam : {Family::C3, Family::C5, Family::C7}) {
            for (long long a = 1; a <= 12 && pass; ++a)
                for (long long b = 1; b <= 12 && pass; ++b) {
                    if (std::gcd(a, b) != 1) continue;
                    ParamSpec s{fam, Bigint(a), Bigint(b)};
                    if (z_disc(base_model(s)).is_zero()) continue;
                    auto pair = build_pair(s);
                    for (const Bigint& p : bad_primes(pair.e))
                        pass = pass && tate_local(ZModel::from_w(pair.e), p).f_p ==
                                           tate_local(ZModel::from_w(pair.e_tilde), p).f_p;
                }
        }
        part("conductor-invariance", pass);
    }

    report(9, ok, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d criterion(s) failing\n", failures);
    return failures;
}
