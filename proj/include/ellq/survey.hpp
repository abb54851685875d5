#pragma once

// Enumeration statistics: representatives of parameter space up to
// isomorphism, exact height filtering, the tilde-family divisibility counts,
// the universal-family count over the a = 1 line, the fifth-power
// experiment, and the X_7 prime scan.
//
// Work is block-partitioned over the leading parameter; results are merged
// in block order, so output is byte-identical for any worker count.

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "ellq/classifier.hpp"
#include "ellq/heights.hpp"
#include "ellq/tate.hpp"

namespace ellq {

struct SurveyRow {
    unsigned ell = 0;
    double X = 0;
    std::uint64_t N = 0;  // representatives with ell | ctilde
    std::uint64_t G = 0;  // all representatives up to height X
    double percent = 0;
};

struct Representative {
    std::uint64_t a = 0, b = 0;
    ZModel reduced;  // canonical key: reduced minimal model of E_T
    Bigint c4, c6;
};

struct SurveyOptions {
    unsigned jobs = 1;
    std::string csv_path;         // per-representative rows when nonempty
    std::string json_path;        // summary when nonempty
    std::string checkpoint_path;  // resumable block log when nonempty
    unsigned oracle_subsample = 0;  // recheck every k-th representative with Tate
};

namespace survey_detail {

inline Family family_of_ell(unsigned ell) {
    if (ell == 5) return Family::C5;
    if (ell == 7) return Family::C7;
    throw std::invalid_argument("survey: ell must be 5 or 7");
}

struct PairHit {
    std::uint64_t a, b;
    Bigint c4, c6;
};

// model invariants of E_T(a,b) for the two surveyed families
inline void base_c4c6(Family fam, std::uint64_t a, std::uint64_t b, Bigint& c4,
                      Bigint& c6) {
    ZModel zm = base_model({fam, Bigint(a), Bigint(b)});
    auto iv = z_invariants(zm);
    c4 = std::move(iv.c4);
    c6 = std::move(iv.c6);
}

inline std::string model_key(const ZModel& m) {
    return m.a1.to_string() + "|" + m.a2.to_string() + "|" + m.a3.to_string() + "|" +
           m.a4.to_string() + "|" + m.a6.to_string();
}

inline bool is_fifth_power_u64(std::uint64_t n) {
    if (n == 0) return false;
    auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 0.2)));
    for (std::uint64_t c : {r - 1, r, r + 1}) {
        if (c == 0 || c > 7130) continue;  // 7131^5 overflows
        if (c * c * c * c * c == n) return true;
    }
    return n == 1;
}

// scan coprime positive pairs with a+b < sum_bound, keep pairs passing the
// height threshold (and the Lambda exclusion for ell = 5)
inline std::vector<PairHit> scan_pairs(unsigned ell, std::uint64_t sum_bound,
                                       const Bigint& threshold, const SurveyOptions& opt,
                                       bool exclude_fifth_powers) {
    Family fam = family_of_ell(ell);
    const std::uint64_t block = 64;
    const std::uint64_t nblocks = (sum_bound + block - 1) / block;
    std::vector<std::vector<PairHit>> per_block(nblocks);
    std::vector<std::uint8_t> done(nblocks, 0);

    std::ofstream ck_out;
    std::mutex ck_mu;
    if (!opt.checkpoint_path.empty()) {
        // resume: replay completed blocks, then append to the log
        std::ifstream in(opt.checkpoint_path);
        std::string line;
        std::string meta = std::string(family_name(fam)) + "/" +
                           std::to_string(sum_bound) + "/" + threshold.to_string();
        bool first = true;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;
            if (first) {
                first = false;
                if (!j.contains("meta") || j["meta"].get<std::string>() != meta)
                    throw std::runtime_error("checkpoint does not match this survey");
                continue;
            }
            std::uint64_t bi = j.at("block").get<std::uint64_t>();
            if (bi >= nblocks) continue;
            for (const auto& hit : j.at("hits")) {
                per_block[bi].push_back({hit.at(0).get<std::uint64_t>(),
                                         hit.at(1).get<std::uint64_t>(),
                                         Bigint(hit.at(2).get<std::string>()),
                                         Bigint(hit.at(3).get<std::string>())});
            }
            done[bi] = 1;
        }
        in.close();
        bool fresh = first;
        ck_out.open(opt.checkpoint_path, std::ios::app);
        if (!ck_out) throw std::runtime_error("cannot write " + opt.checkpoint_path);
        if (fresh) {
            nlohmann::json j;
            j["meta"] = meta;
            ck_out << j.dump() << "\n" << std::flush;
        }
    }

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        Bigint c4, c6;
        while (true) {
            std::uint64_t bi = next.fetch_add(1);
            if (bi >= nblocks) break;
            if (done[bi]) continue;
            auto& out = per_block[bi];
            std::uint64_t alo = bi * block + 1, ahi = std::min(sum_bound, (bi + 1) * block);
            for (std::uint64_t a = alo; a <= ahi; ++a) {
                if (a >= sum_bound) break;
                for (std::uint64_t b = 1; a + b < sum_bound; ++b) {
                    if (std::gcd(a, b) != 1) continue;
                    if (ell == 7 && a == b) continue;  // degenerate (1,1)
                    if (exclude_fifth_powers && ell == 5 && is_fifth_power_u64(a) &&
                        is_fifth_power_u64(b))
                        continue;  // both E and Etilde have 5-torsion
                    base_c4c6(fam, a, b, c4, c6);
                    if (!height_at_most(c4, c6, threshold)) continue;
                    out.push_back({a, b, c4, c6});
                }
            }
            if (ck_out.is_open()) {
                nlohmann::json hits = nlohmann::json::array();
                for (const auto& h : out)
                    hits.push_back({h.a, h.b, h.c4.to_string(), h.c6.to_string()});
                nlohmann::json j;
                j["block"] = bi;
                j["hits"] = std::move(hits);
                std::lock_guard<std::mutex> lock(ck_mu);
                ck_out << j.dump() << "\n" << std::flush;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned jobs = std::max(1u, opt.jobs);
    for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<PairHit> merged;
    for (auto& blk : per_block)
        for (auto& h : blk) merged.push_back(std::move(h));
    return merged;
}

inline std::vector<Representative> dedup(std::vector<PairHit> hits) {
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<Representative> reps;
    for (auto& h : hits) {
        auto red = model_from_c4c6(h.c4, h.c6);
        if (!red)
            throw internal_consistency_error("survey: reduced model reconstruction failed");
        std::string key = model_key(*red);
        if (seen.emplace(std::move(key), reps.size()).second)
            reps.push_back({h.a, h.b, std::move(*red), std::move(h.c4), std::move(h.c6)});
    }
    return reps;
}

}  // namespace survey_detail

// One representative per isomorphism class of E_T(a,b), coprime positive
// parameters with a + b < sum_bound. The Lambda exclusion (ab a perfect 5th
// power, where the quotient curve has its own 5-torsion point) is on by
// default for ell = 5.
inline std::vector<Representative> enumerate_representatives(
    unsigned ell, std::uint64_t sum_bound, unsigned jobs = 1,
    bool exclude_fifth_powers = true) {
    if (sum_bound < 2) throw std::invalid_argument("enumerate_representatives: bound >= 2");
    SurveyOptions opt;
    opt.jobs = jobs;
    // no height cutoff: any model passes
    Bigint unbounded = Bigint(1) << 4096;
    return survey_detail::dedup(
        survey_detail::scan_pairs(ell, sum_bound, unbounded, opt, exclude_fifth_powers));
}

// The survey statistic: representatives with ht(E_T) <= X, and among them
// those with ell | ctilde. 12X must be integral (covers every tabulated X).
// The tabulated data counts every class, including the three split-Cartan
// members where the quotient carries its own 5-torsion, so no Lambda
// exclusion is applied here (the a = 1 specialization count follows the
// same convention).
inline SurveyRow tilde_stats(unsigned ell, double X, const SurveyOptions& opt = {},
                             std::uint64_t sum_bound_override = 0) {
    double twelve = 12.0 * X;
    auto twelve_x = static_cast<unsigned>(std::llround(twelve));
    if (std::fabs(twelve - static_cast<double>(twelve_x)) > 1e-9 || twelve_x == 0)
        throw std::invalid_argument("tilde_stats: 12X must be a positive integer");
    Family fam = survey_detail::family_of_ell(ell);
    std::uint64_t S = sum_bound_override ? sum_bound_override
                                         : family_sum_bound(fam, twelve_x);
    Bigint threshold = exp_floor(twelve_x);
    auto reps = survey_detail::dedup(
        survey_detail::scan_pairs(ell, S, threshold, opt, /*exclude_fifth_powers=*/false));

    std::vector<std::uint8_t> divisible(reps.size(), 0);
    std::vector<std::string> csv_extra(opt.csv_path.empty() ? 0 : reps.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> oracle_ok{true};
    auto classify_worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= reps.size()) break;
            const auto& r = reps[i];
            ParamSpec spec{fam, Bigint(r.a), Bigint(r.b)};
            auto g = classify_global(spec);
            divisible[i] = (g.c_tilde % Bigint(ell)).is_zero() ? 1 : 0;
            if (opt.oracle_subsample && i % opt.oracle_subsample == 0) {
                auto pair = build_pair(spec);
                if (global_tamagawa(pair.e_tilde).first != g.c_tilde) oracle_ok = false;
            }
            if (!opt.csv_path.empty()) {
                std::string primes, rules;
                for (const auto& lp : g.breakdown) {
                    if (!primes.empty()) primes += ";";
                    primes += lp.p.to_string();
                    if (!rules.empty()) rules += ";";
                    rules += lp.rule;
                }
                double ht = (r.c4.is_zero() ? (r.c6 * r.c6).log_abs()
                                            : std::max(r.c4.abs().pow(3).log_abs(),
                                                       (r.c6 * r.c6).log_abs())) /
                            12.0;
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", ht);
                csv_extra[i] = std::string(family_name(fam)) + "," + std::to_string(r.a) +
                               "," + std::to_string(r.b) + "," + buf + "," +
                               g.c.to_string() + "," + g.c_tilde.to_string() + "," +
                               primes + "," + rules;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::max(1u, opt.jobs); ++i)
        pool.emplace_back(classify_worker);
    classify_worker();
    for (auto& t : pool) t.join();
    if (!oracle_ok)
        throw internal_consistency_error("tilde_stats: oracle subsample disagreed");

    SurveyRow row;
    row.ell = ell;
    row.X = X;
    row.G = reps.size();
    for (auto d : divisible) row.N += d;
    row.percent = row.G ? 100.0 * static_cast<double>(row.N) / static_cast<double>(row.G)
                        : 0.0;

    if (!opt.csv_path.empty()) {
        std::ofstream out(opt.csv_path);
        if (!out) throw std::runtime_error("cannot write " + opt.csv_path);
        out << "family,a,b,height,c,c_tilde,bad_primes,rules\n";
        for (const auto& line : csv_extra) out << line << "\n";
    }
    if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path);
        if (!out) throw std::runtime_error("cannot write " + opt.json_path);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "{ \"ell\": %u, \"X\": %g, \"N\": %llu, \"G\": %llu, "
                      "\"percent\": %.2f }\n",
                      ell, X, static_cast<unsigned long long>(row.N),
                      static_cast<unsigned long long>(row.G), row.percent);
        out << buf;
    }
    return row;
}

// t in [1, X] integral: how many quotients of the universal 5-torsion family
// at (1, t) have 5 | ctilde.
inline std::uint64_t intro_count(std::uint64_t X, unsigned jobs = 1) {
    if (X < 1) throw std::invalid_argument("intro_count: X >= 1");
    std::atomic<std::uint64_t> count{0};
    std::atomic<std::uint64_t> next{1};
    auto worker = [&] {
        while (true) {
            std::uint64_t t = next.fetch_add(1);
            if (t > X) break;
            auto g = classify_global({Family::C5, Bigint(1), Bigint(t)});
            if ((g.c_tilde % Bigint(5)).is_zero()) ++count;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::max(1u, jobs); ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return count;
}

// v_5 of the global Tamagawa numbers of E_C5(a^5, b^5) and its quotient,
// through the d1 d2 d3 factorization of f_5(a^5, b^5).
namespace survey_detail {

struct FifthPowerVals {
    unsigned v5_c = 0, v5_ctilde = 0;
};

inline FifthPowerVals fifth_power_valuations(std::uint64_t a, std::uint64_t b) {
    FifthPowerVals out;
    auto v5_of = [](std::uint64_t n) {
        unsigned v = 0;
        while (n % 5 == 0) { n /= 5; ++v; }
        return v;
    };
    // primes of ab: c_p = 25 v_p(ab), ctilde_p = 5 v_p(ab)
    std::uint64_t budget = UINT64_MAX;
    std::vector<std::pair<Bigint, unsigned>> fac;
    detail::factor_u64_into(a, fac, budget);
    detail::factor_u64_into(b, fac, budget);
    for (const auto& [p, e] : fac) {
        (void)p;
        out.v5_c += 2 + v5_of(e);
        out.v5_ctilde += 1 + v5_of(e);
    }
    // primes of f_5(a^5, b^5) = d1 d2 d3
    long long la = static_cast<long long>(a), lb = static_cast<long long>(b);
    long long d1 = la * la + la * lb - lb * lb;
    long long d2 = la * la * la * la - 3 * la * la * la * lb + 4 * la * la * lb * lb -
                   2 * la * lb * lb * lb + lb * lb * lb * lb;
    long long d3 = la * la * la * la + 2 * la * la * la * lb + 4 * la * la * lb * lb +
                   3 * la * lb * lb * lb + lb * lb * lb * lb;
    std::vector<std::pair<Bigint, unsigned>> dfac;
    for (long long d : {d1, d2, d3}) {
        std::uint64_t m = static_cast<std::uint64_t>(d < 0 ? -d : d);
        if (m > 1) detail::factor_u64_into(m, dfac, budget);
    }
    std::sort(dfac.begin(), dfac.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < dfac.size();) {
        Bigint q = dfac[i].first;
        unsigned n = 0;
        while (i < dfac.size() && dfac[i].first == q) n += dfac[i++].second;
        std::uint64_t qq = q.to_u64();
        if (qq == 5) continue;  // additive at 5: c, ctilde in {1,2}
        // split iff (-5 (a^10 + b^10) | q) = 1
        std::uint64_t s = (powmod_u64(a % qq, 10, qq) + powmod_u64(b % qq, 10, qq)) % qq;
        long long arg = -5 * static_cast<long long>(s);
        if (jacobi_i64(arg, qq) == 1) {
            out.v5_c += v5_of(n);
            out.v5_ctilde += 1 + v5_of(n);
        }
    }
    return out;
}

}  // namespace survey_detail

// counts over coprime (a,b) in [2, range_max]^2 of pairs whose ctilde
// (resp. c) is NOT divisible by 5^5
inline std::pair<std::uint64_t, std::uint64_t> fifth_power_experiment(
    std::uint64_t range_max, unsigned jobs = 1) {
    if (range_max < 2) throw std::invalid_argument("fifth_power_experiment: range >= 2");
    std::atomic<std::uint64_t> count_tilde{0}, count_e{0};
    std::atomic<std::uint64_t> next{2};
    auto worker = [&] {
        while (true) {
            std::uint64_t a = next.fetch_add(1);
            if (a > range_max) break;
            for (std::uint64_t b = 2; b <= range_max; ++b) {
                if (std::gcd(a, b) != 1) continue;
                auto v = survey_detail::fifth_power_valuations(a, b);
                if (v.v5_ctilde < 5) ++count_tilde;
                if (v.v5_c < 5) ++count_e;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::max(1u, jobs); ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return {count_tilde, count_e};
}

// distinct primes q = |f_7(a,b)| with q = -1 mod 7 and ab(a-b) 7th-power-free,
// over coprime pairs in [1, range_max]^2
inline std::uint64_t x7_prime_count(std::uint64_t range_max, unsigned jobs = 1) {
    std::vector<std::set<std::uint64_t>> per_thread(std::max(1u, jobs));
    std::atomic<std::uint64_t> next{1};
    auto worker = [&](unsigned id) {
        auto& qs = per_thread[id];
        while (true) {
            std::uint64_t a = next.fetch_add(1);
            if (a > range_max) break;
            for (std::uint64_t b = 1; b <= range_max; ++b) {
                if (std::gcd(a, b) != 1) continue;
                long long la = static_cast<long long>(a), lb = static_cast<long long>(b);
                long long n7 = la * lb * (la - lb);
                if (n7 == 0) continue;
                long long f7 =
                    la * la * la + 5 * la * la * lb - 8 * la * lb * lb + lb * lb * lb;
                std::uint64_t q = static_cast<std::uint64_t>(f7 < 0 ? -f7 : f7);
                if (q < 2 || q % 7 != 6 || !is_prime_u64(q)) continue;
                std::uint64_t m = static_cast<std::uint64_t>(n7 < 0 ? -n7 : n7);
                std::uint64_t budget = UINT64_MAX;
                std::vector<std::pair<Bigint, unsigned>> fac;
                detail::factor_u64_into(m, fac, budget);
                bool pf = true;
                for (const auto& [p, e] : fac)
                    if (e >= 7) pf = false;
                if (pf) qs.insert(q);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::max(1u, jobs); ++i)
        pool.emplace_back(worker, i);
    worker(0);
    for (auto& t : pool) t.join();
    std::set<std::uint64_t> all;
    for (auto& s : per_thread) all.insert(s.begin(), s.end());
    return all.size();
}

// quotients of consecutive G and N entries, rows sorted by X
inline std::pair<std::vector<double>, std::vector<double>> ratio_table(
    const std::vector<SurveyRow>& rows) {
    std::vector<double> g_ratios, n_ratios;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].G == 0 || rows[i - 1].N == 0)
            throw std::domain_error("ratio_table: division by zero");
        g_ratios.push_back(static_cast<double>(rows[i].G) /
                           static_cast<double>(rows[i - 1].G));
        n_ratios.push_back(static_cast<double>(rows[i].N) /
                           static_cast<double>(rows[i - 1].N));
    }
    return {g_ratios, n_ratios};
}

}  // namespace ellq
