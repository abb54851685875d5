#pragma once

// Exact height thresholds and per-family parameter bounds.
//
// Height cutoffs are decided purely in integers: ht(E) <= X iff
// max(|c4|^3, c6^2) <= floor(e^{12X}), and e^{12X} is irrational for the
// rational X used here, so the strict/non-strict distinction cannot bite.
// floor(e^n) is computed from the exponential series with an explicit
// remainder bound, all in exact arithmetic.
//
// The enumeration bound comes from a rigorous positive lower bound L with
// max(|c4(a,b)|^3, c6(a,b)^2) >= L * (a+b)^{12w} on the whole parameter
// simplex (w = 1 for C5, 2 for C7), established by adaptive interval
// bisection with rational endpoints, then padded by 25%.

#include <deque>
#include <map>
#include <mutex>

#include "ellq/families.hpp"

namespace ellq {

// floor(e^n) for integer n >= 1, exact.
inline Bigint exp_floor(unsigned n) {
    static std::map<unsigned, Bigint> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    for (unsigned K = 3 * n + 60;; K += n + 60) {
        // N = sum_{k<=K} n^k K!/k!, so e^n = N/K! + R with
        // R*K! < 2 n^{K+1}/(K+1) once K >= 2n.
        Bigint Kfact(1);
        for (unsigned k = 2; k <= K; ++k) Kfact = Kfact * Bigint(k);
        Bigint Q = Kfact;  // K!/k!
        Bigint pw(1);      // n^k
        Bigint N(0);
        for (unsigned k = 0; k <= K; ++k) {
            if (k > 0) {
                Q = Q.divexact(Bigint(k));
                pw = pw * Bigint(n);
            }
            N += pw * Q;
        }
        Bigint q, r;
        Bigint::divmod(N, Kfact, q, r);
        Bigint rem_bound = Bigint(2) * Bigint(n).pow(K + 1) / Bigint(K + 1) + Bigint(1);
        if (r + rem_bound < Kfact) {
            std::lock_guard<std::mutex> lock(mu);
            cache.emplace(n, q);
            return q;
        }
        // margin too tight (never observed); retry with a larger K
    }
}

namespace heights_detail {

// coefficients of the univariate polynomial t -> P(t, 1-t); these are
// integers (the bivariate forms have integer coefficients), recovered by
// exact interpolation at t = 0..deg
inline std::vector<Bigint> simplex_poly(Family fam, bool want_c6, unsigned deg) {
    std::vector<Rat> xs, ys;
    for (unsigned i = 0; i <= deg; ++i) {
        Bigint t(i), onemt = Bigint(1) - Bigint(i);
        ZModel zm;
        {
            const Bigint &a = t, &b = onemt;
            switch (fam) {
                case Family::C5: zm = {a - b, -a * b, -a * a * b, Bigint(0), Bigint(0)}; break;
                case Family::C7:
                    zm = {a * a + a * b - b * b, a * a * b * b - a * b * b * b,
                          a.pow(4) * b * b - a.pow(3) * b.pow(3), Bigint(0), Bigint(0)};
                    break;
                default: throw std::invalid_argument("simplex_poly: C5/C7 only");
            }
        }
        auto iv = z_invariants(zm);
        xs.emplace_back(Rat(Bigint(i)));
        ys.emplace_back(Rat(want_c6 ? iv.c6 : iv.c4));
    }
    std::size_t m = xs.size();
    std::vector<Rat> coef = ys;
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = m - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<Rat> poly{coef[m - 1]};
    for (std::size_t i = m - 1; i-- > 0;) {
        poly.insert(poly.begin(), Rat(0));
        for (std::size_t k = 0; k + 1 < poly.size(); ++k)
            poly[k] = poly[k] - xs[i] * poly[k + 1];
        poly[0] = poly[0] + coef[i];
    }
    std::vector<Bigint> out;
    for (const Rat& c : poly) out.push_back(c.as_integer());
    return out;
}

// dyadic value m / 2^e
struct Dyadic {
    Bigint m;
    long e = 0;
};

inline int dyadic_cmp(const Dyadic& a, const Dyadic& b) {
    if (a.e >= b.e) return Bigint::cmp(a.m, b.m << static_cast<std::size_t>(a.e - b.e));
    return Bigint::cmp(a.m << static_cast<std::size_t>(b.e - a.e), b.m);
}

struct SimplexBound {
    // L with max(|c4(t,1-t)|^3, c6(t,1-t)^2) >= L on [0,1]
    Rat L;
};

// Taylor coefficients of P((n + v)/2^k) * 2^{k deg} as a polynomial in v,
// by repeated synthetic shift; exact integers.
inline std::vector<Bigint> shifted_scaled(const std::vector<Bigint>& poly, const Bigint& n,
                                          long k, unsigned deg) {
    std::vector<Bigint> s(deg + 1, Bigint(0));
    for (std::size_t j = 0; j < poly.size(); ++j)
        s[j] = poly[j] << static_cast<std::size_t>(k) * (deg - j);
    // shift v -> v + n: repeated Horner
    for (std::size_t pass = 0; pass < deg; ++pass)
        for (std::size_t j = deg; j-- > pass;) s[j] = s[j] + n * s[j + 1];
    return s;
}

inline SimplexBound simplex_lower_bound(Family fam) {
    unsigned w = fam == Family::C7 ? 2 : 1;
    unsigned d4 = 4 * w, d6 = 6 * w;
    auto p4 = simplex_poly(fam, false, d4);
    auto p6 = simplex_poly(fam, true, d6);

    // |P(mid)| and a lower bound of |P| over the cell's v in [-1,1]
    struct Env { Bigint center, lower; };
    auto envelope = [&](const std::vector<Bigint>& poly, const Bigint& mid2n1, long kk,
                        unsigned deg) {
        auto r = shifted_scaled(poly, mid2n1, kk, deg);
        Bigint tail(0);
        for (std::size_t i = 1; i < r.size(); ++i) tail += r[i].abs();
        Bigint c = r[0].abs();
        Bigint lo = c - tail;
        if (lo.sign() < 0) lo = Bigint(0);
        return Env{std::move(c), std::move(lo)};
    };
    auto F_of = [&](const Bigint& mid2n1, long kk) {
        Env e4 = envelope(p4, mid2n1, kk, d4);
        Env e6 = envelope(p6, mid2n1, kk, d6);
        Dyadic fc4{e4.center.pow(3), 3 * kk * static_cast<long>(d4)};
        Dyadic fc6{e6.center * e6.center, 2 * kk * static_cast<long>(d6)};
        Dyadic fl4{e4.lower.pow(3), 3 * kk * static_cast<long>(d4)};
        Dyadic fl6{e6.lower * e6.lower, 2 * kk * static_cast<long>(d6)};
        Dyadic center = dyadic_cmp(fc4, fc6) >= 0 ? fc4 : fc6;
        Dyadic lower = dyadic_cmp(fl4, fl6) >= 0 ? fl4 : fl6;
        return std::pair<Dyadic, Dyadic>{center, lower};
    };

    // sampled upper estimate of the minimum
    Dyadic M = F_of(Bigint(1), 6).first;
    for (long i = 3; i < 128; i += 2) {
        Dyadic v = F_of(Bigint(i), 6).first;
        if (dyadic_cmp(v, M) < 0) M = v;
    }
    if (M.m.sign() <= 0)
        throw internal_consistency_error("simplex bound: vanishing invariants");

    // adaptive bisection; cells are [n/2^k, (n+1)/2^k]
    std::deque<std::pair<Bigint, long>> queue;
    queue.emplace_back(Bigint(0), 0);
    std::size_t steps = 0;
    while (!queue.empty()) {
        if (++steps > 400'000)
            throw internal_consistency_error("simplex bound: refinement diverged");
        auto [n, k] = queue.front();
        queue.pop_front();
        if (k > 120) throw internal_consistency_error("simplex bound: depth exceeded");
        Bigint mid = (n << 1) + Bigint(1);
        long kk = k + 1;
        auto [fc, flo] = F_of(mid, kk);
        Dyadic flo2{flo.m << 1, flo.e};
        if (dyadic_cmp(flo2, M) >= 0) continue;  // certified at M/2
        if (dyadic_cmp(fc, M) < 0) M = fc;
        queue.emplace_back(n << 1, kk);
        queue.emplace_back((n << 1) + Bigint(1), kk);
    }
    Rat L(M.m, Bigint(2) << static_cast<std::size_t>(std::max(0L, M.e)));
    if (M.e < 0) L = Rat(M.m << static_cast<std::size_t>(-M.e), Bigint(2));
    return {L};
}

}  // namespace heights_detail

// Smallest S such that every coprime positive pair with ht(E_T) <= X
// satisfies a + b < S, padded by 25%. twelve_x = 12 X must be integral.
inline std::uint64_t family_sum_bound(Family fam, unsigned twelve_x) {
    if (fam != Family::C5 && fam != Family::C7)
        throw std::invalid_argument("family_sum_bound: C5/C7 only");
    static std::map<Family, Rat> cache;
    static std::mutex mu;
    Rat L;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(fam);
        if (it == cache.end())
            it = cache.emplace(fam, heights_detail::simplex_lower_bound(fam).L).first;
        L = it->second;
    }
    unsigned w = fam == Family::C7 ? 2 : 1;
    // s^{12w} L <= e^{12X}  =>  s <= (e^{12X}/L)^{1/(12w)}
    Bigint budget = exp_floor(twelve_x) * L.den() / L.num() + Bigint(1);
    Bigint s = budget.nth_root(12 * w) + Bigint(1);
    Bigint padded = s * Bigint(5) / Bigint(4) + Bigint(1);
    return padded.to_u64();
}

// Exact integer comparison ht(minimal model invariants) <= X.
inline bool height_at_most(const Bigint& c4, const Bigint& c6, const Bigint& threshold) {
    Bigint h = c4.abs().pow(3);
    Bigint c62 = c6 * c6;
    if (c62 > h) h = std::move(c62);
    return h <= threshold;
}

}  // namespace ellq
