#pragma once

// Exact integer services: valuations, quadratic residue symbols, complete
// factorization with an explicit work budget, power-free tests, the cube
// decomposition a = c^3 d^2 e, and the Pell-conic solution generator for
// a^2 + 11ab - b^2 = 19.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ellq/bigint.hpp"
#include "ellq/errors.hpp"
#include "ellq/smallint.hpp"

namespace ellq {

// v_p(n) with a distinguished infinity for n = 0 (the signature code needs
// v_p(0) when c4 vanishes).
struct Valuation {
    bool infinite = false;
    std::uint64_t v = 0;

    bool finite() const { return !infinite; }
    bool operator==(const Valuation&) const = default;
};

inline Valuation val_infinity() { return {true, 0}; }

inline Valuation valuation(const Bigint& n, const Bigint& p) {
    if (n.is_zero()) return val_infinity();
    Bigint m = n.abs();
    std::uint64_t v = 0;
    if (m.fits_u64() && p.fits_u64()) {
        std::uint64_t mm = m.to_u64(), pp = p.to_u64();
        while (mm % pp == 0) { mm /= pp; ++v; }
        return {false, v};
    }
    Bigint q, r;
    while (true) {
        Bigint::divmod(m, p, q, r);
        if (!r.is_zero()) break;
        m = q;
        ++v;
        if (m.fits_u64() && p.fits_u64()) {
            std::uint64_t mm = m.to_u64(), pp = p.to_u64();
            while (mm % pp == 0) { mm /= pp; ++v; }
            break;
        }
    }
    return {false, v};
}

inline std::uint64_t valuation_finite(const Bigint& n, const Bigint& p) {
    Valuation v = valuation(n, p);
    if (v.infinite) throw std::domain_error("valuation of 0");
    return v.v;
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(const Bigint& a, const Bigint& n) {
    if (n.is_zero() || n.even() || n.sign() < 0)
        throw std::invalid_argument("jacobi: modulus must be odd positive");
    if (a.fits_i64() && n.fits_u64()) return jacobi_i64(a.to_i64(), n.to_u64());
    Bigint x = a.mod(n), y = n;
    int r = 1;
    while (!x.is_zero()) {
        while (x.even()) {
            x >>= 1;
            std::uint64_t m8 = (y % Bigint(8)).to_u64();
            if (m8 == 3 || m8 == 5) r = -r;
        }
        std::swap(x, y);
        if ((x % Bigint(4)) == Bigint(3) && (y % Bigint(4)) == Bigint(3)) r = -r;
        x = x.mod(y);
    }
    return y.is_one() ? r : 0;
}

inline Bigint powmod(Bigint base, Bigint e, const Bigint& m) {
    Bigint r(1);
    base = base.mod(m);
    while (!e.is_zero()) {
        if (e.odd()) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

bool is_prime(const Bigint& n);

// Legendre symbol (a/p), p an odd prime.
inline int legendre(const Bigint& a, const Bigint& p) {
    if (p <= Bigint(2) || p.even() || !is_prime(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    return jacobi(a, p);
}

// Deterministic below 2^64; 64 strong rounds (error < 2^-128) above, with
// bases drawn from a splitmix stream seeded by the input so results are
// reproducible.
inline bool is_prime(const Bigint& n) {
    if (n.sign() <= 0) return false;
    if (n.fits_u64()) return is_prime_u64(n.to_u64());
    if (n.even()) return false;
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u})
        if ((n % Bigint(p)).is_zero()) return false;
    Bigint d = n - Bigint(1);
    int s = 0;
    while (d.even()) { d >>= 1; ++s; }
    std::uint64_t seed = n.hash();
    auto next_base = [&seed]() {
        seed += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = seed;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    for (int round = 0; round < 64; ++round) {
        Bigint a = Bigint(next_base()).mod(n - Bigint(3)) + Bigint(2);
        Bigint x = powmod(a, d, n);
        if (x.is_one() || x == n - Bigint(1)) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - Bigint(1)) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

struct Factorization {
    int sign = 1;  // +1 or -1
    std::vector<std::pair<Bigint, unsigned>> factors;  // primes strictly increasing

    Bigint reconstruct() const {
        Bigint r(sign);
        for (const auto& [p, e] : factors) r = r * p.pow(e);
        return r;
    }
    unsigned exponent_of(const Bigint& p) const {
        for (const auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }
};

struct FactorBudget {
    // Pollard-rho iteration allowance shared across one factorize() call.
    std::uint64_t rho_iterations = 50'000'000;
};

namespace detail {

inline void factor_u64_into(std::uint64_t n, std::vector<std::pair<Bigint, unsigned>>& out,
                            std::uint64_t& budget) {
    // trial division by a short prime prefix, then rho
    static constexpr std::array<std::uint32_t, 25> kSmall = {
        2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (std::uint32_t p : kSmall) {
        if (n == 1) return;
        if (static_cast<std::uint64_t>(p) * p > n) break;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(Bigint(p), e);
    }
    if (n == 1) return;
    if (is_prime_u64(n)) { out.emplace_back(Bigint(n), 1u); return; }
    std::uint64_t d = pollard_brent_u64(n, budget);
    if (d == 0) throw factor_budget_error("factorization incomplete: rho budget exceeded");
    factor_u64_into(d, out, budget);
    factor_u64_into(n / d, out, budget);
}

inline Bigint pollard_brent_big(const Bigint& n, std::uint64_t& budget) {
    for (std::uint64_t c = 1;; ++c) {
        Bigint x(2), y(2), d(1), q(1), ys;
        std::uint64_t power = 1, lam = 0;
        auto f = [&](const Bigint& v) { return (v * v + Bigint(c)) % n; };
        while (d.is_one()) {
            if (lam == power) { x = y; power <<= 1; lam = 0; }
            ys = y;
            std::uint64_t steps = std::min<std::uint64_t>(64, power - lam);
            for (std::uint64_t i = 0; i < steps; ++i) {
                if (budget == 0) return Bigint(0);
                --budget;
                y = f(y);
                q = (q * (x - y).abs()) % n;
            }
            lam += steps;
            d = Bigint::gcd(q, n);
        }
        if (d == n) {
            d = Bigint(1);
            y = ys;
            while (d.is_one()) {
                if (budget == 0) return Bigint(0);
                --budget;
                y = f(y);
                d = Bigint::gcd((x - y).abs(), n);
            }
        }
        if (d != n) return d;
    }
}

inline void factor_big_into(Bigint n, std::vector<std::pair<Bigint, unsigned>>& out,
                            std::uint64_t& budget) {
    if (n.is_one()) return;
    if (n.fits_u64()) { factor_u64_into(n.to_u64(), out, budget); return; }
    if (is_prime(n)) { out.emplace_back(n, 1u); return; }
    // perfect powers split cheaply and show up often (discriminants are
    // near-powers of the family forms); prime exponents suffice
    for (std::uint32_t k : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u,
                            41u, 43u, 47u, 53u, 59u, 61u}) {
        if (k > n.bit_length()) break;
        Bigint root;
        if (n.is_perfect_power(k, &root) && !root.is_one()) {
            std::vector<std::pair<Bigint, unsigned>> sub;
            factor_big_into(root, sub, budget);
            for (auto& [p, e] : sub) out.emplace_back(p, e * k);
            return;
        }
    }
    Bigint d = pollard_brent_big(n, budget);
    if (d.is_zero()) throw factor_budget_error("factorization incomplete: rho budget exceeded");
    factor_big_into(d, out, budget);
    factor_big_into(n.divexact(d), out, budget);
}

}  // namespace detail

inline Factorization factorize(const Bigint& n, FactorBudget budget = {}) {
    if (n.is_zero()) throw std::invalid_argument("factorize: n must be nonzero");
    Factorization f;
    f.sign = n.sign();
    Bigint m = n.abs();
    std::uint64_t rho_left = budget.rho_iterations;
    if (m.fits_u64()) {
        std::uint64_t v = m.to_u64();
        detail::factor_u64_into(v, f.factors, rho_left);
    } else {
        // strip the sieve primes first so rho only ever sees hard cofactors;
        // primes are packed into word-sized products so each batch costs one
        // multi-limb reduction
        const auto& ps = small_primes();
        std::size_t i = 0;
        while (i < ps.size() && !m.fits_u64()) {
            unsigned __int128 prod = 1;
            std::size_t j = i;
            while (j < ps.size()) {
                unsigned __int128 next = prod * ps[j];
                if (next > static_cast<unsigned __int128>(UINT64_MAX)) break;
                prod = next;
                ++j;
            }
            std::uint64_t r = (m % Bigint(static_cast<std::uint64_t>(prod))).to_u64();
            for (std::size_t k = i; k < j; ++k) {
                if (r % ps[k] == 0) {
                    unsigned e = 0;
                    while ((m % Bigint(ps[k])).is_zero()) {
                        m = m.divexact(Bigint(ps[k]));
                        ++e;
                    }
                    if (e) f.factors.emplace_back(Bigint(ps[k]), e);
                }
            }
            i = j;
        }
        if (!m.is_one()) detail::factor_big_into(m, f.factors, rho_left);
    }
    // merge duplicates and sort
    std::sort(f.factors.begin(), f.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Bigint, unsigned>> merged;
    for (auto& [p, e] : f.factors) {
        if (!merged.empty() && merged.back().first == p) merged.back().second += e;
        else merged.emplace_back(p, e);
    }
    f.factors = std::move(merged);
    return f;
}

inline bool is_kth_power_free(const Bigint& n, unsigned k, FactorBudget budget = {}) {
    if (k < 2) throw std::invalid_argument("is_kth_power_free: k >= 2 required");
    if (n.is_zero()) throw std::invalid_argument("is_kth_power_free: n must be nonzero");
    Factorization f = factorize(n, budget);
    for (const auto& [p, e] : f.factors)
        if (e >= k) return false;
    return true;
}

inline bool is_squarefree(const Bigint& n, FactorBudget budget = {}) {
    return is_kth_power_free(n, 2, budget);
}

// a = c^3 d^2 e with de squarefree; per prime, exponent 3q+r sends q to c
// and r ∈ {1,2} to e resp. d.
struct CubeDecomposition {
    Bigint c, d, e;
};

inline CubeDecomposition cube_decompose(const Bigint& a, FactorBudget budget = {}) {
    if (a.sign() <= 0) throw std::invalid_argument("cube_decompose: a must be positive");
    CubeDecomposition r{Bigint(1), Bigint(1), Bigint(1)};
    for (const auto& [p, e] : factorize(a, budget).factors) {
        r.c = r.c * p.pow(e / 3);
        if (e % 3 == 2) r.d = r.d * p;
        if (e % 3 == 1) r.e = r.e * p;
    }
    return r;
}

// All integer solutions of a^2 + 11ab - b^2 = 19 with max(|a|,|b|) <= bound.
// Seeds are found by direct search in a small box, then saturated under the
// automorphism group of the form (generated by (a,b) -> (a+11b, 11a+122b)
// and negation). Correctness is enforced by the brute-force equivalence
// property test, not by theory.
inline std::vector<std::pair<long long, long long>> pell19_solutions(long long bound) {
    if (bound < 1) throw std::invalid_argument("pell19_solutions: bound >= 1");
    auto form = [](long long a, long long b) {
        return static_cast<__int128>(a) * a + 11 * static_cast<__int128>(a) * b -
               static_cast<__int128>(b) * b;
    };
    std::set<std::pair<long long, long long>> seen;
    std::vector<std::pair<long long, long long>> queue;
    const long long seed_box = std::min<long long>(bound, 400);
    for (long long a = -seed_box; a <= seed_box; ++a) {
        // solve b^2 - 11ab - (a^2 - 19) = 0 exactly
        long long disc = 125 * a * a - 76;
        if (disc < 0) continue;
        auto sv = static_cast<long long>(std::sqrt(static_cast<double>(disc)));
        while (sv > 0 && sv * sv > disc) --sv;
        while ((sv + 1) * (sv + 1) <= disc) ++sv;
        if (sv * sv != disc) continue;
        for (long long b : {(11 * a + sv) / 2, (11 * a - sv) / 2}) {
            if (form(a, b) == 19 && seen.emplace(a, b).second) queue.emplace_back(a, b);
        }
    }
    auto inside = [&](long long a, long long b) {
        return std::max(a < 0 ? -a : a, b < 0 ? -b : b) <= bound;
    };
    auto push = [&](long long a, long long b) {
        if (form(a, b) != 19) return;
        if (seen.emplace(a, b).second) queue.emplace_back(a, b);
    };
    // Walk orbits in both directions, with slack past the box so trajectories
    // that dip outside and return are not cut short (one automorphism step
    // scales coordinates by ~123).
    const long long slack =
        std::min<long long>(bound > (1ll << 40) ? bound : bound * 16384, 1ll << 54);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [a, b] = queue[i];
        if (std::max(a < 0 ? -a : a, b < 0 ? -b : b) > slack) continue;
        push(-a, -b);
        push(a + 11 * b, 11 * a + 122 * b);
        push(122 * a - 11 * b, -11 * a + b);
    }
    std::vector<std::pair<long long, long long>> out;
    for (auto& [a, b] : seen)
        if (inside(a, b)) out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ellq
