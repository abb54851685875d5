#pragma once

// uint64 number theory kernels: deterministic Miller-Rabin, Brent's rho,
// Jacobi symbol. These back the Bigint-level routines whenever operands fit
// in a machine word, which is nearly always in the enumeration loops.

#include <cstdint>
#include <numeric>
#include <vector>

namespace ellq {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = m == 1 ? 0 : 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic for all n < 2^64 with the standard 7-base set.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                            1795265022ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
// iter_budget counts f-evaluations; returns 0 on budget exhaustion.
inline std::uint64_t pollard_brent_u64(std::uint64_t n, std::uint64_t& iter_budget) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 0, ys = y, q = 1;
        auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            if (lam == power) { x = y; power <<= 1; lam = 0; }
            ys = y;
            std::uint64_t steps = std::min<std::uint64_t>(128, power - lam);
            for (std::uint64_t i = 0; i < steps; ++i) {
                if (iter_budget == 0) return 0;
                --iter_budget;
                y = f(y);
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            lam += steps;
            d = std::gcd(q, n);
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            y = ys;
            while (d == 1) {
                if (iter_budget == 0) return 0;
                --iter_budget;
                y = f(y);
                d = std::gcd(x > y ? x - y : y - x, n);
            }
        }
        if (d != n) return d;
        // cycle degenerated for this c; retry with the next increment
    }
}

inline int jacobi_i64(long long a, std::uint64_t n) {
    // n odd positive
    std::uint64_t ua;
    int r = 1;
    if (a < 0) {
        ua = static_cast<std::uint64_t>(-(a + 1)) + 1;
        if (n % 4 == 3) r = -r;
    } else {
        ua = static_cast<std::uint64_t>(a);
    }
    ua %= n;
    while (ua) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            if (n % 8 == 3 || n % 8 == 5) r = -r;
        }
        std::swap(ua, n);
        if (ua % 4 == 3 && n % 4 == 3) r = -r;
        ua %= n;
    }
    return n == 1 ? r : 0;
}

// Shared sieve of all primes below the trial-division bound.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t LIMIT = 1000000;
        std::vector<bool> comp(LIMIT, false);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i < LIMIT; ++i) {
            if (!comp[i]) {
                ps.push_back(i);
                for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < LIMIT; j += i)
                    comp[static_cast<std::size_t>(j)] = true;
            }
        }
        return ps;
    }();
    return primes;
}

}  // namespace ellq
