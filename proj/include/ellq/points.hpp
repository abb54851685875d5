#pragma once

// Affine point arithmetic with exact rational coordinates, point orders up
// to the Mazur bound, and rational torsion subgroups via Lutz-Nagell on the
// short model Y^2 = X^3 - 27 c4 X - 54 c6.

#include <map>
#include <optional>
#include <vector>

#include "ellq/minimal.hpp"
#include "ellq/weierstrass.hpp"

namespace ellq {

struct Point {
    // infinity when !affine
    bool affine = false;
    Rat x, y;

    static Point at_infinity() { return {}; }
    static Point make(Rat x, Rat y) { return {true, std::move(x), std::move(y)}; }
    bool operator==(const Point&) const = default;
};

inline bool on_curve(const WModel& m, const Point& p) {
    if (!p.affine) return true;
    Rat lhs = p.y * p.y + m.a1 * p.x * p.y + m.a3 * p.y;
    Rat rhs = p.x.pow(3) + m.a2 * p.x * p.x + m.a4 * p.x + m.a6;
    return lhs == rhs;
}

inline Point negate(const WModel& m, const Point& p) {
    if (!p.affine) return p;
    return Point::make(p.x, -p.y - m.a1 * p.x - m.a3);
}

inline Point add(const WModel& m, const Point& p, const Point& q) {
    if (!p.affine) return q;
    if (!q.affine) return p;
    Rat lambda, nu;
    if (p.x == q.x) {
        if (q.y == -p.y - m.a1 * p.x - m.a3) return Point::at_infinity();
        // tangent
        Rat den = Rat(2) * p.y + m.a1 * p.x + m.a3;
        lambda = (Rat(3) * p.x * p.x + Rat(2) * m.a2 * p.x + m.a4 - m.a1 * p.y) / den;
        nu = (-p.x.pow(3) + m.a4 * p.x + Rat(2) * m.a6 - m.a3 * p.y) / den;
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
        nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda + m.a1 * lambda - m.a2 - p.x - q.x;
    Rat y3 = -(lambda + m.a1) * x3 - nu - m.a3;
    return Point::make(std::move(x3), std::move(y3));
}

inline Point mul(const WModel& m, const Point& p, std::uint64_t n) {
    Point acc = Point::at_infinity(), base = p;
    while (n) {
        if (n & 1) acc = add(m, acc, base);
        base = add(m, base, base);
        n >>= 1;
    }
    return acc;
}

// Exact order when <= bound (Mazur's bound 12 suffices for rational torsion);
// nullopt when kP never hits infinity within the bound.
inline std::optional<unsigned> point_order(const WModel& m, const Point& p,
                                           unsigned bound = 12) {
    if (!on_curve(m, p)) throw std::invalid_argument("point_order: point not on curve");
    if (!p.affine) return 1;
    Point acc = p;
    for (unsigned k = 1; k <= bound; ++k) {
        if (!acc.affine) return k;
        acc = add(m, acc, p);
    }
    return std::nullopt;
}

struct TorsionGroup {
    unsigned order = 1;           // group order including infinity
    unsigned n_two_torsion = 0;   // points of exact order 2
    std::vector<Point> points;    // affine torsion points on the input model
    // invariant factors [n] or [2, n]
    std::vector<unsigned> structure() const {
        if (order == 1) return {};
        if (n_two_torsion <= 1) return {order};
        return {2, order / 2};
    }
};

namespace detail {

inline std::vector<Bigint> square_divisor_roots(const Factorization& f) {
    // all y >= 1 with y^2 | value
    std::vector<Bigint> out{Bigint(1)};
    for (const auto& [p, e] : f.factors) {
        std::size_t n = out.size();
        Bigint pk(1);
        for (unsigned k = 1; 2 * k <= e; ++k) {
            pk = pk * p;
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

// Integer roots of the monic cubic X^3 + A X + C: bisection on ranges where
// the integer restriction is provably monotone, plus explicit probes of the
// few integers near the critical points.
inline std::vector<Bigint> monic_cubic_integer_roots(const Bigint& A, const Bigint& C) {
    auto eval = [&](const Bigint& x) { return x.pow(3) + A * x + C; };
    Bigint bound = A.abs() + C.abs() + Bigint(2);  // Cauchy: |root| <= 1 + max(|A|,|C|)
    std::vector<Bigint> roots;
    auto probe = [&](const Bigint& x) {
        if (eval(x).is_zero()) roots.push_back(x);
    };
    // bisect [lo, hi] given f monotone there with direction dir = +-1
    auto bisect = [&](Bigint lo, Bigint hi, int dir) {
        if (lo > hi) return;
        probe(lo);
        probe(hi);
        Bigint flo = eval(lo), fhi = eval(hi);
        if (flo.sign() * dir > 0 || fhi.sign() * dir < 0) return;
        while (hi - lo > Bigint(1)) {
            Bigint mid = (lo + hi) >> 1;
            int s = eval(mid).sign() * dir;
            if (s == 0) { probe(mid); return; }
            if (s < 0) lo = mid;
            else hi = mid;
        }
        probe(lo);
        probe(hi);
    };
    if (A.sign() >= 0) {
        bisect(-bound, bound, +1);
    } else {
        // f decreases exactly on [-s, s], s = sqrt(-A/3)
        Bigint sf = (A.abs() / Bigint(3)).nth_root(2);  // sf <= s < sf + 2
        bisect(-bound, -(sf + Bigint(2)), +1);
        bisect(-sf, sf, -1);
        bisect(sf + Bigint(2), bound, +1);
        for (long long d : {-2, -1, 0, 1, 2}) {
            probe(sf + Bigint(d));
            probe(-(sf + Bigint(d)));
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Bigint& x, const Bigint& y) { return x < y; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace detail

// Rational torsion subgroup. Lutz-Nagell on the short model gives a finite
// candidate list; candidates are certified by exact order computation, so
// the result does not lean on point counts mod p (which can overshoot for
// curves that only locally have extra structure).
inline TorsionGroup torsion_subgroup(const WModel& m, FactorBudget budget = {}) {
    auto zm = ZModel::from_w(m);
    auto v = z_invariants(zm);
    if (v.disc.is_zero()) throw singular_curve_error("torsion of singular curve");
    Bigint A = Bigint(-27) * v.c4, C0 = Bigint(-54) * v.c6;
    WModel shortw{Rat(0), Rat(0), Rat(0), Rat(A), Rat(C0)};
    // torsion candidates: Y = 0 or Y^2 | 6^12 disc
    Factorization f = factorize(Bigint(6).pow(12) * v.disc, budget);
    std::vector<Bigint> ys = detail::square_divisor_roots(f);
    TorsionGroup out;
    auto consider = [&](const Bigint& X, const Bigint& Y) {
        Point p = Point::make(Rat(X), Rat(Y));
        if (!on_curve(shortw, p)) return;
        auto ord = point_order(shortw, p, 16);
        if (!ord || *ord > 12) return;
        ++out.order;
        if (*ord == 2) ++out.n_two_torsion;
        // map back: X = 36x + 3b2, Y = 108(2y + a1 x + a3)
        Rat x = (Rat(X) - Rat(3) * Rat(v.b2)) / Rat(36);
        Rat y = (Rat(Y) / Rat(108) - Rat(zm.a1) * x - Rat(zm.a3)) / Rat(2);
        out.points.push_back(Point::make(x, y));
    };
    for (const Bigint& X : detail::monic_cubic_integer_roots(A, C0)) consider(X, Bigint(0));
    for (const Bigint& y : ys) {
        // X^3 + AX + (C0 - y^2) = 0
        for (const Bigint& X : detail::monic_cubic_integer_roots(A, C0 - y * y)) {
            consider(X, y);
            consider(X, -y);
        }
    }
    for (const Point& p : out.points)
        if (!on_curve(m, p))
            throw internal_consistency_error("torsion point failed to map back");
    return out;
}

}  // namespace ellq
