#pragma once

// Global minimal models by the Laska-Kraus-Connell procedure, the canonical
// reduced model, and the naive height.
//
// A minimal pair (c4, c6) pins the curve up to Q-isomorphism, so the reduced
// minimal model is rebuilt directly from it: b2 is the representative of
// -c6 mod 12 in (-6, 6], which forces a1 in {0,1}, a2 in {-1,0,1},
// a3 in {0,1} and everything else.

#include <optional>

#include "ellq/weierstrass.hpp"

namespace ellq {

// Rebuild the canonical integral model with invariants (c4, c6).
// Returns nullopt when no integral model exists (Kraus obstruction at 2 or 3).
inline std::optional<ZModel> model_from_c4c6(const Bigint& c4, const Bigint& c6) {
    Bigint k = (-c6).mod(Bigint(12));
    Bigint b2 = k <= Bigint(6) ? k : k - Bigint(12);
    Bigint m4 = (b2 % Bigint(4)).mod(Bigint(4));
    if (!(m4.is_zero() || m4.is_one())) return std::nullopt;

    Bigint b4num = b2 * b2 - c4;
    if (!b4num.divisible_by(Bigint(24))) return std::nullopt;
    Bigint b4 = b4num.divexact(Bigint(24));

    Bigint b6num = -b2.pow(3) + Bigint(36) * b2 * b4 - c6;
    if (!b6num.divisible_by(Bigint(216))) return std::nullopt;
    Bigint b6 = b6num.divexact(Bigint(216));

    ZModel m;
    m.a1 = b2.mod(Bigint(2));
    m.a2 = (b2 - m.a1).divexact(Bigint(4));
    m.a3 = b6.mod(Bigint(2));
    Bigint a6num = b6 - m.a3;
    if (!a6num.divisible_by(Bigint(4))) return std::nullopt;
    m.a6 = a6num.divexact(Bigint(4));
    Bigint a4num = b4 - m.a1 * m.a3;
    if (!a4num.divisible_by(Bigint(2))) return std::nullopt;
    m.a4 = a4num.divexact(Bigint(2));

    auto v = z_invariants(m);
    if (v.c4 != c4 || v.c6 != c6) return std::nullopt;
    return m;
}

// Scale factor u of the minimal model: c4_min = c4/u^4, c6_min = c6/u^6.
inline Bigint minimal_scale_from_invariants(const Bigint& c4, const Bigint& c6,
                                            const Bigint& disc, FactorBudget budget = {}) {
    if (disc.is_zero()) throw singular_curve_error("minimal model of singular curve");
    Bigint u(1);
    std::uint64_t cap2 = 0, cap3 = 0;  // divisibility caps at 2 and 3
    for (const auto& [p, e] : factorize(disc, budget).factors) {
        if (e < 12) continue;
        std::uint64_t d = e / 12;
        auto v4 = valuation(c4, p);
        if (v4.finite()) d = std::min(d, v4.v / 4);
        auto v6 = valuation(c6, p);
        if (v6.finite()) d = std::min(d, v6.v / 6);
        if (d == 0) continue;
        if (p == Bigint(2)) cap2 = d;
        else if (p == Bigint(3)) cap3 = d;
        else u = u * p.pow(d);
    }
    // At 2 and 3 divisibility alone can overshoot; take the largest exponents
    // for which an integral model still exists (admissibility at 2 and at 3
    // are independent, so the lexicographic scan is exact).
    for (std::uint64_t d2 = cap2;; --d2) {
        for (std::uint64_t d3 = cap3;; --d3) {
            Bigint cand = u * Bigint(2).pow(d2) * Bigint(3).pow(d3);
            if (model_from_c4c6(c4.divexact(cand.pow(4)), c6.divexact(cand.pow(6))))
                return cand;
            if (d3 == 0) break;
        }
        if (d2 == 0) break;
    }
    throw internal_consistency_error("minimal_scale: no admissible scale found");
}

// Globally minimal model (in reduced form) plus the transformation that
// produces it from the input.
inline std::pair<WModel, IsomorphismData> minimal_model(const WModel& m,
                                                        FactorBudget budget = {}) {
    Bigint den(1);
    for (const Rat* a : {&m.a1, &m.a2, &m.a3, &m.a4, &m.a6})
        den = den * a->den().divexact(Bigint::gcd(den, a->den()));
    IsomorphismData clear{Rat(Bigint(1), den), Rat(0), Rat(0), Rat(0)};
    WModel mi = den.is_one() ? m : change_of_variables(m, clear);
    auto v = z_invariants(ZModel::from_w(mi));
    if (v.disc.is_zero()) throw singular_curve_error("minimal model of singular curve");
    Bigint u = minimal_scale_from_invariants(v.c4, v.c6, v.disc, budget);
    auto zmin = model_from_c4c6(v.c4.divexact(u.pow(4)), v.c6.divexact(u.pow(6)));
    if (!zmin) throw internal_consistency_error("minimal_model: reconstruction failed");
    WModel out = zmin->to_w();

    // recover [u,r,s,w] mapping mi -> out, then prepend the denominator clearing
    Rat ur(u);
    Rat s = (ur * out.a1 - mi.a1) / Rat(2);
    Rat r = (ur * ur * out.a2 - mi.a2 + s * mi.a1 + s * s) / Rat(3);
    Rat w = (ur.pow(3) * out.a3 - mi.a3 - r * mi.a1) / Rat(2);
    IsomorphismData t{ur, r, s, w};
    if (change_of_variables(mi, t) != out)
        throw internal_consistency_error("minimal_model: transform mismatch");
    return {out, den.is_one() ? t : clear.then(t)};
}

// Canonical reduced minimal model: equal outputs iff the inputs are
// Q-isomorphic.
inline WModel reduced_minimal_model(const WModel& m, FactorBudget budget = {}) {
    return minimal_model(m, budget).first;
}

inline bool is_globally_minimal(const WModel& m, FactorBudget budget = {}) {
    if (!m.is_integral()) return false;
    auto v = z_invariants(ZModel::from_w(m));
    if (v.disc.is_zero()) throw singular_curve_error("singular curve");
    return minimal_scale_from_invariants(v.c4, v.c6, v.disc, budget).is_one();
}

// Naive height (1/12) log max(|c4|^3, c6^2) of a globally minimal model.
inline double height(const WModel& m, FactorBudget budget = {}) {
    if (!is_globally_minimal(m, budget))
        throw std::invalid_argument("height: model must be globally minimal");
    auto v = z_invariants(ZModel::from_w(m));
    Bigint c43 = v.c4.abs().pow(3), c62 = v.c6 * v.c6;
    const Bigint& mx = c43 >= c62 ? c43 : c62;
    return mx.log_abs() / 12.0;
}

}  // namespace ellq
