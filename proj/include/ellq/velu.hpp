#pragma once

// Velu's formulas for the quotient by a cyclic subgroup of odd prime order
// generated by a rational point. The quotient keeps a1, a2, a3 and modifies
// a4, a6.

#include "ellq/points.hpp"

namespace ellq {

inline WModel velu_quotient(const WModel& m, const Point& gen, unsigned ell) {
    if (!is_prime(Bigint(ell)) || ell == 2)
        throw std::invalid_argument("velu_quotient: degree must be an odd prime");
    auto ord = point_order(m, gen);
    if (!ord || *ord != ell)
        throw std::invalid_argument("velu_quotient: point does not have exact order ell");
    auto inv = invariants(m);
    Rat t(0), w(0);
    Point q = gen;
    for (unsigned i = 1; i <= (ell - 1) / 2; ++i) {
        // t_Q = 6x^2 + b2 x + b4, u_Q = 4x^3 + b2 x^2 + 2 b4 x + b6
        const Rat& x = q.x;
        Rat tq = Rat(6) * x * x + inv.b2 * x + inv.b4;
        Rat uq = Rat(4) * x.pow(3) + inv.b2 * x * x + Rat(2) * inv.b4 * x + inv.b6;
        t += tq;
        w += uq + tq * x;
        q = add(m, q, gen);
    }
    WModel out = m;
    out.a4 = m.a4 - Rat(5) * t;
    out.a6 = m.a6 - inv.b2 * t - Rat(7) * w;
    return out;
}

}  // namespace ellq
