#pragma once

// Long Weierstrass models over Q: invariants, admissible changes of
// variables, p-adic signatures.

#include <array>
#include <optional>

#include "ellq/arith.hpp"
#include "ellq/errors.hpp"
#include "ellq/rational.hpp"

namespace ellq {

struct WModel {
    Rat a1, a2, a3, a4, a6;

    bool is_integral() const {
        return a1.is_integer() && a2.is_integer() && a3.is_integer() &&
               a4.is_integer() && a6.is_integer();
    }
    bool operator==(const WModel&) const = default;

    std::string to_string() const {
        return "[" + a1.to_string() + "," + a2.to_string() + "," + a3.to_string() +
               "," + a4.to_string() + "," + a6.to_string() + "]";
    }
};

// Integral model; the Tate engine and the enumeration loops live here.
struct ZModel {
    Bigint a1, a2, a3, a4, a6;

    WModel to_w() const { return {Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6)}; }
    static ZModel from_w(const WModel& m) {
        if (!m.is_integral()) throw std::invalid_argument("model is not integral");
        return {m.a1.as_integer(), m.a2.as_integer(), m.a3.as_integer(),
                m.a4.as_integer(), m.a6.as_integer()};
    }
    bool operator==(const ZModel&) const = default;

    std::string to_string() const {
        return "[" + a1.to_string() + "," + a2.to_string() + "," + a3.to_string() +
               "," + a4.to_string() + "," + a6.to_string() + "]";
    }
};

struct Invariants {
    Rat b2, b4, b6, b8, c4, c6, disc, j;
};

struct ZInvariants {
    Bigint b2, b4, b6, b8, c4, c6, disc;
};

inline ZInvariants z_invariants(const ZModel& m) {
    ZInvariants v;
    v.b2 = m.a1 * m.a1 + Bigint(4) * m.a2;
    v.b4 = Bigint(2) * m.a4 + m.a1 * m.a3;
    v.b6 = m.a3 * m.a3 + Bigint(4) * m.a6;
    v.b8 = m.a1 * m.a1 * m.a6 + Bigint(4) * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
           m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
    v.c4 = v.b2 * v.b2 - Bigint(24) * v.b4;
    v.c6 = Bigint(36) * v.b2 * v.b4 - Bigint(216) * v.b6 - v.b2 * v.b2 * v.b2;
    v.disc = Bigint(9) * v.b2 * v.b4 * v.b6 - v.b2 * v.b2 * v.b8 -
             Bigint(8) * v.b4 * v.b4 * v.b4 - Bigint(27) * v.b6 * v.b6;
    return v;
}

// All eight standard quantities; throws on a singular specialization.
inline Invariants invariants(const WModel& m) {
    Invariants v;
    v.b2 = m.a1 * m.a1 + Rat(4) * m.a2;
    v.b4 = Rat(2) * m.a4 + m.a1 * m.a3;
    v.b6 = m.a3 * m.a3 + Rat(4) * m.a6;
    v.b8 = m.a1 * m.a1 * m.a6 + Rat(4) * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
           m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
    v.c4 = v.b2 * v.b2 - Rat(24) * v.b4;
    v.c6 = Rat(36) * v.b2 * v.b4 - Rat(216) * v.b6 - v.b2.pow(3);
    v.disc = Rat(9) * v.b2 * v.b4 * v.b6 - v.b2 * v.b2 * v.b8 - Rat(8) * v.b4.pow(3) -
             Rat(27) * v.b6 * v.b6;
    if (v.disc.is_zero()) throw singular_curve_error("singular curve: disc = 0");
    v.j = v.c4.pow(3) / v.disc;
    return v;
}

inline Bigint z_disc(const ZModel& m) { return z_invariants(m).disc; }

// psi = [u, r, s, w]: x = u^2 x' + r, y = u^3 y' + u^2 s x' + w.
struct IsomorphismData {
    Rat u, r, s, w;

    static IsomorphismData identity() { return {Rat(1), Rat(0), Rat(0), Rat(0)}; }

    IsomorphismData inverse() const {
        Rat ui = u.inverse();
        return {ui, -r * ui * ui, -s * ui, (r * s - w) * ui.pow(3)};
    }
    // apply *this first, then o
    IsomorphismData then(const IsomorphismData& o) const {
        return {u * o.u, u * u * o.r + r, u * o.s + s,
                u.pow(3) * o.w + u * u * s * o.r + w};
    }
    bool operator==(const IsomorphismData&) const = default;

    std::string to_string() const {
        return "[" + u.to_string() + "," + r.to_string() + "," + s.to_string() + "," +
               w.to_string() + "]";
    }
};

inline WModel change_of_variables(const WModel& m, const IsomorphismData& t) {
    if (t.u.is_zero()) throw std::invalid_argument("change_of_variables: u = 0");
    const Rat &u = t.u, &r = t.r, &s = t.s, &w = t.w;
    WModel out;
    Rat u2 = u * u, u3 = u2 * u;
    out.a1 = (m.a1 + Rat(2) * s) / u;
    out.a2 = (m.a2 - s * m.a1 + Rat(3) * r - s * s) / u2;
    out.a3 = (m.a3 + r * m.a1 + Rat(2) * w) / u3;
    out.a4 = (m.a4 - s * m.a3 + Rat(2) * r * m.a2 - (w + r * s) * m.a1 + Rat(3) * r * r -
              Rat(2) * s * w) /
             (u2 * u2);
    out.a6 = (m.a6 + r * m.a4 + r * r * m.a2 + r.pow(3) - w * m.a3 - w * w -
              r * w * m.a1) /
             (u3 * u3);
    return out;
}

// Integral translation x -> x + r, y -> y + s*x + w; these are the moves
// Tate's algorithm makes, kept in Bigint form.
inline ZModel z_translate(const ZModel& m, const Bigint& r, const Bigint& s,
                          const Bigint& w) {
    ZModel out;
    out.a1 = m.a1 + Bigint(2) * s;
    out.a2 = m.a2 - s * m.a1 + Bigint(3) * r - s * s;
    out.a3 = m.a3 + r * m.a1 + Bigint(2) * w;
    out.a4 = m.a4 - s * m.a3 + Bigint(2) * r * m.a2 - (w + r * s) * m.a1 +
             Bigint(3) * r * r - Bigint(2) * s * w;
    out.a6 = m.a6 + r * m.a4 + r * r * m.a2 + r.pow(3) - w * m.a3 - w * w - r * w * m.a1;
    return out;
}

// a_i -> a_i / p^i; requires exact divisibility (Tate step 11).
inline ZModel z_rescale_down(const ZModel& m, const Bigint& p) {
    return {m.a1.divexact(p), m.a2.divexact(p.pow(2)), m.a3.divexact(p.pow(3)),
            m.a4.divexact(p.pow(4)), m.a6.divexact(p.pow(6))};
}

struct Signature {
    Valuation vc4, vc6, vdisc;
    bool operator==(const Signature&) const = default;
};

inline Signature signature(const WModel& m, const Bigint& p) {
    if (!m.is_integral())
        throw std::invalid_argument("signature: model must be integral at p");
    auto v = z_invariants(ZModel::from_w(m));
    if (v.disc.is_zero()) throw singular_curve_error("signature: singular curve");
    return {valuation(v.c4, p), valuation(v.c6, p), valuation(v.disc, p)};
}

}  // namespace ellq
