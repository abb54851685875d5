#pragma once

// The parameterized curves E_T(a,b) and their ell-isogenous partners
// Etilde_T(a,b), T in {C3, C3_0, C5, C7}, with P = (0,0) of order ell.
// Etilde's a4, a6 come out of Velu's formulas; the tabulated polynomial
// forms act as checksums (see tests).

#include <optional>

#include "ellq/velu.hpp"

namespace ellq {

enum class Family { C3, C3_0, C5, C7 };

inline unsigned family_ell(Family f) { return f == Family::C5 ? 5u : f == Family::C7 ? 7u : 3u; }

inline const char* family_name(Family f) {
    switch (f) {
        case Family::C3: return "C3";
        case Family::C3_0: return "C3_0";
        case Family::C5: return "C5";
        case Family::C7: return "C7";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
    if (s == "C3" || s == "c3") return Family::C3;
    if (s == "C3_0" || s == "c3_0" || s == "C30" || s == "c30" || s == "C3^0")
        return Family::C3_0;
    if (s == "C5" || s == "c5") return Family::C5;
    if (s == "C7" || s == "c7") return Family::C7;
    return std::nullopt;
}

struct ParamSpec {
    Family family;
    Bigint a;
    Bigint b;  // unused for C3_0

    std::string to_string() const {
        std::string s = std::string(family_name(family)) + "(" + a.to_string();
        if (family != Family::C3_0) s += "," + b.to_string();
        return s + ")";
    }
};

// Table coefficients of E_T: y^2 + a1 xy + a3 y = x^3 + a2 x^2.
inline ZModel base_model(const ParamSpec& s) {
    const Bigint &a = s.a, &b = s.b;
    switch (s.family) {
        case Family::C3_0: return {Bigint(0), Bigint(0), a, Bigint(0), Bigint(0)};
        case Family::C3: return {a, Bigint(0), a * a * b, Bigint(0), Bigint(0)};
        case Family::C5: return {a - b, -a * b, -a * a * b, Bigint(0), Bigint(0)};
        case Family::C7:
            return {a * a + a * b - b * b, a * a * b * b - a * b * b * b,
                    a.pow(4) * b * b - a.pow(3) * b.pow(3), Bigint(0), Bigint(0)};
    }
    throw std::logic_error("unreachable");
}

inline void check_spec(const ParamSpec& s) {
    if (s.family == Family::C3_0) {
        if (s.a.sign() <= 0 || !is_kth_power_free(s.a, 3))
            throw degenerate_parameters_error("C3_0 requires a positive cubefree");
        return;
    }
    if (s.a.sign() <= 0) throw degenerate_parameters_error("a must be positive");
    if (s.b.is_zero() || !Bigint::gcd(s.a, s.b).is_one())
        throw degenerate_parameters_error("parameters must be nonzero and coprime");
}

struct CurvePair {
    WModel e;        // E_T, with (0,0) of order ell
    WModel e_tilde;  // E_T / <(0,0)>
    ParamSpec spec;
};

inline CurvePair build_pair(const ParamSpec& s) {
    check_spec(s);
    ZModel zm = base_model(s);
    if (z_disc(zm).is_zero())
        throw degenerate_parameters_error("degenerate parameters: disc = 0 for " +
                                          s.to_string());
    WModel e = zm.to_w();
    WModel et = velu_quotient(e, Point::make(Rat(0), Rat(0)), family_ell(s.family));
    return {std::move(e), std::move(et), s};
}

// Tabulated (a4, a6) of Etilde_T; the C5 a6 entry is the polynomial Velu
// regenerates (the printed source for that entry is garbled).
inline std::pair<Bigint, Bigint> tilde_table_a4a6(const ParamSpec& s) {
    const Bigint &a = s.a, &b = s.b;
    switch (s.family) {
        case Family::C3_0: return {Bigint(0), Bigint(-7) * a * a};
        case Family::C3: return {Bigint(-5) * a.pow(3) * b, -a.pow(4) * b * (a + Bigint(7) * b)};
        case Family::C5:
            return {Bigint(5) * a * b * (a * a - Bigint(2) * a * b - b * b),
                    a * b *
                        (a.pow(4) - Bigint(15) * a.pow(3) * b + Bigint(5) * a * a * b * b -
                         Bigint(10) * a * b.pow(3) - b.pow(4))};
        case Family::C7: {
            Bigint ab = a * b, amb = a - b;
            Bigint a4 = Bigint(5) * ab * amb * (a * a - a * b + b * b) *
                        (a.pow(3) - Bigint(5) * a * a * b + Bigint(2) * a * b * b + b.pow(3));
            Bigint a6 = ab * amb *
                        (a.pow(9) - Bigint(18) * a.pow(8) * b + Bigint(76) * a.pow(7) * b * b -
                         Bigint(182) * a.pow(6) * b.pow(3) + Bigint(211) * a.pow(5) * b.pow(4) -
                         Bigint(132) * a.pow(4) * b.pow(5) + Bigint(70) * a.pow(3) * b.pow(6) -
                         Bigint(37) * a * a * b.pow(7) + Bigint(9) * a * b.pow(8) + b.pow(9));
            return {a4, a6};
        }
    }
    throw std::logic_error("unreachable");
}

// phi_ell: a sign-normalizing isomorphism. The returned spec has positive
// parameters (for C5/C7) and generates a Q-isomorphic curve.
inline ParamSpec normalize_params(Family fam, Bigint a, Bigint b) {
    if (fam == Family::C3_0) {
        ParamSpec s{fam, std::move(a), Bigint(0)};
        check_spec(s);
        return s;
    }
    if (a.is_zero() || b.is_zero() || !Bigint::gcd(a, b).is_one())
        throw degenerate_parameters_error("normalize_params: bad parameters");
    if (a.sign() < 0) { a = -a; b = -b; }  // E_T(a,b) ~ E_T(-a,-b)
    if (b.sign() < 0) {
        if (fam == Family::C5) {
            // phi_5 = [1, ab, -a, 0] lands on E_T(b, -a); composed with the
            // sign flip this is E_T(a,b) ~ E_T(-b, a)
            Bigint na = -b;
            b = std::move(a);
            a = std::move(na);
        } else if (fam == Family::C7) {
            Bigint na = -b, nb = a - b;  // E_T(a,b) ~ E_T(-b, a-b)
            a = std::move(na);
            b = std::move(nb);
        }
        // C3: Table conditions are stated for signed b; keep it
    }
    ParamSpec s{fam, std::move(a), std::move(b)};
    check_spec(s);
    ZModel zm = base_model(s);
    if (z_disc(zm).is_zero())
        throw degenerate_parameters_error("degenerate parameters " + s.to_string());
    return s;
}

inline std::optional<unsigned> torsion_point_order(const WModel& m, const Point& p,
                                                   unsigned bound = 12) {
    return point_order(m, p, bound);
}

// Rational 3-torsion on Etilde_C3(a,b): exists iff a and b are both cubes,
// in which case (s^4 t (s+3t), 4 s^6 t^3) works for a = s^3, b = t^3.
inline std::optional<Point> tilde_c3_torsion(const Bigint& a, const Bigint& b) {
    ParamSpec spec{Family::C3, a, b};
    check_spec(spec);
    if (z_disc(base_model(spec)).is_zero())
        throw degenerate_parameters_error("degenerate parameters");
    Bigint s, t;
    if (!a.is_perfect_power(3, &s) || !b.is_perfect_power(3, &t)) return std::nullopt;
    Bigint x = s.pow(4) * t * (s + Bigint(3) * t);
    Bigint y = Bigint(4) * s.pow(6) * t.pow(3);
    return Point::make(Rat(x), Rat(y));
}

// Rational 3-torsion on Etilde_C3_0(a) for cubefree a: only a = 1, where the
// subgroup is {O, (3,4), (3,-5)}.
inline std::optional<Point> tilde_c30_torsion(const Bigint& a) {
    ParamSpec spec{Family::C3_0, a, Bigint(0)};
    check_spec(spec);
    if (a.is_one()) return Point::make(Rat(3), Rat(4));
    return std::nullopt;
}

}  // namespace ellq
