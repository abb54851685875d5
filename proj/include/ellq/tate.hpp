#pragma once

// Tate's algorithm over Q, all primes included (no signature shortcuts at
// 2 and 3). Step numbering follows Silverman, ATAEC IV.9.4; step 11 rescales
// and restarts, so any integral model is accepted. Residue computations are
// exact integer lifts throughout.

#include <cassert>
#include <set>
#include <string>
#include <vector>

#include "ellq/minimal.hpp"
#include "ellq/weierstrass.hpp"

namespace ellq {

enum class KodairaKind { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct KodairaType {
    KodairaKind kind = KodairaKind::I0;
    std::uint64_t n = 0;  // for In and In*

    bool operator==(const KodairaType&) const = default;
    std::string to_string() const {
        switch (kind) {
            case KodairaKind::I0: return "I0";
            case KodairaKind::In: return "I" + std::to_string(n);
            case KodairaKind::II: return "II";
            case KodairaKind::III: return "III";
            case KodairaKind::IV: return "IV";
            case KodairaKind::I0star: return "I0*";
            case KodairaKind::Instar: return "I" + std::to_string(n) + "*";
            case KodairaKind::IVstar: return "IV*";
            case KodairaKind::IIIstar: return "III*";
            case KodairaKind::IIstar: return "II*";
        }
        return "?";
    }
};

enum class ReductionClass { good, split_multiplicative, nonsplit_multiplicative, additive };

inline const char* reduction_class_name(ReductionClass c) {
    switch (c) {
        case ReductionClass::good: return "good";
        case ReductionClass::split_multiplicative: return "split-multiplicative";
        case ReductionClass::nonsplit_multiplicative: return "nonsplit-multiplicative";
        case ReductionClass::additive: return "additive";
    }
    return "?";
}

struct LocalReduction {
    Bigint p;
    KodairaType kodaira;
    std::uint64_t c_p = 1;
    std::uint64_t f_p = 0;
    std::uint64_t v_min = 0;  // v_p(disc) of the local minimal model
    ReductionClass cls = ReductionClass::good;
    unsigned rescales = 0;  // step-11 restarts performed
};

namespace tate_detail {

// v_p(x) >= k, with v_p(0) = infinity
inline bool val_ge(const Bigint& x, const Bigint& p, std::uint64_t k) {
    if (x.is_zero()) return true;
    return valuation(x, p).v >= k;
}

struct Fp {
    const Bigint& p;
    bool is2;
    Fp(const Bigint& p_) : p(p_), is2(p_ == Bigint(2)) {}

    Bigint norm(const Bigint& x) const { return x.mod(p); }
    Bigint inv(const Bigint& x) const { return powmod(x, p - Bigint(2), p); }
    Bigint neg(const Bigint& x) const { return (-x).mod(p); }

    // does A y^2 + B y + C have a root in F_p (A nonzero mod p)
    bool quad_has_root(const Bigint& A, const Bigint& B, const Bigint& C) const {
        if (is2) {
            for (long long y = 0; y < 2; ++y) {
                Bigint yy(y);
                if (((A * yy * yy + B * yy + C) % p).is_zero()) return true;
            }
            return false;
        }
        Bigint disc = B * B - Bigint(4) * A * C;
        return jacobi(disc.mod(p), p) >= 0;
    }
    bool quad_separable(const Bigint& A, const Bigint& B, const Bigint& C) const {
        if (is2) return norm(B) != Bigint(0);  // derivative is B
        Bigint disc = B * B - Bigint(4) * A * C;
        return !norm(disc).is_zero();
    }
    // the unique root of an inseparable quadratic
    Bigint quad_double_root(const Bigint& A, const Bigint& B, const Bigint& C) const {
        if (is2) {
            // A y^2 = -C, A odd: y = sqrt(C/A) = C*A mod 2
            return norm(C * A);
        }
        (void)B;
        return norm(-B * inv(Bigint(2) * A));
    }
};

// monic cubic T^3 + b T^2 + c T + d over F_p
struct CubicShape {
    enum Kind { distinct, double_root, triple_root } kind;
    Bigint root;  // double/triple root when applicable
};

inline CubicShape analyze_cubic(const Fp& F, const Bigint& b, const Bigint& c,
                                const Bigint& d) {
    const Bigint& p = F.p;
    if (p <= Bigint(3)) {
        // find a repeated root exhaustively
        for (long long r = 0; r < p.to_i64(); ++r) {
            Bigint R(r);
            Bigint c2 = F.norm(Bigint(3) * R + b);
            Bigint c1 = F.norm(Bigint(3) * R * R + Bigint(2) * b * R + c);
            Bigint c0 = F.norm(R.pow(3) + b * R * R + c * R + d);
            if (!c0.is_zero() || !c1.is_zero()) continue;
            return {c2.is_zero() ? CubicShape::triple_root : CubicShape::double_root, R};
        }
        return {CubicShape::distinct, Bigint(0)};
    }
    Bigint disc = Bigint(18) * b * c * d - Bigint(4) * b.pow(3) * d + b * b * c * c -
                  Bigint(4) * c.pow(3) - Bigint(27) * d * d;
    if (!F.norm(disc).is_zero()) return {CubicShape::distinct, Bigint(0)};
    Bigint x = F.norm(b * b - Bigint(3) * c);
    if (x.is_zero()) return {CubicShape::triple_root, F.norm(-b * F.inv(Bigint(3)))};
    Bigint r = F.norm((Bigint(9) * d - b * c) * F.inv(Bigint(2) * x));
    return {CubicShape::double_root, r};
}

// number of distinct F_p-roots of a separable monic cubic
inline unsigned cubic_rational_roots(const Fp& F, const Bigint& b, const Bigint& c,
                                     const Bigint& d) {
    const Bigint& p = F.p;
    if (p < Bigint(1000)) {
        unsigned cnt = 0;
        for (long long r = 0; r < p.to_i64(); ++r) {
            Bigint R(r);
            if (F.norm(R.pow(3) + b * R * R + c * R + d).is_zero()) ++cnt;
        }
        return cnt;
    }
    // deg gcd(X^p - X, P) via polynomial arithmetic mod P
    using Poly = std::array<Bigint, 3>;  // coefficients of 1, X, X^2
    auto mulmod = [&](const Poly& u, const Poly& v) {
        Bigint prod[5];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) prod[i + j] = prod[i + j] + u[i] * v[j];
        // reduce X^3 = -(b X^2 + c X + d), X^4 = ...
        for (int k = 4; k >= 3; --k) {
            Bigint t = prod[k];
            if (t.is_zero()) continue;
            prod[k] = Bigint(0);
            prod[k - 1] = prod[k - 1] - t * b;
            prod[k - 2] = prod[k - 2] - t * c;
            prod[k - 3] = prod[k - 3] - t * d;
        }
        return Poly{F.norm(prod[0]), F.norm(prod[1]), F.norm(prod[2])};
    };
    Poly base{Bigint(0), Bigint(1), Bigint(0)};  // X
    Poly acc{Bigint(1), Bigint(0), Bigint(0)};   // 1
    Bigint e = p;
    while (!e.is_zero()) {
        if (e.odd()) acc = mulmod(acc, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    // g = X^p - X mod P
    Poly g{acc[0], F.norm(acc[1] - Bigint(1)), acc[2]};
    // gcd(g, P) degree via Euclid; P is monic of degree 3
    std::vector<Bigint> A{F.norm(d), F.norm(c), F.norm(b), Bigint(1)};
    std::vector<Bigint> B{g[0], g[1], g[2]};
    auto trim = [&](std::vector<Bigint>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(B);
    while (!B.empty()) {
        // A mod B
        Bigint lead_inv = F.inv(B.back());
        std::vector<Bigint> R = A;
        while (R.size() >= B.size()) {
            Bigint coef = F.norm(R.back() * lead_inv);
            std::size_t off = R.size() - B.size();
            for (std::size_t i = 0; i < B.size(); ++i)
                R[off + i] = F.norm(R[off + i] - coef * B[i]);
            trim(R);
            if (R.size() >= B.size() && R.back().is_zero()) trim(R);
        }
        A = std::move(B);
        B = std::move(R);
        trim(B);
    }
    return A.empty() ? 0 : static_cast<unsigned>(A.size() - 1);
}

// lift of the singular point of the reduction mod p (v_p(disc) > 0 assumed)
inline std::pair<Bigint, Bigint> singular_point(const ZModel& m, const Bigint& p,
                                                const ZInvariants& iv) {
    if (p <= Bigint(3)) {
        long long pv = p.to_i64();
        for (long long x = 0; x < pv; ++x)
            for (long long y = 0; y < pv; ++y) {
                Bigint X(x), Y(y);
                Bigint Fv = Y * Y + m.a1 * X * Y + m.a3 * Y - X.pow(3) - m.a2 * X * X -
                            m.a4 * X - m.a6;
                Bigint Fx = m.a1 * Y - Bigint(3) * X * X - Bigint(2) * m.a2 * X - m.a4;
                Bigint Fy = Bigint(2) * Y + m.a1 * X + m.a3;
                if ((Fv % p).is_zero() && (Fx % p).is_zero() && (Fy % p).is_zero())
                    return {X, Y};
            }
        throw internal_consistency_error("singular point not found mod " + p.to_string());
    }
    Fp F(p);
    Bigint x0;
    if (val_ge(iv.c4, p, 1)) {
        // cusp: triple root of 4x^3 + b2 x^2 + 2 b4 x + b6
        x0 = F.norm(-iv.b2 * F.inv(Bigint(12)));
    } else {
        // node: the common root of the cubic and its derivative
        // gcd(4x^3+b2x^2+2b4x+b6, 12x^2+2b2x+2b4) is linear
        std::vector<Bigint> A{F.norm(iv.b6), F.norm(Bigint(2) * iv.b4), F.norm(iv.b2),
                              Bigint(4)};
        std::vector<Bigint> B{F.norm(Bigint(2) * iv.b4), F.norm(Bigint(2) * iv.b2),
                              Bigint(12)};
        auto trim = [&](std::vector<Bigint>& v) {
            while (!v.empty() && v.back().is_zero()) v.pop_back();
        };
        while (true) {
            trim(B);
            if (B.empty())
                throw internal_consistency_error("degenerate gcd in singular point");
            if (B.size() == 2) {
                x0 = F.norm(-B[0] * F.inv(B[1]));
                break;
            }
            if (B.size() == 1)
                throw internal_consistency_error("node location failed");
            Bigint lead_inv = F.inv(B.back());
            std::vector<Bigint> R = A;
            while (R.size() >= B.size()) {
                Bigint coef = F.norm(R.back() * lead_inv);
                std::size_t off = R.size() - B.size();
                for (std::size_t i = 0; i < B.size(); ++i)
                    R[off + i] = F.norm(R[off + i] - coef * B[i]);
                trim(R);
            }
            A = std::move(B);
            B = std::move(R);
        }
    }
    Bigint y0 = F.norm(-(m.a1 * x0 + m.a3) * F.inv(Bigint(2)));
    return {x0, y0};
}

// arrange v(a1)>=1, v(a2)>=1, v(a3)>=2, v(a4)>=2, v(a6)>=3 (step 6 entry)
inline ZModel step6_prepare(ZModel m, const Bigint& p) {
    auto ok = [&](const ZModel& mm) {
        return val_ge(mm.a1, p, 1) && val_ge(mm.a2, p, 1) && val_ge(mm.a3, p, 2) &&
               val_ge(mm.a4, p, 2) && val_ge(mm.a6, p, 3);
    };
    if (p >= Bigint(5)) {
        Fp F(p);
        Bigint s = F.norm(-m.a1 * F.inv(Bigint(2)));
        m = z_translate(m, Bigint(0), s, Bigint(0));
        Bigint p2 = p * p;
        Bigint w = (-m.a3 * powmod(Bigint(2), p2 - p2.divexact(p) - Bigint(1), p2)).mod(p2);
        // 2^{-1} mod p^2 via Euler: phi(p^2) = p^2 - p
        m = z_translate(m, Bigint(0), Bigint(0), w);
        if (!ok(m)) throw internal_consistency_error("step6 preparation failed (p>=5)");
        return m;
    }
    long long pv = p.to_i64();
    long long p2 = pv * pv;
    for (long long s = 0; s < pv; ++s)
        for (long long rho = 0; rho < p2; ++rho)
            for (long long w = 0; w < p2; ++w) {
                ZModel cand = z_translate(m, Bigint(rho * pv), Bigint(s), Bigint(w));
                if (ok(cand)) return cand;
            }
    throw internal_consistency_error("step6 preparation failed (small p)");
}

}  // namespace tate_detail

// Complete local reduction data at p for any integral model with disc != 0.
inline LocalReduction tate_local(const ZModel& input, const Bigint& p) {
    using namespace tate_detail;
    if (!is_prime(p)) throw std::invalid_argument("tate_local: p must be prime");
    Fp F(p);
    ZModel m = input;
    unsigned rescales = 0;

    while (true) {
        auto iv = z_invariants(m);
        if (iv.disc.is_zero()) throw singular_curve_error("tate_local: disc = 0");
        std::uint64_t n = valuation_finite(iv.disc, p);

        // Step 1
        if (n == 0)
            return {p, {KodairaKind::I0, 0}, 1, 0, 0, ReductionClass::good, rescales};

        auto [x0, y0] = singular_point(m, p, iv);
        m = z_translate(m, x0, Bigint(0), y0);
        iv = z_invariants(m);
        if (!val_ge(m.a3, p, 1) || !val_ge(m.a4, p, 1) || !val_ge(m.a6, p, 1))
            throw internal_consistency_error("singular point translation failed");

        // Step 2: multiplicative iff p does not divide b2 (tangent directions
        // split iff T^2 + a1 T - a2 has a root)
        if (!val_ge(iv.b2, p, 1)) {
            bool split = F.quad_has_root(Bigint(1), m.a1, -m.a2);
            std::uint64_t c = split ? n : (n % 2 == 0 ? 2 : 1);
            return {p,
                    {KodairaKind::In, n},
                    c,
                    1,
                    n,
                    split ? ReductionClass::split_multiplicative
                          : ReductionClass::nonsplit_multiplicative,
                    rescales};
        }

        // Step 3
        if (!val_ge(m.a6, p, 2))
            return {p, {KodairaKind::II, 0}, 1, n, n, ReductionClass::additive, rescales};
        // Step 4
        if (!val_ge(iv.b8, p, 3))
            return {p, {KodairaKind::III, 0}, 2, n - 1, n, ReductionClass::additive,
                    rescales};
        // Step 5
        if (!val_ge(iv.b6, p, 3)) {
            std::uint64_t c =
                F.quad_has_root(Bigint(1), m.a3.divexact(p), -m.a6.divexact(p * p)) ? 3
                                                                                    : 1;
            return {p, {KodairaKind::IV, 0}, c, n - 2, n, ReductionClass::additive,
                    rescales};
        }

        // Step 6
        m = step6_prepare(m, p);
        Bigint b = m.a2.divexact(p), c3 = m.a4.divexact(p * p), d = m.a6.divexact(p.pow(3));
        auto shape = analyze_cubic(F, F.norm(b), F.norm(c3), F.norm(d));
        if (shape.kind == CubicShape::distinct) {
            unsigned roots = cubic_rational_roots(F, F.norm(b), F.norm(c3), F.norm(d));
            return {p,           {KodairaKind::I0star, 0}, 1 + roots, n - 4, n,
                    ReductionClass::additive, rescales};
        }

        if (shape.kind == CubicShape::double_root) {
            // Step 7: I_m* chain
            m = z_translate(m, p * shape.root, Bigint(0), Bigint(0));
            std::uint64_t q = 2, e = 2;
            std::uint64_t nstar = 0, c = 0;
            while (true) {
                if (q + e > n + 12)
                    throw internal_consistency_error("I_n* chain failed to terminate");
                Bigint a3t = m.a3.divexact(p.pow(q));
                Bigint a6t = m.a6.divexact(p.pow(q + e));
                if (F.quad_separable(Bigint(1), a3t, -a6t)) {
                    nstar = q + e - 3;
                    c = F.quad_has_root(Bigint(1), a3t, -a6t) ? 4 : 2;
                    break;
                }
                m = z_translate(m, Bigint(0), Bigint(0),
                                p.pow(q) * F.quad_double_root(Bigint(1), a3t, -a6t));
                ++q;
                Bigint a2t = m.a2.divexact(p);
                Bigint a4t = m.a4.divexact(p.pow(e + 1));
                a6t = m.a6.divexact(p.pow(q + e));
                if (F.quad_separable(a2t, a4t, a6t)) {
                    nstar = q + e - 3;
                    c = F.quad_has_root(a2t, a4t, a6t) ? 4 : 2;
                    break;
                }
                m = z_translate(m, p.pow(e) * F.quad_double_root(a2t, a4t, a6t), Bigint(0),
                                Bigint(0));
                ++e;
            }
            return {p,           {KodairaKind::Instar, nstar}, c, n - 4 - nstar, n,
                    ReductionClass::additive, rescales};
        }

        // triple root: steps 8-11
        m = z_translate(m, p * shape.root, Bigint(0), Bigint(0));
        Bigint a3t = m.a3.divexact(p * p);
        Bigint a6t = m.a6.divexact(p.pow(4));
        // Step 8
        if (F.quad_separable(Bigint(1), a3t, -a6t)) {
            std::uint64_t c = F.quad_has_root(Bigint(1), a3t, -a6t) ? 3 : 1;
            return {p, {KodairaKind::IVstar, 0}, c, n - 6, n, ReductionClass::additive,
                    rescales};
        }
        m = z_translate(m, Bigint(0), Bigint(0),
                        p * p * F.quad_double_root(Bigint(1), a3t, -a6t));
        // Step 9
        if (!val_ge(m.a4, p, 4))
            return {p, {KodairaKind::IIIstar, 0}, 2, n - 7, n, ReductionClass::additive,
                    rescales};
        // Step 10
        if (!val_ge(m.a6, p, 6))
            return {p, {KodairaKind::IIstar, 0}, 1, n - 8, n, ReductionClass::additive,
                    rescales};
        // Step 11
        m = z_rescale_down(m, p);
        ++rescales;
    }
}

inline LocalReduction tate_local(const WModel& m, const Bigint& p) {
    return tate_local(ZModel::from_w(m), p);
}

inline ReductionClass reduction_class(const WModel& m, const Bigint& p) {
    LocalReduction r = tate_local(m, p);
    if (r.rescales > 0)
        throw std::invalid_argument("reduction_class: model not minimal at p");
    return r.cls;
}

// Primes of bad reduction of the minimal model.
inline std::vector<Bigint> bad_primes(const WModel& m, FactorBudget budget = {}) {
    auto [mm, t] = minimal_model(m, budget);
    Bigint disc = z_invariants(ZModel::from_w(mm)).disc;
    std::vector<Bigint> ps;
    for (const auto& [q, e] : factorize(disc, budget).factors) ps.push_back(q);
    return ps;
}

inline std::pair<Bigint, std::vector<LocalReduction>> global_tamagawa(
    const WModel& m, FactorBudget budget = {}) {
    auto [mm, t] = minimal_model(m, budget);
    Bigint total(1);
    std::vector<LocalReduction> parts;
    for (const Bigint& p : bad_primes(mm, budget)) {
        parts.push_back(tate_local(mm, p));
        total = total * Bigint(parts.back().c_p);
    }
    return {total, parts};
}

// p >= 5: the Kodaira type is a function of the signature of a minimal model.
inline KodairaType kodaira_from_signature(const Signature& sig, const Bigint& p) {
    if (p < Bigint(5))
        throw std::invalid_argument("kodaira_from_signature: p >= 5 required");
    if (sig.vdisc.infinite) throw singular_curve_error("signature of singular curve");
    std::uint64_t n = sig.vdisc.v;
    if (n == 0) return {KodairaKind::I0, 0};
    bool c4_unit = sig.vc4.finite() && sig.vc4.v == 0;
    if (c4_unit) return {KodairaKind::In, n};
    std::uint64_t k = sig.vc4.finite() ? sig.vc4.v : UINT64_MAX;
    switch (n) {
        case 2: return {KodairaKind::II, 0};
        case 3: return {KodairaKind::III, 0};
        case 4: return {KodairaKind::IV, 0};
        case 6: return {KodairaKind::I0star, 0};
        case 8:
            if (k >= 3) return {KodairaKind::IVstar, 0};
            break;
        case 9:
            if (k >= 3) return {KodairaKind::IIIstar, 0};
            break;
        case 10:
            if (k >= 4) return {KodairaKind::IIstar, 0};
            break;
        default: break;
    }
    if (n >= 7 && k == 2) return {KodairaKind::Instar, n - 6};
    throw nonminimal_model_error("signature not in the p >= 5 table (non-minimal model?)");
}

}  // namespace ellq
