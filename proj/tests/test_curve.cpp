#include "doctest.h"

#include <random>

#include "ellq/families.hpp"
#include "ellq/minimal.hpp"
#include "ellq/points.hpp"
#include "ellq/weierstrass.hpp"

using namespace ellq;

namespace {
WModel wmodel(long long a1, long long a2, long long a3, long long a4, long long a6) {
    return {Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6)};
}
}  // namespace

TEST_CASE("invariants of reference curves") {
    // y^2 + y = x^3
    auto v = invariants(wmodel(0, 0, 1, 0, 0));
    CHECK(v.c4 == Rat(0));
    CHECK(v.c6 == Rat(-216));
    CHECK(v.disc == Rat(-27));
    CHECK(v.j == Rat(0));

    // y^2 - y = x^3 - x^2, i.e. E_C5(1,1)
    auto w = invariants(wmodel(0, -1, -1, 0, 0));
    CHECK(w.c4 == Rat(16));
    CHECK(w.c6 == Rat(-152));
    CHECK(w.disc == Rat(-11));

    CHECK_THROWS_AS(invariants(wmodel(0, 0, 0, 0, 0)), singular_curve_error);
}

TEST_CASE("invariant identities on random models") {
    std::mt19937_64 rng(4242);
    int tested = 0;
    while (tested < 200) {
        WModel m = wmodel(static_cast<long long>(rng() % 19) - 9,
                          static_cast<long long>(rng() % 19) - 9,
                          static_cast<long long>(rng() % 19) - 9,
                          static_cast<long long>(rng() % 199) - 99,
                          static_cast<long long>(rng() % 199) - 99);
        Invariants v;
        try {
            v = invariants(m);
        } catch (const singular_curve_error&) {
            continue;
        }
        ++tested;
        CHECK(Rat(1728) * v.disc == v.c4.pow(3) - v.c6 * v.c6);
        CHECK(Rat(4) * v.b8 == v.b2 * v.b6 - v.b4 * v.b4);
        CHECK(v.j == v.c4.pow(3) / v.disc);
    }
}

TEST_CASE("change of variables") {
    WModel m = wmodel(1, -2, 3, -4, 5);
    CHECK(change_of_variables(m, IsomorphismData::identity()) == m);
    CHECK_THROWS_AS(change_of_variables(m, {Rat(0), Rat(0), Rat(0), Rat(0)}),
                    std::invalid_argument);

    std::mt19937_64 rng(7);
    auto inv0 = invariants(m);
    for (int i = 0; i < 50; ++i) {
        Rat u(Bigint(1 + static_cast<long long>(rng() % 5)),
              Bigint(1 + static_cast<long long>(rng() % 3)));
        IsomorphismData t{u, Rat(static_cast<long long>(rng() % 11) - 5),
                          Rat(static_cast<long long>(rng() % 11) - 5),
                          Rat(static_cast<long long>(rng() % 11) - 5)};
        WModel m2 = change_of_variables(m, t);
        auto inv2 = invariants(m2);
        CHECK(inv2.c4 == inv0.c4 / u.pow(4));
        CHECK(inv2.c6 == inv0.c6 / u.pow(6));
        CHECK(inv2.disc == inv0.disc / u.pow(12));
        CHECK(inv2.j == inv0.j);
        // inverse and composition round trips
        CHECK(change_of_variables(m2, t.inverse()) == m);
        IsomorphismData t2{Rat(2), Rat(1), Rat(-1), Rat(3)};
        CHECK(change_of_variables(change_of_variables(m, t), t2) ==
              change_of_variables(m, t.then(t2)));
    }

    // [1/4,3,3,4] carries y^2+y=x^3-7 to y^2+24xy+576y=x^3, pinning the
    // coordinate convention
    WModel tilde30 = wmodel(0, 0, 1, 0, -7);
    WModel image =
        change_of_variables(tilde30, {Rat(Bigint(1), Bigint(4)), Rat(3), Rat(3), Rat(4)});
    CHECK(image == wmodel(24, 0, 576, 0, 0));
}

TEST_CASE("signatures") {
    // Etilde_C3_0(3): y^2 + 3y = x^3 - 63
    WModel m = wmodel(0, 0, 3, 0, -63);
    auto s = signature(m, Bigint(3));
    CHECK(s.vc4.infinite);
    CHECK(s.vc6 == Valuation{false, 8});
    CHECK(s.vdisc == Valuation{false, 13});

    WModel e511 = wmodel(0, -1, -1, 0, 0);
    auto s11 = signature(e511, Bigint(11));
    CHECK(s11 == Signature{{false, 0}, {false, 0}, {false, 1}});
    auto s5 = signature(e511, Bigint(5));
    CHECK(s5 == Signature{{false, 0}, {false, 0}, {false, 0}});

    CHECK_THROWS_AS(
        signature({Rat(Bigint(1), Bigint(2)), Rat(0), Rat(0), Rat(0), Rat(1)}, Bigint(2)),
        std::invalid_argument);
}

TEST_CASE("minimal and reduced models") {
    // E_C5(1,1) is already minimal; reduced form is [0,-1,1,0,0]
    WModel e511 = wmodel(0, -1, -1, 0, 0);
    CHECK(is_globally_minimal(e511));
    auto [min511, t511] = minimal_model(e511);
    CHECK(min511 == wmodel(0, -1, 1, 0, 0));
    CHECK(invariants(min511).disc == Rat(-11));

    // y^2 = x^3 + 2^12 x is y^2 = x^3 + x scaled by u = 8
    WModel big = wmodel(0, 0, 0, 4096, 0);
    CHECK_FALSE(is_globally_minimal(big));
    auto [minbig, tbig] = minimal_model(big);
    CHECK(tbig.u == Rat(8));
    CHECK(minbig == wmodel(0, 0, 0, 1, 0));
    CHECK(is_globally_minimal(minbig));

    // E_C3(a,b) with a = c^3 d^2 e: the minimal scale is c^2 d
    for (auto [a, b] : {std::pair<long long, long long>{24, 1},
                        {72, 5},
                        {216, -1},
                        {500, 3},
                        {27, 2}}) {
        ParamSpec s{Family::C3, Bigint(a), Bigint(b)};
        auto cd = cube_decompose(Bigint(a));
        auto [mm, tt] = minimal_model(base_model(s).to_w());
        CHECK(tt.u == Rat(cd.c * cd.c * cd.d));
        CHECK(is_globally_minimal(mm));
    }

    // minimal models keep j and have integral coefficients
    for (const WModel* m :
         {&e511, &big}) {
        auto [mm, t] = minimal_model(*m);
        CHECK(mm.is_integral());
        CHECK(invariants(mm).j == invariants(*m).j);
    }

    // reduced model is canonical on isomorphism orbits
    std::mt19937_64 rng(99);
    WModel base = wmodel(1, 0, 1, -7, 6);
    WModel red = reduced_minimal_model(base);
    CHECK(reduced_minimal_model(red) == red);  // idempotent
    const Rat us[] = {Rat(1), Rat(2), Rat(3), Rat(Bigint(1), Bigint(2))};
    for (int i = 0; i < 40; ++i) {
        IsomorphismData t{us[rng() % 4], Rat(static_cast<long long>(rng() % 7) - 3),
                          Rat(static_cast<long long>(rng() % 7) - 3),
                          Rat(static_cast<long long>(rng() % 7) - 3)};
        CHECK(reduced_minimal_model(change_of_variables(base, t)) == red);
    }
    // reduced models have pinned a1, a2, a3
    for (long long k = 1; k < 30; ++k) {
        WModel r = reduced_minimal_model(wmodel(k % 5, -(k % 7), k % 3, k, k + 1));
        auto za = ZModel::from_w(r);
        CHECK((za.a1 == Bigint(0) || za.a1 == Bigint(1)));
        CHECK((za.a3 == Bigint(0) || za.a3 == Bigint(1)));
        CHECK((za.a2 >= Bigint(-1) && za.a2 <= Bigint(1)));
    }
}

TEST_CASE("height") {
    WModel e511r = wmodel(0, -1, 1, 0, 0);
    double h = height(e511r);
    CHECK(h == doctest::Approx(std::log(23104.0) / 12.0).epsilon(1e-12));
    CHECK_THROWS_AS(height(wmodel(0, 0, 0, 4096, 0)), std::invalid_argument);
}

TEST_CASE("point arithmetic and orders") {
    WModel e511 = wmodel(0, -1, -1, 0, 0);
    Point p = Point::make(Rat(0), Rat(0));
    CHECK(on_curve(e511, p));
    CHECK(point_order(e511, p) == 5u);

    WModel e30 = wmodel(0, 0, 1, 0, 0);
    CHECK(point_order(e30, Point::make(Rat(0), Rat(0))) == 3u);

    // Etilde_C3(1,1): y^2 + xy + y = x^3 - 5x - 8, with (4,4) of order 3
    WModel t31 = wmodel(1, 0, 1, -5, -8);
    CHECK(on_curve(t31, Point::make(Rat(4), Rat(4))));
    CHECK(point_order(t31, Point::make(Rat(4), Rat(4))) == 3u);

    CHECK_THROWS_AS(point_order(e511, Point::make(Rat(5), Rat(5))),
                    std::invalid_argument);

    Point q = mul(e511, p, 2);
    CHECK(add(e511, q, negate(e511, q)) == Point::at_infinity());
    CHECK(add(e511, p, q) == mul(e511, p, 3));
    CHECK(mul(e511, p, 5) == Point::at_infinity());
}

TEST_CASE("torsion subgroups") {
    // X_1(11): Z/5
    auto t11 = torsion_subgroup(wmodel(0, -1, 1, 0, 0));
    CHECK(t11.order == 5);
    CHECK(t11.n_two_torsion == 0);
    CHECK(t11.structure() == std::vector<unsigned>{5});

    // y^2 + y = x^3: Z/3
    auto t27 = torsion_subgroup(wmodel(0, 0, 1, 0, 0));
    CHECK(t27.order == 3);

    // y^2 = x^3 - x: full 2-torsion
    auto t32 = torsion_subgroup(wmodel(0, 0, 0, -1, 0));
    CHECK(t32.order == 4);
    CHECK(t32.n_two_torsion == 3);
    CHECK((t32.structure() == std::vector<unsigned>{2, 2}));

    // y^2 = x^3 + 4x: Z/4
    auto t4 = torsion_subgroup(wmodel(0, 0, 0, 4, 0));
    CHECK(t4.order == 4);
    CHECK(t4.n_two_torsion == 1);
    CHECK(t4.structure() == std::vector<unsigned>{4});

    // a C7 member carries Z/7
    auto e7 = base_model(ParamSpec{Family::C7, Bigint(2), Bigint(1)}).to_w();
    auto t7 = torsion_subgroup(e7);
    CHECK(t7.order % 7 == 0);
}
