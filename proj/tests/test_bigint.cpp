#include "doctest.h"

#include <cstdint>
#include <random>

#include "ellq/bigint.hpp"

using ellq::Bigint;
using ellq::operator""_Z;

TEST_CASE("bigint basics and string round trips") {
    CHECK(Bigint(0).to_string() == "0");
    CHECK(Bigint(-1).to_string() == "-1");
    CHECK(Bigint(INT64_MIN).to_string() == "-9223372036854775808");
    CHECK(Bigint("12345678901234567890123456789").to_string() ==
          "12345678901234567890123456789");
    CHECK(Bigint("-000123").to_string() == "-123");
    CHECK(("99999999999999999999"_Z + 1_Z).to_string() == "100000000000000000000");
    CHECK((Bigint(2).pow(128)).to_string() == "340282366920938463463374607431768211456");
}

TEST_CASE("bigint arithmetic identities on random operands") {
    std::mt19937_64 rng(12345);
    auto random_big = [&](int limbs) {
        Bigint x(0);
        for (int i = 0; i < limbs; ++i) x = (x << 64) + Bigint(rng());
        if (rng() & 1) x = -x;
        return x;
    };
    for (int iter = 0; iter < 300; ++iter) {
        Bigint a = random_big(1 + static_cast<int>(rng() % 6));
        Bigint b = random_big(1 + static_cast<int>(rng() % 4));
        if (b.is_zero()) b = Bigint(7);
        Bigint q, r;
        Bigint::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
        CHECK((a + b) - b == a);
        CHECK((a * b).divexact(b) == a);
        CHECK(a.mod(b) >= Bigint(0));
        CHECK(a.mod(b) < b.abs());
        CHECK(((a.mod(b)) - a).divisible_by(b));
    }
}

TEST_CASE("bigint small vs wide division agree") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        std::int64_t x = static_cast<std::int64_t>(rng() % 2000000) - 1000000;
        std::int64_t y = static_cast<std::int64_t>(rng() % 999) + 1;
        if (rng() & 1) y = -y;
        Bigint q, r;
        Bigint::divmod(Bigint(x), Bigint(y), q, r);
        CHECK(q.to_i64() == x / y);
        CHECK(r.to_i64() == x % y);
    }
}

TEST_CASE("bigint roots, powers, gcd, shifts") {
    CHECK(Bigint(1000000).nth_root(2) == Bigint(1000));
    CHECK(Bigint(999999).nth_root(2) == Bigint(999));
    CHECK(Bigint("1000000000000000000000000000000").nth_root(3) ==
          Bigint("10000000000"));
    CHECK(Bigint(24).is_perfect_power(3) == false);
    Bigint root;
    CHECK(Bigint(-27).is_perfect_power(3, &root));
    CHECK(root == Bigint(-3));
    CHECK(Bigint::gcd(Bigint(462), Bigint(1071)) == Bigint(21));
    CHECK(Bigint::gcd("123456789012345678901234567890"_Z * 77_Z,
                      "123456789012345678901234567890"_Z * 91_Z) ==
          "123456789012345678901234567890"_Z * 7_Z);
    CHECK((((Bigint(1) << 200) >> 200) == Bigint(1)));
    CHECK((((Bigint(12345) << 67) >> 67) == Bigint(12345)));
}

TEST_CASE("bigint log") {
    CHECK(Bigint(1024).log_abs() == doctest::Approx(std::log(1024.0)));
    Bigint big = Bigint(10).pow(50);
    CHECK(big.log_abs() == doctest::Approx(50.0 * std::log(10.0)));
}
