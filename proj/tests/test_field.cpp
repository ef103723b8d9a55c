#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "gpv/field.hpp"

using namespace gpv;

TEST_CASE("least_nonresidue small cases") {
    CHECK(least_nonresidue(5) == 2);   // squares mod 5 = {1,4}
    CHECK(least_nonresidue(7) == 3);   // squares mod 7 = {1,2,4}
    CHECK(least_nonresidue(101) == 2); // 101 = 5 mod 8
}

TEST_CASE("least_nonresidue rejects bad moduli") {
    CHECK_THROWS_AS(least_nonresidue(2), invalid_modulus);
    CHECK_THROWS_AS(least_nonresidue(1), invalid_modulus);
    CHECK_THROWS_AS(least_nonresidue(15), invalid_modulus);
}

TEST_CASE("least_nonresidue minimality") {
    for (u64 p : {5ull, 7ull, 11ull, 101ull, 1373ull, 9371ull}) {
        PrimeModulus pm(p);
        for (u64 m = 2; m < pm.epsilon; ++m)
            CHECK(is_square_fp(m, pm) == SquareClass::square);
        CHECK(is_square_fp(pm.epsilon, pm) == SquareClass::nonsquare);
    }
}

TEST_CASE("qe_pow basics over F_25") {
    PrimeModulus pm(5);
    REQUIRE(pm.epsilon == 2);
    CHECK(qe_pow({1, 0}, 12345, pm) == QuadExtElement{1, 0});
    CHECK(qe_pow({0, 1}, 2, pm) == QuadExtElement{2, 0});  // (sqrt 2)^2 = 2
    CHECK(qe_pow({0, 1}, 8, pm) == QuadExtElement{1, 0});  // ord(sqrt 2) = 8
    CHECK(qe_pow({3, 4}, 0, pm) == qe_one());
}

TEST_CASE("Lagrange: x^(p^2-1) = 1 for all nonzero x") {
    for (u64 p : {5ull, 11ull, 17ull}) {
        PrimeModulus pm(p);
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b) {
                if (a == 0 && b == 0) continue;
                CHECK(qe_pow({a, b}, p * p - 1, pm) == qe_one());
            }
    }
}

TEST_CASE("norm vanishes only at zero") {
    for (u64 p : {5ull, 11ull}) {
        PrimeModulus pm(p);
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b)
                CHECK((qe_norm({a, b}, pm) == 0) == (a == 0 && b == 0));
    }
}

TEST_CASE("is_cube examples") {
    PrimeModulus pm(5);
    CHECK(is_cube({1, 0}, pm));
    for (u64 b = 1; b < 5; ++b) CHECK(is_cube({0, b}, pm));  // F_p-axis of sqrt(eps)
    CHECK_FALSE(is_cube({1, 1}, pm));
    CHECK_THROWS_AS(is_cube({0, 0}, pm), zero_element);
    PrimeModulus pm7(7);  // 7 = 1 mod 3, outside the regime
    CHECK_THROWS_AS(is_cube({1, 1}, pm7), unsupported_congruence);
}

TEST_CASE("cube subgroup has index 3 (exhaustive, p <= 31)") {
    for (u64 p : {5ull, 11ull, 17ull, 23ull, 29ull}) {
        PrimeModulus pm(p);
        u64 cubes = 0;
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b) {
                if (a == 0 && b == 0) continue;
                if (is_cube({a, b}, pm)) ++cubes;
                if (b == 0) CHECK(is_cube({a, b}, pm));  // F_p^x inside the cubes
            }
        CHECK(cubes == (p * p - 1) / 3);
    }
}

TEST_CASE("is_square_fp outcomes") {
    PrimeModulus pm(5);
    CHECK(is_square_fp(4, pm) == SquareClass::square);
    CHECK(is_square_fp(2, pm) == SquareClass::nonsquare);
    CHECK(is_square_fp(0, pm) == SquareClass::zero);
    CHECK(is_square_fp(9, pm) == SquareClass::square);  // reduced mod p first
}

TEST_CASE("sqrt_mod inverts squaring") {
    std::mt19937_64 rng(42);
    for (u64 p : {5ull, 13ull, 17ull, 101ull, 9371ull}) {
        PrimeModulus pm(p);
        for (int i = 0; i < 50; ++i) {
            const u64 t = rng() % (p - 1) + 1;
            const u64 n = mul_mod(t, t, p);
            const u64 s = sqrt_mod(n, pm);
            CHECK(mul_mod(s, s, p) == n);
        }
    }
}
