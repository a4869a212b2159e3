#include "bigint.hpp"
#include "errors.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using qpool::numerics::BigInt;
using testsupport::random_bigint;

TEST_CASE("bigint decimal round trips") {
    for (const char* s : {"0", "1", "-1", "42", "-987654321", "100000000000000000000",
                          "-31415926535897932384626433832795028841971",
                          "340282366920938463463374607431768211456"}) {
        CHECK(BigInt::from_decimal(s).to_decimal() == s);
    }
    CHECK(BigInt::from_decimal("+7").to_decimal() == "7");
    CHECK(BigInt::from_decimal("007").to_decimal() == "7");
    CHECK_THROWS_AS(BigInt::from_decimal(""), qpool::DomainError);
    CHECK_THROWS_AS(BigInt::from_decimal("-"), qpool::DomainError);
    CHECK_THROWS_AS(BigInt::from_decimal("12x4"), qpool::DomainError);
    CHECK_THROWS_AS(BigInt::from_decimal("1/2"), qpool::DomainError);
}

TEST_CASE("bigint arithmetic matches int64 on small values") {
    std::mt19937_64 rng(7001);
    std::uniform_int_distribution<int64_t> dist(-1000000000, 1000000000);
    for (int i = 0; i < 2000; ++i) {
        const int64_t a = dist(rng), b = dist(rng);
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
        if (b != 0) {
            CHECK(BigInt(a) / BigInt(b) == BigInt(a / b));
            CHECK(BigInt(a) % BigInt(b) == BigInt(a % b));
        }
    }
}

TEST_CASE("bigint divmod identity on large random operands") {
    std::mt19937_64 rng(7002);
    for (int i = 0; i < 300; ++i) {
        const BigInt a = random_bigint(rng, 700);
        BigInt b = random_bigint(rng, 300);
        if (b.is_zero()) b = BigInt(17);
        const auto dm = divmod(a, b);
        CHECK(dm.quot * b + dm.rem == a);
        CHECK(dm.rem.abs() < b.abs());
        if (!dm.rem.is_zero()) CHECK(dm.rem.sign() == a.sign());
    }
    CHECK_THROWS_AS(BigInt(5) / BigInt(0), qpool::DomainError);
}

TEST_CASE("bigint division survives the rare quotient-estimate add-back") {
    // inputs found by searching for the Knuth algorithm-D branch where the
    // two-limb lookahead still overestimates the digit by one
    struct Case {
        const char *u, *v, *q, *r;
    };
    const Case cases[] = {
        {"79228162514264337593543950336", "39614081257132168796771975169", "1",
         "39614081257132168796771975167"},
        {"93582290631219972813307179200847806463", "39614081257132168805361909759", "2362349135",
         "39614081255286488319726097998"},
        {"143157697070005591051533653761893335039", "39614081257132168801066942463", "3613808335",
         "39614081241610980196138505934"},
    };
    for (const auto& c : cases) {
        const BigInt u = BigInt::from_decimal(c.u);
        const BigInt v = BigInt::from_decimal(c.v);
        const auto dm = divmod(u, v);
        CHECK(dm.quot == BigInt::from_decimal(c.q));
        CHECK(dm.rem == BigInt::from_decimal(c.r));
        CHECK(dm.quot * v + dm.rem == u);
    }
}

TEST_CASE("bigint multiplication is ring-consistent across size regimes") {
    std::mt19937_64 rng(7003);
    // exercises both the schoolbook and Karatsuba paths
    for (size_t bits : {100u, 900u, 2000u, 5000u}) {
        for (int i = 0; i < 20; ++i) {
            const BigInt a = random_bigint(rng, bits);
            const BigInt b = random_bigint(rng, bits);
            const BigInt c = random_bigint(rng, bits);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            const BigInt p(1000000007);
            CHECK(((a * b) % p + p) % p == ((a % p + p) % p * ((b % p + p) % p)) % p);
        }
    }
}

TEST_CASE("bigint shifts") {
    std::mt19937_64 rng(7004);
    for (int i = 0; i < 200; ++i) {
        const BigInt a = random_bigint(rng, 400);
        const size_t k = rng() % 200;
        CHECK(a.shifted_left(k).floor_shr(k) == a);
    }
    CHECK(BigInt(-5).floor_shr(1) == BigInt(-3));
    CHECK(BigInt(-4).floor_shr(1) == BigInt(-2));
    CHECK(BigInt(-1).floor_shr(10) == BigInt(-1));
    CHECK(BigInt::power_of_two(70).to_decimal() == "1180591620717411303424");
}

TEST_CASE("bigint gcd and pow") {
    std::mt19937_64 rng(7005);
    std::uniform_int_distribution<int64_t> dist(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        const int64_t a = dist(rng), b = dist(rng);
        CHECK(BigInt::gcd(BigInt(a), BigInt(b)) == BigInt(std::gcd(a, b)));
    }
    for (int i = 0; i < 50; ++i) {
        const BigInt a = random_bigint(rng, 250);
        const BigInt b = random_bigint(rng, 250);
        const BigInt g = random_bigint(rng, 100, false) + BigInt(1);
        CHECK((BigInt::gcd(a * g, b * g) % g).is_zero());
    }
    CHECK(BigInt::gcd(BigInt(0), BigInt(-6)) == BigInt(6));
    CHECK(BigInt::pow(BigInt(2), 100).to_decimal() == "1267650600228229401496703205376");
    CHECK(BigInt::pow(BigInt(100), 10).to_decimal() == "100000000000000000000");
    CHECK(BigInt::pow(BigInt(7), 0) == BigInt(1));
}

TEST_CASE("bigint isqrt") {
    std::mt19937_64 rng(7006);
    for (int i = 0; i < 200; ++i) {
        const BigInt r = random_bigint(rng, 300, false);
        const auto s = isqrt(r * r);
        CHECK(s.root == r);
        CHECK(s.exact);
    }
    for (int i = 0; i < 200; ++i) {
        const BigInt n = random_bigint(rng, 500, false);
        const auto s = isqrt(n);
        CHECK(s.root * s.root <= n);
        const BigInt next = s.root + BigInt(1);
        CHECK(next * next > n);
    }
    CHECK(isqrt(BigInt(0)).root == BigInt(0));
    CHECK(isqrt(BigInt(99)).root == BigInt(9));
    CHECK_THROWS_AS(isqrt(BigInt(-1)), qpool::DomainError);
}

TEST_CASE("bigint conversions and bit queries") {
    CHECK(BigInt(0).bit_length() == 0);
    CHECK(BigInt(1).bit_length() == 1);
    CHECK(BigInt(255).bit_length() == 8);
    CHECK(BigInt(256).bit_length() == 9);
    CHECK(BigInt(96).trailing_zero_bits() == 5);
    CHECK(BigInt(INT64_MIN).to_int64() == INT64_MIN);
    CHECK(BigInt(INT64_MAX).to_int64() == INT64_MAX);
    CHECK_THROWS_AS((BigInt(INT64_MAX) + BigInt(1)).to_int64(), qpool::DomainError);
    CHECK((BigInt(INT64_MIN) - BigInt(1)).fits_int64() == false);
    CHECK(BigInt::power_of_two(64).to_double() == doctest::Approx(1.8446744073709552e19));
    CHECK(BigInt(-12345).to_double() == -12345.0);
}
