#include "interval.hpp"
#include "errors.hpp"
#include "support/generators.hpp"
#include "support/pi_reference.hpp"

#include <doctest.h>

#include <random>

using qpool::numerics::BigInt;
using qpool::numerics::CertifiedFloor;
using qpool::numerics::Dyadic;
using qpool::numerics::ExactRational;
using qpool::numerics::IntervalReal;
using qpool::numerics::arctan_interval;
using qpool::numerics::floor_of_quotient;
using qpool::numerics::pi_interval;
using qpool::numerics::sqrt_interval;

namespace {

bool encloses(const IntervalReal& outer, const IntervalReal& inner) {
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

IntervalReal rational_point(int64_t p, int64_t q, size_t prec) {
    return IntervalReal::from_rational(ExactRational(p, q), prec);
}

} // namespace

TEST_CASE("dyadic canonical form and ordering") {
    const Dyadic d(BigInt(12), 0); // 12 = 3 * 2^2
    CHECK(d.mantissa == BigInt(3));
    CHECK(d.exponent == 2);
    CHECK(Dyadic(BigInt(1), 4) > Dyadic(BigInt(15), 0));
    CHECK(Dyadic(BigInt(1), 4) == Dyadic(BigInt(16), 0));
    CHECK(Dyadic(BigInt(-3), 10) < Dyadic(BigInt(1), -10));
    CHECK(Dyadic(BigInt(5), -3).floor() == BigInt(0));
    CHECK(Dyadic(BigInt(-5), -3).floor() == BigInt(-1));
    CHECK(Dyadic(BigInt(7), 2).floor() == BigInt(28));
    CHECK(Dyadic(BigInt(3), -1).to_double() == 1.5);
}

TEST_CASE("dyadic directed rounding brackets the exact value") {
    std::mt19937_64 rng(9001);
    for (int i = 0; i < 200; ++i) {
        const Dyadic v(testsupport::random_bigint(rng, 300), int64_t(rng() % 64) - 32);
        const Dyadic down = v.rounded(48, Dyadic::Round::Down);
        const Dyadic up = v.rounded(48, Dyadic::Round::Up);
        CHECK(down <= v);
        CHECK(v <= up);
        CHECK(down.mantissa.bit_length() <= 49); // ceil can carry one bit
    }
}

TEST_CASE("dyadic division with directed rounding") {
    const Dyadic one(BigInt(1), 0), three(BigInt(3), 0);
    const Dyadic down = Dyadic::div(one, three, 64, Dyadic::Round::Down);
    const Dyadic up = Dyadic::div(one, three, 64, Dyadic::Round::Up);
    CHECK(down < up);
    const ExactRational third(1, 3);
    CHECK(down.to_rational() < third);
    CHECK(up.to_rational() > third);
    CHECK((up - down) <= Dyadic(BigInt(1), -62));
    // exact quotients stay exact in both directions
    CHECK(Dyadic::div(Dyadic(BigInt(10), 0), Dyadic(BigInt(5), 0), 64, Dyadic::Round::Down) ==
          Dyadic(BigInt(2), 0));
    CHECK(Dyadic::div(Dyadic(BigInt(10), 0), Dyadic(BigInt(5), 0), 64, Dyadic::Round::Up) ==
          Dyadic(BigInt(2), 0));
    // negative quotient: down rounds away from zero
    const Dyadic neg = Dyadic::div(Dyadic(BigInt(-1), 0), three, 16, Dyadic::Round::Down);
    CHECK(neg.to_rational() < ExactRational(-1, 3));
}

TEST_CASE("sqrt_interval contracts") {
    const IntervalReal four = IntervalReal::from_int(4, 64);
    const IntervalReal r = sqrt_interval(four, 64);
    CHECK(r.contains(ExactRational(2)));
    CHECK(r.width() <= Dyadic(BigInt(1), -60));

    const IntervalReal two = IntervalReal::from_int(2, 64);
    const IntervalReal s = sqrt_interval(two, 64);
    const IntervalReal sq = s * s;
    CHECK(sq.contains(ExactRational(2)));

    // perfect square of a large value: 100^3 = (10^3 * ... ) ^ lands exactly
    const IntervalReal big = IntervalReal::exact(Dyadic(BigInt::pow(BigInt(100), 3), 0), 64);
    const IntervalReal rb = sqrt_interval(big, 64);
    CHECK(rb.contains(ExactRational(1000)));
    CHECK(rb.lo == rb.hi); // exact perfect square

    CHECK_THROWS_AS(sqrt_interval(IntervalReal::from_int(-1, 64), 64), qpool::DomainError);
}

TEST_CASE("pi_interval certifies the familiar digits") {
    const IntervalReal pi64 = pi_interval(64);
    // 3.14159265358979 <= pi <= 3.14159265358980
    CHECK(pi64.lo.to_rational() >= ExactRational(BigInt::from_decimal("314159265358979"),
                                                 BigInt::from_decimal("100000000000000")));
    CHECK(pi64.hi.to_rational() <= ExactRational(BigInt::from_decimal("314159265358980"),
                                                 BigInt::from_decimal("100000000000000")));
}

TEST_CASE("pi_interval width contract and refinement monotonicity") {
    Dyadic previous_width;
    bool have_previous = false;
    for (size_t prec : {8u, 16u, 64u, 128u, 256u, 1024u}) {
        const IntervalReal pi = pi_interval(prec);
        CHECK(pi.width() <= Dyadic(BigInt(1), 2 - int64_t(prec)));
        if (have_previous) CHECK(pi.width() <= previous_width);
        previous_width = pi.width();
        have_previous = true;
    }
}

TEST_CASE("pi_interval agrees with an independent long-decimal routine") {
    const std::string want = testsupport::pi_digits(30);
    const IntervalReal pi = pi_interval(128);
    const BigInt scale = BigInt::pow(BigInt(10), 29);
    const BigInt lo = (pi.lo * Dyadic(scale, 0)).floor();
    const BigInt hi = (pi.hi * Dyadic(scale, 0)).floor();
    CHECK(lo == hi); // all 30 digits certified at 128 bits
    CHECK(lo.to_decimal() == want);
}

TEST_CASE("pi_interval at 4096 bits certifies 1200 digits") {
    // exercises the deep-precision path (multi-hundred-limb mantissas)
    const std::string want = testsupport::pi_digits(1200);
    const IntervalReal pi = pi_interval(4096);
    const BigInt scale = BigInt::pow(BigInt(10), 1199);
    const BigInt lo = (pi.lo * Dyadic(scale, 0)).floor();
    const BigInt hi = (pi.hi * Dyadic(scale, 0)).floor();
    CHECK(lo == hi);
    CHECK(lo.to_decimal() == want);
}

TEST_CASE("arctan_interval fixed points") {
    // arctan(1) = pi/4
    const IntervalReal at1 = arctan_interval(IntervalReal::from_int(1, 64), 64);
    const IntervalReal pi4 = pi_interval(256).scaled_pow2(-2);
    CHECK(encloses(at1, pi4));

    const IntervalReal at0 = arctan_interval(IntervalReal::from_int(0, 64), 64);
    CHECK(at0.contains(ExactRational(0)));
    CHECK(at0.width() <= Dyadic(BigInt(1), -62));

    // arctan is odd: arctan(-1) encloses -pi/4
    const IntervalReal atm1 = arctan_interval(IntervalReal::from_int(-1, 64), 64);
    CHECK(encloses(atm1, -pi4));

    // large argument goes through extra halvings: arctan(10^6) < pi/2
    const IntervalReal big = arctan_interval(IntervalReal::from_int(1000000, 64), 64);
    const IntervalReal pi2 = pi_interval(256).scaled_pow2(-1);
    CHECK(big.hi < pi2.hi);
    CHECK(big.lo.to_double() == doctest::Approx(std::atan(1e6)).epsilon(1e-12));
}

TEST_CASE("machin identity self-check: 4 arctan(1/5) - arctan(1/239) contains pi/4") {
    const IntervalReal lhs = arctan_interval(rational_point(1, 5, 128), 128).scaled_int(4) -
                             arctan_interval(rational_point(1, 239, 128), 128);
    const IntervalReal pi4 = pi_interval(512).scaled_pow2(-2);
    CHECK(encloses(lhs, pi4));
}

TEST_CASE("containment: tighter enclosures of interior points stay inside") {
    std::mt19937_64 rng(9002);
    for (int i = 0; i < 40; ++i) {
        // interval [a, a + w], interior point near the middle
        const int64_t a_num = int64_t(rng() % 4000) - 2000;
        const IntervalReal x{Dyadic(BigInt(a_num), -10), Dyadic(BigInt(a_num + 512), -10), 64};
        const Dyadic t(BigInt(2 * a_num + 512), -11); // midpoint
        const IntervalReal coarse_at = arctan_interval(x, 64);
        const IntervalReal fine_at = arctan_interval(IntervalReal::exact(t, 256), 256);
        CHECK(encloses(coarse_at, fine_at));
        if (a_num >= 0) {
            const IntervalReal coarse_sq = sqrt_interval(x, 64);
            const IntervalReal fine_sq = sqrt_interval(IntervalReal::exact(t, 256), 256);
            CHECK(encloses(coarse_sq, fine_sq));
        }
    }
}

TEST_CASE("arctan over sign-spanning and negative intervals") {
    // [-1, 2]: endpoint hull must contain arctan of interior points of both signs
    const IntervalReal span{Dyadic(BigInt(-1), 0), Dyadic(BigInt(2), 0), 64};
    const IntervalReal at = arctan_interval(span, 64);
    CHECK(at.lo.sign() < 0);
    CHECK(at.hi.sign() > 0);
    for (const auto& [p, q] : {std::pair<int64_t, int64_t>{-1, 2}, {0, 1}, {3, 2}}) {
        const IntervalReal point = arctan_interval(rational_point(p, q, 256), 256);
        CHECK(encloses(at, point));
    }
    // fully negative interval maps below zero
    const IntervalReal neg{Dyadic(BigInt(-3), 0), Dyadic(BigInt(-1), 0), 64};
    const IntervalReal at_neg = arctan_interval(neg, 64);
    CHECK(at_neg.hi.sign() < 0);
}

TEST_CASE("sqrt_interval touching zero") {
    const IntervalReal x{Dyadic(), Dyadic(BigInt(9), 0), 64};
    const IntervalReal r = sqrt_interval(x, 64);
    CHECK(r.lo == Dyadic());
    CHECK(r.contains(ExactRational(3)));
    CHECK(r.contains(ExactRational(0)));
}

TEST_CASE("floor_of_quotient handles negative quotients") {
    auto neg_pi = [](size_t p) { return -pi_interval(p); };
    auto den = [](size_t p) { return arctan_interval(rational_point(1, 2, p), p); };
    // -pi / arctan(1/2) = -6.77..., floor is -7
    CHECK(floor_of_quotient(neg_pi, den).value == BigInt(-7));
}

TEST_CASE("monotone in the input interval") {
    const IntervalReal narrow{Dyadic(BigInt(3), -3), Dyadic(BigInt(4), -3), 64};
    const IntervalReal wide{Dyadic(BigInt(2), -3), Dyadic(BigInt(5), -3), 64};
    CHECK(encloses(arctan_interval(wide, 64), arctan_interval(narrow, 64)));
    CHECK(encloses(sqrt_interval(wide, 64), sqrt_interval(narrow, 64)));
}

TEST_CASE("refinement never widens arctan or sqrt enclosures") {
    std::mt19937_64 rng(9003);
    for (int i = 0; i < 25; ++i) {
        const int64_t num = int64_t(rng() % 100000);
        Dyadic at_width, sq_width;
        bool first = true;
        for (size_t prec : {64u, 128u, 256u, 512u}) {
            const IntervalReal xa = rational_point(num, 777, prec);
            const Dyadic aw = arctan_interval(xa, prec).width();
            const Dyadic sw = sqrt_interval(xa, prec).width();
            if (!first) {
                CHECK(aw <= at_width);
                CHECK(sw <= sq_width);
            }
            at_width = aw;
            sq_width = sw;
            first = false;
        }
    }
}

TEST_CASE("floor_of_quotient certifies pi / arctan values") {
    auto pi_fn = [](size_t p) { return pi_interval(p); };

    SUBCASE("pi / arctan(1/2) = 6") {
        auto den = [](size_t p) { return arctan_interval(rational_point(1, 2, p), p); };
        const CertifiedFloor f = floor_of_quotient(pi_fn, den);
        CHECK(f.value == BigInt(6));
    }
    SUBCASE("pi / arctan(1/10) = 31") {
        auto den = [](size_t p) { return arctan_interval(rational_point(1, 10, p), p); };
        CHECK(floor_of_quotient(pi_fn, den).value == BigInt(31));
    }
    SUBCASE("pi / arctan(1/sqrt(10^20)) = 31415926535") {
        auto den = [](size_t p) {
            const IntervalReal ratio =
                IntervalReal::from_rational(ExactRational(BigInt(1), BigInt::pow(BigInt(10), 20)), p);
            return arctan_interval(sqrt_interval(ratio, p), p);
        };
        CHECK(floor_of_quotient(pi_fn, den).value == BigInt::from_decimal("31415926535"));
    }
}

TEST_CASE("floor_of_quotient certification invariant") {
    auto pi_fn = [](size_t p) { return pi_interval(p); };
    auto den = [](size_t p) { return arctan_interval(rational_point(1, 7, p), p); };
    const CertifiedFloor f = floor_of_quotient(pi_fn, den);
    CHECK(f.value == BigInt(22)); // pi/arctan(1/7) ~ 22.16
    const size_t p = f.certified_precision_bits;
    const IntervalReal n = pi_fn(p);
    const IntervalReal d = den(p);
    const int64_t k = f.value.to_int64();
    const IntervalReal above = n - d.scaled_int(k);
    const IntervalReal below = n - d.scaled_int(k + 1);
    CHECK(above.strictly_positive());
    CHECK(below.strictly_negative());
}

TEST_CASE("floor_of_quotient raises AmbiguousFloor on exact integer quotients") {
    // pi / arctan(1) = 4 exactly: no precision can separate it
    auto pi_fn = [](size_t p) { return pi_interval(p); };
    auto den = [](size_t p) { return arctan_interval(IntervalReal::from_int(1, p), p); };
    CHECK_THROWS_AS(floor_of_quotient(pi_fn, den, 2048), qpool::AmbiguousFloor);
    try {
        floor_of_quotient(pi_fn, den, 2048);
    } catch (const qpool::AmbiguousFloor& e) {
        CHECK(e.precision_cap_bits == 2048);
    }
}

TEST_CASE("floor_of_quotient result is stable under a larger cap") {
    auto pi_fn = [](size_t p) { return pi_interval(p); };
    auto den = [](size_t p) { return arctan_interval(rational_point(1, 10, p), p); };
    const CertifiedFloor small_cap = floor_of_quotient(pi_fn, den, 4096);
    const CertifiedFloor large_cap = floor_of_quotient(pi_fn, den, 65536);
    CHECK(small_cap.value == large_cap.value);
}
