#pragma once

#include "bigint.hpp"
#include "rational.hpp"

#include <functional>
#include <string>

namespace qpool::numerics {

// Dyadic rational mantissa * 2^exponent. Canonical form keeps the mantissa
// odd (or zero), so equality is plain field comparison.
struct Dyadic {
    BigInt mantissa;
    int64_t exponent = 0;

    Dyadic() = default;
    Dyadic(BigInt m, int64_t e);
    static Dyadic from_int(int64_t v) { return Dyadic(BigInt(v), 0); }

    bool is_zero() const { return mantissa.is_zero(); }
    int sign() const { return mantissa.sign(); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic operator-() const;
    Dyadic scaled_pow2(int64_t k) const; // value * 2^k, exact

    std::strong_ordering operator<=>(const Dyadic& other) const;
    bool operator==(const Dyadic& other) const;

    enum class Round { Down, Up }; // toward -inf / +inf

    // Keep at most `precision_bits` significant bits, rounding directionally.
    Dyadic rounded(size_t precision_bits, Round dir) const;
    static Dyadic div(const Dyadic& a, const Dyadic& b, size_t precision_bits, Round dir);
    static Dyadic sqrt(const Dyadic& x, size_t precision_bits, Round dir);
    static Dyadic from_rational(const ExactRational& r, size_t precision_bits, Round dir);

    BigInt floor() const;
    ExactRational to_rational() const;
    double to_double() const;
    std::string to_string() const; // decimal, for diagnostics
};

// Closed interval [lo, hi] with dyadic endpoints. Every operation returns an
// interval containing the exact real result (outward rounding at
// `precision_bits` working precision).
struct IntervalReal {
    Dyadic lo;
    Dyadic hi;
    size_t precision_bits = 64;

    IntervalReal() = default;
    IntervalReal(Dyadic l, Dyadic h, size_t prec);
    static IntervalReal exact(const Dyadic& v, size_t prec) { return {v, v, prec}; }
    static IntervalReal from_int(int64_t v, size_t prec) { return exact(Dyadic::from_int(v), prec); }
    static IntervalReal from_rational(const ExactRational& r, size_t prec);

    Dyadic width() const { return hi - lo; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
    bool contains(const ExactRational& v) const;
    bool strictly_positive() const { return lo.sign() > 0; }
    bool strictly_negative() const { return hi.sign() < 0; }
    double midpoint_double() const { return (lo.to_double() + hi.to_double()) / 2.0; }

    friend IntervalReal operator+(const IntervalReal& a, const IntervalReal& b);
    friend IntervalReal operator-(const IntervalReal& a, const IntervalReal& b);
    friend IntervalReal operator*(const IntervalReal& a, const IntervalReal& b);
    IntervalReal operator-() const;
    IntervalReal scaled_pow2(int64_t k) const;
    IntervalReal scaled_int(int64_t k) const;

    // Throws DomainError if b contains zero.
    static IntervalReal div(const IntervalReal& a, const IntervalReal& b);
    static IntervalReal div_int(const IntervalReal& a, int64_t k);
};

// pi enclosure; width <= 2^(2 - precision_bits). precision_bits >= 8.
IntervalReal pi_interval(size_t precision_bits);

// Enclosure of arctan over the whole input interval (monotone hull of
// endpoint enclosures).
IntervalReal arctan_interval(const IntervalReal& x, size_t precision_bits);

// Enclosure of sqrt; requires x.lo >= 0.
IntervalReal sqrt_interval(const IntervalReal& x, size_t precision_bits);

// An interval-valued expression re-evaluable at any precision.
using IntervalFn = std::function<IntervalReal(size_t precision_bits)>;

struct CertifiedFloor {
    BigInt value;
    size_t certified_precision_bits;
};

// Unique integer k with k <= numer/denom < k+1, proven by interval
// separation. Refines geometrically from `start_bits` to `cap_bits`;
// throws AmbiguousFloor when the cap is reached while the quotient interval
// still straddles an integer.
CertifiedFloor floor_of_quotient(const IntervalFn& numer, const IntervalFn& denom,
                                 size_t cap_bits = 16384, size_t start_bits = 64);

} // namespace qpool::numerics
