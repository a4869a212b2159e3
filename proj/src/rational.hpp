#pragma once

#include "bigint.hpp"

#include <string>
#include <string_view>

namespace qpool::numerics {

// Signed rational with arbitrary-precision numerator and denominator.
// Always stored in lowest terms with a positive denominator; every
// operation is exact.
class ExactRational {
  public:
    ExactRational() : num_(0), den_(1) {}
    ExactRational(int64_t value) : num_(value), den_(1) {}
    explicit ExactRational(BigInt numerator) : num_(std::move(numerator)), den_(1) {}
    ExactRational(BigInt numerator, BigInt denominator);

    // Caller guarantees gcd(|num|, den) == 1 and den > 0.
    struct AlreadyReduced {};
    ExactRational(BigInt numerator, BigInt denominator, AlreadyReduced)
        : num_(std::move(numerator)), den_(std::move(denominator)) {}

    // Accepts "p", "-p", "p/q" with arbitrary-precision parts.
    static ExactRational parse(std::string_view text);

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    ExactRational operator-() const;
    ExactRational reciprocal() const; // throws DomainError when zero
    ExactRational abs() const;

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b);
    friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
    ExactRational& operator+=(const ExactRational& b) { return *this = *this + b; }
    ExactRational& operator-=(const ExactRational& b) { return *this = *this - b; }
    ExactRational& operator*=(const ExactRational& b) { return *this = *this * b; }
    ExactRational& operator/=(const ExactRational& b) { return *this = *this / b; }

    std::strong_ordering operator<=>(const ExactRational& other) const;
    bool operator==(const ExactRational& other) const;

    BigInt floor() const;
    double to_double() const;
    std::string to_string() const; // "p" when integral, else "p/q"

  private:
    BigInt num_;
    BigInt den_; // > 0
};

// num/den in lowest terms, for denominators whose prime factors all divide
// `base` (e.g. den a power of base). Avoids a full big-gcd: every common
// factor is found through the small-ish base.
ExactRational reduced_over_power(BigInt num, BigInt den, const BigInt& base);

} // namespace qpool::numerics
