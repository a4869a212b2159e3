#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qpool::numerics {

class BigInt;
struct DivModResult;
struct SqrtIntResult;

// Arbitrary-precision signed integer. Sign-magnitude, 32-bit limbs,
// little-endian, no leading zero limbs (zero has an empty limb vector).
class BigInt {
  public:
    BigInt() = default;
    BigInt(int64_t value);

    static BigInt from_decimal(std::string_view text);
    static BigInt power_of_two(size_t bits);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const;
    bool is_even() const;

    size_t bit_length() const;           // 0 for zero
    size_t trailing_zero_bits() const;   // 0 for zero
    bool fits_int64() const;
    int64_t to_int64() const;            // throws DomainError on overflow
    double to_double() const;            // best double approximation (may be inf)
    double to_double_scaled(int64_t& exp2_out) const; // m in [0.5,1), value = m*2^exp
    std::string to_decimal() const;

    BigInt abs() const;
    BigInt negated() const;
    void negate();

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b); // truncates toward zero
    friend BigInt operator%(const BigInt& a, const BigInt& b); // sign follows dividend
    BigInt operator-() const { return negated(); }

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }
    BigInt& operator/=(const BigInt& b) { return *this = *this / b; }
    BigInt& operator%=(const BigInt& b) { return *this = *this % b; }

    BigInt shifted_left(size_t bits) const;
    BigInt floor_shr(size_t bits) const; // floor(value / 2^bits), exact for negatives too

    static BigInt gcd(BigInt a, BigInt b); // nonnegative
    static BigInt pow(BigInt base, uint64_t exponent);

    std::strong_ordering operator<=>(const BigInt& other) const;
    bool operator==(const BigInt& other) const;

  private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> limbs_;  // magnitude

    void trim();
    static BigInt from_magnitude(std::vector<uint32_t> limbs, int sign);

    friend struct BigIntOps; // internal magnitude routines
    friend struct DivModResult;
    friend DivModResult divmod(const BigInt& a, const BigInt& b);
    friend SqrtIntResult isqrt(const BigInt& n);
};

struct DivModResult {
    BigInt quot; // truncated toward zero
    BigInt rem;  // sign follows dividend
};
DivModResult divmod(const BigInt& a, const BigInt& b);

struct SqrtIntResult {
    BigInt root; // floor(sqrt(n))
    bool exact;
};
SqrtIntResult isqrt(const BigInt& n); // n >= 0

} // namespace qpool::numerics
