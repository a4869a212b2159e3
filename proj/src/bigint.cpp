#include "bigint.hpp"

#include "errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace qpool::numerics {

using Limbs = std::vector<uint32_t>;

namespace {
constexpr size_t kLimbBits = 32;
constexpr uint64_t kLimbBase = uint64_t(1) << kLimbBits;
constexpr size_t kKaratsubaThreshold = 48;
} // namespace

// Magnitude (unsigned vector) routines. All inputs/outputs are trimmed.
struct BigIntOps {
    static void trim(Limbs& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    static int ucmp(const Limbs& a, const Limbs& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static Limbs uadd(const Limbs& a, const Limbs& b) {
        const Limbs& hi = a.size() >= b.size() ? a : b;
        const Limbs& lo = a.size() >= b.size() ? b : a;
        Limbs r(hi.size() + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < lo.size(); ++i) {
            uint64_t s = uint64_t(hi[i]) + lo[i] + carry;
            r[i] = uint32_t(s);
            carry = s >> kLimbBits;
        }
        for (size_t i = lo.size(); i < hi.size(); ++i) {
            uint64_t s = uint64_t(hi[i]) + carry;
            r[i] = uint32_t(s);
            carry = s >> kLimbBits;
        }
        r[hi.size()] = uint32_t(carry);
        trim(r);
        return r;
    }

    // requires |a| >= |b|
    static Limbs usub(const Limbs& a, const Limbs& b) {
        Limbs r(a.size(), 0);
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t d = int64_t(a[i]) - (i < b.size() ? int64_t(b[i]) : 0) - borrow;
            if (d < 0) {
                d += int64_t(kLimbBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = uint32_t(d);
        }
        trim(r);
        return r;
    }

    static Limbs umul_school(const Limbs& a, const Limbs& b) {
        if (a.empty() || b.empty()) return {};
        Limbs r(a.size() + b.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a[i];
            for (size_t j = 0; j < b.size(); ++j) {
                uint64_t cur = uint64_t(r[i + j]) + ai * b[j] + carry;
                r[i + j] = uint32_t(cur);
                carry = cur >> kLimbBits;
            }
            size_t k = i + b.size();
            while (carry) {
                uint64_t cur = uint64_t(r[k]) + carry;
                r[k] = uint32_t(cur);
                carry = cur >> kLimbBits;
                ++k;
            }
        }
        trim(r);
        return r;
    }

    static Limbs umul(const Limbs& a, const Limbs& b) {
        if (std::min(a.size(), b.size()) < kKaratsubaThreshold) return umul_school(a, b);
        return umul_karatsuba(a, b);
    }

    static Limbs umul_karatsuba(const Limbs& a, const Limbs& b) {
        const size_t half = (std::max(a.size(), b.size()) + 1) / 2;
        auto low = [&](const Limbs& x) {
            Limbs r(x.begin(), x.begin() + std::min(half, x.size()));
            trim(r);
            return r;
        };
        auto high = [&](const Limbs& x) {
            if (x.size() <= half) return Limbs{};
            Limbs r(x.begin() + half, x.end());
            trim(r);
            return r;
        };
        Limbs a0 = low(a), a1 = high(a);
        Limbs b0 = low(b), b1 = high(b);
        Limbs z0 = umul(a0, b0);
        Limbs z2 = umul(a1, b1);
        Limbs s1 = uadd(a0, a1);
        Limbs s2 = uadd(b0, b1);
        Limbs z1 = umul(s1, s2); // z1 = z0 + z2 + cross
        z1 = usub(z1, z0);
        z1 = usub(z1, z2);
        Limbs r = z0;
        add_shifted(r, z1, half);
        add_shifted(r, z2, 2 * half);
        trim(r);
        return r;
    }

    // r += x * B^shift
    static void add_shifted(Limbs& r, const Limbs& x, size_t shift) {
        if (x.empty()) return;
        if (r.size() < x.size() + shift + 1) r.resize(x.size() + shift + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            uint64_t s = uint64_t(r[i + shift]) + x[i] + carry;
            r[i + shift] = uint32_t(s);
            carry = s >> kLimbBits;
        }
        size_t k = x.size() + shift;
        while (carry) {
            uint64_t s = uint64_t(r[k]) + carry;
            r[k] = uint32_t(s);
            carry = s >> kLimbBits;
            ++k;
        }
    }

    static Limbs umul_small(const Limbs& a, uint32_t m) {
        if (a.empty() || m == 0) return {};
        Limbs r(a.size() + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            uint64_t cur = uint64_t(a[i]) * m + carry;
            r[i] = uint32_t(cur);
            carry = cur >> kLimbBits;
        }
        r[a.size()] = uint32_t(carry);
        trim(r);
        return r;
    }

    static uint32_t udivmod_small(Limbs& a, uint32_t d) {
        uint64_t rem = 0;
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << kLimbBits) | a[i];
            a[i] = uint32_t(cur / d);
            rem = cur % d;
        }
        trim(a);
        return uint32_t(rem);
    }

    static Limbs ushl(const Limbs& a, size_t bits) {
        if (a.empty()) return {};
        const size_t limb_shift = bits / kLimbBits;
        const size_t bit_shift = bits % kLimbBits;
        Limbs r(a.size() + limb_shift + 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            uint64_t v = uint64_t(a[i]) << bit_shift;
            r[i + limb_shift] |= uint32_t(v);
            r[i + limb_shift + 1] |= uint32_t(v >> kLimbBits);
        }
        trim(r);
        return r;
    }

    static Limbs ushr(const Limbs& a, size_t bits) {
        const size_t limb_shift = bits / kLimbBits;
        if (limb_shift >= a.size()) return {};
        const size_t bit_shift = bits % kLimbBits;
        Limbs r(a.begin() + limb_shift, a.end());
        if (bit_shift) {
            for (size_t i = 0; i + 1 < r.size(); ++i) {
                r[i] = uint32_t((r[i] >> bit_shift) | (uint64_t(r[i + 1]) << (kLimbBits - bit_shift)));
            }
            r.back() >>= bit_shift;
        }
        trim(r);
        return r;
    }

    // Knuth algorithm D. Requires |b| > 0.
    static void udivmod(const Limbs& a, const Limbs& b, Limbs& q, Limbs& r) {
        if (ucmp(a, b) < 0) {
            q.clear();
            r = a;
            return;
        }
        if (b.size() == 1) {
            q = a;
            uint32_t rem = udivmod_small(q, b[0]);
            r.clear();
            if (rem) r.push_back(rem);
            return;
        }
        const size_t shift = std::countl_zero(b.back());
        Limbs u = ushl(a, shift);
        Limbs v = ushl(b, shift);
        const size_t n = v.size();
        const size_t m = u.size() - n;
        u.resize(u.size() + 1, 0);
        q.assign(m + 1, 0);
        const uint64_t vtop = v[n - 1];
        const uint64_t vnext = v[n - 2];
        for (size_t j = m + 1; j-- > 0;) {
            uint64_t num = (uint64_t(u[j + n]) << kLimbBits) | u[j + n - 1];
            uint64_t qhat = num / vtop;
            uint64_t rhat = num % vtop;
            if (qhat >= kLimbBase) {
                qhat = kLimbBase - 1;
                rhat = num - qhat * vtop;
            }
            while (rhat < kLimbBase && qhat * vnext > ((rhat << kLimbBits) | u[j + n - 2])) {
                --qhat;
                rhat += vtop;
            }
            // u[j..j+n] -= qhat * v
            int64_t borrow = 0;
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t p = qhat * v[i] + carry;
                carry = p >> kLimbBits;
                int64_t d = int64_t(u[i + j]) - int64_t(p & 0xffffffffull) - borrow;
                if (d < 0) {
                    d += int64_t(kLimbBase);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = uint32_t(d);
            }
            int64_t d = int64_t(u[j + n]) - int64_t(carry) - borrow;
            if (d < 0) {
                // qhat was one too large; add v back
                d += int64_t(kLimbBase);
                --qhat;
                uint64_t c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    uint64_t s = uint64_t(u[i + j]) + v[i] + c2;
                    u[i + j] = uint32_t(s);
                    c2 = s >> kLimbBits;
                }
                d += int64_t(c2);
            }
            u[j + n] = uint32_t(d);
            q[j] = uint32_t(qhat);
        }
        trim(q);
        u.resize(n);
        r = ushr(u, shift);
    }
};

void BigInt::trim() {
    BigIntOps::trim(limbs_);
    if (limbs_.empty()) sign_ = 0;
}

BigInt BigInt::from_magnitude(Limbs limbs, int sign) {
    BigInt r;
    r.limbs_ = std::move(limbs);
    BigIntOps::trim(r.limbs_);
    r.sign_ = r.limbs_.empty() ? 0 : sign;
    return r;
}

BigInt::BigInt(int64_t value) {
    if (value == 0) return;
    sign_ = value < 0 ? -1 : 1;
    uint64_t mag = value < 0 ? ~uint64_t(value) + 1 : uint64_t(value);
    limbs_.push_back(uint32_t(mag));
    if (mag >> kLimbBits) limbs_.push_back(uint32_t(mag >> kLimbBits));
}

BigInt BigInt::from_decimal(std::string_view text) {
    if (text.empty()) throw DomainError("empty integer literal");
    int sign = 1;
    size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        sign = text[0] == '-' ? -1 : 1;
        pos = 1;
    }
    if (pos == text.size()) throw DomainError("bare sign is not an integer");
    BigInt r;
    const BigInt chunk_base(1000000000);
    uint32_t chunk = 0;
    int digits_in_chunk = 0;
    auto flush = [&](int width) {
        static const std::array<uint32_t, 10> pow10 = {1,       10,       100,       1000,      10000,
                                                       100000,  1000000,  10000000,  100000000, 1000000000};
        r = r * BigInt(int64_t(pow10[size_t(width)])) + BigInt(int64_t(chunk));
        chunk = 0;
        digits_in_chunk = 0;
    };
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c < '0' || c > '9') throw DomainError("invalid digit in integer literal");
        chunk = chunk * 10 + uint32_t(c - '0');
        if (++digits_in_chunk == 9) flush(9);
    }
    if (digits_in_chunk) flush(digits_in_chunk);
    if (sign < 0) r.negate();
    return r;
}

BigInt BigInt::power_of_two(size_t bits) {
    BigInt r(1);
    return r.shifted_left(bits);
}

bool BigInt::is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }

bool BigInt::is_even() const { return limbs_.empty() || (limbs_[0] & 1) == 0; }

size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return kLimbBits * (limbs_.size() - 1) + (kLimbBits - size_t(std::countl_zero(limbs_.back())));
}

size_t BigInt::trailing_zero_bits() const {
    if (limbs_.empty()) return 0;
    size_t i = 0;
    while (limbs_[i] == 0) ++i;
    return kLimbBits * i + size_t(std::countr_zero(limbs_[i]));
}

bool BigInt::fits_int64() const {
    if (bit_length() < 64) return true;
    // -2^63 fits exactly
    return bit_length() == 64 && sign_ < 0 && trailing_zero_bits() == 63;
}

int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw DomainError("integer too large for int64");
    uint64_t mag = 0;
    for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << kLimbBits) | limbs_[i];
    return sign_ < 0 ? -int64_t(mag) : int64_t(mag);
}

double BigInt::to_double() const {
    if (is_zero()) return 0.0;
    int64_t exp = 0;
    double m = to_double_scaled(exp);
    return std::ldexp(m, int(exp));
}

double BigInt::to_double_scaled(int64_t& exp2_out) const {
    if (is_zero()) {
        exp2_out = 0;
        return 0.0;
    }
    const size_t bits = bit_length();
    // take the top (up to) 64 bits of the magnitude
    uint64_t top = 0;
    const size_t take = std::min<size_t>(bits, 64);
    for (size_t k = 0; k < take; ++k) {
        const size_t pos = bits - 1 - k;
        const uint32_t limb = limbs_[pos / kLimbBits];
        const uint32_t bit = (limb >> (pos % kLimbBits)) & 1u;
        top = (top << 1) | bit;
    }
    double m = std::ldexp(double(top), -int(take)); // in [0.5, 1)
    exp2_out = int64_t(bits);
    return sign_ < 0 ? -m : m;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    Limbs tmp = limbs_;
    std::string digits;
    while (!tmp.empty()) {
        uint32_t rem = BigIntOps::udivmod_small(tmp, 1000000000u);
        if (tmp.empty()) {
            // most significant chunk, no zero padding
            std::string chunk = std::to_string(rem);
            std::reverse(chunk.begin(), chunk.end());
            digits += chunk;
        } else {
            for (int i = 0; i < 9; ++i) {
                digits += char('0' + rem % 10);
                rem /= 10;
            }
        }
    }
    if (sign_ < 0) digits += '-';
    std::reverse(digits.begin(), digits.end());
    return digits;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::negated() const {
    BigInt r = *this;
    r.negate();
    return r;
}

void BigInt::negate() { sign_ = -sign_; }

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) return BigInt::from_magnitude(BigIntOps::uadd(a.limbs_, b.limbs_), a.sign_);
    const int c = BigIntOps::ucmp(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    if (c > 0) return BigInt::from_magnitude(BigIntOps::usub(a.limbs_, b.limbs_), a.sign_);
    return BigInt::from_magnitude(BigIntOps::usub(b.limbs_, a.limbs_), b.sign_);
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    return BigInt::from_magnitude(BigIntOps::umul(a.limbs_, b.limbs_), a.sign_ * b.sign_);
}

DivModResult divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return {BigInt(), BigInt()};
    Limbs q, r;
    BigIntOps::udivmod(a.limbs_, b.limbs_, q, r);
    DivModResult out;
    out.quot = BigInt::from_magnitude(std::move(q), a.sign_ * b.sign_);
    out.rem = BigInt::from_magnitude(std::move(r), a.sign_);
    return out;
}

BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).quot; }
BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).rem; }

BigInt BigInt::shifted_left(size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    return from_magnitude(BigIntOps::ushl(limbs_, bits), sign_);
}

BigInt BigInt::floor_shr(size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    BigInt r = from_magnitude(BigIntOps::ushr(limbs_, bits), sign_);
    if (sign_ < 0) {
        // floor semantics: round away from zero when bits were dropped
        bool dropped = false;
        const size_t limb_shift = bits / kLimbBits;
        for (size_t i = 0; i < std::min(limb_shift, limbs_.size()) && !dropped; ++i) {
            dropped = limbs_[i] != 0;
        }
        if (!dropped && limb_shift < limbs_.size() && (bits % kLimbBits)) {
            dropped = (limbs_[limb_shift] & ((uint32_t(1) << (bits % kLimbBits)) - 1)) != 0;
        }
        if (dropped) r -= BigInt(1);
    }
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.limbs_.empty() ? 0 : 1;
    b.sign_ = b.limbs_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow(BigInt base, uint64_t exponent) {
    BigInt r(1);
    while (exponent) {
        if (exponent & 1) r *= base;
        exponent >>= 1;
        if (exponent) base *= base;
    }
    return r;
}

SqrtIntResult isqrt(const BigInt& n) {
    if (n.is_negative()) throw DomainError("isqrt of negative integer");
    if (n.is_zero()) return {BigInt(), true};
    const size_t bits = n.bit_length();
    BigInt x;
    if (bits <= 52) {
        x = BigInt(int64_t(std::sqrt(n.to_double())) + 2);
    } else {
        // seed from the top ~52 bits, rounded up to stay >= sqrt(n)
        size_t k = bits - 52;
        if (k & 1) ++k;
        const BigInt top = n.floor_shr(k);
        x = BigInt(int64_t(std::sqrt(top.to_double())) + 2).shifted_left(k / 2);
    }
    // Newton iteration from above converges to floor(sqrt(n))
    while (true) {
        BigInt y = (x + n / x).floor_shr(1);
        if (y >= x) break;
        x = std::move(y);
    }
    return {x, x * x == n};
}

std::strong_ordering BigInt::operator<=>(const BigInt& other) const {
    if (sign_ != other.sign_) return sign_ <=> other.sign_;
    if (sign_ == 0) return std::strong_ordering::equal;
    const int c = BigIntOps::ucmp(limbs_, other.limbs_);
    const int signed_c = sign_ > 0 ? c : -c;
    if (signed_c < 0) return std::strong_ordering::less;
    if (signed_c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool BigInt::operator==(const BigInt& other) const {
    return sign_ == other.sign_ && limbs_ == other.limbs_;
}

} // namespace qpool::numerics
