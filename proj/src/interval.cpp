#include "interval.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace qpool::numerics {

namespace {
constexpr size_t kGuardBits = 32;
} // namespace

Dyadic::Dyadic(BigInt m, int64_t e) : mantissa(std::move(m)), exponent(e) {
    if (mantissa.is_zero()) {
        exponent = 0;
        return;
    }
    const size_t tz = mantissa.trailing_zero_bits();
    if (tz) {
        mantissa = mantissa.floor_shr(tz); // exact: trailing bits are zero
        exponent += int64_t(tz);
    }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exponent == b.exponent) return Dyadic(a.mantissa + b.mantissa, a.exponent);
    const Dyadic& lo = a.exponent <= b.exponent ? a : b;
    const Dyadic& hi = a.exponent <= b.exponent ? b : a;
    return Dyadic(hi.mantissa.shifted_left(size_t(hi.exponent - lo.exponent)) + lo.mantissa, lo.exponent);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mantissa * b.mantissa, a.exponent + b.exponent);
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    r.mantissa.negate();
    return r;
}

Dyadic Dyadic::scaled_pow2(int64_t k) const {
    if (is_zero()) return *this;
    Dyadic r = *this;
    r.exponent += k;
    return r;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& other) const {
    const int sa = sign(), sb = other.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // compare most-significant-bit positions before aligning mantissas
    const int64_t pa = exponent + int64_t(mantissa.bit_length());
    const int64_t pb = other.exponent + int64_t(other.mantissa.bit_length());
    if (pa != pb) {
        const bool less = (pa < pb) == (sa > 0);
        return less ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    const Dyadic d = *this - other;
    return d.sign() <=> 0;
}

bool Dyadic::operator==(const Dyadic& other) const {
    return exponent == other.exponent && mantissa == other.mantissa;
}

Dyadic Dyadic::rounded(size_t precision_bits, Round dir) const {
    const size_t bits = mantissa.bit_length();
    if (bits <= precision_bits) return *this;
    const size_t drop = bits - precision_bits;
    BigInt m;
    if (dir == Round::Down) {
        m = mantissa.floor_shr(drop);
    } else {
        m = (mantissa.negated()).floor_shr(drop).negated(); // ceil
    }
    return Dyadic(std::move(m), exponent + int64_t(drop));
}

Dyadic Dyadic::div(const Dyadic& a, const Dyadic& b, size_t precision_bits, Round dir) {
    if (b.is_zero()) throw DomainError("dyadic division by zero");
    if (a.is_zero()) return Dyadic();
    const int64_t la = int64_t(a.mantissa.bit_length());
    const int64_t lb = int64_t(b.mantissa.bit_length());
    const int64_t want = int64_t(precision_bits) + 2;
    const size_t shift = size_t(std::max<int64_t>(0, want - (la - lb)));
    auto dm = divmod(a.mantissa.shifted_left(shift), b.mantissa);
    BigInt q = std::move(dm.quot);
    if (!dm.rem.is_zero()) {
        const bool q_negative = (a.sign() * b.sign()) < 0;
        if (dir == Round::Down && q_negative) q -= BigInt(1);   // trunc rounded up
        if (dir == Round::Up && !q_negative) q += BigInt(1);    // trunc rounded down
    }
    return Dyadic(std::move(q), a.exponent - b.exponent - int64_t(shift)).rounded(precision_bits, dir);
}

Dyadic Dyadic::sqrt(const Dyadic& x, size_t precision_bits, Round dir) {
    if (x.sign() < 0) throw DomainError("sqrt of negative value");
    if (x.is_zero()) return Dyadic();
    const int64_t bits = int64_t(x.mantissa.bit_length());
    int64_t shift = std::max<int64_t>(0, 2 * (int64_t(precision_bits) + 2) - bits);
    if ((x.exponent - shift) & 1) ++shift; // keep the final exponent even
    auto s = isqrt(x.mantissa.shifted_left(size_t(shift)));
    BigInt root = std::move(s.root);
    if (!s.exact && dir == Round::Up) root += BigInt(1);
    return Dyadic(std::move(root), (x.exponent - shift) / 2).rounded(precision_bits, dir);
}

Dyadic Dyadic::from_rational(const ExactRational& r, size_t precision_bits, Round dir) {
    return div(Dyadic(r.numerator(), 0), Dyadic(r.denominator(), 0), precision_bits, dir);
}

BigInt Dyadic::floor() const {
    if (exponent >= 0) return mantissa.shifted_left(size_t(exponent));
    return mantissa.floor_shr(size_t(-exponent));
}

ExactRational Dyadic::to_rational() const {
    if (exponent >= 0) return ExactRational(mantissa.shifted_left(size_t(exponent)));
    // canonical mantissa is odd, so this is already in lowest terms
    return ExactRational(mantissa, BigInt::power_of_two(size_t(-exponent)), ExactRational::AlreadyReduced{});
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    int64_t e = 0;
    const double m = mantissa.to_double_scaled(e);
    const int64_t total = e + exponent;
    if (total > 2000) return sign() > 0 ? HUGE_VAL : -HUGE_VAL;
    if (total < -2000) return 0.0;
    return std::ldexp(m, int(total));
}

std::string Dyadic::to_string() const { return to_rational().to_string(); }

IntervalReal::IntervalReal(Dyadic l, Dyadic h, size_t prec) : lo(std::move(l)), hi(std::move(h)), precision_bits(prec) {
    if (lo > hi) throw DomainError("interval endpoints out of order");
}

IntervalReal IntervalReal::from_rational(const ExactRational& r, size_t prec) {
    return {Dyadic::from_rational(r, prec, Dyadic::Round::Down),
            Dyadic::from_rational(r, prec, Dyadic::Round::Up), prec};
}

bool IntervalReal::contains(const ExactRational& v) const {
    return lo.to_rational() <= v && v <= hi.to_rational();
}

IntervalReal operator+(const IntervalReal& a, const IntervalReal& b) {
    const size_t p = std::max(a.precision_bits, b.precision_bits);
    return {(a.lo + b.lo).rounded(p, Dyadic::Round::Down), (a.hi + b.hi).rounded(p, Dyadic::Round::Up), p};
}

IntervalReal operator-(const IntervalReal& a, const IntervalReal& b) { return a + (-b); }

IntervalReal operator*(const IntervalReal& a, const IntervalReal& b) {
    const size_t p = std::max(a.precision_bits, b.precision_bits);
    const Dyadic c1 = a.lo * b.lo;
    const Dyadic c2 = a.lo * b.hi;
    const Dyadic c3 = a.hi * b.lo;
    const Dyadic c4 = a.hi * b.hi;
    const Dyadic* lo = &c1;
    const Dyadic* hi = &c1;
    for (const Dyadic* c : {&c2, &c3, &c4}) {
        if (*c < *lo) lo = c;
        if (*c > *hi) hi = c;
    }
    return {lo->rounded(p, Dyadic::Round::Down), hi->rounded(p, Dyadic::Round::Up), p};
}

IntervalReal IntervalReal::operator-() const { return {-hi, -lo, precision_bits}; }

IntervalReal IntervalReal::scaled_pow2(int64_t k) const {
    return {lo.scaled_pow2(k), hi.scaled_pow2(k), precision_bits};
}

IntervalReal IntervalReal::scaled_int(int64_t k) const {
    const Dyadic f = Dyadic::from_int(k);
    Dyadic a = lo * f;
    Dyadic b = hi * f;
    if (k < 0) std::swap(a, b);
    return {a.rounded(precision_bits, Dyadic::Round::Down), b.rounded(precision_bits, Dyadic::Round::Up),
            precision_bits};
}

IntervalReal IntervalReal::div(const IntervalReal& a, const IntervalReal& b) {
    if (b.contains_zero()) throw DomainError("interval division by interval containing zero");
    const size_t p = std::max(a.precision_bits, b.precision_bits);
    bool first = true;
    Dyadic lo, hi;
    for (const Dyadic* x : {&a.lo, &a.hi}) {
        for (const Dyadic* y : {&b.lo, &b.hi}) {
            const Dyadic down = Dyadic::div(*x, *y, p, Dyadic::Round::Down);
            const Dyadic up = Dyadic::div(*x, *y, p, Dyadic::Round::Up);
            if (first) {
                lo = down;
                hi = up;
                first = false;
            } else {
                if (down < lo) lo = down;
                if (up > hi) hi = up;
            }
        }
    }
    return {std::move(lo), std::move(hi), p};
}

IntervalReal IntervalReal::div_int(const IntervalReal& a, int64_t k) {
    if (k == 0) throw DomainError("interval division by zero");
    return div(a, IntervalReal::from_int(k, a.precision_bits));
}

namespace {

// Enclosure of arctan at a single dyadic point, via angle-halving
// arctan(x) = 2 arctan(x / (1 + sqrt(1 + x^2))) until |x| <= 1/4, then the
// alternating Taylor series with its first omitted term as tail bound.
IntervalReal arctan_point(const Dyadic& a, size_t working_bits) {
    if (a.is_zero()) return IntervalReal::exact(Dyadic(), working_bits);
    if (a.sign() < 0) return -arctan_point(-a, working_bits);

    const size_t w = working_bits;
    const IntervalReal one = IntervalReal::from_int(1, w);
    const Dyadic quarter(BigInt(1), -2);
    IntervalReal t = IntervalReal::exact(a, w);
    int64_t halvings = 0;
    while (t.hi > quarter) {
        t = IntervalReal::div(t, one + sqrt_interval(one + t * t, w));
        if (++halvings > 300) throw Error("arctan argument reduction failed to converge");
    }

    const size_t terms = w / 4 + 2; // (1/4)^(2J+3)/(2J+3) <= 2^-w
    const IntervalReal tsq = t * t;
    IntervalReal sum = t;
    IntervalReal power = t;
    for (size_t j = 1; j <= terms; ++j) {
        power = power * tsq;
        const IntervalReal term = IntervalReal::div_int(power, int64_t(2 * j + 1));
        sum = (j & 1) ? sum - term : sum + term;
    }
    // widen by the magnitude of the first omitted term
    const IntervalReal next = IntervalReal::div_int(power * tsq, int64_t(2 * terms + 3));
    Dyadic tail = next.hi;
    if ((-next.lo) > tail) tail = -next.lo;
    if (tail.sign() < 0) tail = Dyadic();
    IntervalReal widened{(sum.lo - tail).rounded(w, Dyadic::Round::Down),
                         (sum.hi + tail).rounded(w, Dyadic::Round::Up), w};
    return widened.scaled_pow2(halvings);
}

} // namespace

IntervalReal pi_interval(size_t precision_bits) {
    if (precision_bits < 8) throw DomainError("pi_interval requires at least 8 bits");
    const size_t w = precision_bits + kGuardBits;
    // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)
    const IntervalReal a5 = arctan_interval(IntervalReal::from_rational(ExactRational(1, 5), w), w);
    const IntervalReal a239 = arctan_interval(IntervalReal::from_rational(ExactRational(1, 239), w), w);
    IntervalReal pi = a5.scaled_int(16) - a239.scaled_int(4);
    pi.precision_bits = precision_bits;
    return pi;
}

IntervalReal arctan_interval(const IntervalReal& x, size_t precision_bits) {
    const size_t w = precision_bits + kGuardBits;
    const IntervalReal at_lo = arctan_point(x.lo, w);
    const IntervalReal at_hi = arctan_point(x.hi, w);
    return {at_lo.lo, at_hi.hi, precision_bits}; // arctan is increasing
}

IntervalReal sqrt_interval(const IntervalReal& x, size_t precision_bits) {
    if (x.lo.sign() < 0) throw DomainError("sqrt of interval with negative lower bound");
    return {Dyadic::sqrt(x.lo, precision_bits + 2, Dyadic::Round::Down),
            Dyadic::sqrt(x.hi, precision_bits + 2, Dyadic::Round::Up), precision_bits};
}

CertifiedFloor floor_of_quotient(const IntervalFn& numer, const IntervalFn& denom, size_t cap_bits,
                                 size_t start_bits) {
    if (cap_bits < start_bits) cap_bits = start_bits;
    size_t p = start_bits;
    while (true) {
        const IntervalReal n = numer(p);
        const IntervalReal d = denom(p);
        if (!d.contains_zero()) {
            const IntervalReal q = IntervalReal::div(n, d);
            BigInt flo = q.lo.floor();
            const BigInt fhi = q.hi.floor();
            if (flo == fhi) return {std::move(flo), p};
        }
        if (p >= cap_bits) throw AmbiguousFloor(int(cap_bits));
        p = std::min(p * 2, cap_bits);
    }
}

} // namespace qpool::numerics
