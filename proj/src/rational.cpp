#include "rational.hpp"

#include "errors.hpp"

#include <cmath>

namespace qpool::numerics {

ExactRational::ExactRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw DomainError("rational with zero denominator");
    if (den_.is_negative()) {
        num_.negate();
        den_.negate();
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ /= g;
        den_ /= g;
    }
}

ExactRational ExactRational::parse(std::string_view text) {
    const size_t slash = text.find('/');
    if (slash == std::string_view::npos) return ExactRational(BigInt::from_decimal(text));
    return ExactRational(BigInt::from_decimal(text.substr(0, slash)),
                         BigInt::from_decimal(text.substr(slash + 1)));
}

ExactRational ExactRational::operator-() const {
    return ExactRational(num_.negated(), den_, AlreadyReduced{});
}

ExactRational ExactRational::reciprocal() const {
    if (num_.is_zero()) throw DomainError("reciprocal of zero");
    BigInt n = den_, d = num_;
    if (d.is_negative()) {
        n.negate();
        d.negate();
    }
    return ExactRational(std::move(n), std::move(d), AlreadyReduced{});
}

ExactRational ExactRational::abs() const {
    return ExactRational(num_.abs(), den_, AlreadyReduced{});
}

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    return ExactRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ExactRational operator-(const ExactRational& a, const ExactRational& b) {
    return ExactRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return ExactRational(a.num_ * b.num_, a.den_ * b.den_);
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    return a * b.reciprocal();
}

std::strong_ordering ExactRational::operator<=>(const ExactRational& other) const {
    return num_ * other.den_ <=> other.num_ * den_;
}

bool ExactRational::operator==(const ExactRational& other) const {
    return num_ == other.num_ && den_ == other.den_;
}

BigInt ExactRational::floor() const {
    auto dm = divmod(num_, den_);
    if (num_.is_negative() && !dm.rem.is_zero()) dm.quot -= BigInt(1);
    return dm.quot;
}

double ExactRational::to_double() const {
    if (num_.is_zero()) return 0.0;
    int64_t en = 0, ed = 0;
    const double mn = num_.to_double_scaled(en);
    const double md = den_.to_double_scaled(ed);
    const int64_t e = en - ed;
    if (e > 2000) return num_.sign() > 0 ? HUGE_VAL : -HUGE_VAL;
    if (e < -2000) return 0.0;
    return std::ldexp(mn / md, int(e));
}

std::string ExactRational::to_string() const {
    if (den_.is_one()) return num_.to_decimal();
    return num_.to_decimal() + "/" + den_.to_decimal();
}

ExactRational reduced_over_power(BigInt num, BigInt den, const BigInt& base) {
    if (num.is_zero()) return ExactRational(0);
    while (!den.is_one()) {
        BigInt g = BigInt::gcd(num, base);
        if (g.is_one()) break;
        g = BigInt::gcd(g, den);
        if (g.is_one()) break;
        num /= g;
        den /= g;
    }
    return ExactRational(std::move(num), std::move(den), ExactRational::AlreadyReduced{});
}

} // namespace qpool::numerics
