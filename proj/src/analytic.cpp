#include "analytic.hpp"

#include "interval.hpp"

#include <random>

namespace qpool::analytic {

using numerics::arctan_interval;
using numerics::BigInt;
using numerics::floor_of_quotient;
using numerics::IntervalReal;
using numerics::pi_interval;
using numerics::sqrt_interval;

CountCertificate count_collisions_analytic(const ExactRational& heavy_mass,
                                           const ExactRational& light_mass,
                                           size_t precision_cap_bits) {
    if (heavy_mass.sign() <= 0 || light_mass.sign() <= 0) {
        throw DomainError("masses must be positive");
    }
    CountCertificate cert;
    cert.mass_ratio = heavy_mass / light_mass;
    cert.method = Method::Analytic;

    // tan^2(theta_bar) = m/M. By Niven's theorem the step angle is a rational
    // multiple of pi only for tan^2 in {1/3, 1, 3}, i.e. theta_bar in
    // {pi/6, pi/4, pi/3}: the grazing trajectories end exactly on the
    // terminal boundary and the final contact transfers no momentum.
    if (cert.mass_ratio == ExactRational(3)) {
        cert.count = BigInt(5); // q = 6
        return cert;
    }
    if (cert.mass_ratio == ExactRational(1)) {
        cert.count = BigInt(3); // q = 4
        return cert;
    }
    if (cert.mass_ratio == ExactRational(1, 3)) {
        cert.count = BigInt(2); // q = 3
        return cert;
    }

    const ExactRational inverse_ratio = light_mass / heavy_mass;
    auto pi_fn = [](size_t p) { return pi_interval(p); };
    auto theta_fn = [&](size_t p) {
        return arctan_interval(sqrt_interval(IntervalReal::from_rational(inverse_ratio, p), p), p);
    };
    auto floor = floor_of_quotient(pi_fn, theta_fn, precision_cap_bits);
    cert.count = std::move(floor.value);
    cert.certifying_precision_bits = floor.certified_precision_bits;
    return cert;
}

std::string pi_digits_via_collisions(uint32_t N, size_t precision_cap_bits) {
    if (N < 1) throw DomainError("N must be at least 1");
    const ExactRational M(BigInt::pow(BigInt(100), N));
    const CountCertificate cert = count_collisions_analytic(M, ExactRational(1), precision_cap_bits);
    return cert.count.to_decimal();
}

std::vector<CountCertificate> cross_check(int64_t M_max_direct, int random_samples, uint64_t seed) {
    if (M_max_direct < 1) throw DomainError("M_max_direct must be at least 1");
    std::vector<ExactRational> ratios;
    for (int64_t M = 1; M <= std::min<int64_t>(8, M_max_direct); ++M) ratios.emplace_back(M);
    for (BigInt M(100); M <= BigInt(M_max_direct); M *= BigInt(100)) ratios.emplace_back(M);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_samples; ++i) {
        ratios.emplace_back(2 + int64_t(rng() % uint64_t(std::max<int64_t>(1, M_max_direct - 1))));
    }
    const int64_t rational_cap = std::min<int64_t>(M_max_direct, 10000);
    for (int i = 0; i < random_samples; ++i) {
        // random p/q with 1 < p/q <= rational_cap
        const int64_t q = 1 + int64_t(rng() % 30);
        const int64_t p = q + 1 + int64_t(rng() % uint64_t(q * (rational_cap - 1)));
        ratios.emplace_back(p, q);
    }

    std::vector<CountCertificate> out;
    out.reserve(ratios.size());
    for (const ExactRational& ratio : ratios) {
        CountCertificate cert = count_collisions_analytic(ratio, ExactRational(1));
        const uint64_t direct =
            billiards::count_collisions_direct(ratio, ExactRational(1), billiards::Start::Galperin);
        cert.method = Method::Both;
        cert.agreement = BigInt(int64_t(direct)) == cert.count;
        if (!cert.agreement) {
            throw Disagreement(ratio.to_string(), direct, cert.count.to_decimal());
        }
        out.push_back(std::move(cert));
    }
    return out;
}

} // namespace qpool::analytic
