#pragma once

#include "billiards.hpp"
#include "errors.hpp"
#include "rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qpool::analytic {

using numerics::ExactRational;

enum class Method { Direct, Analytic, Both };

// An integer collision count together with how it was obtained. The count
// is arbitrary precision (at M = 100^N it has N+1 digits). For
// interval-certified counts, certifying_precision_bits records the precision
// that separated the floor; 0 marks an exact algebraic (grazing) case or a
// purely direct count.
struct CountCertificate {
    ExactRational mass_ratio; // M/m
    numerics::BigInt count;
    size_t certifying_precision_bits = 0;
    Method method = Method::Analytic;
    bool agreement = true; // meaningful when method == Both
};

struct Disagreement : Error {
    std::string mass_ratio;
    uint64_t direct_count;
    std::string analytic_count;
    Disagreement(std::string ratio, uint64_t direct, std::string analytic)
        : Error("direct and analytic counts disagree at mass ratio " + ratio + ": " +
                std::to_string(direct) + " vs " + analytic),
          mass_ratio(std::move(ratio)),
          direct_count(direct),
          analytic_count(std::move(analytic)) {}
};

// Collision count for the Galperin start from the rotation-angle picture:
// floor(pi / arctan(sqrt(m/M))), with the exact-angle grazing ratios
// (M/m in {1/3, 1, 3}) handled algebraically as q - 1.
CountCertificate count_collisions_analytic(const ExactRational& heavy_mass,
                                           const ExactRational& light_mass,
                                           size_t precision_cap_bits = 16384);

// Decimal string of the collision count at M = 100^N, i.e. the first N+1
// digits of pi.
std::string pi_digits_via_collisions(uint32_t N, size_t precision_cap_bits = 16384);

// Run the direct and analytic counters side by side over a deterministic
// sweep (small integers, every 100^N in range, random integers, random
// rationals). Throws Disagreement on any split; otherwise every certificate
// comes back with method Both and agreement true.
std::vector<CountCertificate> cross_check(int64_t M_max_direct, int random_samples = 8,
                                          uint64_t seed = 20260808);

} // namespace qpool::analytic
