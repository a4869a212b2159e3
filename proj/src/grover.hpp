#pragma once

#include "errors.hpp"
#include "interval.hpp"
#include "rational.hpp"

#include <cstdint>
#include <vector>

namespace qpool::grover {

using numerics::BigInt;
using numerics::ExactRational;

// Real-amplitude state of a d-level system with a set of marked indices.
// Float mode: unit-normalized doubles. Exact mode: integer numerators over
// one shared positive denominator, so every operator application is exact
// (the uniform start is the unscaled all-ones vector of squared norm d).
struct State {
    int64_t d = 0;
    std::vector<int64_t> marked; // sorted, unique, 0-based
    std::vector<double> amp;
};

struct ExactState {
    int64_t d = 0;
    std::vector<int64_t> marked;
    std::vector<BigInt> num;
    BigInt den = BigInt(1);
};

// The four unit vectors that frame the search circle.
struct BasisStates {
    std::vector<double> s;     // uniform superposition
    std::vector<double> s_bar; // uniform over unmarked indices
    std::vector<double> w;     // uniform over marked indices
    std::vector<double> w_bar; // on-circle complement orthogonal to s
};

struct CircleCoords {
    double theta = 0.0;
    double off_circle_residual = 0.0;
};

struct IterationPlan {
    int64_t iterations = 0;  // nearest integer to (pi/2 - theta_bar)/(2 theta_bar)
    int64_t closed_form = 0; // floor((pi/4) sqrt((d-n)/n))
    bool agree = false;
};

struct ZeroState : Error {
    using Error::Error;
};

State make_uniform(int64_t d, std::vector<int64_t> marked);
ExactState make_uniform_exact(int64_t d, std::vector<int64_t> marked);

BasisStates basis_states(int64_t d, const std::vector<int64_t>& marked);

// Sign flip on every marked amplitude.
void apply_oracle(State& s);
void apply_oracle(ExactState& s);

// Reflection about the uniform superposition: v -> 2 mean(v) - v.
void apply_diffusion(State& s);
void apply_diffusion(ExactState& s);

// k repetitions of (diffusion . oracle).
void grover_iterate(State& s, uint64_t k);
void grover_iterate(ExactState& s, uint64_t k);

// Half-angle of one Grover rotation step: arcsin(sqrt(n/d)).
double theta_bar(int64_t d, int64_t n);

// Interval-certified iteration count plus the closed form it is compared
// against. Ties in "nearest integer" round up (only d = 2n produces one).
IterationPlan optimal_iterations(int64_t d, int64_t n, size_t precision_cap_bits = 16384);

double success_probability(const State& s);
ExactRational success_probability(const ExactState& s);

double norm_squared(const State& s);
ExactRational norm_squared(const ExactState& s);

ExactRational amplitude(const ExactState& s, int64_t index);

// Circle decomposition of an arbitrary state: theta = atan2(<w|psi>,
// <s_bar|psi>) plus the norm of the off-circle component.
CircleCoords angle_of(const State& s);

} // namespace qpool::grover
