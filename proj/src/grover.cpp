#include "grover.hpp"

#include <algorithm>
#include <cmath>

namespace qpool::grover {

using numerics::arctan_interval;
using numerics::floor_of_quotient;
using numerics::IntervalReal;
using numerics::pi_interval;
using numerics::sqrt_interval;

namespace {

std::vector<int64_t> checked_marked(int64_t d, std::vector<int64_t> marked) {
    if (d < 2) throw DomainError("dimension must be at least 2");
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    if (marked.empty()) throw DomainError("marked set must not be empty");
    if (int64_t(marked.size()) >= d) throw DomainError("marked set must not cover every index");
    if (marked.front() < 0 || marked.back() >= d) throw DomainError("marked index out of range");
    return marked;
}

void check_counts(int64_t d, int64_t n) {
    if (d < 2) throw DomainError("dimension must be at least 2");
    if (n < 1 || n >= d) throw DomainError("needle count must satisfy 1 <= n < d");
}

} // namespace

State make_uniform(int64_t d, std::vector<int64_t> marked) {
    State s;
    s.d = d;
    s.marked = checked_marked(d, std::move(marked));
    s.amp.assign(size_t(d), 1.0 / std::sqrt(double(d)));
    return s;
}

ExactState make_uniform_exact(int64_t d, std::vector<int64_t> marked) {
    ExactState s;
    s.d = d;
    s.marked = checked_marked(d, std::move(marked));
    s.num.assign(size_t(d), BigInt(1));
    s.den = BigInt(1);
    return s;
}

BasisStates basis_states(int64_t d, const std::vector<int64_t>& marked_in) {
    const std::vector<int64_t> marked = checked_marked(d, marked_in);
    const int64_t n = int64_t(marked.size());
    BasisStates b;
    b.s.assign(size_t(d), 1.0 / std::sqrt(double(d)));
    b.s_bar.assign(size_t(d), 1.0 / std::sqrt(double(d - n)));
    b.w.assign(size_t(d), 0.0);
    for (int64_t i : marked) {
        b.s_bar[size_t(i)] = 0.0;
        b.w[size_t(i)] = 1.0 / std::sqrt(double(n));
    }
    // on-circle complement of s: cos(tb) |w> - sin(tb) |s_bar>
    const double cos_tb = std::sqrt(double(d - n) / double(d));
    const double sin_tb = std::sqrt(double(n) / double(d));
    b.w_bar.assign(size_t(d), 0.0);
    for (size_t i = 0; i < size_t(d); ++i) {
        b.w_bar[i] = cos_tb * b.w[i] - sin_tb * b.s_bar[i];
    }
    return b;
}

void apply_oracle(State& s) {
    for (int64_t i : s.marked) s.amp[size_t(i)] = -s.amp[size_t(i)];
}

void apply_oracle(ExactState& s) {
    for (int64_t i : s.marked) s.num[size_t(i)].negate();
}

void apply_diffusion(State& s) {
    double sum = 0.0;
    for (double a : s.amp) sum += a;
    const double twice_mean = 2.0 * sum / double(s.d);
    for (double& a : s.amp) a = twice_mean - a;
}

void apply_diffusion(ExactState& s) {
    BigInt sum;
    for (const BigInt& a : s.num) sum += a;
    const BigInt twice_sum = sum + sum;
    const BigInt dim = BigInt(s.d);
    for (BigInt& a : s.num) a = twice_sum - dim * a;
    s.den *= dim;
}

void grover_iterate(State& s, uint64_t k) {
    for (uint64_t i = 0; i < k; ++i) {
        apply_oracle(s);
        apply_diffusion(s);
    }
}

void grover_iterate(ExactState& s, uint64_t k) {
    for (uint64_t i = 0; i < k; ++i) {
        apply_oracle(s);
        apply_diffusion(s);
    }
}

double theta_bar(int64_t d, int64_t n) {
    check_counts(d, n);
    return std::asin(std::sqrt(double(n) / double(d)));
}

IterationPlan optimal_iterations(int64_t d, int64_t n, size_t precision_cap_bits) {
    check_counts(d, n);
    IterationPlan plan;

    // closed form floor((pi/4) sqrt((d-n)/n)); pi times an algebraic number
    // is never an integer, so the certified floor always exists
    auto closed_numer = [&](size_t p) {
        return pi_interval(p) * sqrt_interval(IntervalReal::from_rational(ExactRational(d - n, n), p), p);
    };
    auto four = [](size_t p) { return IntervalReal::from_int(4, p); };
    plan.closed_form = floor_of_quotient(closed_numer, four, precision_cap_bits).value.to_int64();

    if (d == 2 * n) {
        // theta_bar = pi/4 exactly: (pi/2 - tb)/(2 tb) = 1/2, the lone tie
        plan.iterations = 1;
    } else {
        // nearest integer to (pi/2 - tb)/(2 tb) == floor(pi / (4 tb)),
        // certifiable because pi/(4 tb) is an integer only at the tie above
        auto pi_fn = [](size_t p) { return pi_interval(p); };
        auto denom = [&](size_t p) {
            const IntervalReal tangent =
                sqrt_interval(IntervalReal::from_rational(ExactRational(n, d - n), p), p);
            return arctan_interval(tangent, p).scaled_int(4);
        };
        plan.iterations = floor_of_quotient(pi_fn, denom, precision_cap_bits).value.to_int64();
    }
    plan.agree = plan.iterations == plan.closed_form;
    return plan;
}

double success_probability(const State& s) {
    double marked_sq = 0.0;
    for (int64_t i : s.marked) marked_sq += s.amp[size_t(i)] * s.amp[size_t(i)];
    return marked_sq / norm_squared(s);
}

ExactRational success_probability(const ExactState& s) {
    BigInt marked_sq, total_sq;
    for (int64_t i : s.marked) marked_sq += s.num[size_t(i)] * s.num[size_t(i)];
    for (const BigInt& a : s.num) total_sq += a * a;
    return ExactRational(std::move(marked_sq), std::move(total_sq));
}

double norm_squared(const State& s) {
    double total = 0.0;
    for (double a : s.amp) total += a * a;
    return total;
}

ExactRational norm_squared(const ExactState& s) {
    BigInt total;
    for (const BigInt& a : s.num) total += a * a;
    return ExactRational(std::move(total), s.den * s.den);
}

ExactRational amplitude(const ExactState& s, int64_t index) {
    if (index < 0 || index >= s.d) throw DomainError("amplitude index out of range");
    return numerics::reduced_over_power(s.num[size_t(index)], s.den, BigInt(s.d));
}

CircleCoords angle_of(const State& s) {
    const int64_t n = int64_t(s.marked.size());
    const double norm2 = norm_squared(s);
    if (!(std::sqrt(norm2) >= 1e-300)) throw ZeroState("state norm below 1e-300");
    double marked_sum = 0.0, total_sum = 0.0;
    for (int64_t i : s.marked) marked_sum += s.amp[size_t(i)];
    for (double a : s.amp) total_sum += a;
    const double proj_w = marked_sum / std::sqrt(double(n));
    const double proj_s_bar = (total_sum - marked_sum) / std::sqrt(double(s.d - n));
    CircleCoords c;
    c.theta = std::atan2(proj_w, proj_s_bar);
    // component orthogonal to span{s_bar, w} == per-group deviation from the
    // group mean; summing squared deviations directly avoids the cancellation
    // that sqrt(norm^2 - projections^2) would suffer
    const double marked_mean = marked_sum / double(n);
    const double unmarked_mean = (total_sum - marked_sum) / double(s.d - n);
    double residual_sq = 0.0;
    size_t next_marked = 0;
    for (int64_t i = 0; i < s.d; ++i) {
        bool is_marked = false;
        if (next_marked < s.marked.size() && s.marked[next_marked] == i) {
            is_marked = true;
            ++next_marked;
        }
        const double dev = s.amp[size_t(i)] - (is_marked ? marked_mean : unmarked_mean);
        residual_sq += dev * dev;
    }
    c.off_circle_residual = std::sqrt(residual_sq);
    return c;
}

} // namespace qpool::grover
