#include "duality.hpp"

#include "analytic.hpp"
#include "interval.hpp"

#include <algorithm>
#include <cmath>

namespace qpool::duality {

namespace {

std::vector<int64_t> default_marked(int64_t d, int64_t n) {
    std::vector<int64_t> marked;
    marked.reserve(size_t(n));
    for (int64_t i = d - n; i < d; ++i) marked.push_back(i);
    return marked;
}

std::vector<std::string> render(const grover::ExactState& s) {
    std::vector<std::string> out;
    out.reserve(s.num.size());
    for (int64_t i = 0; i < s.d; ++i) out.push_back(grover::amplitude(s, i).to_string());
    return out;
}

// Same two-velocity recurrence as the billiard engine, kept in integer form
// over denominator d^k so it can be compared against the qudit numerators
// limb for limb.
struct LockstepBilliard {
    BigInt a, b; // V = a/den, v = b/den
    BigInt den;
    BigInt diff, two_M, two_m, c;

    LockstepBilliard(int64_t d, int64_t n) {
        const BigInt M(d - n), m(n);
        a = BigInt(1);
        b = BigInt(1);
        den = BigInt(1);
        diff = M - m;
        two_M = M + M;
        two_m = m + m;
        c = BigInt(d);
    }

    void wall() { b.negate(); }

    void balls() {
        BigInt na = diff * a + two_m * b;
        BigInt nb = two_M * a - diff * b;
        a = std::move(na);
        b = std::move(nb);
        den *= c;
    }

    grover::ExactState as_state(int64_t d, const std::vector<int64_t>& marked) const {
        grover::ExactState s;
        s.d = d;
        s.marked = marked;
        s.num.assign(size_t(d), a);
        for (int64_t i : marked) s.num[size_t(i)] = b;
        s.den = den;
        return s;
    }
};

bool states_equal(const LockstepBilliard& bill, const grover::ExactState& g,
                  const std::vector<int64_t>& marked) {
    if (bill.den == g.den) {
        size_t next = 0;
        for (int64_t i = 0; i < g.d; ++i) {
            const bool is_marked = next < marked.size() && marked[next] == i;
            if (is_marked) ++next;
            if (g.num[size_t(i)] != (is_marked ? bill.b : bill.a)) return false;
        }
        return true;
    }
    // engines disagree on the denominator: fall back to rational equality
    size_t next = 0;
    for (int64_t i = 0; i < g.d; ++i) {
        const bool is_marked = next < marked.size() && marked[next] == i;
        if (is_marked) ++next;
        const BigInt& numer = is_marked ? bill.b : bill.a;
        if (numer * g.den != g.num[size_t(i)] * bill.den) return false;
    }
    return true;
}

} // namespace

grover::ExactState billiard_to_state(const BilliardState& s, int64_t d,
                                     const std::vector<int64_t>& marked_in) {
    if (d < 2) throw DomainError("dimension must be at least 2");
    std::vector<int64_t> marked = marked_in;
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    const int64_t n = int64_t(marked.size());
    if (n < 1 || n >= d) throw DomainError("marked set must satisfy 1 <= n < d");
    if (!marked.empty() && (marked.front() < 0 || marked.back() >= d)) {
        throw DomainError("marked index out of range");
    }
    if (s.heavy_mass != ExactRational(d - n) || s.light_mass != ExactRational(n)) {
        throw NonIntegerMass("masses must be exactly d-n and n unit billiards");
    }

    grover::ExactState g;
    g.d = d;
    g.marked = std::move(marked);
    const BigInt den = s.V.denominator() * s.v.denominator() /
                       BigInt::gcd(s.V.denominator(), s.v.denominator());
    const BigInt heavy_num = s.V.numerator() * (den / s.V.denominator());
    const BigInt light_num = s.v.numerator() * (den / s.v.denominator());
    g.num.assign(size_t(d), heavy_num);
    for (int64_t i : g.marked) g.num[size_t(i)] = light_num;
    g.den = den;
    return g;
}

BilliardState state_to_billiard(const grover::ExactState& g) {
    const int64_t n = int64_t(g.marked.size());
    if (n < 1 || n >= g.d) throw DomainError("marked set must satisfy 1 <= n < d");
    size_t next = 0;
    const BigInt* heavy = nullptr;
    const BigInt* light = nullptr;
    for (int64_t i = 0; i < g.d; ++i) {
        const bool is_marked = next < g.marked.size() && g.marked[next] == i;
        if (is_marked) ++next;
        const BigInt*& group = is_marked ? light : heavy;
        if (group == nullptr) {
            group = &g.num[size_t(i)];
        } else if (*group != g.num[size_t(i)]) {
            throw GlueViolation("amplitudes differ within a glued group");
        }
    }
    BilliardState s;
    s.heavy_mass = ExactRational(g.d - n);
    s.light_mass = ExactRational(n);
    s.V = ExactRational(*heavy, g.den);
    s.v = ExactRational(*light, g.den);
    return s;
}

Report verify_trace_equivalence(int64_t d, int64_t n, uint64_t steps, trace::Sheet* sheet,
                                grover::ExactState* final_state) {
    if (steps < 1) throw DomainError("steps must be at least 1");
    if (d < 2 || n < 1 || n >= d) throw DomainError("need 1 <= n < d and d >= 2");
    const std::vector<int64_t> marked = default_marked(d, n);

    LockstepBilliard bill(d, n);
    grover::ExactState qudit = grover::make_uniform_exact(d, marked);

    const double M_f = double(d - n), m_f = double(n);
    auto record = [&](uint64_t half_step, trace::Event event) {
        if (!sheet) return;
        trace::Record r;
        r.step = half_step;
        r.side = trace::Side::Both;
        r.event = event;
        const ExactRational V = numerics::reduced_over_power(bill.a, bill.den, bill.c);
        const ExactRational v = numerics::reduced_over_power(bill.b, bill.den, bill.c);
        r.exact_values = {V.to_string(), v.to_string()};
        r.float_values = {V.to_double(), v.to_double()};
        r.theta = std::atan2(std::sqrt(m_f) * r.float_values[1], std::sqrt(M_f) * r.float_values[0]);
        sheet->records.push_back(std::move(r));
    };

    Report report;
    report.d = d;
    report.n = n;
    for (uint64_t step = 0; step < steps; ++step) {
        bill.wall();
        grover::apply_oracle(qudit);
        if (!states_equal(bill, qudit, marked)) {
            throw MismatchAt(2 * step + 1, render(bill.as_state(d, marked)), render(qudit));
        }
        record(2 * step + 1, trace::Event::Wall);
        bill.balls();
        grover::apply_diffusion(qudit);
        if (!states_equal(bill, qudit, marked)) {
            throw MismatchAt(2 * step + 2, render(bill.as_state(d, marked)), render(qudit));
        }
        record(2 * step + 2, trace::Event::Balls);
    }
    if (final_state) *final_state = std::move(qudit);
    report.steps_checked = steps;
    report.exact_match = true;
    report.mismatch_step = -1;
    report.max_float_deviation = 0.0;
    report.collision_count = int64_t(2 * steps);
    report.query_count = int64_t(steps);
    report.residual = report.collision_count - 4 * report.query_count;
    return report;
}

Report verify_trace_equivalence_float(int64_t d, int64_t n, uint64_t steps, trace::Sheet* sheet) {
    if (steps < 1) throw DomainError("steps must be at least 1");
    if (d < 2 || n < 1 || n >= d) throw DomainError("need 1 <= n < d and d >= 2");
    const std::vector<int64_t> marked = default_marked(d, n);

    // both sides unit-normalized so deviations are absolute on [-1, 1]
    double V = 1.0 / std::sqrt(double(d));
    double v = V;
    grover::State qudit = grover::make_uniform(d, marked);
    const double M = double(d - n), m = double(n);

    double max_dev = 0.0;
    auto measure = [&](uint64_t half_step, trace::Event event) {
        size_t next = 0;
        for (int64_t i = 0; i < d; ++i) {
            const bool is_marked = next < marked.size() && marked[next] == i;
            if (is_marked) ++next;
            max_dev = std::max(max_dev, std::abs(qudit.amp[size_t(i)] - (is_marked ? v : V)));
        }
        if (sheet) {
            trace::Record r;
            r.step = half_step;
            r.side = trace::Side::Both;
            r.event = event;
            r.float_values = {V, v};
            r.theta = std::atan2(std::sqrt(m) * v, std::sqrt(M) * V);
            sheet->records.push_back(std::move(r));
        }
    };
    for (uint64_t step = 0; step < steps; ++step) {
        v = -v;
        grover::apply_oracle(qudit);
        measure(2 * step + 1, trace::Event::Wall);
        const double nV = ((M - m) * V + 2.0 * m * v) / (M + m);
        const double nv = ((m - M) * v + 2.0 * M * V) / (M + m);
        V = nV;
        v = nv;
        grover::apply_diffusion(qudit);
        measure(2 * step + 2, trace::Event::Balls);
        if (max_dev > 1e-10) {
            throw MismatchAt(2 * step + 2, {std::to_string(V), std::to_string(v)},
                             {std::to_string(max_dev)});
        }
    }

    Report report;
    report.d = d;
    report.n = n;
    report.steps_checked = steps;
    report.exact_match = false; // float mode never claims exactness
    report.mismatch_step = -1;
    report.max_float_deviation = max_dev;
    report.collision_count = int64_t(2 * steps);
    report.query_count = int64_t(steps);
    report.residual = report.collision_count - 4 * report.query_count;
    return report;
}

Report factor_of_four_report(uint32_t N, size_t precision_cap_bits) {
    if (N < 1) throw DomainError("N must be at least 1");
    if (N > 9) throw DomainError("factor-of-four accounting supports N up to 9");
    const BigInt M = BigInt::pow(BigInt(100), N);
    const ExactRational mass(M);

    Report report;
    report.d = (M + BigInt(1)).to_int64();
    report.n = 1;

    // collision side: exact simulation at desk scale, certified analytic
    // count beyond it (the two are cross-checked against each other in the
    // analytic module's sweep)
    if (N <= 3) {
        report.collision_count =
            int64_t(billiards::count_collisions_direct(mass, ExactRational(1), billiards::Start::Galperin));
    } else {
        report.collision_count = analytic::count_collisions_analytic(mass, ExactRational(1),
                                                                     precision_cap_bits)
                                     .count.to_int64();
    }

    // query side: floor(pi / (4 arctan(1/sqrt(M)))), the certified form of
    // optimal_iterations(M+1, 1)
    auto pi_fn = [](size_t p) { return numerics::pi_interval(p); };
    auto denom = [&](size_t p) {
        const auto ratio = numerics::IntervalReal::from_rational(ExactRational(BigInt(1), M), p);
        return numerics::arctan_interval(numerics::sqrt_interval(ratio, p), p).scaled_int(4);
    };
    report.query_count =
        numerics::floor_of_quotient(pi_fn, denom, precision_cap_bits).value.to_int64();

    report.steps_checked = 0;
    report.exact_match = true;
    report.mismatch_step = -1;
    report.residual = report.collision_count - 4 * report.query_count;
    return report;
}

} // namespace qpool::duality
