#include "billiards.hpp"

#include <cmath>
#include <utility>

namespace qpool::billiards {

using numerics::BigInt;

namespace {

void require_positive_masses(const ExactRational& M, const ExactRational& m) {
    if (M.sign() <= 0 || m.sign() <= 0) throw DomainError("masses must be positive");
}

// Velocities as integer numerators over a shared denominator. Masses are
// reduced to coprime integers first; the dynamics depend only on their
// ratio. After a ball-ball collision the denominator gains a factor of
// c = Mi + mi, so all denominators stay powers of c.
struct IntCore {
    BigInt a, b;   // V = a/den, v = b/den
    BigInt den;    // power of c
    BigInt Mi, mi; // coprime integer masses
    BigInt diff;   // Mi - mi
    BigInt two_M, two_m;
    BigInt c; // Mi + mi

    IntCore(const ExactRational& M, const ExactRational& m, Start start) {
        Mi = M.numerator() * m.denominator();
        mi = m.numerator() * M.denominator();
        const BigInt g = BigInt::gcd(Mi, mi);
        Mi /= g;
        mi /= g;
        diff = Mi - mi;
        two_M = Mi + Mi;
        two_m = mi + mi;
        c = Mi + mi;
        a = BigInt(1);
        b = start == Start::Grover ? BigInt(1) : BigInt(0);
        den = BigInt(1);
    }

    NextEvent next() const {
        if (a > b) return NextEvent::Balls;
        if (b.sign() > 0) return NextEvent::Wall;
        return NextEvent::Terminated;
    }

    void wall() { b.negate(); }

    void balls() {
        BigInt na = diff * a + two_m * b;
        BigInt nb = two_M * a - diff * b;
        a = std::move(na);
        b = std::move(nb);
        den *= c;
    }
};

double circle_angle(double heavy_mass, double light_mass, double V, double v) {
    return std::atan2(std::sqrt(light_mass) * v, std::sqrt(heavy_mass) * V);
}

} // namespace

BilliardState collide_wall(BilliardState s) {
    s.v = -s.v;
    return s;
}

BilliardState collide_balls(const BilliardState& s) {
    const ExactRational& M = s.heavy_mass;
    const ExactRational& m = s.light_mass;
    const ExactRational sum = M + m;
    BilliardState out = s;
    out.V = ((M - m) * s.V + ExactRational(2) * m * s.v) / sum;
    out.v = ((m - M) * s.v + ExactRational(2) * M * s.V) / sum;
    return out;
}

NextEvent next_event(const BilliardState& s) {
    if (s.V > s.v) return NextEvent::Balls;
    if (s.v.sign() > 0) return NextEvent::Wall;
    return NextEvent::Terminated;
}

namespace {

Trace run_impl(const ExactRational& M, const ExactRational& m, Start start, uint64_t max_events,
               bool record, uint64_t* count_out) {
    require_positive_masses(M, m);
    if (max_events < 1) throw DomainError("max_events must be at least 1");

    IntCore core(M, m, start);
    Trace trace;
    trace.start = start;
    trace.initial = BilliardState{M, m, ExactRational(1),
                                  start == Start::Grover ? ExactRational(1) : ExactRational(0)};
    const double M_f = M.to_double();
    const double m_f = m.to_double();

    uint64_t count = 0;
    while (true) {
        const NextEvent next = core.next();
        if (next == NextEvent::Terminated) {
            trace.terminated = true;
            break;
        }
        if (count == max_events) throw MaxEventsExceeded(count, std::move(trace));
        if (next == NextEvent::Wall) {
            core.wall();
        } else {
            core.balls();
        }
        ++count;
        if (record) {
            TraceEvent ev;
            ev.index = count;
            ev.kind = next == NextEvent::Wall ? EventKind::Wall : EventKind::Balls;
            ev.after = BilliardState{M, m, numerics::reduced_over_power(core.a, core.den, core.c),
                                     numerics::reduced_over_power(core.b, core.den, core.c)};
            ev.V_float = ev.after.V.to_double();
            ev.v_float = ev.after.v.to_double();
            ev.theta = circle_angle(M_f, m_f, ev.V_float, ev.v_float);
            trace.events.push_back(std::move(ev));
        }
    }
    if (count_out) *count_out = count;
    return trace;
}

} // namespace

Trace run(const ExactRational& heavy_mass, const ExactRational& light_mass, Start start,
          uint64_t max_events) {
    return run_impl(heavy_mass, light_mass, start, max_events, true, nullptr);
}

uint64_t count_collisions_direct(const ExactRational& heavy_mass, const ExactRational& light_mass,
                                 Start start, uint64_t max_events) {
    uint64_t count = 0;
    run_impl(heavy_mass, light_mass, start, max_events, false, &count);
    return count;
}

Trace reference_position_sim(const ExactRational& heavy_mass, const ExactRational& light_mass,
                             const ExactRational& x_heavy, const ExactRational& x_light,
                             const ExactRational& wall_x, Start start, uint64_t max_events) {
    require_positive_masses(heavy_mass, light_mass);
    if (!(x_heavy < x_light && x_light < wall_x)) {
        throw DomainError("positions must satisfy x_heavy < x_light < wall_x");
    }

    BilliardState s{heavy_mass, light_mass, ExactRational(1),
                    start == Start::Grover ? ExactRational(1) : ExactRational(0)};
    ExactRational xh = x_heavy, xl = x_light;
    const double M_f = heavy_mass.to_double();
    const double m_f = light_mass.to_double();

    Trace trace;
    trace.start = start;
    trace.initial = s;

    uint64_t count = 0;
    while (true) {
        const bool balls_possible = s.V > s.v;
        const bool wall_possible = s.v.sign() > 0;
        if (!balls_possible && !wall_possible) {
            trace.terminated = true;
            break;
        }
        ExactRational t_balls, t_wall;
        if (balls_possible) t_balls = (xl - xh) / (s.V - s.v);
        if (wall_possible) t_wall = (wall_x - xl) / s.v;

        EventKind kind;
        if (balls_possible && wall_possible) {
            if (t_balls == t_wall) {
                throw SimultaneousCollision("ball-ball and ball-wall collisions coincide in time");
            }
            kind = t_balls < t_wall ? EventKind::Balls : EventKind::Wall;
        } else {
            kind = balls_possible ? EventKind::Balls : EventKind::Wall;
        }
        if (count == max_events) throw MaxEventsExceeded(count, std::move(trace));

        const ExactRational dt = kind == EventKind::Balls ? t_balls : t_wall;
        xh += s.V * dt;
        xl += s.v * dt;
        s = kind == EventKind::Balls ? collide_balls(s) : collide_wall(s);
        ++count;

        TraceEvent ev;
        ev.index = count;
        ev.kind = kind;
        ev.after = s;
        ev.V_float = s.V.to_double();
        ev.v_float = s.v.to_double();
        ev.theta = circle_angle(M_f, m_f, ev.V_float, ev.v_float);
        trace.events.push_back(std::move(ev));
    }
    return trace;
}

ExactRational kinetic_energy(const BilliardState& s) {
    return (s.heavy_mass * s.V * s.V + s.light_mass * s.v * s.v) / ExactRational(2);
}

ExactRational total_momentum(const BilliardState& s) {
    return s.heavy_mass * s.V + s.light_mass * s.v;
}

ExactRational heavy_momentum(const BilliardState& s) { return s.heavy_mass * s.V; }

double angle_of(const BilliardState& s) {
    return circle_angle(s.heavy_mass.to_double(), s.light_mass.to_double(), s.V.to_double(),
                        s.v.to_double());
}

} // namespace qpool::billiards
