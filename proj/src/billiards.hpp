#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cstdint>
#include <vector>

namespace qpool::billiards {

using numerics::ExactRational;

// Start conventions: Galperin launches the heavy ball at a resting light
// ball; Grover gives both balls the same initial velocity.
enum class Start { Galperin, Grover };

enum class EventKind { Wall, Balls };
enum class NextEvent { Wall, Balls, Terminated };

// A point on the energy circle: two masses and two velocities, all exact.
// Positive velocity points toward the wall.
struct BilliardState {
    ExactRational heavy_mass; // M > 0
    ExactRational light_mass; // m > 0
    ExactRational V;          // heavy-ball velocity
    ExactRational v;          // light-ball velocity
};

struct TraceEvent {
    uint64_t index = 0; // 1-based collision number
    EventKind kind = EventKind::Balls;
    BilliardState after; // exact snapshot
    double V_float = 0.0;
    double v_float = 0.0;
    double theta = 0.0; // angle on the energy circle after the event
};

struct Trace {
    Start start = Start::Galperin;
    bool terminated = false;
    BilliardState initial;
    std::vector<TraceEvent> events;
};

struct MaxEventsExceeded : Error {
    uint64_t events_applied;
    Trace partial; // snapshots present only when thrown from run()
    MaxEventsExceeded(uint64_t n, Trace t)
        : Error("collision count exceeded the event budget of " + std::to_string(n)),
          events_applied(n),
          partial(std::move(t)) {}
};

struct SimultaneousCollision : Error {
    using Error::Error;
};

inline constexpr uint64_t kDefaultMaxEvents = 100000000;

// Wall collision: the light ball's velocity reverses, the heavy ball is
// untouched.
BilliardState collide_wall(BilliardState s);

// Elastic two-ball collision; conserves total momentum and kinetic energy
// exactly.
BilliardState collide_balls(const BilliardState& s);

// Which collision the velocity ordering forces next, or Terminated once
// V <= v <= 0.
NextEvent next_event(const BilliardState& s);

// Event-driven run in velocity space with exact snapshots after every
// collision.
Trace run(const ExactRational& heavy_mass, const ExactRational& light_mass, Start start,
          uint64_t max_events = kDefaultMaxEvents);

// Same event loop as run(), counting only (no snapshot materialization).
uint64_t count_collisions_direct(const ExactRational& heavy_mass, const ExactRational& light_mass,
                                 Start start, uint64_t max_events = kDefaultMaxEvents);

// Independent oracle: full kinematic simulation with exact positions and
// collision times. Event kinds must match run() for any x_heavy < x_light
// < wall_x.
Trace reference_position_sim(const ExactRational& heavy_mass, const ExactRational& light_mass,
                             const ExactRational& x_heavy, const ExactRational& x_light,
                             const ExactRational& wall_x, Start start,
                             uint64_t max_events = kDefaultMaxEvents);

ExactRational kinetic_energy(const BilliardState& s); // (M V^2 + m v^2) / 2
ExactRational total_momentum(const BilliardState& s); // M V + m v
ExactRational heavy_momentum(const BilliardState& s); // M V

// Float angle on the energy circle: atan2(sqrt(m) v, sqrt(M) V).
double angle_of(const BilliardState& s);

} // namespace qpool::billiards
