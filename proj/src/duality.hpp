#pragma once

#include "billiards.hpp"
#include "grover.hpp"
#include "trace_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qpool::duality {

using billiards::BilliardState;
using numerics::BigInt;
using numerics::ExactRational;

// Outcome of a lockstep verification or of the collision/query accounting.
struct Report {
    int64_t d = 0;
    int64_t n = 0;
    uint64_t steps_checked = 0;
    bool exact_match = false;
    int64_t mismatch_step = -1; // -1 when everything matched
    double max_float_deviation = 0.0;
    int64_t collision_count = 0;
    int64_t query_count = 0;
    int64_t residual = 0; // collision_count - 4 * query_count
    int counting_factor = 2; // collisions charged per oracle query
    int stopping_factor = 2; // full pi of arc vs the quarter-turn to |w>
};

struct NonIntegerMass : Error {
    using Error::Error;
};

struct GlueViolation : Error {
    using Error::Error;
};

struct MismatchAt : Error {
    uint64_t half_step; // 1-based count of operator applications
    std::vector<std::string> billiard_amplitudes; // mapped billiard side, exact
    std::vector<std::string> grover_amplitudes;   // qudit side, exact
    MismatchAt(uint64_t hs, std::vector<std::string> b, std::vector<std::string> g)
        : Error("billiard and qudit states differ after half-step " + std::to_string(hs)),
          half_step(hs),
          billiard_amplitudes(std::move(b)),
          grover_amplitudes(std::move(g)) {}
};

// Glue d-n unit billiards into the heavy ball and n into the light ball:
// amplitude V at each unmarked index, v at each marked index. Requires
// M = d-n and m = n exactly.
grover::ExactState billiard_to_state(const BilliardState& s, int64_t d,
                                     const std::vector<int64_t>& marked);

// Inverse map; the state must satisfy the glue constraint exactly.
BilliardState state_to_billiard(const grover::ExactState& g);

// Run the two-ball system and the qudit side by side from the unscaled
// uniform start, one reflection pair per step, asserting exact equality of
// the mapped states after every half-step. Throws MismatchAt on divergence.
// When sheet is non-null, one trace record is appended per half-step; when
// final_state is non-null it receives the exact qudit state after the last
// step (equal, by the theorem just verified, to the mapped billiard state).
Report verify_trace_equivalence(int64_t d, int64_t n, uint64_t steps,
                                trace::Sheet* sheet = nullptr,
                                grover::ExactState* final_state = nullptr);

// Float spot-check of the same lockstep; fails if states drift apart by
// more than 1e-10.
Report verify_trace_equivalence_float(int64_t d, int64_t n, uint64_t steps,
                                      trace::Sheet* sheet = nullptr);

// Collision count vs oracle-query count for M = 100^N, decomposed into the
// two factors of two.
Report factor_of_four_report(uint32_t N, size_t precision_cap_bits = 16384);

} // namespace qpool::duality
