/* qpool: exact billiard-collision pi counting, Grover search simulation,
 * and verification of the isomorphism between the two.
 *
 * C interface over the C++ core. All functions return qpool_status;
 * QPOOL_OK is 0. On failure, qpool_last_error() describes the problem
 * (thread-local). Strings returned through char** out-parameters are owned
 * by the caller and must be released with qpool_string_free(). Opaque
 * handles are released with their matching *_free/_destroy call.
 *
 * Mass arguments are decimal rational literals: "42", "-3/7",
 * "100000000000000000000". Marked-state indices are 0-based.
 */
#ifndef QPOOL_H
#define QPOOL_H

#include <stddef.h>
#include <stdint.h>

#if defined(QPOOL_BUILD_SHARED) && defined(__GNUC__)
#define QPOOL_API __attribute__((visibility("default")))
#else
#define QPOOL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpool_status {
    QPOOL_OK = 0,
    QPOOL_ERR_INVALID_ARGUMENT = 1,
    QPOOL_ERR_AMBIGUOUS_FLOOR = 2,
    QPOOL_ERR_DUALITY_MISMATCH = 3,
    QPOOL_ERR_MAX_EVENTS = 4,
    QPOOL_ERR_SIMULTANEOUS_COLLISION = 5,
    QPOOL_ERR_GLUE_VIOLATION = 6,
    QPOOL_ERR_NON_INTEGER_MASS = 7,
    QPOOL_ERR_DISAGREEMENT = 8,
    QPOOL_ERR_ZERO_STATE = 9,
    QPOOL_ERR_NOMEM = 10,
    QPOOL_ERR_IO = 11,
    QPOOL_ERR_INTERNAL = 12
} qpool_status;

typedef enum qpool_start {
    QPOOL_START_GALPERIN = 0, /* light ball at rest */
    QPOOL_START_GROVER = 1    /* both balls at equal velocity */
} qpool_start;

typedef enum qpool_count_mode {
    QPOOL_COUNT_DIRECT = 0,
    QPOOL_COUNT_ANALYTIC = 1,
    QPOOL_COUNT_BOTH = 2
} qpool_count_mode;

typedef enum qpool_trace_format {
    QPOOL_TRACE_JSONL = 0,
    QPOOL_TRACE_CSV = 1
} qpool_trace_format;

typedef struct qpool_trace qpool_trace;   /* ordered list of event records */
typedef struct qpool_grover qpool_grover; /* float-mode Grover simulator */

QPOOL_API const char* qpool_version(void);

/* Message for the most recent failure on this thread ("" if none). */
QPOOL_API const char* qpool_last_error(void);

QPOOL_API void qpool_string_free(char* s);

/* ---- collision counting ------------------------------------------------ */

/* Count collisions for heavy mass M and light mass m. mode DIRECT runs the
 * exact event-driven simulation; ANALYTIC evaluates the certified
 * floor(pi / arctan(sqrt(m/M))) (Galperin start only); BOTH runs the two
 * and reports their agreement. count_out receives the decimal count.
 * agreement_out (nullable) is 1/0 for mode BOTH, -1 otherwise.
 * certified_bits_out (nullable) gets the certifying interval precision, 0
 * for direct counts and algebraic grazing cases. max_events == 0 and
 * precision_cap_bits == 0 select the defaults (10^8 events, 16384 bits). */
QPOOL_API qpool_status qpool_count(const char* heavy_mass, const char* light_mass,
                                   qpool_start start, qpool_count_mode mode, uint64_t max_events,
                                   uint32_t precision_cap_bits, char** count_out,
                                   int32_t* agreement_out, uint32_t* certified_bits_out);

/* Decimal digits of pi as the collision count at M = 100^N (N+1 digits). */
QPOOL_API qpool_status qpool_pi_digits(uint32_t N, uint32_t precision_cap_bits, char** digits_out);

/* ---- billiards ---------------------------------------------------------- */

/* Exact simulation run; the trace holds one record per collision with exact
 * "p/q" velocity strings, float snapshots and the circle angle. Snapshot
 * sizes grow with the collision number: traces are meant for desk-scale
 * ratios (heavy/light up to ~10^6); use qpool_count for larger runs. */
QPOOL_API qpool_status qpool_billiard_run(const char* heavy_mass, const char* light_mass,
                                          qpool_start start, uint64_t max_events,
                                          qpool_trace** trace_out);

/* ---- Grover search ------------------------------------------------------ */

/* marked may be NULL with marked_len 0: the last index {d-1} is marked. */
QPOOL_API qpool_status qpool_grover_create(int64_t dimension, const int64_t* marked,
                                           size_t marked_len, qpool_grover** out);
QPOOL_API void qpool_grover_destroy(qpool_grover* g);

QPOOL_API qpool_status qpool_grover_apply_oracle(qpool_grover* g);
QPOOL_API qpool_status qpool_grover_apply_diffusion(qpool_grover* g);
QPOOL_API qpool_status qpool_grover_iterate(qpool_grover* g, uint64_t iterations);
QPOOL_API qpool_status qpool_grover_success_probability(const qpool_grover* g, double* out);
QPOOL_API qpool_status qpool_grover_angle(const qpool_grover* g, double* theta_out,
                                          double* residual_out);
QPOOL_API qpool_status qpool_grover_amplitude(const qpool_grover* g, int64_t index, double* out);

/* One-shot run from the uniform superposition. iterations == -1 selects the
 * certified optimal count. trace_out (nullable) records every operator
 * application with the circle projections and angle. */
QPOOL_API qpool_status qpool_grover_run(int64_t dimension, const int64_t* marked,
                                        size_t marked_len, int64_t iterations,
                                        uint32_t precision_cap_bits, double* success_out,
                                        int64_t* iterations_out, qpool_trace** trace_out);

/* Certified nearest-integer iteration count and the closed form
 * floor((pi/4) sqrt((d-n)/n)); agree_out reports whether they coincide. */
QPOOL_API qpool_status qpool_optimal_iterations(int64_t dimension, int64_t needles,
                                                uint32_t precision_cap_bits,
                                                int64_t* iterations_out, int64_t* closed_form_out,
                                                int32_t* agree_out);

/* ---- duality ------------------------------------------------------------ */

typedef struct qpool_duality_report {
    int64_t dimension;
    int64_t needles;
    uint64_t steps_checked;
    int32_t exact_match;
    int64_t mismatch_step; /* -1 when matched */
    double max_float_deviation;
    int64_t collision_count;
    int64_t query_count;
    int64_t residual;       /* collision_count - 4 * query_count */
    int32_t counting_factor; /* 2: every collision counted vs oracle calls only */
    int32_t stopping_factor; /* 2: full pi of arc vs quarter turn to the target */
} qpool_duality_report;

/* Lockstep verification of the billiard/search correspondence from the
 * all-ones start. exact_mode != 0 demands exact rational equality at every
 * half-step; exact_mode == 0 runs the float spot check (1e-10). A mismatch
 * returns QPOOL_ERR_DUALITY_MISMATCH with report_out->mismatch_step set.
 * final_state_out (nullable, exact mode) receives the final amplitudes as
 * "(a0, a1, ...)". */
QPOOL_API qpool_status qpool_duality_verify(int64_t dimension, int64_t needles, uint64_t steps,
                                            int32_t exact_mode, qpool_duality_report* report_out,
                                            qpool_trace** trace_out, char** final_state_out);

/* Collision count vs oracle-query count at M = 100^N with the two factors
 * of two split out. */
QPOOL_API qpool_status qpool_factor_of_four(uint32_t N, uint32_t precision_cap_bits,
                                            qpool_duality_report* report_out);

/* ---- traces -------------------------------------------------------------- */

QPOOL_API size_t qpool_trace_size(const qpool_trace* t);
QPOOL_API int qpool_trace_terminated(const qpool_trace* t); /* -1 if not a run trace */
QPOOL_API qpool_status qpool_trace_record_json(const qpool_trace* t, size_t index,
                                               char** json_out);
QPOOL_API qpool_status qpool_trace_write(const qpool_trace* t, const char* path,
                                         qpool_trace_format format);
QPOOL_API void qpool_trace_free(qpool_trace* t);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QPOOL_H */
