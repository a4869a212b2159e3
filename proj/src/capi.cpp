#include "qpool.h"

#include "analytic.hpp"
#include "billiards.hpp"
#include "duality.hpp"
#include "errors.hpp"
#include "grover.hpp"
#include "trace_io.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct qpool_trace {
    qpool::trace::Sheet sheet;
    int terminated = -1;
};

struct qpool_grover {
    qpool::grover::State state;
};

namespace {

using qpool::numerics::ExactRational;

thread_local std::string t_last_error;

constexpr uint32_t kDefaultPrecisionCap = 16384;

size_t precision_cap(uint32_t bits) { return bits == 0 ? kDefaultPrecisionCap : bits; }
uint64_t event_budget(uint64_t max_events) {
    return max_events == 0 ? qpool::billiards::kDefaultMaxEvents : max_events;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
qpool_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return QPOOL_OK;
    } catch (const qpool::AmbiguousFloor& e) {
        t_last_error = e.what();
        return QPOOL_ERR_AMBIGUOUS_FLOOR;
    } catch (const qpool::billiards::MaxEventsExceeded& e) {
        t_last_error = e.what();
        return QPOOL_ERR_MAX_EVENTS;
    } catch (const qpool::billiards::SimultaneousCollision& e) {
        t_last_error = e.what();
        return QPOOL_ERR_SIMULTANEOUS_COLLISION;
    } catch (const qpool::duality::MismatchAt& e) {
        t_last_error = e.what();
        return QPOOL_ERR_DUALITY_MISMATCH;
    } catch (const qpool::duality::GlueViolation& e) {
        t_last_error = e.what();
        return QPOOL_ERR_GLUE_VIOLATION;
    } catch (const qpool::duality::NonIntegerMass& e) {
        t_last_error = e.what();
        return QPOOL_ERR_NON_INTEGER_MASS;
    } catch (const qpool::analytic::Disagreement& e) {
        t_last_error = e.what();
        return QPOOL_ERR_DISAGREEMENT;
    } catch (const qpool::grover::ZeroState& e) {
        t_last_error = e.what();
        return QPOOL_ERR_ZERO_STATE;
    } catch (const qpool::DomainError& e) {
        t_last_error = e.what();
        return QPOOL_ERR_INVALID_ARGUMENT;
    } catch (const qpool::IoError& e) {
        t_last_error = e.what();
        return QPOOL_ERR_IO;
    } catch (const std::bad_alloc&) {
        t_last_error = "out of memory";
        return QPOOL_ERR_NOMEM;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return QPOOL_ERR_INTERNAL;
    }
}

std::vector<int64_t> marked_or_default(int64_t dimension, const int64_t* marked, size_t marked_len) {
    if (marked == nullptr || marked_len == 0) return {dimension - 1};
    return {marked, marked + marked_len};
}

void append_grover_record(qpool::trace::Sheet& sheet, uint64_t step, qpool::trace::Event event,
                          const qpool::grover::State& s) {
    const int64_t n = int64_t(s.marked.size());
    double marked_sum = 0.0, total_sum = 0.0;
    for (int64_t i : s.marked) marked_sum += s.amp[size_t(i)];
    for (double a : s.amp) total_sum += a;
    const double proj_w = marked_sum / std::sqrt(double(n));
    const double proj_s_bar = (total_sum - marked_sum) / std::sqrt(double(s.d - n));
    qpool::trace::Record r;
    r.step = step;
    r.side = qpool::trace::Side::Grover;
    r.event = event;
    r.float_values = {proj_s_bar, proj_w};
    r.theta = std::atan2(proj_w, proj_s_bar);
    sheet.records.push_back(std::move(r));
}

} // namespace

extern "C" {

const char* qpool_version(void) { return "1.0.0"; }

const char* qpool_last_error(void) { return t_last_error.c_str(); }

void qpool_string_free(char* s) { std::free(s); }

qpool_status qpool_count(const char* heavy_mass, const char* light_mass, qpool_start start,
                         qpool_count_mode mode, uint64_t max_events, uint32_t precision_cap_bits,
                         char** count_out, int32_t* agreement_out, uint32_t* certified_bits_out) {
    return guarded([&] {
        if (!heavy_mass || !light_mass || !count_out) {
            throw qpool::DomainError("null argument");
        }
        const ExactRational M = ExactRational::parse(heavy_mass);
        const ExactRational m = ExactRational::parse(light_mass);
        const auto start_kind = start == QPOOL_START_GROVER ? qpool::billiards::Start::Grover
                                                            : qpool::billiards::Start::Galperin;
        if (mode != QPOOL_COUNT_DIRECT && start_kind == qpool::billiards::Start::Grover) {
            throw qpool::DomainError(
                "the analytic counter covers the Galperin start only; use direct mode");
        }

        int32_t agreement = -1;
        uint32_t certified_bits = 0;
        std::string count_text;
        if (mode == QPOOL_COUNT_DIRECT) {
            const uint64_t n =
                qpool::billiards::count_collisions_direct(M, m, start_kind, event_budget(max_events));
            count_text = std::to_string(n);
        } else {
            const auto cert =
                qpool::analytic::count_collisions_analytic(M, m, precision_cap(precision_cap_bits));
            certified_bits = uint32_t(cert.certifying_precision_bits);
            count_text = cert.count.to_decimal();
            if (mode == QPOOL_COUNT_BOTH) {
                const uint64_t direct = qpool::billiards::count_collisions_direct(
                    M, m, start_kind, event_budget(max_events));
                if (qpool::numerics::BigInt(int64_t(direct)) != cert.count) {
                    throw qpool::analytic::Disagreement((M / m).to_string(), direct, count_text);
                }
                agreement = 1;
            }
        }
        *count_out = dup_string(count_text);
        if (agreement_out) *agreement_out = agreement;
        if (certified_bits_out) *certified_bits_out = certified_bits;
    });
}

qpool_status qpool_pi_digits(uint32_t N, uint32_t precision_cap_bits, char** digits_out) {
    return guarded([&] {
        if (!digits_out) throw qpool::DomainError("null argument");
        *digits_out =
            dup_string(qpool::analytic::pi_digits_via_collisions(N, precision_cap(precision_cap_bits)));
    });
}

qpool_status qpool_billiard_run(const char* heavy_mass, const char* light_mass, qpool_start start,
                                uint64_t max_events, qpool_trace** trace_out) {
    return guarded([&] {
        if (!heavy_mass || !light_mass || !trace_out) throw qpool::DomainError("null argument");
        const ExactRational M = ExactRational::parse(heavy_mass);
        const ExactRational m = ExactRational::parse(light_mass);
        const auto start_kind = start == QPOOL_START_GROVER ? qpool::billiards::Start::Grover
                                                            : qpool::billiards::Start::Galperin;
        const auto run = qpool::billiards::run(M, m, start_kind, event_budget(max_events));
        auto* t = new qpool_trace;
        t->sheet = qpool::trace::from_billiard_trace(run);
        t->terminated = run.terminated ? 1 : 0;
        *trace_out = t;
    });
}

qpool_status qpool_grover_create(int64_t dimension, const int64_t* marked, size_t marked_len,
                                 qpool_grover** out) {
    return guarded([&] {
        if (!out) throw qpool::DomainError("null argument");
        auto* g = new qpool_grover;
        g->state = qpool::grover::make_uniform(dimension, marked_or_default(dimension, marked, marked_len));
        *out = g;
    });
}

void qpool_grover_destroy(qpool_grover* g) { delete g; }

qpool_status qpool_grover_apply_oracle(qpool_grover* g) {
    return guarded([&] {
        if (!g) throw qpool::DomainError("null handle");
        qpool::grover::apply_oracle(g->state);
    });
}

qpool_status qpool_grover_apply_diffusion(qpool_grover* g) {
    return guarded([&] {
        if (!g) throw qpool::DomainError("null handle");
        qpool::grover::apply_diffusion(g->state);
    });
}

qpool_status qpool_grover_iterate(qpool_grover* g, uint64_t iterations) {
    return guarded([&] {
        if (!g) throw qpool::DomainError("null handle");
        qpool::grover::grover_iterate(g->state, iterations);
    });
}

qpool_status qpool_grover_success_probability(const qpool_grover* g, double* out) {
    return guarded([&] {
        if (!g || !out) throw qpool::DomainError("null argument");
        *out = qpool::grover::success_probability(g->state);
    });
}

qpool_status qpool_grover_angle(const qpool_grover* g, double* theta_out, double* residual_out) {
    return guarded([&] {
        if (!g) throw qpool::DomainError("null handle");
        const auto c = qpool::grover::angle_of(g->state);
        if (theta_out) *theta_out = c.theta;
        if (residual_out) *residual_out = c.off_circle_residual;
    });
}

qpool_status qpool_grover_amplitude(const qpool_grover* g, int64_t index, double* out) {
    return guarded([&] {
        if (!g || !out) throw qpool::DomainError("null argument");
        if (index < 0 || index >= g->state.d) throw qpool::DomainError("index out of range");
        *out = g->state.amp[size_t(index)];
    });
}

qpool_status qpool_grover_run(int64_t dimension, const int64_t* marked, size_t marked_len,
                              int64_t iterations, uint32_t precision_cap_bits, double* success_out,
                              int64_t* iterations_out, qpool_trace** trace_out) {
    return guarded([&] {
        auto state =
            qpool::grover::make_uniform(dimension, marked_or_default(dimension, marked, marked_len));
        int64_t k = iterations;
        if (k < 0) {
            k = qpool::grover::optimal_iterations(dimension, int64_t(state.marked.size()),
                                                  precision_cap(precision_cap_bits))
                    .iterations;
        }
        qpool::trace::Sheet sheet;
        for (int64_t i = 0; i < k; ++i) {
            qpool::grover::apply_oracle(state);
            if (trace_out) append_grover_record(sheet, uint64_t(2 * i + 1), qpool::trace::Event::Oracle, state);
            qpool::grover::apply_diffusion(state);
            if (trace_out) {
                append_grover_record(sheet, uint64_t(2 * i + 2), qpool::trace::Event::Diffusion, state);
            }
        }
        if (success_out) *success_out = qpool::grover::success_probability(state);
        if (iterations_out) *iterations_out = k;
        if (trace_out) {
            auto* t = new qpool_trace;
            t->sheet = std::move(sheet);
            *trace_out = t;
        }
    });
}

qpool_status qpool_optimal_iterations(int64_t dimension, int64_t needles,
                                      uint32_t precision_cap_bits, int64_t* iterations_out,
                                      int64_t* closed_form_out, int32_t* agree_out) {
    return guarded([&] {
        const auto plan =
            qpool::grover::optimal_iterations(dimension, needles, precision_cap(precision_cap_bits));
        if (iterations_out) *iterations_out = plan.iterations;
        if (closed_form_out) *closed_form_out = plan.closed_form;
        if (agree_out) *agree_out = plan.agree ? 1 : 0;
    });
}

qpool_status qpool_duality_verify(int64_t dimension, int64_t needles, uint64_t steps,
                                  int32_t exact_mode, qpool_duality_report* report_out,
                                  qpool_trace** trace_out, char** final_state_out) {
    qpool::duality::Report report;
    const qpool_status status = guarded([&] {
        qpool::trace::Sheet sheet;
        qpool::trace::Sheet* sheet_ptr = trace_out ? &sheet : nullptr;
        if (exact_mode) {
            qpool::grover::ExactState final_state;
            try {
                report = qpool::duality::verify_trace_equivalence(
                    dimension, needles, steps, sheet_ptr, final_state_out ? &final_state : nullptr);
            } catch (const qpool::duality::MismatchAt& e) {
                report.mismatch_step = int64_t(e.half_step);
                report.steps_checked = e.half_step / 2;
                throw;
            }
            if (final_state_out) {
                std::string text = "(";
                for (int64_t i = 0; i < final_state.d; ++i) {
                    if (i) text += ", ";
                    text += qpool::grover::amplitude(final_state, i).to_string();
                }
                text += ")";
                *final_state_out = dup_string(text);
            }
        } else {
            if (final_state_out) {
                throw qpool::DomainError("final state is available in exact mode only");
            }
            try {
                report = qpool::duality::verify_trace_equivalence_float(dimension, needles, steps,
                                                                        sheet_ptr);
            } catch (const qpool::duality::MismatchAt& e) {
                report.mismatch_step = int64_t(e.half_step);
                report.steps_checked = e.half_step / 2;
                throw;
            }
        }
        if (trace_out) {
            auto* t = new qpool_trace;
            t->sheet = std::move(sheet);
            *trace_out = t;
        }
    });
    if (report_out) {
        report_out->dimension = dimension;
        report_out->needles = needles;
        report_out->steps_checked = report.steps_checked;
        report_out->exact_match = report.exact_match ? 1 : 0;
        report_out->mismatch_step = report.mismatch_step;
        report_out->max_float_deviation = report.max_float_deviation;
        report_out->collision_count = report.collision_count;
        report_out->query_count = report.query_count;
        report_out->residual = report.residual;
        report_out->counting_factor = report.counting_factor;
        report_out->stopping_factor = report.stopping_factor;
    }
    return status;
}

qpool_status qpool_factor_of_four(uint32_t N, uint32_t precision_cap_bits,
                                  qpool_duality_report* report_out) {
    return guarded([&] {
        if (!report_out) throw qpool::DomainError("null argument");
        const auto report = qpool::duality::factor_of_four_report(N, precision_cap(precision_cap_bits));
        report_out->dimension = report.d;
        report_out->needles = report.n;
        report_out->steps_checked = report.steps_checked;
        report_out->exact_match = report.exact_match ? 1 : 0;
        report_out->mismatch_step = report.mismatch_step;
        report_out->max_float_deviation = report.max_float_deviation;
        report_out->collision_count = report.collision_count;
        report_out->query_count = report.query_count;
        report_out->residual = report.residual;
        report_out->counting_factor = report.counting_factor;
        report_out->stopping_factor = report.stopping_factor;
    });
}

size_t qpool_trace_size(const qpool_trace* t) { return t ? t->sheet.records.size() : 0; }

int qpool_trace_terminated(const qpool_trace* t) { return t ? t->terminated : -1; }

qpool_status qpool_trace_record_json(const qpool_trace* t, size_t index, char** json_out) {
    return guarded([&] {
        if (!t || !json_out) throw qpool::DomainError("null argument");
        if (index >= t->sheet.records.size()) throw qpool::DomainError("record index out of range");
        *json_out = dup_string(qpool::trace::to_json_line(t->sheet.records[index]));
    });
}

qpool_status qpool_trace_write(const qpool_trace* t, const char* path, qpool_trace_format format) {
    return guarded([&] {
        if (!t || !path) throw qpool::DomainError("null argument");
        qpool::trace::write_file(t->sheet, path, format == QPOOL_TRACE_CSV);
    });
}

void qpool_trace_free(qpool_trace* t) { delete t; }

} // extern "C"
