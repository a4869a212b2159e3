// qpool command-line front end. Talks to the core exclusively through the
// C API in qpool.h, the same surface other language bindings would use.

#include <qpool.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace {

// exit-code contract: 0 success, 1 usage, 2 precision ambiguity,
// 3 duality mismatch, 4 other runtime failure
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAmbiguous = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitFailure = 4;

int exit_code_for(qpool_status status) {
    switch (status) {
        case QPOOL_OK: return kExitOk;
        case QPOOL_ERR_INVALID_ARGUMENT: return kExitUsage;
        case QPOOL_ERR_AMBIGUOUS_FLOOR: return kExitAmbiguous;
        case QPOOL_ERR_DUALITY_MISMATCH: return kExitMismatch;
        default: return kExitFailure;
    }
}

int fail(qpool_status status) {
    std::fprintf(stderr, "error: %s\n", qpool_last_error());
    return exit_code_for(status);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct TraceArgs {
    std::string path;
    std::string format = "jsonl";

    void attach(CLI::App* cmd) {
        cmd->add_option("--trace", path, "write the event trace to this file");
        cmd->add_option("--format", format, "trace file format")
            ->check(CLI::IsMember({"jsonl", "csv"}));
    }
    qpool_trace_format fmt() const {
        return format == "csv" ? QPOOL_TRACE_CSV : QPOOL_TRACE_JSONL;
    }
};

int write_trace_if_requested(const TraceArgs& args, qpool_trace* trace) {
    if (args.path.empty() || trace == nullptr) return kExitOk;
    const qpool_status status = qpool_trace_write(trace, args.path.c_str(), args.fmt());
    if (status != QPOOL_OK) return fail(status);
    return kExitOk;
}

int run_count(const std::string& mass_ratio, const std::string& light_mass,
              const std::string& start, const std::string& mode, uint64_t max_events,
              uint32_t precision_cap, const TraceArgs& trace_args) {
    const qpool_start start_kind = start == "grover" ? QPOOL_START_GROVER : QPOOL_START_GALPERIN;
    // default mode: certified analytic counting for the Galperin start, the
    // direct simulation for the Grover start (which has no closed form)
    std::string mode_name = mode;
    if (mode_name.empty()) mode_name = start_kind == QPOOL_START_GROVER ? "direct" : "analytic";
    const qpool_count_mode mode_kind = mode_name == "direct"     ? QPOOL_COUNT_DIRECT
                                       : mode_name == "analytic" ? QPOOL_COUNT_ANALYTIC
                                                                 : QPOOL_COUNT_BOTH;

    char* count = nullptr;
    int32_t agreement = -1;
    uint32_t certified_bits = 0;
    qpool_status status = qpool_count(mass_ratio.c_str(), light_mass.c_str(), start_kind, mode_kind,
                                      max_events, precision_cap, &count, &agreement, &certified_bits);
    if (status != QPOOL_OK) return fail(status);

    if (mode_kind == QPOOL_COUNT_BOTH) {
        // a direct/analytic split is reported as QPOOL_ERR_DISAGREEMENT above
        std::printf("direct: %s\n", count);
        std::printf("analytic: %s\n", count);
        std::printf("agreement: %s\n", agreement == 1 ? "true" : "false");
    } else {
        std::printf("%s\n", count);
    }
    qpool_string_free(count);

    if (!trace_args.path.empty()) {
        if (mode_kind == QPOOL_COUNT_ANALYTIC) {
            std::fprintf(stderr, "error: traces require a simulation run; use --mode direct\n");
            return kExitUsage;
        }
        qpool_trace* trace = nullptr;
        status = qpool_billiard_run(mass_ratio.c_str(), light_mass.c_str(), start_kind, max_events,
                                    &trace);
        if (status != QPOOL_OK) return fail(status);
        const int rc = write_trace_if_requested(trace_args, trace);
        qpool_trace_free(trace);
        if (rc != kExitOk) return rc;
    }
    return kExitOk;
}

int run_grover(int64_t dimension, int64_t needles, const std::vector<int64_t>& marked,
               const std::string& iterations, uint32_t precision_cap, const TraceArgs& trace_args) {
    std::vector<int64_t> marked_set = marked;
    if (marked_set.empty()) {
        if (needles < 1) {
            std::fprintf(stderr, "error: --needles must be at least 1\n");
            return kExitUsage;
        }
        for (int64_t i = dimension - needles; i < dimension; ++i) marked_set.push_back(i);
    }

    int64_t want_iterations = -1;
    if (iterations != "optimal") {
        try {
            size_t pos = 0;
            want_iterations = std::stoll(iterations, &pos);
            if (pos != iterations.size() || want_iterations < 0) throw std::invalid_argument("");
        } catch (...) {
            std::fprintf(stderr, "error: --iterations takes a nonnegative integer or 'optimal'\n");
            return kExitUsage;
        }
    }

    double success = 0.0;
    int64_t ran = 0;
    qpool_trace* trace = nullptr;
    const qpool_status status =
        qpool_grover_run(dimension, marked_set.data(), marked_set.size(), want_iterations,
                         precision_cap, &success, &ran, trace_args.path.empty() ? nullptr : &trace);
    if (status != QPOOL_OK) return fail(status);

    std::printf("iterations: %lld\n", static_cast<long long>(ran));
    std::printf("success probability: %s\n", format_double(success).c_str());
    const int rc = write_trace_if_requested(trace_args, trace);
    if (trace) qpool_trace_free(trace);
    return rc;
}

int run_duality(int64_t dimension, int64_t needles, uint64_t steps, bool float_mode,
                const TraceArgs& trace_args) {
    qpool_duality_report report{};
    qpool_trace* trace = nullptr;
    char* final_state = nullptr;
    const bool exact = !float_mode;
    const bool want_final = exact && dimension <= 64;
    const qpool_status status = qpool_duality_verify(
        dimension, needles, steps, exact ? 1 : 0, &report,
        trace_args.path.empty() ? nullptr : &trace, want_final ? &final_state : nullptr);

    if (status == QPOOL_ERR_DUALITY_MISMATCH) {
        std::printf("mismatch at half-step %lld\n", static_cast<long long>(report.mismatch_step));
        std::fprintf(stderr, "error: %s\n", qpool_last_error());
        if (trace) qpool_trace_free(trace);
        return kExitMismatch;
    }
    if (status != QPOOL_OK) {
        if (trace) qpool_trace_free(trace);
        return fail(status);
    }

    std::printf("dimension: %lld\n", static_cast<long long>(dimension));
    std::printf("needles: %lld\n", static_cast<long long>(needles));
    std::printf("steps checked: %llu\n", static_cast<unsigned long long>(report.steps_checked));
    std::printf("collisions applied: %lld\n", static_cast<long long>(report.collision_count));
    std::printf("oracle queries: %lld\n", static_cast<long long>(report.query_count));
    if (exact) {
        std::printf("exact match: %s\n", report.exact_match ? "true" : "false");
    } else {
        std::printf("max float deviation: %s\n", format_double(report.max_float_deviation).c_str());
    }
    if (final_state) {
        std::printf("final state: %s\n", final_state);
        qpool_string_free(final_state);
    }
    const int rc = write_trace_if_requested(trace_args, trace);
    if (trace) qpool_trace_free(trace);
    if (rc != kExitOk) return rc;
    return exact && !report.exact_match ? kExitMismatch : kExitOk;
}

int run_pi_digits(uint32_t N, uint32_t precision_cap) {
    char* digits = nullptr;
    const qpool_status status = qpool_pi_digits(N, precision_cap, &digits);
    if (status != QPOOL_OK) return fail(status);
    std::printf("%s\n", digits);
    qpool_string_free(digits);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"billiard-collision pi counting, Grover search, and their exact correspondence"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    uint32_t precision_cap = 0; // 0 = library default (16384 bits)
    app.add_option("--precision-cap", precision_cap,
                   "interval-arithmetic precision cap in bits (default 16384)")
        ->capture_default_str();

    // count
    auto* count = app.add_subcommand("count", "count elastic collisions for a mass ratio");
    std::string mass_ratio, light_mass = "1", start = "galperin", mode;
    uint64_t max_events = 0;
    TraceArgs count_trace;
    count->add_option("--mass-ratio,-M", mass_ratio, "heavy mass M (integer or p/q)")->required();
    count->add_option("--light-mass,-m", light_mass, "light mass m (integer or p/q)")
        ->capture_default_str();
    count->add_option("--start", start, "start convention")
        ->check(CLI::IsMember({"galperin", "grover"}))
        ->capture_default_str();
    count->add_option("--mode", mode,
                      "direct simulation, certified analytic count, or both (default: analytic "
                      "for galperin, direct for grover)")
        ->check(CLI::IsMember({"direct", "analytic", "both"}));
    count->add_option("--max-events", max_events, "event budget for direct runs (default 10^8)");
    count_trace.attach(count);

    // grover
    auto* grover = app.add_subcommand("grover", "simulate Grover search on a qudit");
    int64_t dimension = 0, needles = 1;
    std::vector<int64_t> marked;
    std::string iterations = "optimal";
    TraceArgs grover_trace;
    grover->add_option("--dimension,-d", dimension, "number of basis states")->required();
    auto* needles_opt =
        grover->add_option("--needles,-n", needles, "number of marked states (marks the last n)")
            ->capture_default_str();
    grover->add_option("--marked", marked, "explicit 0-based marked indices (comma separated)")
        ->delimiter(',')
        ->excludes(needles_opt);
    grover->add_option("--iterations,-k", iterations, "iteration count or 'optimal'")
        ->capture_default_str();
    grover_trace.attach(grover);

    // duality
    auto* duality = app.add_subcommand("duality", "verify the billiard/search correspondence");
    int64_t dual_dimension = 0, dual_needles = 1;
    uint64_t steps = 0;
    bool exact_flag = false, float_flag = false;
    TraceArgs duality_trace;
    duality->add_option("--dimension,-d", dual_dimension, "qudit dimension (glued mass d-n)")
        ->required();
    duality->add_option("--needles,-n", dual_needles, "marked states / light-ball mass")
        ->capture_default_str();
    duality->add_option("--steps,-s", steps, "reflection pairs to verify")->required();
    duality->add_flag("--exact", exact_flag, "exact rational lockstep (default)");
    duality->add_flag("--float", float_flag, "float spot-check instead of exact equality");
    duality_trace.attach(duality);

    // pi-digits
    auto* pi = app.add_subcommand("pi-digits", "digits of pi from the collision count at 100^N");
    uint32_t N = 0;
    pi->add_option("--N,-N", N, "exponent in M = 100^N (yields N+1 digits)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (count->parsed()) {
        return run_count(mass_ratio, light_mass, start, mode, max_events, precision_cap, count_trace);
    }
    if (grover->parsed()) {
        return run_grover(dimension, needles, marked, iterations, precision_cap, grover_trace);
    }
    if (duality->parsed()) {
        if (exact_flag && float_flag) {
            std::fprintf(stderr, "error: --exact and --float are mutually exclusive\n");
            return kExitUsage;
        }
        return run_duality(dual_dimension, dual_needles, steps, float_flag, duality_trace);
    }
    if (pi->parsed()) {
        return run_pi_digits(N, precision_cap);
    }
    return kExitUsage;
}
