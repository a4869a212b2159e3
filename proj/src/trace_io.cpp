#include "trace_io.hpp"

#include "errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>

namespace qpool::trace {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Side s) {
    switch (s) {
        case Side::Billiard: return "billiard";
        case Side::Grover: return "grover";
        case Side::Both: return "both";
    }
    return "billiard";
}

std::string_view to_string(Event e) {
    switch (e) {
        case Event::Wall: return "wall";
        case Event::Balls: return "balls";
        case Event::Oracle: return "oracle";
        case Event::Diffusion: return "diffusion";
    }
    return "wall";
}

Side side_from_string(std::string_view s) {
    if (s == "billiard") return Side::Billiard;
    if (s == "grover") return Side::Grover;
    if (s == "both") return Side::Both;
    throw DomainError("unknown trace side: " + std::string(s));
}

Event event_from_string(std::string_view s) {
    if (s == "wall") return Event::Wall;
    if (s == "balls") return Event::Balls;
    if (s == "oracle") return Event::Oracle;
    if (s == "diffusion") return Event::Diffusion;
    throw DomainError("unknown trace event: " + std::string(s));
}

std::string to_json_line(const Record& r) {
    ordered_json j;
    j["step"] = r.step;
    j["side"] = to_string(r.side);
    j["event"] = to_string(r.event);
    j["exact_values"] = r.exact_values;
    j["float_values"] = r.float_values;
    j["theta"] = r.theta;
    return j.dump();
}

Record record_from_json(std::string_view line) {
    const auto j = nlohmann::json::parse(line);
    Record r;
    r.step = j.at("step").get<uint64_t>();
    r.side = side_from_string(j.at("side").get<std::string>());
    r.event = event_from_string(j.at("event").get<std::string>());
    r.exact_values = j.at("exact_values").get<std::vector<std::string>>();
    r.float_values = j.at("float_values").get<std::vector<double>>();
    r.theta = j.at("theta").get<double>();
    return r;
}

void write_jsonl(std::ostream& out, const Sheet& sheet) {
    for (const Record& r : sheet.records) out << to_json_line(r) << '\n';
}

namespace {
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

void write_csv(std::ostream& out, const Sheet& sheet) {
    size_t cols = 0;
    for (const Record& r : sheet.records) cols = std::max(cols, r.float_values.size());
    out << "step,side,event";
    for (size_t c = 0; c < cols; ++c) out << ",value" << c;
    out << ",theta\n";
    for (const Record& r : sheet.records) {
        out << r.step << ',' << to_string(r.side) << ',' << to_string(r.event);
        for (size_t c = 0; c < cols; ++c) {
            out << ',';
            if (c < r.float_values.size()) out << format_double(r.float_values[c]);
        }
        out << ',' << format_double(r.theta) << '\n';
    }
}

Sheet read_jsonl(std::istream& in) {
    Sheet sheet;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        sheet.records.push_back(record_from_json(line));
    }
    return sheet;
}

void write_file(const Sheet& sheet, const std::string& path, bool csv) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open trace file for writing: " + path);
    if (csv) {
        write_csv(out, sheet);
    } else {
        write_jsonl(out, sheet);
    }
    out.flush();
    if (!out) throw IoError("failed writing trace file: " + path);
}

Sheet from_billiard_trace(const billiards::Trace& t) {
    Sheet sheet;
    sheet.records.reserve(t.events.size());
    for (const auto& ev : t.events) {
        Record r;
        r.step = ev.index;
        r.side = Side::Billiard;
        r.event = ev.kind == billiards::EventKind::Wall ? Event::Wall : Event::Balls;
        r.exact_values = {ev.after.V.to_string(), ev.after.v.to_string()};
        r.float_values = {ev.V_float, ev.v_float};
        r.theta = ev.theta;
        sheet.records.push_back(std::move(r));
    }
    return sheet;
}

} // namespace qpool::trace
