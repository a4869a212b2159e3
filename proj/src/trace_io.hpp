#pragma once

#include "billiards.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qpool::trace {

enum class Side { Billiard, Grover, Both };
enum class Event { Wall, Balls, Oracle, Diffusion };

// One serialized simulation event. exact_values are decimal rational
// strings ("p" or "p/q") that parse back to the simulator's internal state
// bit for bit; float_values are lossy snapshots for plotting.
struct Record {
    uint64_t step = 0;
    Side side = Side::Billiard;
    Event event = Event::Wall;
    std::vector<std::string> exact_values;
    std::vector<double> float_values;
    double theta = 0.0;
};

struct Sheet {
    std::vector<Record> records;
};

std::string_view to_string(Side s);
std::string_view to_string(Event e);
Side side_from_string(std::string_view s);
Event event_from_string(std::string_view s);

std::string to_json_line(const Record& r);
Record record_from_json(std::string_view line);

// jsonl: UTF-8, one record object per line. csv: header row plus float
// columns only (exact values do not fit a flat numeric table).
void write_jsonl(std::ostream& out, const Sheet& sheet);
void write_csv(std::ostream& out, const Sheet& sheet);
Sheet read_jsonl(std::istream& in);

void write_file(const Sheet& sheet, const std::string& path, bool csv);

Sheet from_billiard_trace(const billiards::Trace& t);

} // namespace qpool::trace
