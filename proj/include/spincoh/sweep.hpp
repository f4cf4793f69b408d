#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spincoh/config.hpp"

namespace spincoh {

struct ResultTable {
    std::string command;                        // e.g. "rate"
    std::vector<std::string> columns;           // column names
    std::vector<std::string> units;             // aligned units
    std::vector<std::vector<double>> rows;      // grid order
};

// Evaluate fn(i) for i in [0, n) on a worker pool of `jobs` threads (0 = hardware
// concurrency); results are stored by grid index, so output order never depends on
// completion order. The first exception wins and is rethrown after the pool drains.
std::vector<std::vector<double>> parallel_map(std::size_t n, int jobs,
                                              const std::function<std::vector<double>(std::size_t)>& fn);

// CSV with '# units:' header (timestamp line suppressible); optional JSON mirror.
std::string render_csv(const ResultTable& table, bool timestamp);
std::string render_json(const ResultTable& table);

// Writes to rc.out_path (or stdout when empty); honors rc.json / rc.timestamp.
void emit_table(const ResultTable& table, const RunConfig& rc);

// Figure-data helper: columns subset written as "<dir>/<name>.csv".
void write_fig_csv(const std::string& dir, const std::string& name,
                   const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

} // namespace spincoh
