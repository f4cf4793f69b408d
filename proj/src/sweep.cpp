#include "spincoh/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "spincoh/errors.hpp"

namespace spincoh {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::vector<double>> parallel_map(
    std::size_t n, int jobs, const std::function<std::vector<double>(std::size_t)>& fn) {
    std::vector<std::vector<double>> rows(n);
    if (n == 0) return rows;
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, n);

    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                rows[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

std::string render_csv(const ResultTable& table, bool timestamp) {
    std::ostringstream os;
    os << "# spincoh " << table.command << "\n";
    if (timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated: " << buf << "\n";
    }
    os << "# units:";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << " " << table.columns[i] << "=" << table.units[i];
    os << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string render_json(const ResultTable& table) {
    nlohmann::json j;
    j["command"] = table.command;
    nlohmann::json units = nlohmann::json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) units[table.columns[i]] = table.units[i];
    j["units"] = units;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
        rows.push_back(obj);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void emit_table(const ResultTable& table, const RunConfig& rc) {
    if (rc.out_path.empty()) {
        if (rc.json)
            std::cout << render_json(table);
        else
            std::cout << render_csv(table, rc.timestamp);
        return;
    }
    {
        std::ofstream out(rc.out_path);
        if (!out) throw ConfigError("cannot open output path: " + rc.out_path);
        out << render_csv(table, rc.timestamp);
    }
    if (rc.json) {
        const std::string jpath = rc.out_path + ".json";
        std::ofstream out(jpath);
        if (!out) throw ConfigError("cannot open output path: " + jpath);
        out << render_json(table);
    }
}

void write_fig_csv(const std::string& dir, const std::string& name,
                   const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open figure data path: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

} // namespace spincoh
