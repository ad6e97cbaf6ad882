#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace dltv {

/// One per-step log row. `optimal` is 1 when the chosen action was the
/// environment's optimal arm (bandits; 0 elsewhere).
struct ExperimentRecord {
    int run_id = 0;
    std::int64_t step = 0;
    std::string agent;
    int action = 0;
    double reward = 0.0;
    double bonus = 0.0;
    double cum_reward = 0.0;
    int optimal = 0;
};

inline constexpr const char* kCsvHeader = "run_id,step,agent,action,reward,bonus,cum_reward,optimal";

/// Canonical row order; makes output independent of execution interleaving.
inline void sort_records(std::vector<ExperimentRecord>& records) {
    std::sort(records.begin(), records.end(),
              [](const ExperimentRecord& a, const ExperimentRecord& b) {
                  return std::tie(a.run_id, a.agent, a.step) < std::tie(b.run_id, b.agent, b.step);
              });
}

namespace detail {
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}
}  // namespace detail

inline std::string to_csv_row(const ExperimentRecord& r) {
    std::string row;
    row += std::to_string(r.run_id);
    row += ',';
    row += std::to_string(r.step);
    row += ',';
    row += r.agent;
    row += ',';
    row += std::to_string(r.action);
    row += ',';
    row += detail::format_double(r.reward);
    row += ',';
    row += detail::format_double(r.bonus);
    row += ',';
    row += detail::format_double(r.cum_reward);
    row += ',';
    row += std::to_string(r.optimal);
    return row;
}

inline void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

inline std::vector<ExperimentRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: " + path + " is empty");
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader)
        throw std::runtime_error("read_csv: " + path + ":1: unexpected header '" + line + "'");

    std::vector<ExperimentRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream row(line);
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 8)
            throw std::runtime_error("read_csv: " + path + ":" + std::to_string(line_no) +
                                     ": expected 8 fields, got " + std::to_string(fields.size()));
        try {
            ExperimentRecord r;
            r.run_id = std::stoi(fields[0]);
            r.step = std::stoll(fields[1]);
            r.agent = fields[2];
            r.action = std::stoi(fields[3]);
            r.reward = std::stod(fields[4]);
            r.bonus = std::stod(fields[5]);
            r.cum_reward = std::stod(fields[6]);
            r.optimal = std::stoi(fields[7]);
            records.push_back(std::move(r));
        } catch (const std::exception&) {
            throw std::runtime_error("read_csv: " + path + ":" + std::to_string(line_no) +
                                     ": malformed row '" + line + "'");
        }
    }
    return records;
}

}  // namespace dltv
