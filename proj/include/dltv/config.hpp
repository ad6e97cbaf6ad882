#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dltv/agent.hpp"
#include "dltv/schedule.hpp"
#include "dltv/selection.hpp"

namespace dltv {

enum class ExperimentKind {
    counter_example,
    asymmetric_bandit,
    symmetric_bandit,
    figure1_demo,
    cliff_walk,
    chain_sanity
};

inline const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::counter_example: return "counter_example";
        case ExperimentKind::asymmetric_bandit: return "asymmetric_bandit";
        case ExperimentKind::symmetric_bandit: return "symmetric_bandit";
        case ExperimentKind::figure1_demo: return "figure1_demo";
        case ExperimentKind::cliff_walk: return "cliff_walk";
        case ExperimentKind::chain_sanity: return "chain_sanity";
    }
    return "?";
}

/// Parsed experiment description: which environment, which agents, and the
/// run geometry. `horizon` counts bandit steps or tabular episodes.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::counter_example;
    std::vector<AgentConfig> agents;
    std::int64_t horizon = 2000;
    int runs = 200;
    std::uint64_t base_seed = 1;
    std::string output_path = "records.csv";
    int jobs = 1;
    // environment knobs
    int n_arms = 10;
    int grid_width = 8;
    int grid_height = 4;
    double slip = 0.1;
    double gamma = 0.99;
    int chain_length = 3;

    void validate() const {
        if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
        if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
        if (jobs < 1 || jobs > 64) throw std::invalid_argument("config: jobs must lie in [1,64]");
        if (agents.empty() && experiment != ExperimentKind::figure1_demo)
            throw std::invalid_argument("config: need at least one [agent] block");
        if (n_arms < 2) throw std::invalid_argument("config: n_arms must be >= 2");
        if (grid_width < 3) throw std::invalid_argument("config: width must be >= 3");
        if (grid_height < 2) throw std::invalid_argument("config: height must be >= 2");
        if (!(slip >= 0.0 && slip < 1.0))
            throw std::invalid_argument("config: slip must lie in [0,1)");
        if (!(gamma >= 0.0 && gamma < 1.0))
            throw std::invalid_argument("config: gamma must lie in [0,1)");
        if (chain_length < 1) throw std::invalid_argument("config: chain_length must be >= 1");
        std::set<std::string> names;
        for (const auto& a : agents) {
            a.validate();
            if (!names.insert(a.name).second)
                throw std::invalid_argument("config: duplicate agent name '" + a.name + "'");
        }
    }
};

namespace detail {

struct AgentDraft {
    AgentConfig cfg;
    std::string selection = "dltv";
    ScheduleKind schedule_kind = ScheduleKind::decaying;
    double c = 50.0;
    double epsilon = 0.1;
    double alpha = 0.9;
    int names_seen = 0;

    AgentConfig finalize(int line) const {
        AgentConfig out = cfg;
        const Schedule schedule(schedule_kind, c);
        out.schedule = schedule;
        if (selection == "dltv")
            out.selection = SelectionRule::dltv(schedule);
        else if (selection == "naive" || selection == "naive_bonus")
            out.selection = SelectionRule::naive_bonus(schedule);
        else if (selection == "mean_greedy")
            out.selection = SelectionRule::mean_greedy();
        else if (selection == "epsilon_greedy")
            out.selection = SelectionRule::epsilon_greedy(epsilon);
        else if (selection == "var_greedy")
            out.selection = SelectionRule::var_greedy(alpha);
        else
            throw std::runtime_error("line " + std::to_string(line) + ": unknown selection '" +
                                     selection +
                                     "' (expected mean_greedy, naive, dltv, epsilon_greedy, "
                                     "var_greedy)");
        out.validate();
        return out;
    }
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line) + ": field '" + key +
                                 "' expects a number, got '" + value + "'");
    }
}

inline std::int64_t parse_int(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const std::int64_t x = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line) + ": field '" + key +
                                 "' expects an integer, got '" + value + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::runtime_error("line " + std::to_string(line) + ": field '" + key +
                             "' expects true or false, got '" + value + "'");
}

inline ExperimentKind parse_experiment(const std::string& value, int line) {
    if (value == "counter_example") return ExperimentKind::counter_example;
    if (value == "asymmetric_bandit") return ExperimentKind::asymmetric_bandit;
    if (value == "symmetric_bandit") return ExperimentKind::symmetric_bandit;
    if (value == "figure1_demo") return ExperimentKind::figure1_demo;
    if (value == "cliff_walk") return ExperimentKind::cliff_walk;
    if (value == "chain_sanity") return ExperimentKind::chain_sanity;
    throw std::runtime_error(
        "line " + std::to_string(line) + ": field 'experiment' got '" + value +
        "' (expected counter_example, asymmetric_bandit, symmetric_bandit, figure1_demo, "
        "cliff_walk, chain_sanity)");
}

}  // namespace detail

/// Parse the flat key = value format with one [agent] block per agent.
/// Lines starting with # are comments. Errors carry 1-based line numbers.
inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::vector<detail::AgentDraft> drafts;
    std::vector<int> draft_lines;
    bool in_agent = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[agent]") {
            in_agent = true;
            drafts.emplace_back();
            draft_lines.push_back(line_no);
            continue;
        }
        if (line.front() == '[')
            throw std::runtime_error("line " + std::to_string(line_no) + ": unknown section '" +
                                     line + "' (only [agent] is recognized)");
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected key = value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected key = value, got '" + line + "'");

        if (!in_agent) {
            if (key == "experiment")
                config.experiment = detail::parse_experiment(value, line_no);
            else if (key == "runs")
                config.runs = static_cast<int>(detail::parse_int(key, value, line_no));
            else if (key == "horizon")
                config.horizon = detail::parse_int(key, value, line_no);
            else if (key == "seed")
                config.base_seed =
                    static_cast<std::uint64_t>(detail::parse_int(key, value, line_no));
            else if (key == "out")
                config.output_path = value;
            else if (key == "jobs")
                config.jobs = static_cast<int>(detail::parse_int(key, value, line_no));
            else if (key == "n_arms")
                config.n_arms = static_cast<int>(detail::parse_int(key, value, line_no));
            else if (key == "width")
                config.grid_width = static_cast<int>(detail::parse_int(key, value, line_no));
            else if (key == "height")
                config.grid_height = static_cast<int>(detail::parse_int(key, value, line_no));
            else if (key == "slip")
                config.slip = detail::parse_real(key, value, line_no);
            else if (key == "gamma")
                config.gamma = detail::parse_real(key, value, line_no);
            else if (key == "chain_length")
                config.chain_length = static_cast<int>(detail::parse_int(key, value, line_no));
            else
                throw std::runtime_error("line " + std::to_string(line_no) + ": unknown field '" +
                                         key + "'");
            continue;
        }

        detail::AgentDraft& d = drafts.back();
        if (key == "name")
            d.cfg.name = value;
        else if (key == "selection")
            d.selection = value;
        else if (key == "schedule") {
            if (value == "constant")
                d.schedule_kind = ScheduleKind::constant;
            else if (value == "decaying")
                d.schedule_kind = ScheduleKind::decaying;
            else
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": field 'schedule' expects constant or decaying, got '" +
                                         value + "'");
        } else if (key == "c")
            d.c = detail::parse_real(key, value, line_no);
        else if (key == "epsilon")
            d.epsilon = detail::parse_real(key, value, line_no);
        else if (key == "alpha")
            d.alpha = detail::parse_real(key, value, line_no);
        else if (key == "step_size")
            d.cfg.step_size = detail::parse_real(key, value, line_no);
        else if (key == "kappa")
            d.cfg.kappa = HuberParams(detail::parse_real(key, value, line_no));
        else if (key == "n_quantiles")
            d.cfg.n_quantiles = static_cast<int>(detail::parse_int(key, value, line_no));
        else if (key == "init_value")
            d.cfg.init_value = detail::parse_real(key, value, line_no);
        else if (key == "init_spread")
            d.cfg.init_spread = detail::parse_real(key, value, line_no);
        else if (key == "target_sync") {
            if (value == "live")
                d.cfg.target_sync = TargetSync::live;
            else if (value == "frozen")
                d.cfg.target_sync = TargetSync::frozen;
            else
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": field 'target_sync' expects live or frozen, got '" +
                                         value + "'");
        } else if (key == "schedule_clock") {
            if (value == "global")
                d.cfg.schedule_clock = ScheduleClock::global;
            else if (value == "per_arm")
                d.cfg.schedule_clock = ScheduleClock::per_arm;
            else
                throw std::runtime_error(
                    "line " + std::to_string(line_no) +
                    ": field 'schedule_clock' expects global or per_arm, got '" + value + "'");
        } else if (key == "sync_period")
            d.cfg.sync_period = static_cast<int>(detail::parse_int(key, value, line_no));
        else if (key == "greedy_target")
            d.cfg.greedy_target = detail::parse_bool(key, value, line_no);
        else if (key == "bonus_from_target")
            d.cfg.bonus_from_target = detail::parse_bool(key, value, line_no);
        else if (key == "exploring_starts")
            d.cfg.exploring_starts = detail::parse_bool(key, value, line_no);
        else if (key == "episode_cap")
            d.cfg.episode_cap = static_cast<int>(detail::parse_int(key, value, line_no));
        else
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": unknown agent field '" + key + "'");
    }

    for (std::size_t i = 0; i < drafts.size(); ++i) {
        if (drafts[i].cfg.name == "dltv" && drafts[i].selection != "dltv")
            drafts[i].cfg.name = drafts[i].selection;  // default name follows the rule
        config.agents.push_back(drafts[i].finalize(draft_lines[i]));
    }
    config.validate();
    return config;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace dltv
