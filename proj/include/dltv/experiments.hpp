#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dltv/agent.hpp"
#include "dltv/bandit.hpp"
#include "dltv/config.hpp"
#include "dltv/mdp.hpp"
#include "dltv/online.hpp"
#include "dltv/record.hpp"
#include "dltv/rng.hpp"
#include "dltv/selection.hpp"
#include "dltv/stats.hpp"

namespace dltv {

/// Per-agent aggregate over runs: terminal cumulative reward and per-step
/// average reward, each with its standard error across runs.
struct AgentSummary {
    std::string agent;
    int runs = 0;
    double mean_final_cum = 0.0;
    double stderr_final_cum = 0.0;
    double mean_step_reward = 0.0;
    double stderr_step_reward = 0.0;
};

/// Mean reward and mean cumulative reward at one step, across the runs that
/// reached that step.
struct CurvePoint {
    std::string agent;
    std::int64_t step = 0;
    double mean_reward = 0.0;
    double mean_cum_reward = 0.0;
    int n_runs = 0;
};

inline std::vector<AgentSummary> summarize(std::vector<ExperimentRecord> records) {
    sort_records(records);
    // final row per (agent, run): cumulative reward and step count
    std::map<std::string, std::map<int, std::pair<double, std::int64_t>>> finals;
    for (const auto& r : records) {
        auto& slot = finals[r.agent][r.run_id];
        slot = {r.cum_reward, r.step};  // sorted, so the last write is the final step
    }
    std::vector<AgentSummary> out;
    for (const auto& [agent, runs] : finals) {
        std::vector<double> cums, step_means;
        cums.reserve(runs.size());
        step_means.reserve(runs.size());
        for (const auto& [run_id, fin] : runs) {
            cums.push_back(fin.first);
            step_means.push_back(fin.second > 0 ? fin.first / static_cast<double>(fin.second)
                                                : 0.0);
        }
        AgentSummary s;
        s.agent = agent;
        s.runs = static_cast<int>(cums.size());
        s.mean_final_cum = stats::mean(cums);
        s.stderr_final_cum = cums.size() > 1 ? stats::standard_error(cums) : 0.0;
        s.mean_step_reward = stats::mean(step_means);
        s.stderr_step_reward = step_means.size() > 1 ? stats::standard_error(step_means) : 0.0;
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<CurvePoint> aggregate_curves(std::vector<ExperimentRecord> records) {
    sort_records(records);
    std::map<std::pair<std::string, std::int64_t>, std::pair<std::pair<double, double>, int>> acc;
    for (const auto& r : records) {
        auto& slot = acc[{r.agent, r.step}];
        slot.first.first += r.reward;
        slot.first.second += r.cum_reward;
        slot.second += 1;
    }
    std::vector<CurvePoint> out;
    out.reserve(acc.size());
    for (const auto& [key, v] : acc)
        out.push_back({key.first, key.second, v.first.first / v.second,
                       v.first.second / v.second, v.second});
    return out;
}

/// Final cumulative rewards per run for one agent, in run order. The sample
/// behind the summary's mean±stderr; used for significance tests.
inline std::vector<double> final_cum_rewards(std::vector<ExperimentRecord> records,
                                             const std::string& agent) {
    sort_records(records);
    std::map<int, double> finals;
    for (const auto& r : records)
        if (r.agent == agent) finals[r.run_id] = r.cum_reward;
    std::vector<double> out;
    out.reserve(finals.size());
    for (const auto& [run_id, cum] : finals) out.push_back(cum);
    return out;
}

namespace detail {

inline QuantileDistribution initial_estimate(const AgentConfig& agent) {
    if (agent.init_spread > 0.0) {
        auto d = QuantileDistribution::spread(agent.n_quantiles, agent.init_spread);
        if (agent.init_value != 0.0)
            for (double& v : d.values()) v += agent.init_value;
        return d;
    }
    return QuantileDistribution::uniform(agent.n_quantiles, agent.init_value);
}

inline BanditEnv make_bandit_env(const ExperimentConfig& config, int run) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run);
    switch (config.experiment) {
        case ExperimentKind::counter_example: return make_counter_example(config.n_arms, seed);
        case ExperimentKind::asymmetric_bandit: return make_asymmetric_env(config.n_arms, seed);
        case ExperimentKind::symmetric_bandit: return make_symmetric_env(config.n_arms, seed);
        default: throw std::logic_error("make_bandit_env: not a bandit experiment");
    }
}

inline std::vector<ExperimentRecord> run_bandit_run(const ExperimentConfig& config, int run) {
    const BanditEnv env = make_bandit_env(config, run);
    std::vector<ExperimentRecord> records;
    records.reserve(config.agents.size() * static_cast<std::size_t>(config.horizon));

    for (std::size_t ai = 0; ai < config.agents.size(); ++ai) {
        const AgentConfig& agent = config.agents[ai];
        Rng rng(derive_seed(config.base_seed + static_cast<std::uint64_t>(run), 1000 + ai));
        std::vector<OnlineEstimatorState> ests;
        ests.reserve(env.arms.size());
        for (std::size_t k = 0; k < env.arms.size(); ++k)
            ests.emplace_back(initial_estimate(agent), agent.step_size);

        std::vector<QuantileDistribution> row(env.arms.size(),
                                              QuantileDistribution::uniform(agent.n_quantiles, 0));
        const bool per_arm = agent.schedule_clock == ScheduleClock::per_arm;
        std::vector<std::int64_t> pulls(env.arms.size(), 0);  // per-arm clock: pulls + 1
        double cum = 0.0;
        for (std::int64_t t = 1; t <= config.horizon; ++t) {
            for (std::size_t k = 0; k < env.arms.size(); ++k) row[k] = ests[k].dist;
            int a;
            double bonus;
            if (per_arm) {
                std::vector<std::int64_t> ts(pulls);
                for (auto& v : ts) ++v;
                a = select_dltv(row, *agent.selection.schedule, ts);
                bonus = exploration_bonus(row[static_cast<std::size_t>(a)],
                                          *agent.selection.schedule,
                                          ts[static_cast<std::size_t>(a)]);
                ++pulls[static_cast<std::size_t>(a)];
            } else {
                a = select_action(row, agent.selection, t, rng);
                bonus = selection_bonus(row[static_cast<std::size_t>(a)], agent.selection, t);
            }
            const double reward = pull(env, a, rng);
            online_update(ests[static_cast<std::size_t>(a)], reward);
            cum += reward;
            records.push_back({run, t, agent.name, a, reward, bonus, cum,
                               a == env.optimal_arm ? 1 : 0});
        }
    }
    return records;
}

inline std::vector<ExperimentRecord> run_figure1_run(const ExperimentConfig& config, int run) {
    AgentConfig params;  // estimator hyper-parameters; selection is irrelevant here
    if (!config.agents.empty()) params = config.agents.front();
    const std::pair<const char*, ArmSpec> targets[] = {
        {"degenerate", make_figure1_target(FigureTargetKind::degenerate)},
        {"stochastic", make_figure1_target(FigureTargetKind::stochastic)}};

    std::vector<ExperimentRecord> records;
    records.reserve(2 * static_cast<std::size_t>(config.horizon));
    for (std::size_t ti = 0; ti < 2; ++ti) {
        Rng rng(derive_seed(config.base_seed + static_cast<std::uint64_t>(run), 2000 + ti));
        OnlineEstimatorState est(initial_estimate(params), params.step_size);
        double cum = 0.0;
        for (std::int64_t t = 1; t <= config.horizon; ++t) {
            const double sample = sample_reward(targets[ti].second, rng);
            online_update(est, sample);
            cum += sample;
            records.push_back({run, t, targets[ti].first, 0, sample, 0.0, cum, 0});
        }
    }
    return records;
}

inline std::vector<ExperimentRecord> run_tabular_run(const ExperimentConfig& config, int run) {
    const TabularMDP mdp = config.experiment == ExperimentKind::cliff_walk
                               ? make_cliff_walk(config.grid_width, config.grid_height,
                                                 config.slip, config.gamma)
                               : make_chain(config.chain_length, config.gamma);
    std::vector<ExperimentRecord> records;
    for (std::size_t ai = 0; ai < config.agents.size(); ++ai) {
        Rng rng(derive_seed(config.base_seed + static_cast<std::uint64_t>(run), 1000 + ai));
        auto result = train_episodes(mdp, config.agents[ai], static_cast<int>(config.horizon),
                                     rng, run);
        records.insert(records.end(), std::make_move_iterator(result.records.begin()),
                       std::make_move_iterator(result.records.end()));
    }
    return records;
}

inline std::vector<ExperimentRecord> run_one(const ExperimentConfig& config, int run) {
    switch (config.experiment) {
        case ExperimentKind::counter_example:
        case ExperimentKind::asymmetric_bandit:
        case ExperimentKind::symmetric_bandit: return run_bandit_run(config, run);
        case ExperimentKind::figure1_demo: return run_figure1_run(config, run);
        case ExperimentKind::cliff_walk:
        case ExperimentKind::chain_sanity: return run_tabular_run(config, run);
    }
    throw std::logic_error("run_one: unknown experiment kind");
}

}  // namespace detail

struct ExperimentOutput {
    std::vector<ExperimentRecord> records;
    std::vector<AgentSummary> summary;
};

/// Run every (run, agent) cell of the experiment. Runs are independent and
/// may execute in parallel (config.jobs threads); records are sorted into the
/// canonical (run, agent, step) order afterwards, so output is byte-identical
/// at any parallelism level.
inline ExperimentOutput run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<std::vector<ExperimentRecord>> per_run(static_cast<std::size_t>(config.runs));

    if (config.jobs <= 1) {
        for (int run = 0; run < config.runs; ++run)
            per_run[static_cast<std::size_t>(run)] = detail::run_one(config, run);
    } else {
        for (int base = 0; base < config.runs; base += config.jobs) {
            std::vector<std::future<std::vector<ExperimentRecord>>> wave;
            const int end = std::min(config.runs, base + config.jobs);
            wave.reserve(static_cast<std::size_t>(end - base));
            for (int run = base; run < end; ++run)
                wave.push_back(std::async(std::launch::async,
                                          [&config, run] { return detail::run_one(config, run); }));
            for (int run = base; run < end; ++run)
                per_run[static_cast<std::size_t>(run)] = wave[static_cast<std::size_t>(run - base)].get();
        }
    }

    ExperimentOutput out;
    std::size_t total = 0;
    for (const auto& r : per_run) total += r.size();
    out.records.reserve(total);
    for (auto& r : per_run)
        out.records.insert(out.records.end(), std::make_move_iterator(r.begin()),
                           std::make_move_iterator(r.end()));
    sort_records(out.records);
    out.summary = summarize(out.records);
    return out;
}

/// Aligned text table for terminal output.
inline std::string format_summary(const std::vector<AgentSummary>& summary) {
    if (summary.empty()) return "(no records)\n";
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-16s %6s %18s %12s %14s %12s\n", "agent", "runs",
                  "final_cum_mean", "stderr", "step_reward", "stderr");
    out += buf;
    for (const auto& s : summary) {
        std::snprintf(buf, sizeof(buf), "%-16s %6d %18.4f %12.4f %14.6f %12.6f\n",
                      s.agent.c_str(), s.runs, s.mean_final_cum, s.stderr_final_cum,
                      s.mean_step_reward, s.stderr_step_reward);
        out += buf;
    }
    return out;
}

}  // namespace dltv
