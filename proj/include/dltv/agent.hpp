#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dltv/losses.hpp"
#include "dltv/mdp.hpp"
#include "dltv/quantile_table.hpp"
#include "dltv/record.hpp"
#include "dltv/rng.hpp"
#include "dltv/schedule.hpp"
#include "dltv/selection.hpp"

namespace dltv {

enum class TargetSync { live, frozen };

/// Clock feeding the decaying schedule: the global environment step, or (in
/// the bandit loop only) each arm's own pull count. Tabular training always
/// runs on the global clock.
enum class ScheduleClock { global, per_arm };

/// Hyper-parameters of the tabular distributional agent.
///
/// `selection` is the behavior policy (default: the decaying-bonus rule with
/// `schedule`). The bootstrap action a* is the bonus-augmented argmax over the
/// target table with the same `schedule`, unless `greedy_target` switches it
/// to the plain mean argmax. `target_sync` chooses between updating against
/// the live table or a frozen copy refreshed every `sync_period` updates.
/// `bonus_from_target` sources the behavior bonus's dispersion statistic from
/// the target table instead of the online one (only distinct when frozen).
/// `exploring_starts` draws episode starts uniformly over non-terminal states
/// and the first action of each episode uniformly over actions, which
/// guarantees per-entry coverage on small MDPs.
struct AgentConfig {
    std::string name = "dltv";
    double step_size = 0.1;
    Schedule schedule{};
    HuberParams kappa{};
    int n_quantiles = 32;
    double init_value = 0.0;
    double init_spread = 0.0;
    TargetSync target_sync = TargetSync::live;
    int sync_period = 100;
    SelectionRule selection = SelectionRule::dltv(Schedule{});
    ScheduleClock schedule_clock = ScheduleClock::global;
    bool greedy_target = false;
    bool bonus_from_target = false;
    bool exploring_starts = false;
    int episode_cap = 500;

    void validate() const {
        if (name.empty()) throw std::invalid_argument("AgentConfig: name must be nonempty");
        if (name.find(',') != std::string::npos)
            throw std::invalid_argument("AgentConfig: name must not contain commas");
        if (!(step_size > 0.0)) throw std::invalid_argument("AgentConfig: step_size must be > 0");
        if (n_quantiles < 2 || n_quantiles % 2 != 0)
            throw std::invalid_argument("AgentConfig: n_quantiles must be even and >= 2");
        if (init_spread < 0.0) throw std::invalid_argument("AgentConfig: init_spread must be >= 0");
        if (target_sync == TargetSync::frozen && sync_period < 1)
            throw std::invalid_argument("AgentConfig: sync_period must be >= 1");
        if (episode_cap < 1) throw std::invalid_argument("AgentConfig: episode_cap must be >= 1");
        if (schedule_clock == ScheduleClock::per_arm && selection.kind != SelectionKind::dltv)
            throw std::invalid_argument(
                "AgentConfig: schedule_clock = per_arm needs the dltv selection rule");
        selection.validate();
    }
};

struct TrainResult {
    QuantileTable table;
    std::vector<ExperimentRecord> records;
    std::int64_t total_steps = 0;
};

namespace detail {

inline QuantileTable make_table(const TabularMDP& mdp, const AgentConfig& config) {
    if (config.init_spread > 0.0) {
        QuantileTable t =
            QuantileTable::spread_init(mdp.n_states, mdp.n_actions, config.n_quantiles,
                                       config.init_spread);
        if (config.init_value != 0.0)
            for (auto& e : t.entries)
                for (double& v : e.values()) v += config.init_value;
        return t;
    }
    return {mdp.n_states, mdp.n_actions, config.n_quantiles, config.init_value};
}

inline int uniform_nonterminal_state(const TabularMDP& mdp, Rng& rng) {
    std::vector<int> live;
    live.reserve(static_cast<std::size_t>(mdp.n_states));
    for (int s = 0; s < mdp.n_states; ++s)
        if (!mdp.is_terminal(s)) live.push_back(s);
    if (live.empty()) throw std::invalid_argument("train_episodes: all states terminal");
    return live[static_cast<std::size_t>(uniform_index(rng, static_cast<int>(live.size())))];
}

/// Behavior action plus the bonus credited to it in the step log.
inline std::pair<int, double> behavior_action(const QuantileTable& online,
                                              const QuantileTable& target,
                                              const AgentConfig& config, int s, std::int64_t t,
                                              Rng& rng) {
    const auto rule = config.selection;
    if (config.bonus_from_target && rule.kind == SelectionKind::dltv) {
        // means from the online table, dispersion from the target table
        std::vector<double> scores(static_cast<std::size_t>(online.n_actions));
        std::vector<double> bonuses(static_cast<std::size_t>(online.n_actions));
        for (int a = 0; a < online.n_actions; ++a) {
            bonuses[static_cast<std::size_t>(a)] = exploration_bonus(target.entry(s, a),
                                                                     *rule.schedule, t);
            scores[static_cast<std::size_t>(a)] =
                q_value(online, s, a) + bonuses[static_cast<std::size_t>(a)];
        }
        const int a = argmax_lowest(scores);
        return {a, bonuses[static_cast<std::size_t>(a)]};
    }
    const auto row = online.state_row(s);
    const int a = select_action(row, rule, t, rng);
    return {a, selection_bonus(row[static_cast<std::size_t>(a)], rule, t)};
}

}  // namespace detail

/// Episodic training per the decaying-bonus algorithm: behavior action from
/// the configured rule, bootstrap a* from the target table (bonus-augmented
/// argmax unless greedy_target), one quantile_update per transition. Returns
/// the learned table plus per-step logs (step numbers are global across
/// episodes; `optimal` is always 0 here).
inline TrainResult train_episodes(const TabularMDP& mdp, const AgentConfig& config,
                                  int n_episodes, Rng& rng, int run_id = 0) {
    mdp.validate();
    config.validate();
    if (n_episodes < 1) throw std::invalid_argument("train_episodes: n_episodes must be >= 1");

    TrainResult result{detail::make_table(mdp, config), {}, 0};
    QuantileTable& table = result.table;
    const bool frozen = config.target_sync == TargetSync::frozen;
    std::optional<QuantileTable> target_copy;
    if (frozen) target_copy = table;

    std::int64_t t = 0;
    std::int64_t updates = 0;
    double cum = 0.0;

    for (int ep = 0; ep < n_episodes; ++ep) {
        int s = config.exploring_starts ? detail::uniform_nonterminal_state(mdp, rng)
                                        : mdp.sample_start(rng);
        for (int step = 0; step < config.episode_cap && !mdp.is_terminal(s); ++step) {
            ++t;
            const QuantileTable& target_table = frozen ? *target_copy : table;
            auto [a, bonus] = detail::behavior_action(table, target_table, config, s, t, rng);
            if (config.exploring_starts && step == 0) {
                // classic exploring starts: the first action is drawn uniformly
                // so every (state, action) entry keeps receiving direct updates
                a = uniform_index(rng, mdp.n_actions);
                bonus = 0.0;
            }
            const auto outcome = mdp.step(s, a, rng);
            const int s2 = outcome.next_state;
            const bool next_terminal = mdp.is_terminal(s2);

            int a_star = 0;
            if (!next_terminal)
                a_star = config.greedy_target
                             ? select_mean_greedy(target_table.state_row(s2))
                             : select_dltv(target_table.state_row(s2), config.schedule, t);
            const auto targets = bellman_target(target_table, outcome.reward, s2, a_star,
                                                mdp.gamma, next_terminal);
            quantile_update(table, s, a, targets, config.step_size, config.kappa);
            ++updates;
            if (frozen && updates % config.sync_period == 0) *target_copy = table;

            cum += outcome.reward;
            result.records.push_back(
                {run_id, t, config.name, a, outcome.reward, bonus, cum, 0});
            s = s2;
        }
    }
    result.total_steps = t;
    return result;
}

struct Trajectory {
    std::vector<int> states;   // visited states, starting state included
    std::vector<int> actions;  // one per transition
    std::vector<double> rewards;
    double total_reward = 0.0;
    bool reached_terminal = false;
};

/// One evaluation episode under a fixed selection rule, no learning. The
/// rule's step clock is pinned to 1 (evaluation rules are normally
/// t-independent: mean_greedy or var_greedy).
inline Trajectory run_policy(const TabularMDP& mdp, const QuantileTable& table,
                             const SelectionRule& rule, Rng& rng, int step_cap = 500) {
    if (step_cap < 1) throw std::invalid_argument("run_policy: step_cap must be >= 1");
    rule.validate();
    Trajectory traj;
    int s = mdp.sample_start(rng);
    traj.states.push_back(s);
    for (int step = 0; step < step_cap; ++step) {
        if (mdp.is_terminal(s)) {
            traj.reached_terminal = true;
            break;
        }
        const int a = select_action(table.state_row(s), rule, 1, rng);
        const auto outcome = mdp.step(s, a, rng);
        traj.actions.push_back(a);
        traj.rewards.push_back(outcome.reward);
        traj.total_reward += outcome.reward;
        s = outcome.next_state;
        traj.states.push_back(s);
    }
    if (mdp.is_terminal(s)) traj.reached_terminal = true;
    return traj;
}

}  // namespace dltv
