#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dltv/distribution.hpp"
#include "dltv/rng.hpp"
#include "dltv/schedule.hpp"

namespace dltv {

/// Index of the largest score; ties resolve to the lowest index.
inline int argmax_lowest(const std::vector<double>& scores) {
    if (scores.empty()) throw std::invalid_argument("argmax_lowest: empty scores");
    int best = 0;
    for (int k = 1; k < static_cast<int>(scores.size()); ++k)
        if (scores[static_cast<std::size_t>(k)] > scores[static_cast<std::size_t>(best)]) best = k;
    return best;
}

namespace detail {
inline void check_dists(const std::vector<QuantileDistribution>& dists, const char* where) {
    if (dists.empty()) throw std::invalid_argument(std::string(where) + ": no distributions");
}
}  // namespace detail

/// Decayed exploration bonus for one action: schedule value at t times the
/// square root of the left-truncated variance.
inline double exploration_bonus(const QuantileDistribution& dist, const Schedule& schedule,
                                std::int64_t t) {
    return schedule_value(schedule, t) * std::sqrt(truncated_variance_plus(dist));
}

/// Full-variance bonus with a plain multiplier.
inline double full_variance_bonus(const QuantileDistribution& dist, double c) {
    return c * std::sqrt(variance_decomposition(dist).sigma2);
}

inline int select_mean_greedy(const std::vector<QuantileDistribution>& dists) {
    detail::check_dists(dists, "select_mean_greedy");
    std::vector<double> scores;
    scores.reserve(dists.size());
    for (const auto& d : dists) scores.push_back(mean(d));
    return argmax_lowest(scores);
}

/// Bonus proportional to the full standard deviation. With a constant
/// multiplier this rule over-explores forever on high-variance arms.
inline int select_naive(const std::vector<QuantileDistribution>& dists, double c) {
    detail::check_dists(dists, "select_naive");
    if (!std::isfinite(c)) throw std::invalid_argument("select_naive: c must be finite");
    std::vector<double> scores;
    scores.reserve(dists.size());
    for (const auto& d : dists) scores.push_back(mean(d) + full_variance_bonus(d, c));
    return argmax_lowest(scores);
}

/// Left-truncated-variance bonus under the given schedule, one global step
/// counter (first call passes t = 1).
inline int select_dltv(const std::vector<QuantileDistribution>& dists, const Schedule& schedule,
                       std::int64_t t) {
    detail::check_dists(dists, "select_dltv");
    std::vector<double> scores;
    scores.reserve(dists.size());
    for (const auto& d : dists) scores.push_back(mean(d) + exploration_bonus(d, schedule, t));
    return argmax_lowest(scores);
}

/// Same rule with one clock per action (ts[k] is the step count used for
/// action k's bonus).
inline int select_dltv(const std::vector<QuantileDistribution>& dists, const Schedule& schedule,
                       const std::vector<std::int64_t>& ts) {
    detail::check_dists(dists, "select_dltv");
    if (ts.size() != dists.size())
        throw std::invalid_argument("select_dltv: clock count must match distribution count");
    std::vector<double> scores;
    scores.reserve(dists.size());
    for (std::size_t k = 0; k < dists.size(); ++k)
        scores.push_back(mean(dists[k]) + exploration_bonus(dists[k], schedule, ts[k]));
    return argmax_lowest(scores);
}

/// Risk-sensitive selection: maximize the value-at-risk statistic.
inline int select_var_greedy(const std::vector<QuantileDistribution>& dists, double alpha) {
    detail::check_dists(dists, "select_var_greedy");
    std::vector<double> scores;
    scores.reserve(dists.size());
    for (const auto& d : dists) scores.push_back(var_alpha(d, alpha));
    return argmax_lowest(scores);
}

inline int select_epsilon_greedy(const std::vector<QuantileDistribution>& dists, double epsilon,
                                 Rng& rng) {
    detail::check_dists(dists, "select_epsilon_greedy");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("select_epsilon_greedy: epsilon must lie in [0,1]");
    if (uniform01(rng) < epsilon) return uniform_index(rng, static_cast<int>(dists.size()));
    return select_mean_greedy(dists);
}

enum class SelectionKind { mean_greedy, naive_bonus, dltv, epsilon_greedy, var_greedy };

/// One configured selection strategy. dltv and naive_bonus carry a schedule
/// (naive_bonus with the constant kind is the classic fixed-c rule);
/// epsilon_greedy carries epsilon, var_greedy carries alpha.
struct SelectionRule {
    SelectionKind kind = SelectionKind::dltv;
    std::optional<Schedule> schedule;
    std::optional<double> epsilon;
    std::optional<double> alpha;

    void validate() const {
        switch (kind) {
            case SelectionKind::mean_greedy: break;
            case SelectionKind::naive_bonus:
            case SelectionKind::dltv:
                if (!schedule) throw std::invalid_argument("SelectionRule: missing schedule");
                break;
            case SelectionKind::epsilon_greedy:
                if (!epsilon) throw std::invalid_argument("SelectionRule: missing epsilon");
                if (!(*epsilon >= 0.0 && *epsilon <= 1.0))
                    throw std::invalid_argument("SelectionRule: epsilon must lie in [0,1]");
                break;
            case SelectionKind::var_greedy:
                if (!alpha) throw std::invalid_argument("SelectionRule: missing alpha");
                if (!(*alpha > 0.0 && *alpha < 1.0))
                    throw std::invalid_argument("SelectionRule: alpha must lie in (0,1)");
                break;
        }
    }

    static SelectionRule mean_greedy() { return {SelectionKind::mean_greedy, {}, {}, {}}; }
    static SelectionRule naive_bonus(Schedule schedule) {
        return {SelectionKind::naive_bonus, schedule, {}, {}};
    }
    static SelectionRule dltv(Schedule schedule) { return {SelectionKind::dltv, schedule, {}, {}}; }
    static SelectionRule epsilon_greedy(double epsilon) {
        SelectionRule rule{SelectionKind::epsilon_greedy, {}, epsilon, {}};
        rule.validate();
        return rule;
    }
    static SelectionRule var_greedy(double alpha) {
        SelectionRule rule{SelectionKind::var_greedy, {}, {}, alpha};
        rule.validate();
        return rule;
    }
};

/// Dispatch on the rule. t is the global step count (first call passes 1),
/// consulted only by the schedule-driven rules; rng only by epsilon_greedy.
inline int select_action(const std::vector<QuantileDistribution>& dists, const SelectionRule& rule,
                         std::int64_t t, Rng& rng) {
    rule.validate();
    switch (rule.kind) {
        case SelectionKind::mean_greedy: return select_mean_greedy(dists);
        case SelectionKind::naive_bonus:
            return select_naive(dists, schedule_value(*rule.schedule, t));
        case SelectionKind::dltv: return select_dltv(dists, *rule.schedule, t);
        case SelectionKind::epsilon_greedy: return select_epsilon_greedy(dists, *rule.epsilon, rng);
        case SelectionKind::var_greedy: return select_var_greedy(dists, *rule.alpha);
    }
    throw std::logic_error("select_action: unknown selection kind");
}

/// Bonus the rule adds to the given action's mean at step t; zero for rules
/// without a bonus term. Used for per-step logging.
inline double selection_bonus(const QuantileDistribution& dist, const SelectionRule& rule,
                              std::int64_t t) {
    rule.validate();
    switch (rule.kind) {
        case SelectionKind::naive_bonus:
            return full_variance_bonus(dist, schedule_value(*rule.schedule, t));
        case SelectionKind::dltv: return exploration_bonus(dist, *rule.schedule, t);
        default: return 0.0;
    }
}

}  // namespace dltv
