#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dltv/distribution.hpp"
#include "dltv/losses.hpp"
#include "dltv/mdp.hpp"
#include "dltv/schedule.hpp"
#include "dltv/selection.hpp"

namespace dltv {

/// Per-(state, action) quantile distribution with shared levels; the tabular
/// stand-in for the parametric quantile network.
struct QuantileTable {
    int n_states = 0;
    int n_actions = 0;
    QuantileLevels levels;
    std::vector<QuantileDistribution> entries;

    QuantileTable(int n_states_, int n_actions_, int n_quantiles, double init_value)
        : n_states(n_states_), n_actions(n_actions_), levels(n_quantiles) {
        if (n_states < 1 || n_actions < 1)
            throw std::invalid_argument("QuantileTable: need >= 1 state and action");
        entries.assign(static_cast<std::size_t>(n_states) * static_cast<std::size_t>(n_actions),
                       QuantileDistribution::uniform(n_quantiles, init_value));
    }

    /// Spread initialization: every entry linspace over [-half_width, half_width].
    static QuantileTable spread_init(int n_states, int n_actions, int n_quantiles,
                                     double half_width) {
        QuantileTable t(n_states, n_actions, n_quantiles, 0.0);
        const auto proto = QuantileDistribution::spread(n_quantiles, half_width);
        for (auto& e : t.entries) e = proto;
        return t;
    }

    int n_quantiles() const { return levels.size(); }

    std::size_t index(int s, int a) const {
        if (s < 0 || s >= n_states) throw std::invalid_argument("QuantileTable: state out of range");
        if (a < 0 || a >= n_actions)
            throw std::invalid_argument("QuantileTable: action out of range");
        return static_cast<std::size_t>(s) * static_cast<std::size_t>(n_actions) +
               static_cast<std::size_t>(a);
    }

    const QuantileDistribution& entry(int s, int a) const { return entries[index(s, a)]; }
    QuantileDistribution& entry(int s, int a) { return entries[index(s, a)]; }

    /// The action row at state s, in action order.
    std::vector<QuantileDistribution> state_row(int s) const {
        std::vector<QuantileDistribution> row;
        row.reserve(static_cast<std::size_t>(n_actions));
        for (int a = 0; a < n_actions; ++a) row.push_back(entry(s, a));
        return row;
    }
};

/// Q(s,a): the mean over the stored quantiles (uniform weights 1/N).
inline double q_value(const QuantileTable& table, int s, int a) {
    return mean(table.entry(s, a));
}

/// Bonus-augmented argmax over actions at a nonterminal state:
/// argmax_a Q(s,a) + c_t * sqrt(sigma2_plus). Ties to the lowest action.
inline int dltv_action(const TabularMDP& mdp, const QuantileTable& table, int s,
                       const Schedule& schedule, std::int64_t t) {
    mdp.check_state(s);
    if (mdp.is_terminal(s)) throw std::invalid_argument("dltv_action: terminal state");
    return select_dltv(table.state_row(s), schedule, t);
}

/// Distributional Bellman targets T theta_j = r + gamma * theta_j(s_next, a_star);
/// a terminal next-state contributes no bootstrap term, so every target is r.
inline std::vector<double> bellman_target(const QuantileTable& table, double r, int s_next,
                                          int a_star, double gamma, bool next_terminal) {
    if (!std::isfinite(r)) throw std::invalid_argument("bellman_target: non-finite reward");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("bellman_target: gamma must lie in [0,1)");
    const int n = table.n_quantiles();
    if (next_terminal) return std::vector<double>(static_cast<std::size_t>(n), r);
    const QuantileDistribution& next = table.entry(s_next, a_star);
    std::vector<double> targets(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        targets[static_cast<std::size_t>(j)] = r + gamma * next[j];
    return targets;
}

/// One subgradient step on the Huber quantile loss at (s,a) against the given
/// targets: theta_i += (alpha/N) * sum_j |tau_i - I{u_j < 0}| * clamp(u_j, +-kappa)
/// with u_j = target_j - theta_i.
inline void quantile_update(QuantileTable& table, int s, int a,
                            const std::vector<double>& targets, double alpha,
                            const HuberParams& kappa) {
    if (!(alpha > 0.0)) throw std::invalid_argument("quantile_update: alpha must be > 0");
    QuantileDistribution& dist = table.entry(s, a);
    const int n = table.n_quantiles();
    if (static_cast<int>(targets.size()) != n)
        throw std::invalid_argument("quantile_update: target count must equal quantile count");
    for (double tgt : targets)
        if (!std::isfinite(tgt)) throw std::invalid_argument("quantile_update: non-finite target");

    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i) {
        const double tau = table.levels[i];
        double g = 0.0;
        for (double tgt : targets) {
            // d loss / d theta_i = -(d/du) at u = tgt - theta_i; step along -grad
            const double u = tgt - dist[i];
            g += huber_quantile_loss_derivative(u, tau, kappa);
        }
        dist[i] += alpha * inv_n * g;
    }
}

}  // namespace dltv
