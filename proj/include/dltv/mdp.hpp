#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dltv/rng.hpp"

namespace dltv {

/// Finite MDP with dense transition and reward tables. Row (s,a) of
/// `transition` is a probability vector over next states; `reward[(s,a)][s']`
/// is the reward paid on that transition. Terminal states must be absorbing
/// (their rows one-hot on themselves with zero reward) so that every row sums
/// to one and bootstrap terms vanish naturally.
struct TabularMDP {
    int n_states = 0;
    int n_actions = 0;
    std::vector<std::vector<double>> transition;  // [s*A + a] -> probs, size n_states
    std::vector<std::vector<double>> reward;      // [s*A + a] -> reward per next state
    double gamma = 0.0;
    std::vector<char> terminal;  // size n_states
    std::vector<double> start;   // probs, size n_states

    int sa(int s, int a) const { return s * n_actions + a; }
    bool is_terminal(int s) const { return terminal[static_cast<std::size_t>(s)] != 0; }

    void check_state(int s) const {
        if (s < 0 || s >= n_states) throw std::out_of_range("TabularMDP: state out of range");
    }
    void check_action(int a) const {
        if (a < 0 || a >= n_actions) throw std::out_of_range("TabularMDP: action out of range");
    }

    /// Structural validation: shapes, row sums within tol, gamma in [0,1).
    void validate(double tol = 1e-9) const {
        if (n_states <= 0 || n_actions <= 0)
            throw std::invalid_argument("TabularMDP: empty state or action space");
        if (!(gamma >= 0.0 && gamma < 1.0))
            throw std::invalid_argument("TabularMDP: gamma must lie in [0,1)");
        const std::size_t rows = static_cast<std::size_t>(n_states) * n_actions;
        if (transition.size() != rows || reward.size() != rows)
            throw std::invalid_argument("TabularMDP: table shape mismatch");
        for (const auto& row : transition) {
            if (static_cast<int>(row.size()) != n_states)
                throw std::invalid_argument("TabularMDP: transition row size mismatch");
            double sum = 0.0;
            for (double p : row) {
                if (p < -tol) throw std::invalid_argument("TabularMDP: negative probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > tol)
                throw std::invalid_argument("TabularMDP: transition row does not sum to 1");
        }
        double s0 = 0.0;
        for (double p : start) s0 += p;
        if (start.size() != static_cast<std::size_t>(n_states) || std::abs(s0 - 1.0) > tol)
            throw std::invalid_argument("TabularMDP: start distribution invalid");
    }

    int sample_start(Rng& rng) const { return sample_categorical(start, rng); }

    struct Step {
        double reward;
        int next_state;
    };

    Step step(int s, int a, Rng& rng) const {
        check_state(s);
        check_action(a);
        const int row = sa(s, a);
        const int s2 = sample_categorical(transition[static_cast<std::size_t>(row)], rng);
        return {reward[static_cast<std::size_t>(row)][static_cast<std::size_t>(s2)], s2};
    }

    double expected_reward(int s, int a) const {
        const int row = sa(s, a);
        double r = 0.0;
        for (int s2 = 0; s2 < n_states; ++s2)
            r += transition[static_cast<std::size_t>(row)][static_cast<std::size_t>(s2)] *
                 reward[static_cast<std::size_t>(row)][static_cast<std::size_t>(s2)];
        return r;
    }

private:
    static int sample_categorical(const std::vector<double>& probs, Rng& rng) {
        const double u = uniform01(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;  // guard against rounding
    }
};

namespace cliff {
constexpr int kUp = 0;
constexpr int kRight = 1;
constexpr int kDown = 2;
constexpr int kLeft = 3;
constexpr double kCliffReward = -100.0;
constexpr double kStepReward = -1.0;
constexpr double kGoalReward = 0.0;
}  // namespace cliff

/// Grid geometry helpers for the cliff walk; row 0 is the bottom (cliff) row.
struct CliffGrid {
    int width = 0;
    int height = 0;

    int state_of(int col, int row) const { return row * width + col; }
    int col_of(int s) const { return s % width; }
    int row_of(int s) const { return s / width; }
    int start_state() const { return state_of(0, 0); }
    int goal_state() const { return state_of(width - 1, 0); }
    bool is_cliff(int s) const {
        return row_of(s) == 0 && col_of(s) >= 1 && col_of(s) <= width - 2;
    }

    /// Manhattan distance from state s to the nearest cliff cell.
    int distance_to_cliff(int s) const {
        const int c = col_of(s), r = row_of(s);
        int best = width + height;
        for (int cc = 1; cc <= width - 2; ++cc) {
            const int d = std::abs(c - cc) + r;
            if (d < best) best = d;
        }
        return best;
    }
};

/// Standard cliff gridworld. Start bottom-left, goal bottom-right, cliff cells
/// between them on the bottom row. Stepping into a cliff cell pays -100, and
/// the cliff cell itself resets to the start on the next step for free;
/// reaching the goal pays 0 and ends the episode; every other move pays -1.
/// With probability `slip` the executed move is drawn uniformly from the four
/// directions instead of the chosen one. Reward is a pure function of the
/// destination cell, so the dense (s,a,s') reward table is exact.
inline TabularMDP make_cliff_walk(int width, int height, double slip, double gamma = 0.99) {
    if (width < 3 || height < 2)
        throw std::invalid_argument("make_cliff_walk: need width >= 3 and height >= 2");
    if (!(slip >= 0.0 && slip < 1.0))
        throw std::invalid_argument("make_cliff_walk: slip must lie in [0,1)");

    const CliffGrid g{width, height};
    TabularMDP mdp;
    mdp.n_states = width * height;
    mdp.n_actions = 4;
    mdp.gamma = gamma;
    mdp.terminal.assign(static_cast<std::size_t>(mdp.n_states), 0);
    mdp.terminal[static_cast<std::size_t>(g.goal_state())] = 1;
    mdp.start.assign(static_cast<std::size_t>(mdp.n_states), 0.0);
    mdp.start[static_cast<std::size_t>(g.start_state())] = 1.0;

    const std::size_t rows = static_cast<std::size_t>(mdp.n_states) * 4;
    mdp.transition.assign(rows, std::vector<double>(static_cast<std::size_t>(mdp.n_states), 0.0));
    mdp.reward.assign(rows, std::vector<double>(static_cast<std::size_t>(mdp.n_states), 0.0));

    auto move = [&](int s, int dir) {
        int c = g.col_of(s), r = g.row_of(s);
        if (dir == cliff::kUp) r = std::min(r + 1, height - 1);
        if (dir == cliff::kDown) r = std::max(r - 1, 0);
        if (dir == cliff::kRight) c = std::min(c + 1, width - 1);
        if (dir == cliff::kLeft) c = std::max(c - 1, 0);
        return g.state_of(c, r);
    };

    for (int s = 0; s < mdp.n_states; ++s) {
        for (int a = 0; a < 4; ++a) {
            auto& trow = mdp.transition[static_cast<std::size_t>(mdp.sa(s, a))];
            auto& rrow = mdp.reward[static_cast<std::size_t>(mdp.sa(s, a))];
            if (mdp.is_terminal(s)) {
                trow[static_cast<std::size_t>(s)] = 1.0;  // absorbing
                continue;
            }
            if (g.is_cliff(s)) {
                trow[static_cast<std::size_t>(g.start_state())] = 1.0;  // free reset
                continue;
            }
            for (int dir = 0; dir < 4; ++dir) {
                double p = slip / 4.0;
                if (dir == a) p += 1.0 - slip;
                if (p == 0.0) continue;
                const int dest = move(s, dir);
                double r = cliff::kStepReward;
                if (g.is_cliff(dest))
                    r = cliff::kCliffReward;
                else if (dest == g.goal_state())
                    r = cliff::kGoalReward;
                trow[static_cast<std::size_t>(dest)] += p;
                rrow[static_cast<std::size_t>(dest)] = r;
            }
        }
    }
    mdp.validate();
    return mdp;
}

/// Deterministic chain: n_live non-terminal states in a row, a single action
/// stepping right, `end_reward` paid on entering the terminal end state and
/// zero elsewhere. With gamma the start value is end_reward * gamma^(n_live-1).
inline TabularMDP make_chain(int n_live, double gamma, double end_reward = 1.0) {
    if (n_live < 1) throw std::invalid_argument("make_chain: need n_live >= 1");
    TabularMDP mdp;
    mdp.n_states = n_live + 1;
    mdp.n_actions = 1;
    mdp.gamma = gamma;
    mdp.terminal.assign(static_cast<std::size_t>(mdp.n_states), 0);
    mdp.terminal[static_cast<std::size_t>(n_live)] = 1;
    mdp.start.assign(static_cast<std::size_t>(mdp.n_states), 0.0);
    mdp.start[0] = 1.0;
    mdp.transition.assign(static_cast<std::size_t>(mdp.n_states),
                          std::vector<double>(static_cast<std::size_t>(mdp.n_states), 0.0));
    mdp.reward.assign(static_cast<std::size_t>(mdp.n_states),
                      std::vector<double>(static_cast<std::size_t>(mdp.n_states), 0.0));
    for (int s = 0; s < n_live; ++s) {
        mdp.transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(s + 1)] = 1.0;
        if (s + 1 == n_live) mdp.reward[static_cast<std::size_t>(s)][static_cast<std::size_t>(s + 1)] = end_reward;
    }
    mdp.transition[static_cast<std::size_t>(n_live)][static_cast<std::size_t>(n_live)] = 1.0;
    mdp.validate();
    return mdp;
}

}  // namespace dltv
