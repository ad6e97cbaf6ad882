#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "dltv/distribution.hpp"

namespace dltv {

/// Running state of an online quantile estimator: current atoms, their target
/// levels, and the SGD step size. The caller owns the state and may retune
/// step_size between updates (e.g. a Robbins-Monro schedule).
struct OnlineEstimatorState {
    QuantileDistribution dist;
    QuantileLevels levels;
    double step_size;
    std::int64_t updates_seen = 0;

    OnlineEstimatorState(QuantileDistribution d, double alpha)
        : dist(std::move(d)), levels(dist.size()), step_size(alpha) {
        if (!(alpha > 0.0))
            throw std::invalid_argument("OnlineEstimatorState: step_size must be > 0");
    }

    static OnlineEstimatorState uniform(int n, double init_value, double alpha) {
        return OnlineEstimatorState(QuantileDistribution::uniform(n, init_value), alpha);
    }
};

/// One pinball-loss subgradient step per atom on a single observed sample:
///   theta_i += alpha * (tau_hat_i - 1{sample < theta_i})
/// The indicator is strict, so a sample tied with theta_i pushes theta_i up.
inline void online_update(OnlineEstimatorState& state, double sample) {
    if (!std::isfinite(sample))
        throw std::invalid_argument("online_update: sample must be finite");
    const int n = state.dist.size();
    for (int i = 0; i < n; ++i) {
        const double indicator = sample < state.dist[i] ? 1.0 : 0.0;
        state.dist[i] += state.step_size * (state.levels[i] - indicator);
    }
    ++state.updates_seen;
}

}  // namespace dltv
