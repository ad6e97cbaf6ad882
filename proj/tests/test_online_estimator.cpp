#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dltv/online.hpp"
#include "dltv/oracle.hpp"
#include "dltv/rng.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("online update worked example: one sample above both atoms") {
    auto state = dltv::OnlineEstimatorState::uniform(2, 0.0, 1.0);
    dltv::online_update(state, 1.0);
    REQUIRE_THAT(state.dist[0], WithinAbs(0.25, 1e-12));
    REQUIRE_THAT(state.dist[1], WithinAbs(0.75, 1e-12));
    REQUIRE(state.updates_seen == 1);
}

TEST_CASE("a tied sample pushes the atom up (strict indicator)") {
    auto state = dltv::OnlineEstimatorState::uniform(2, 3.0, 0.5);
    dltv::online_update(state, 3.0);
    REQUIRE_THAT(state.dist[0], WithinAbs(3.0 + 0.5 * 0.25, 1e-12));
    REQUIRE_THAT(state.dist[1], WithinAbs(3.0 + 0.5 * 0.75, 1e-12));
}

TEST_CASE("online update validates inputs") {
    auto state = dltv::OnlineEstimatorState::uniform(4, 0.0, 0.1);
    REQUIRE_THROWS_AS(dltv::online_update(state, NAN), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::online_update(state, INFINITY), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::OnlineEstimatorState::uniform(4, 0.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::OnlineEstimatorState::uniform(4, 0.0, -0.1), std::invalid_argument);
}

TEST_CASE("update step equals the negative pinball-loss gradient off the kinks") {
    // pinball loss of atom theta at level tau for sample x: (x-theta)(tau - 1{x<theta})
    auto pinball = [](double theta, double tau, double x) {
        const double u = x - theta;
        return u * (tau - (u < 0.0 ? 1.0 : 0.0));
    };
    dltv::Rng rng(91);
    const double h = 1e-6;
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 * (1 + dltv::uniform_index(rng, 8));
        auto state = dltv::OnlineEstimatorState::uniform(n, 4.0 * (dltv::uniform01(rng) - 0.5), 1.0);
        const double sample = 4.0 * (dltv::uniform01(rng) - 0.5);
        const int i = dltv::uniform_index(rng, n);
        const double theta = state.dist[i];
        if (std::abs(sample - theta) < 1e-3) continue;  // kink: subgradient only
        const double tau = state.levels[i];
        const double grad =
            (pinball(theta + h, tau, sample) - pinball(theta - h, tau, sample)) / (2.0 * h);
        auto stepped = state;
        dltv::online_update(stepped, sample);
        const double step = stepped.dist[i] - theta;  // step_size is 1
        REQUIRE_THAT(step, WithinAbs(-grad, 1e-6));
        ++checked;
    }
    REQUIRE(checked > 300);
}

TEST_CASE("Robbins-Monro schedule drives atoms to the normal quantiles") {
    const int n = 32;
    const int steps = 50000;
    const int seeds = 30;
    std::vector<double> avg(static_cast<std::size_t>(n), 0.0);
    for (int seed = 0; seed < seeds; ++seed) {
        dltv::Rng rng(dltv::derive_seed(777, static_cast<std::uint64_t>(seed)));
        auto state = dltv::OnlineEstimatorState::uniform(n, 0.0, 1.0);
        for (int t = 1; t <= steps; ++t) {
            state.step_size = 200.0 / (100.0 + t);
            dltv::online_update(state, dltv::normal01(rng));
        }
        for (int i = 0; i < n; ++i) avg[static_cast<std::size_t>(i)] += state.dist[i] / seeds;
    }
    const dltv::QuantileLevels levels(n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double target = dltv::oracle::standard_normal_inverse_cdf(levels[i]);
        worst = std::max(worst, std::abs(avg[static_cast<std::size_t>(i)] - target));
    }
    INFO("worst seed-averaged atom error " << worst);
    REQUIRE(worst < 0.05);
}

TEST_CASE("identical seeds reproduce identical estimator trajectories") {
    auto run = [](std::uint64_t seed) {
        dltv::Rng rng(seed);
        auto state = dltv::OnlineEstimatorState::uniform(8, 0.0, 0.05);
        for (int t = 0; t < 500; ++t) dltv::online_update(state, dltv::normal01(rng));
        return state.dist;
    };
    const auto a = run(5);
    const auto b = run(5);
    const auto c = run(6);
    bool same = true, differ = false;
    for (int i = 0; i < 8; ++i) {
        same = same && a[i] == b[i];
        differ = differ || a[i] != c[i];
    }
    REQUIRE(same);
    REQUIRE(differ);
}
