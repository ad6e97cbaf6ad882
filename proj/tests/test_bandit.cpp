#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dltv/bandit.hpp"
#include "dltv/distribution.hpp"
#include "dltv/online.hpp"
#include "dltv/rng.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("counter-example environment assigns the sigmas by best mean") {
    const auto env = dltv::make_counter_example(10, 42);
    REQUIRE(env.arms.size() == 10);
    int n_tight = 0, n_wide = 0;
    for (const auto& arm : env.arms) {
        REQUIRE(arm.kind == dltv::ArmKind::normal);
        if (arm.sigma == 1.0) ++n_tight;
        if (arm.sigma == 5.0) ++n_wide;
    }
    REQUIRE(n_tight == 1);
    REQUIRE(n_wide == 9);
    REQUIRE(env.arms[static_cast<std::size_t>(env.optimal_arm)].sigma == 1.0);

    const auto two = dltv::make_counter_example(2, 42);
    REQUIRE(two.arms.size() == 2);
    REQUIRE(two.arms[static_cast<std::size_t>(two.optimal_arm)].sigma == 1.0);
    REQUIRE(two.arms[static_cast<std::size_t>(1 - two.optimal_arm)].sigma == 5.0);

    REQUIRE_THROWS_AS(dltv::make_counter_example(1, 42), std::invalid_argument);
}

TEST_CASE("seed contract: same seed same means, new seed new means") {
    const auto a = dltv::make_counter_example(10, 7);
    const auto b = dltv::make_counter_example(10, 7);
    const auto c = dltv::make_counter_example(10, 8);
    bool same = true, differ = false;
    for (std::size_t k = 0; k < 10; ++k) {
        same = same && a.arms[k].mu == b.arms[k].mu;
        differ = differ || a.arms[k].mu != c.arms[k].mu;
    }
    REQUIRE(same);
    REQUIRE(differ);
}

TEST_CASE("asymmetric and symmetric environments share the mean vector per seed") {
    const auto asym = dltv::make_asymmetric_env(10, 123);
    const auto sym = dltv::make_symmetric_env(10, 123);
    REQUIRE(asym.optimal_arm == sym.optimal_arm);
    for (std::size_t k = 0; k < 10; ++k) {
        REQUIRE(asym.arms[k].mu == sym.arms[k].mu);
        REQUIRE(sym.arms[k].kind == dltv::ArmKind::normal);
        REQUIRE(sym.arms[k].sigma == 1.0);
    }
    const auto& best = asym.arms[static_cast<std::size_t>(asym.optimal_arm)];
    REQUIRE(best.kind == dltv::ArmKind::lognormal_advantage);
    for (std::size_t k = 0; k < 10; ++k)
        if (static_cast<int>(k) != asym.optimal_arm)
            REQUIRE(asym.arms[k].kind == dltv::ArmKind::lognormal_disadvantage);
}

TEST_CASE("lognormal shift constant is e^(1/2)") {
    REQUIRE_THAT(dltv::kLogNormalMean, WithinAbs(std::exp(0.5), 1e-15));
}

TEST_CASE("skewed arms are mean-neutral within three standard errors") {
    const auto env = dltv::make_asymmetric_env(4, 99);
    dltv::Rng rng(1234);
    const int n = 1000000;
    for (int k : {env.optimal_arm, (env.optimal_arm + 1) % 4}) {
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = dltv::pull(env, k, rng);
            sum += r;
            sq += r * r;
        }
        const double mean = sum / n;
        const double var = sq / n - mean * mean;
        const double se = std::sqrt(var / n);
        REQUIRE_THAT(mean, WithinAbs(dltv::true_mean(env, k), 3.0 * se));
    }
}

TEST_CASE("best arm skews left, the rest skew right") {
    const auto env = dltv::make_asymmetric_env(3, 5);
    dltv::Rng rng(77);
    auto skewness = [&](int arm) {
        const int n = 100000;
        std::vector<double> xs(n);
        double mean = 0.0;
        for (double& x : xs) {
            x = dltv::pull(env, arm, rng);
            mean += x;
        }
        mean /= n;
        double m2 = 0.0, m3 = 0.0;
        for (double x : xs) {
            const double d = x - mean;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= n;
        m3 /= n;
        return m3 / std::pow(m2, 1.5);
    };
    for (int k = 0; k < 3; ++k) {
        const double s = skewness(k);
        if (k == env.optimal_arm)
            REQUIRE(s < -1.0);
        else
            REQUIRE(s > 1.0);
    }
}

TEST_CASE("advantage arm rewards never exceed mu + m") {
    const auto env = dltv::make_asymmetric_env(5, 11);
    dltv::Rng rng(13);
    const double bound =
        dltv::true_mean(env, env.optimal_arm) + dltv::kLogNormalMean;
    for (int i = 0; i < 100000; ++i) REQUIRE(dltv::pull(env, env.optimal_arm, rng) <= bound);
}

TEST_CASE("optimal arm indexes the highest true mean across many seeds") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        for (const auto& env : {dltv::make_counter_example(10, seed),
                                dltv::make_asymmetric_env(10, seed),
                                dltv::make_symmetric_env(10, seed)}) {
            int best = 0;
            for (int k = 1; k < 10; ++k)
                if (dltv::true_mean(env, k) > dltv::true_mean(env, best)) best = k;
            REQUIRE(env.optimal_arm == best);
        }
    }
}

TEST_CASE("pull validates the arm index and replays under a fixed seed") {
    const auto env = dltv::make_symmetric_env(3, 21);
    dltv::Rng rng(1);
    REQUIRE_THROWS_AS(dltv::pull(env, -1, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::pull(env, 3, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::true_mean(env, 3), std::invalid_argument);

    auto sequence = [&env](std::uint64_t seed) {
        dltv::Rng r(seed);
        std::vector<double> out;
        for (int i = 0; i < 50; ++i) out.push_back(dltv::pull(env, i % 3, r));
        return out;
    };
    REQUIRE(sequence(33) == sequence(33));
}

TEST_CASE("demo targets: a constant and a unit-variance normal") {
    const auto fixed = dltv::make_figure1_target(dltv::FigureTargetKind::degenerate, 3.0);
    dltv::Rng rng(3);
    for (int i = 0; i < 100; ++i) REQUIRE(dltv::sample_reward(fixed, rng) == 3.0);

    const auto noisy = dltv::make_figure1_target(dltv::FigureTargetKind::stochastic, 3.0);
    double sum = 0.0, sq = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double x = dltv::sample_reward(noisy, rng);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    REQUIRE(sq / n - mean * mean > 0.5);
    REQUIRE_THAT(mean, WithinAbs(3.0, 0.05));
}

TEST_CASE("online estimation of a degenerate target collapses the spread") {
    const auto fixed = dltv::make_figure1_target(dltv::FigureTargetKind::degenerate, 3.0);
    dltv::Rng rng(8);
    auto state = dltv::OnlineEstimatorState::uniform(32, 0.0, 1.0);
    for (int t = 1; t <= 20000; ++t) {
        state.step_size = 200.0 / (100.0 + t);
        dltv::online_update(state, dltv::sample_reward(fixed, rng));
    }
    for (int i = 0; i < 32; ++i) REQUIRE_THAT(state.dist[i], WithinAbs(3.0, 0.05));
    REQUIRE(dltv::truncated_variance_plus(state.dist) < 1e-3);
}

TEST_CASE("arm spec validation") {
    REQUIRE_THROWS_AS(dltv::ArmSpec(dltv::ArmKind::normal, NAN, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::ArmSpec(dltv::ArmKind::normal, 0.0, 0.0), std::invalid_argument);
    REQUIRE_NOTHROW(dltv::ArmSpec(dltv::ArmKind::degenerate, 2.0));
}
