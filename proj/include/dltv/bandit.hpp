#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dltv/rng.hpp"

namespace dltv {

/// E[LogNormal(0,1)] = e^{1/2}, used to re-center the skewed arm shifts.
inline constexpr double kLogNormalMean = 1.6487212707001282;

enum class ArmKind { normal, lognormal_advantage, lognormal_disadvantage, degenerate };

/// One reward sampler. mu is always the true mean of the arm: the lognormal
/// kinds add a mean-zero shift (advantage: mu + m - L, left-skewed, bounded
/// above by mu + m; disadvantage: mu + L - m, right-skewed, bounded below by
/// mu - m, with L ~ LogNormal(0,1) and m = E[L]).
struct ArmSpec {
    ArmKind kind = ArmKind::normal;
    double mu = 0.0;
    double sigma = 1.0;

    ArmSpec() = default;
    ArmSpec(ArmKind kind_, double mu_, double sigma_ = 1.0)
        : kind(kind_), mu(mu_), sigma(sigma_) {
        if (!std::isfinite(mu)) throw std::invalid_argument("ArmSpec: mu must be finite");
        if (kind == ArmKind::normal && !(sigma > 0.0))
            throw std::invalid_argument("ArmSpec: sigma must be > 0");
    }
};

struct BanditEnv {
    std::vector<ArmSpec> arms;
    int optimal_arm = 0;
    std::uint64_t seed = 0;
};

inline double sample_reward(const ArmSpec& arm, Rng& rng) {
    switch (arm.kind) {
        case ArmKind::normal: return arm.mu + arm.sigma * normal01(rng);
        case ArmKind::lognormal_advantage: return arm.mu + kLogNormalMean - std::exp(normal01(rng));
        case ArmKind::lognormal_disadvantage:
            return arm.mu + std::exp(normal01(rng)) - kLogNormalMean;
        case ArmKind::degenerate: return arm.mu;
    }
    throw std::logic_error("sample_reward: unknown arm kind");
}

inline double true_mean(const BanditEnv& env, int arm) {
    if (arm < 0 || arm >= static_cast<int>(env.arms.size()))
        throw std::invalid_argument("true_mean: arm out of range");
    return env.arms[static_cast<std::size_t>(arm)].mu;
}

inline double pull(const BanditEnv& env, int arm, Rng& rng) {
    if (arm < 0 || arm >= static_cast<int>(env.arms.size()))
        throw std::invalid_argument("pull: arm out of range");
    return sample_reward(env.arms[static_cast<std::size_t>(arm)], rng);
}

namespace detail {

/// The per-environment mean vector; all constructors sharing a seed share it.
inline std::vector<double> draw_means(int n_arms, std::uint64_t seed) {
    if (n_arms < 2) throw std::invalid_argument("bandit: need at least 2 arms");
    Rng rng(seed);
    std::vector<double> means(static_cast<std::size_t>(n_arms));
    for (double& m : means) m = normal01(rng);
    return means;
}

inline int best_index(const std::vector<double>& means) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(means.size()); ++k)
        if (means[static_cast<std::size_t>(k)] > means[static_cast<std::size_t>(best)]) best = k;
    return best;
}

}  // namespace detail

/// Arms Normal(mu_k, sigma_k) with means drawn i.i.d. standard normal; the
/// best-mean arm gets sigma = 1 and every other arm sigma = 5, so a
/// constant-variance bonus keeps favoring the wrong arms.
inline BanditEnv make_counter_example(int n_arms, std::uint64_t seed) {
    const auto means = detail::draw_means(n_arms, seed);
    const int best = detail::best_index(means);
    BanditEnv env;
    env.seed = seed;
    env.optimal_arm = best;
    env.arms.reserve(means.size());
    for (int k = 0; k < n_arms; ++k)
        env.arms.emplace_back(ArmKind::normal, means[static_cast<std::size_t>(k)],
                              k == best ? 1.0 : 5.0);
    return env;
}

/// Mean-neutral skewed arms: the best-mean arm is left-skewed (thin upper
/// tail), every other arm right-skewed (fat upper tail). Shares the mean
/// vector with make_symmetric_env at equal seeds.
inline BanditEnv make_asymmetric_env(int n_arms, std::uint64_t seed) {
    const auto means = detail::draw_means(n_arms, seed);
    const int best = detail::best_index(means);
    BanditEnv env;
    env.seed = seed;
    env.optimal_arm = best;
    env.arms.reserve(means.size());
    for (int k = 0; k < n_arms; ++k)
        env.arms.emplace_back(
            k == best ? ArmKind::lognormal_advantage : ArmKind::lognormal_disadvantage,
            means[static_cast<std::size_t>(k)]);
    return env;
}

/// Arms Normal(mu_k, 1) over the same drawn means.
inline BanditEnv make_symmetric_env(int n_arms, std::uint64_t seed) {
    const auto means = detail::draw_means(n_arms, seed);
    BanditEnv env;
    env.seed = seed;
    env.optimal_arm = detail::best_index(means);
    env.arms.reserve(means.size());
    for (double m : means) env.arms.emplace_back(ArmKind::normal, m, 1.0);
    return env;
}

enum class FigureTargetKind { degenerate, stochastic };

/// Target distribution for the online-estimation demo: a constant, or
/// Normal(value, 1) for the non-degenerate case.
inline ArmSpec make_figure1_target(FigureTargetKind kind, double value = 3.0) {
    if (kind == FigureTargetKind::degenerate) return {ArmKind::degenerate, value};
    return {ArmKind::normal, value, 1.0};
}

}  // namespace dltv
