#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dltv/mdp.hpp"

// Brute-force references used by tests and the demo subcommand. Everything in
// here is deliberately independent of the estimation code it is used to check.

namespace dltv::oracle {

struct EmpiricalSample {
    std::vector<double> values;

    explicit EmpiricalSample(std::vector<double> v) : values(std::move(v)) {
        if (values.empty()) throw std::invalid_argument("EmpiricalSample: empty sample");
        for (double x : values)
            if (!std::isfinite(x)) throw std::invalid_argument("EmpiricalSample: non-finite value");
    }
};

/// tau-quantile of the empirical distribution by the left-continuous
/// inverse-CDF convention: the smallest sample value v with CDF(v) >= tau.
inline double exact_quantile(const EmpiricalSample& sample, double tau) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("exact_quantile: tau must lie in (0,1)");
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    // smallest k with k/n >= tau; the 1e-9 slack keeps k/n == tau ties exact
    auto k = static_cast<std::ptrdiff_t>(std::ceil(tau * n - 1e-9));
    k = std::clamp<std::ptrdiff_t>(k, 1, static_cast<std::ptrdiff_t>(sorted.size()));
    return sorted[static_cast<std::size_t>(k - 1)];
}

/// Inverse standard normal CDF, Wichura's algorithm AS 241 (PPND16).
/// Absolute error well below 1e-10 over (0,1).
inline double standard_normal_inverse_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("standard_normal_inverse_cdf: p must lie in (0,1)");

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -z : z;
}

inline double normal_inverse_cdf(double tau, double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normal_inverse_cdf: sigma must be > 0");
    return mu + sigma * standard_normal_inverse_cdf(tau);
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Quantile function of LogNormal(0,1).
inline double lognormal_inverse_cdf(double tau) {
    return std::exp(standard_normal_inverse_cdf(tau));
}

/// Q* by iterating the Bellman optimality operator until successive iterates
/// differ by less than tol*(1-gamma)/gamma in max-norm, which bounds the
/// distance to the fixed point by tol. Result indexed [s*A + a].
inline std::vector<double> value_iteration(const TabularMDP& mdp, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("value_iteration: tol must be > 0");
    mdp.validate();
    const double gamma = mdp.gamma;
    const double stop = gamma > 0.0 ? tol * (1.0 - gamma) / gamma : tol;
    const std::size_t rows = static_cast<std::size_t>(mdp.n_states) * mdp.n_actions;
    std::vector<double> q(rows, 0.0), next(rows, 0.0);

    for (int iter = 0; iter < 1000000; ++iter) {
        double delta = 0.0;
        for (int s = 0; s < mdp.n_states; ++s) {
            for (int a = 0; a < mdp.n_actions; ++a) {
                const std::size_t row = static_cast<std::size_t>(mdp.sa(s, a));
                double v = 0.0;
                if (!mdp.is_terminal(s)) {
                    for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                        const double p = mdp.transition[row][static_cast<std::size_t>(s2)];
                        if (p == 0.0) continue;
                        double boot = 0.0;
                        if (!mdp.is_terminal(s2)) {
                            boot = q[static_cast<std::size_t>(mdp.sa(s2, 0))];
                            for (int a2 = 1; a2 < mdp.n_actions; ++a2)
                                boot = std::max(boot, q[static_cast<std::size_t>(mdp.sa(s2, a2))]);
                        }
                        v += p * (mdp.reward[row][static_cast<std::size_t>(s2)] + gamma * boot);
                    }
                }
                next[row] = v;
                delta = std::max(delta, std::abs(v - q[row]));
            }
        }
        q.swap(next);
        if (delta < stop) return q;
    }
    throw std::runtime_error("value_iteration: iteration cap reached");
}

/// Q^pi for a fixed deterministic policy, same stopping rule as value_iteration.
inline std::vector<double> policy_evaluation(const TabularMDP& mdp, const std::vector<int>& policy,
                                             double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("policy_evaluation: tol must be > 0");
    if (policy.size() != static_cast<std::size_t>(mdp.n_states))
        throw std::invalid_argument("policy_evaluation: policy size mismatch");
    mdp.validate();
    const double gamma = mdp.gamma;
    const double stop = gamma > 0.0 ? tol * (1.0 - gamma) / gamma : tol;
    const std::size_t rows = static_cast<std::size_t>(mdp.n_states) * mdp.n_actions;
    std::vector<double> q(rows, 0.0), next(rows, 0.0);

    for (int iter = 0; iter < 1000000; ++iter) {
        double delta = 0.0;
        for (int s = 0; s < mdp.n_states; ++s) {
            for (int a = 0; a < mdp.n_actions; ++a) {
                const std::size_t row = static_cast<std::size_t>(mdp.sa(s, a));
                double v = 0.0;
                if (!mdp.is_terminal(s)) {
                    for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                        const double p = mdp.transition[row][static_cast<std::size_t>(s2)];
                        if (p == 0.0) continue;
                        double boot = 0.0;
                        if (!mdp.is_terminal(s2))
                            boot = q[static_cast<std::size_t>(mdp.sa(s2, policy[static_cast<std::size_t>(s2)]))];
                        v += p * (mdp.reward[row][static_cast<std::size_t>(s2)] + gamma * boot);
                    }
                }
                next[row] = v;
                delta = std::max(delta, std::abs(v - q[row]));
            }
        }
        q.swap(next);
        if (delta < stop) return q;
    }
    throw std::runtime_error("policy_evaluation: iteration cap reached");
}

}  // namespace dltv::oracle
