#pragma once

#include <cmath>
#include <stdexcept>

namespace dltv {

/// Huber threshold. Positive; kappa = 1 reproduces the QR-DQN-1 setting.
struct HuberParams {
    double kappa = 1.0;

    explicit HuberParams(double k = 1.0) : kappa(k) {
        if (!(k > 0.0)) throw std::invalid_argument("HuberParams: kappa must be > 0");
    }
};

inline void require_tau_open01(double tau, const char* where) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument(std::string(where) + ": tau must lie in (0,1)");
}

/// Check (pinball) function rho_tau(u) = u * (tau - 1{u<0}).
/// Positive residuals are weighted by tau, negative ones by 1-tau; the
/// minimizer of its expectation is the tau-quantile.
inline double check_function(double u, double tau) {
    require_tau_open01(tau, "check_function");
    return u >= 0.0 ? tau * u : (tau - 1.0) * u;
}

/// Huber loss: quadratic inside |x| <= kappa, linear outside. C^1 at the joint.
inline double huber_loss(double x, HuberParams params) {
    const double k = params.kappa;
    const double ax = std::abs(x);
    return ax <= k ? 0.5 * x * x : k * (ax - 0.5 * k);
}

/// Derivative of the Huber loss: x clamped to [-kappa, kappa].
inline double huber_loss_derivative(double x, HuberParams params) {
    const double k = params.kappa;
    return x > k ? k : (x < -k ? -k : x);
}

/// Huber quantile loss |tau - 1{u<0}| * L_kappa(u): the pinball loss with its
/// kink smoothed, continuously differentiable in u.
inline double huber_quantile_loss(double u, double tau, HuberParams params) {
    require_tau_open01(tau, "huber_quantile_loss");
    const double weight = std::abs(tau - (u < 0.0 ? 1.0 : 0.0));
    return weight * huber_loss(u, params);
}

/// d/du of huber_quantile_loss at fixed tau.
inline double huber_quantile_loss_derivative(double u, double tau, HuberParams params) {
    require_tau_open01(tau, "huber_quantile_loss_derivative");
    const double weight = std::abs(tau - (u < 0.0 ? 1.0 : 0.0));
    return weight * huber_loss_derivative(u, params);
}

}  // namespace dltv
