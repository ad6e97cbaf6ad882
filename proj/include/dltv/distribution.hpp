#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dltv {

/// Mid-levels tau_hat_i = (2i-1)/(2N), i = 1..N: the quantile levels targeted
/// by an N-atom quantile representation. Strictly increasing, all in (0,1).
class QuantileLevels {
public:
    explicit QuantileLevels(int n) {
        if (n < 1) throw std::invalid_argument("QuantileLevels: n must be >= 1");
        tau_hat_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            tau_hat_[static_cast<std::size_t>(i)] = (2.0 * (i + 1) - 1.0) / (2.0 * n);
    }

    int size() const { return static_cast<int>(tau_hat_.size()); }
    double operator[](int i) const { return tau_hat_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return tau_hat_; }

private:
    std::vector<double> tau_hat_;
};

/// N quantile estimates theta_1..theta_N at the fixed mid-levels tau_hat_i,
/// representing a value distribution as a uniform mix of N Dirac atoms.
///
/// N must be even (the truncated-variance decomposition assumes it) and every
/// theta finite. Monotonicity in i is expected only at convergence; crossings
/// during training are legal and are never repaired here.
class QuantileDistribution {
public:
    explicit QuantileDistribution(std::vector<double> thetas) : thetas_(std::move(thetas)) {
        if (thetas_.size() < 2 || thetas_.size() % 2 != 0)
            throw std::invalid_argument("QuantileDistribution: n must be even and >= 2");
        for (double t : thetas_)
            if (!std::isfinite(t))
                throw std::invalid_argument("QuantileDistribution: thetas must be finite");
    }

    /// All atoms at a single value.
    static QuantileDistribution uniform(int n, double value) {
        if (n < 2) throw std::invalid_argument("QuantileDistribution::uniform: n must be >= 2");
        return QuantileDistribution(std::vector<double>(static_cast<std::size_t>(n), value));
    }

    /// Atoms evenly spread over [-half_width, half_width]; used to start the
    /// online-estimation demo from a visibly non-degenerate shape.
    static QuantileDistribution spread(int n, double half_width) {
        if (n < 2) throw std::invalid_argument("QuantileDistribution::spread: n must be >= 2");
        std::vector<double> t(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            t[static_cast<std::size_t>(i)] = -half_width + 2.0 * half_width * i / (n - 1);
        return QuantileDistribution(std::move(t));
    }

    int size() const { return static_cast<int>(thetas_.size()); }
    double operator[](int i) const { return thetas_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return thetas_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return thetas_; }
    std::vector<double>& values() { return thetas_; }

private:
    std::vector<double> thetas_;
};

/// Mean of the represented distribution: (1/N) sum_i theta_i.
inline double mean(const QuantileDistribution& dist) {
    double s = 0.0;
    for (double t : dist.values()) s += t;
    return s / dist.size();
}

/// Full variance together with its right/left truncated halves:
///   sigma2    = (1/N) sum_{i=1}^{N}   (mean - theta_i)^2
///   sigma2_rt = (2/N) sum_{i=1}^{N/2} (mean - theta_i)^2
///   sigma2_lt = (2/N) sum_{i=N/2+1}^{N} (mean - theta_i)^2
///
/// With these weights the halves recombine as sigma2 = (sigma2_rt + sigma2_lt)/2;
/// the nominal additive identity sigma2 = sigma2_rt + sigma2_lt does not hold
/// in general. additive_identity_gap() reports the discrepancy.
struct VarianceDecomposition {
    double sigma2 = 0.0;
    double sigma2_rt = 0.0;
    double sigma2_lt = 0.0;

    double additive_identity_gap() const { return sigma2 - (sigma2_rt + sigma2_lt); }
};

inline VarianceDecomposition variance_decomposition(const QuantileDistribution& dist) {
    const int n = dist.size();
    if (n % 2 != 0)
        throw std::invalid_argument("variance_decomposition: n must be even");
    const double mu = mean(dist);
    VarianceDecomposition out;
    for (int i = 0; i < n; ++i) {
        const double d = mu - dist[i];
        out.sigma2 += d * d;
        if (i < n / 2)
            out.sigma2_rt += d * d;
        else
            out.sigma2_lt += d * d;
    }
    out.sigma2 /= n;
    out.sigma2_rt *= 2.0 / n;
    out.sigma2_lt *= 2.0 / n;
    return out;
}

/// Upper-tail dispersion around the median quantile estimate:
///   sigma2_plus = (1/(2N)) sum_{i=N/2}^{N} (theta_{N/2} - theta_i)^2
/// with 1-based indices, so the sum has N/2 + 1 terms and is anchored at the
/// lower median. This is the exploration-bonus statistic.
inline double truncated_variance_plus(const QuantileDistribution& dist) {
    const int n = dist.size();
    if (n % 2 != 0)
        throw std::invalid_argument("truncated_variance_plus: n must be even");
    const double anchor = dist[n / 2 - 1];  // theta_{N/2}, 1-based
    double s = 0.0;
    for (int i = n / 2 - 1; i < n; ++i) {
        const double d = anchor - dist[i];
        s += d * d;
    }
    return s / (2.0 * n);
}

/// Value-at-Risk at level alpha: the quantile estimate whose level tau_hat_j is
/// nearest to 1 - alpha. Exact ties resolve to the lower index, which is the
/// more conservative (lower-level) read.
inline double var_alpha(const QuantileDistribution& dist, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("var_alpha: alpha must lie in (0,1)");
    const int n = dist.size();
    const double level = 1.0 - alpha;
    int best = 0;
    double best_dist = std::abs((2.0 * 1 - 1.0) / (2.0 * n) - level);
    for (int i = 1; i < n; ++i) {
        const double d = std::abs((2.0 * (i + 1) - 1.0) / (2.0 * n) - level);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return dist[best];
}

}  // namespace dltv
