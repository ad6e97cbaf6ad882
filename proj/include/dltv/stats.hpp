#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dltv::stats {

inline double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("stats::mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Unbiased sample variance (n - 1 denominator).
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("stats::sample_variance: need >= 2 values");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

inline double standard_error(const std::vector<double>& xs) {
    return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

namespace detail {

/// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double md = static_cast<double>(m);
        const double m2 = 2.0 * md;
        double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("beta_continued_fraction: no convergence");
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete_beta: a and b must be > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete_beta: x must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - bt * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided tail probability of Student's t with df degrees of freedom.
inline double students_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("students_t_two_sided_p: df must be > 0");
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
};

/// Welch's unequal-variance two-sample t-test (two-sided).
inline WelchResult welch_test(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 2 || ys.size() < 2)
        throw std::invalid_argument("welch_test: need >= 2 values per sample");
    const double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
    const double vx = sample_variance(xs) / nx, vy = sample_variance(ys) / ny;
    WelchResult r;
    r.mean_x = mean(xs);
    r.mean_y = mean(ys);
    const double denom = vx + vy;
    if (denom == 0.0) {
        r.t = r.mean_x == r.mean_y ? 0.0 : std::numeric_limits<double>::infinity();
        r.df = nx + ny - 2.0;
        r.p = r.mean_x == r.mean_y ? 1.0 : 0.0;
        return r;
    }
    r.t = (r.mean_x - r.mean_y) / std::sqrt(denom);
    r.df = denom * denom / (vx * vx / (nx - 1.0) + vy * vy / (ny - 1.0));
    r.p = students_t_two_sided_p(r.t, r.df);
    return r;
}

}  // namespace dltv::stats
