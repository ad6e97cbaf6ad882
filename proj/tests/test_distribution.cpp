#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "dltv/distribution.hpp"
#include "dltv/rng.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("quantile levels are the mid-levels (2i-1)/(2N)") {
    const dltv::QuantileLevels levels(4);
    REQUIRE(levels.size() == 4);
    REQUIRE_THAT(levels[0], WithinAbs(0.125, 1e-15));
    REQUIRE_THAT(levels[1], WithinAbs(0.375, 1e-15));
    REQUIRE_THAT(levels[2], WithinAbs(0.625, 1e-15));
    REQUIRE_THAT(levels[3], WithinAbs(0.875, 1e-15));
    for (int i = 0; i + 1 < levels.size(); ++i) {
        REQUIRE(levels[i] < levels[i + 1]);
        REQUIRE(levels[i] > 0.0);
        REQUIRE(levels[i + 1] < 1.0);
    }
}

TEST_CASE("distribution constructor validates") {
    REQUIRE_THROWS_AS(dltv::QuantileDistribution({1.0, 2.0, 3.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::QuantileDistribution({}), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::QuantileDistribution({1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(
        dltv::QuantileDistribution({0.0, std::numeric_limits<double>::quiet_NaN()}),
        std::invalid_argument);
    REQUIRE_NOTHROW(dltv::QuantileDistribution({3.0, 1.0}));  // crossings are legal
}

TEST_CASE("mean of quantile atoms") {
    REQUIRE_THAT(dltv::mean(dltv::QuantileDistribution({0, 1, 2, 3})), WithinAbs(1.5, 1e-12));
    REQUIRE_THAT(dltv::mean(dltv::QuantileDistribution::uniform(8, 2.5)), WithinAbs(2.5, 1e-12));
}

TEST_CASE("variance decomposition on a degenerate distribution") {
    const auto v = dltv::variance_decomposition(dltv::QuantileDistribution({1, 1, 1, 1}));
    REQUIRE_THAT(v.sigma2, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(v.sigma2_rt, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(v.sigma2_lt, WithinAbs(0.0, 1e-15));
}

TEST_CASE("variance decomposition halves agree for symmetric atoms") {
    const auto v =
        dltv::variance_decomposition(dltv::QuantileDistribution({-1.0, -0.5, 0.5, 1.0}));
    REQUIRE_THAT(v.sigma2_rt, WithinAbs(v.sigma2_lt, 1e-12));
    REQUIRE_THAT(v.sigma2, WithinAbs(0.5 * (v.sigma2_rt + v.sigma2_lt), 1e-12));
}

TEST_CASE("variance decomposition on the three-atom support {-1, 0, 2}") {
    // empirical quantiles with two atoms each: theta = [-1,-1,0,0,2,2]
    const dltv::QuantileDistribution dist({-1, -1, 0, 0, 2, 2});
    const auto v = dltv::variance_decomposition(dist);
    REQUIRE_THAT(v.sigma2, WithinAbs(14.0 / 9.0, 1e-12));
    REQUIRE_THAT(v.sigma2_rt, WithinAbs(11.0 / 9.0, 1e-12));
    REQUIRE_THAT(v.sigma2_lt, WithinAbs(17.0 / 9.0, 1e-12));
    REQUIRE(v.sigma2_rt != v.sigma2_lt);
    // the halves recombine with weight 1/2 each; the nominal additive identity fails
    REQUIRE_THAT(v.sigma2, WithinAbs(0.5 * (v.sigma2_rt + v.sigma2_lt), 1e-12));
    REQUIRE(std::abs(v.additive_identity_gap()) > 1.0);
}

TEST_CASE("truncated variance plus: declared indexing on [0,1,2,3]") {
    REQUIRE_THAT(dltv::truncated_variance_plus(dltv::QuantileDistribution({0, 1, 2, 3})),
                 WithinAbs(0.625, 1e-12));
}

TEST_CASE("truncated variance plus: zero cases and nonnegativity") {
    REQUIRE_THAT(dltv::truncated_variance_plus(dltv::QuantileDistribution::uniform(4, 7.0)),
                 WithinAbs(0.0, 1e-15));
    // lower-half atoms are free when the anchor and upper half agree
    REQUIRE_THAT(dltv::truncated_variance_plus(dltv::QuantileDistribution({-9, 4, 1, 1, 1, 1})),
                 WithinAbs(0.0, 1e-15));
    dltv::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> t(8);
        for (double& x : t) x = 10.0 * (dltv::uniform01(rng) - 0.5);
        REQUIRE(dltv::truncated_variance_plus(dltv::QuantileDistribution(t)) >= 0.0);
    }
}

TEST_CASE("statistics shift consistently under theta + c") {
    dltv::Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> t(10);
        for (double& x : t) x = 8.0 * (dltv::uniform01(rng) - 0.5);
        const double c = 6.0 * (dltv::uniform01(rng) - 0.5);
        const dltv::QuantileDistribution base(t);
        std::vector<double> shifted_t = t;
        for (double& x : shifted_t) x += c;
        const dltv::QuantileDistribution shifted(shifted_t);

        REQUIRE_THAT(dltv::mean(shifted), WithinAbs(dltv::mean(base) + c, 1e-9));
        const auto vb = dltv::variance_decomposition(base);
        const auto vs = dltv::variance_decomposition(shifted);
        REQUIRE_THAT(vs.sigma2, WithinAbs(vb.sigma2, 1e-9));
        REQUIRE_THAT(vs.sigma2_rt, WithinAbs(vb.sigma2_rt, 1e-9));
        REQUIRE_THAT(vs.sigma2_lt, WithinAbs(vb.sigma2_lt, 1e-9));
        REQUIRE_THAT(dltv::truncated_variance_plus(shifted),
                     WithinAbs(dltv::truncated_variance_plus(base), 1e-9));
        REQUIRE_THAT(dltv::var_alpha(shifted, 0.9), WithinAbs(dltv::var_alpha(base, 0.9) + c, 1e-9));
    }
}

TEST_CASE("var_alpha picks the nearest level, ties to the lower index") {
    // N=10: levels 0.05,0.15,...; alpha=0.9 targets 0.10, equidistant from
    // 0.05 and 0.15, so the lower index wins
    const dltv::QuantileDistribution dist({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    REQUIRE_THAT(dltv::var_alpha(dist, 0.9), WithinAbs(1.0, 1e-12));
    // alpha=0.5 targets 0.50, equidistant from 0.45 and 0.55: lower middle
    REQUIRE_THAT(dltv::var_alpha(dist, 0.5), WithinAbs(5.0, 1e-12));
    // away from ties the nearest level wins outright
    REQUIRE_THAT(dltv::var_alpha(dist, 0.52), WithinAbs(5.0, 1e-12));
    REQUIRE_THAT(dltv::var_alpha(dist, 0.68), WithinAbs(4.0, 1e-12));
    REQUIRE_THAT(dltv::var_alpha(dltv::QuantileDistribution::uniform(6, 3.25), 0.37),
                 WithinAbs(3.25, 1e-12));
    REQUIRE_THROWS_AS(dltv::var_alpha(dist, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(dltv::var_alpha(dist, 1.0), std::invalid_argument);
}

TEST_CASE("spread factory covers [-v, v] evenly") {
    const auto d = dltv::QuantileDistribution::spread(4, 3.0);
    REQUIRE_THAT(d[0], WithinAbs(-3.0, 1e-12));
    REQUIRE_THAT(d[1], WithinAbs(-1.0, 1e-12));
    REQUIRE_THAT(d[2], WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(d[3], WithinAbs(3.0, 1e-12));
}
