#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/dvoretzky.hpp"

#include <cmath>

using namespace qlab;

namespace {

AscentConfig quick_cfg() {
    AscentConfig cfg;
    cfg.restarts = 4;
    cfg.max_iters = 400;
    cfg.sample_baseline = 200;
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST_CASE("estimate_M at q = 2 is exact") {
    RngStream rng(501, 0);
    const NormStats stats = estimate_M(8, 2.0, 100, rng);
    CHECK(stats.M_hat == 1.0);
    CHECK(stats.M_stderr == 0.0);
    CHECK(stats.b == 1.0);
    CHECK_THROWS_AS(estimate_M(8, 1.5, 100, rng), std::invalid_argument);
}

TEST_CASE("estimate_M obeys the certified floor and the Holder chain") {
    RngStream rng(502, 0);
    const NormStats stats = estimate_M(16, 4.0, 300, rng);
    const double floor = std::pow(16.0, 0.25 - 0.5);
    CHECK(stats.M_hat + 3 * stats.M_stderr >= floor);
    const double holder = std::pow(stats.opnorm_mean_hat, 0.5);
    CHECK(stats.M_hat <= holder + 3 * (stats.M_stderr + stats.opnorm_stderr));
    CHECK(stats.M_hat <= 1.0);
}

TEST_CASE("operator-norm mean tracks the semicircle edge") {
    RngStream rng(503, 0);
    const NormStats stats = estimate_M(64, kInfOrder, 300, rng);
    const double scaled = stats.M_hat * 8.0;
    CHECK(scaled > 1.8);
    CHECK(scaled < 2.3);
}

TEST_CASE("dvoretzky dimension formula") {
    NormStats stats;
    stats.d = 16;
    stats.q = 2.0;
    stats.M_hat = 1.0;
    CHECK(dvoretzky_dimension(16, 2.0, stats, 1.0) == 256);

    NormStats s4;
    s4.d = 16;
    s4.q = 4.0;
    s4.M_hat = std::pow(16.0, -0.25);
    CHECK(dvoretzky_dimension(16, 4.0, s4, 1.0) == 64);

    // doubling epsilon quadruples the raw value
    CHECK(dvoretzky_dimension(16, 4.0, s4, 0.5) == 16);
    CHECK_THROWS_AS(dvoretzky_dimension(8, 4.0, s4, 1.0), std::invalid_argument);
}

TEST_CASE("full-space window hits the sandwich extremes every trial") {
    RngStream rng(504, 0);
    const int d = 3;
    const double q = 4.0;
    NormStats stats = estimate_M(d, q, 100, rng);
    AscentConfig cfg = quick_cfg();
    cfg.max_iters = 2000;
    const auto win = window_experiment(d, q, d * d, 3, cfg, stats, rng);
    for (const auto& t : win.per_trial) {
        CHECK(t.max_ratio == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(t.min_ratio ==
              doctest::Approx(std::pow(double(d), 1.0 / q - 0.5)).epsilon(1e-5));
        CHECK(t.max_ratio <= 1.0 + 1e-9);
        CHECK(t.min_ratio >= std::pow(double(d), 1.0 / q - 0.5) - 1e-9);
    }
}

TEST_CASE("windows contain near-average directions") {
    RngStream rng(505, 0);
    const int d = 8;
    const double q = 4.0;
    NormStats stats = estimate_M(d, q, 200, rng);
    const auto win = window_experiment(d, q, 24, 4, quick_cfg(), stats, rng);
    int ok = 0;
    for (const auto& t : win.per_trial) {
        if (t.max_ratio >= stats.M_hat - 3 * stats.M_stderr) ++ok;
    }
    CHECK(ok == 4);
    CHECK(win.epsilon_effective >= 0.0);
}

TEST_CASE("shrinking sweep: full space gives C = 1 and ratios grow with m") {
    RngStream rng(506, 0);
    const int d = 4;
    const auto sweep =
        shrinking_experiment(d, kInfOrder, {4, 8, 16}, 3, quick_cfg(), rng);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[2].worst_max_ratio == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sweep[2].empirical_C == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sweep[0].worst_max_ratio <= sweep[1].worst_max_ratio + 0.05);
    CHECK(sweep[1].worst_max_ratio <= sweep[2].worst_max_ratio + 0.05);
}
