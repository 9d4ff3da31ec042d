#include "bj/diagnostics.hpp"
#include "bj/report.hpp"
#include "bj/stats.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace bj;
using testing::code_of;
using testing::real_series;

namespace {

ArimaFit fit_with_residuals(std::vector<double> r, int p = 0, int q = 0) {
    ArimaFit f;
    f.spec = {p, 0, q, true};
    f.n_obs = static_cast<int>(r.size());
    f.residuals.emplace(1, std::move(r), ScaleTag{ScaleBase::Real, 0});
    f.converged = true;
    return f;
}

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    for (auto& x : v) {
        x = z(rng);
    }
    return v;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("chi-square tail limits") {
    CHECK(stats::chi_square_sf(0.0, 5) == 1.0);
    CHECK(stats::chi_square_sf(std::numeric_limits<double>::infinity(), 5) == 0.0);
    CHECK(stats::chi_square_sf(3.84145882, 1) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("Ljung-Box statistic") {
    const std::vector<double> zeros(10, 0.0);
    CHECK(ljung_box_q(zeros, 100) == 0.0);
    const std::vector<double> one{0.5};
    CHECK(ljung_box_q(one, 10) == doctest::Approx(10.0 * 12.0 * 0.25 / 9.0));

    const auto noise = real_series(normal_draws(60, 1));
    CHECK(code_of([&] { (void)ljung_box(noise, 3, 3); }) == ErrorCode::InvalidDof);
    CHECK(code_of([&] { (void)ljung_box(real_series(normal_draws(12, 1)), 10, 0); }) == ErrorCode::InvalidDof);
    const auto lb = ljung_box(noise, 10, 2);
    CHECK(lb.dof == 8);
    CHECK(lb.lags == 10);
    CHECK(lb.p_value == doctest::Approx(stats::chi_square_sf(lb.statistic, 8)));
}

TEST_CASE("property: Q is non-negative and grows with the lag") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = real_series(normal_draws(80, seed));
        double prev = 0.0;
        for (int m = 1; m <= 20; ++m) {
            const double q = ljung_box(s, m, 0).statistic;
            CHECK(q >= prev);
            prev = q;
        }
    }
}

TEST_CASE("Ljung-Box size on white noise and power on AR(1)") {
    int rejections = 0;
    const int trials = 200;
    for (int s = 0; s < trials; ++s) {
        rejections += ljung_box(real_series(normal_draws(1000, 500 + s)), 10, 0).p_value < 0.05 ? 1 : 0;
    }
    const double rate = static_cast<double>(rejections) / trials;
    MESSAGE("white-noise rejection rate " << rate);
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.09);

    std::mt19937_64 rng(3);
    const std::vector<double> ar{0.8};
    const auto y = oracle::simulate_arma(ar, {}, 1.0, 500, rng);
    CHECK(ljung_box(real_series(y), 10, 0).p_value < 1e-6);
}

TEST_CASE("histogram") {
    const auto v = normal_draws(200, 4);
    const auto h = freedman_diaconis_histogram(v);
    CHECK(h.counts.size() >= 5);
    CHECK(h.edges.size() == h.counts.size() + 1);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), 0) == 200);
    CHECK(std::is_sorted(h.edges.begin(), h.edges.end()));
    CHECK(h.edges.front() == *std::min_element(v.begin(), v.end()));

    const std::vector<double> flat(9, 2.0);
    const auto hf = freedman_diaconis_histogram(flat);
    CHECK(std::accumulate(hf.counts.begin(), hf.counts.end(), 0) == 9);
}

TEST_CASE("residual summary on standard-normal draws") {
    const auto draws = normal_draws(1000, 8);
    const auto r = residual_summary(fit_with_residuals(draws));
    CHECK(std::abs(r.mean) < 0.1);
    CHECK(std::abs(r.stddev - 1.0) < 0.1);
    REQUIRE(r.qq_points.size() == 1000);
    // The extreme order statistics of 1000 normals scatter with sd near 0.35, so the 45-degree
    // check covers the central 98% of plotting positions.
    double worst = 0.0;
    for (std::size_t i = 0; i < r.qq_points.size(); ++i) {
        if (i >= 10 && i < 990) {
            worst = std::max(worst, std::abs(r.qq_points[i].theoretical - r.qq_points[i].empirical));
        }
        if (i > 0) {
            CHECK(r.qq_points[i - 1].empirical <= r.qq_points[i].empirical);
        }
    }
    CHECK(worst < 0.3);
    CHECK(std::accumulate(r.histogram.counts.begin(), r.histogram.counts.end(), 0) == 1000);
    CHECK(r.residual_acf.size() == 21);
    CHECK(r.ljung_box.lags == 10);

    // Recomputing the standardisation from the stored fields reproduces the Q-Q ordinates.
    std::vector<double> z(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        z[i] = (draws[i] - r.mean) / r.stddev;
    }
    std::sort(z.begin(), z.end());
    for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(std::abs(z[i] - r.qq_points[i].empirical) < 1e-10);
    }
    CHECK(std::abs(stats::mean(z)) < 1e-10);
    CHECK(std::abs(stats::variance(z) - 1.0) < 1e-10);
}

TEST_CASE("residual summary guards") {
    CHECK(code_of([] { (void)residual_summary(fit_with_residuals({1, -1, 2, -2, 0.5, 0.1, 0.3})); }) ==
          ErrorCode::TooFewResiduals);
    CHECK(code_of([] { (void)residual_summary(fit_with_residuals(std::vector<double>(20, 0.0))); }) ==
          ErrorCode::ZeroVariance);
    ArimaFit none;
    CHECK(code_of([&] { (void)residual_summary(none); }) == ErrorCode::TooFewResiduals);

    // The Ljung-Box lag stretches past p + q for large models.
    const auto wide = residual_summary(fit_with_residuals(normal_draws(100, 2), 6, 6));
    CHECK(wide.ljung_box.lags == 13);
    CHECK(wide.ljung_box.dof == 1);
}

TEST_CASE("bundled ARIMA(0,1,6) residuals look like white noise") {
    const auto logged = log_transform(ingest_csv(testing::bundled_data()));
    const auto train = train_test_split(logged, 0.7).first;
    FitOptions opts;
    opts.compute_std_errors = false;
    const auto report = residual_summary(fit({0, 1, 6, true}, train, opts));
    int inside = 0;
    for (int k = 1; k <= 10; ++k) {
        const auto& p = report.residual_acf[static_cast<std::size_t>(k)];
        inside += std::abs(p.value) < p.band_halfwidth ? 1 : 0;
    }
    CHECK(inside >= 9);
}

}  // TEST_SUITE
