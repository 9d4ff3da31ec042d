#include "bj/forecast.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bj;
using testing::code_of;
using testing::real_series;

namespace {

ArimaFit model(ArimaSpec spec, ArimaParams params) {
    ArimaFit f;
    f.spec = spec;
    f.params = std::move(params);
    f.converged = true;
    return f;
}

/// Positive geometric-ish path with noise, for log-scale forecasts.
TimeSeries dollar_path(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.07, 0.08);
    std::vector<double> v(n);
    double level = std::log(5.0);
    for (auto& x : v) {
        level += z(rng);
        x = std::exp(level);
    }
    return {1960, v};
}

}  // namespace

TEST_SUITE("forecasting") {

TEST_CASE("psi weights") {
    const ArimaParams ma{0.0, {}, {0.4, -0.2, 0.1}, 1.0};
    const auto w = psi_weights(ma, {0, 0, 3, true}, 6);
    CHECK(w == std::vector<double>{1.0, 0.4, -0.2, 0.1, 0.0, 0.0});

    const ArimaParams ar{0.0, {0.5}, {}, 1.0};
    const auto g = psi_weights(ar, {1, 0, 0, true}, 4);
    CHECK(g == std::vector<double>{1.0, 0.5, 0.25, 0.125});

    const ArimaParams arma{0.0, {0.5}, {0.3}, 1.0};
    const auto m = psi_weights(arma, {1, 0, 1, true}, 4);
    CHECK(m[1] == doctest::Approx(0.8));
    CHECK(m[2] == doctest::Approx(0.4));
    CHECK(m[3] == doctest::Approx(0.2));

    const auto ref = oracle::psi(arma.ar, arma.ma, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(m[i] == doctest::Approx(ref[i]));
    }
}

TEST_CASE("drift-only random walk grows exponentially") {
    const auto logged = log_transform(dollar_path(40, 1));
    const double c = 0.0719;
    const auto f = model({0, 1, 0, true}, {c, {}, {}, 0.006});
    const auto state = difference(logged, 1).second;
    const auto fc = forecast(f, state, logged, 6, 0.95);
    CHECK(fc.horizon_years == std::vector<int>{2000, 2001, 2002, 2003, 2004, 2005});
    CHECK(fc.point[0] == doctest::Approx(std::exp(logged.back() + c)).epsilon(1e-12));
    for (std::size_t j = 1; j < fc.point.size(); ++j) {
        CHECK(fc.point[j] / fc.point[j - 1] == doctest::Approx(std::exp(c)).epsilon(1e-12));
    }
}

TEST_CASE("MA(q) increments revert to the drift after q steps") {
    const auto logged = log_transform(dollar_path(50, 2));
    const double c = 0.05;
    const auto f = model({0, 1, 3, true}, {c, {}, {0.5, 0.2, -0.3}, 0.01});
    const auto fc = forecast(f, difference(logged, 1).second, logged, 8, 0.95);
    for (std::size_t j = 3; j < 8; ++j) {
        CHECK(fc.point_differenced[j] == c);
        CHECK(fc.point_transformed[j] - fc.point_transformed[j - 1] == doctest::Approx(c).epsilon(1e-12));
    }
}

TEST_CASE("AR(1) point forecasts decay geometrically to the mean") {
    std::mt19937_64 rng(6);
    const std::vector<double> ar{0.7};
    auto y = oracle::simulate_arma(ar, {}, 1.0, 40, rng);
    for (double& v : y) {
        v += 3.0;
    }
    const auto s = real_series(y);
    const auto f = model({1, 0, 0, true}, {3.0, {0.7}, {}, 1.0});
    const auto fc = forecast(f, difference(s, 0).second, s, 5, 0.9);
    for (std::size_t j = 0; j < 5; ++j) {
        const double expected = 3.0 + std::pow(0.7, static_cast<double>(j + 1)) * (y.back() - 3.0);
        CHECK(fc.point[j] == doctest::Approx(expected).epsilon(1e-10));
        const double var = (1.0 - std::pow(0.49, static_cast<double>(j + 1))) / (1.0 - 0.49);
        CHECK(fc.se_transformed[j] == doctest::Approx(std::sqrt(var)).epsilon(1e-10));
    }
}

TEST_CASE("integrated MA(1) variance matches the closed form") {
    const auto logged = log_transform(dollar_path(30, 3));
    const double theta = 0.4;
    const double s2 = 0.008;
    const auto f = model({0, 1, 1, true}, {0.06, {}, {theta}, s2});
    const auto fc = forecast(f, difference(logged, 1).second, logged, 7, 0.95);
    for (int h = 1; h <= 7; ++h) {
        const double var = s2 * (1.0 + (h - 1) * (1.0 + theta) * (1.0 + theta));
        CHECK(fc.se_transformed[static_cast<std::size_t>(h - 1)] == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
    }
}

TEST_CASE("property: intervals are log-symmetric, ordered and widening") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> coef(-0.6, 0.6);
    for (int trial = 0; trial < 40; ++trial) {
        const auto logged = log_transform(dollar_path(45, 100 + static_cast<std::uint64_t>(trial)));
        const int d = 1 + trial % 2;
        const ArimaSpec spec{1, d, 2, true};
        const auto f = model(spec, {0.01, {coef(rng)}, {coef(rng), 0.5 * coef(rng)}, 0.005});
        const auto fc = forecast(f, difference(logged, d).second, logged, 10, 0.95);
        for (std::size_t j = 0; j < 10; ++j) {
            CHECK(fc.lower[j] < fc.point[j]);
            CHECK(fc.point[j] < fc.upper[j]);
            const double below = std::log(fc.point[j]) - std::log(fc.lower[j]);
            const double above = std::log(fc.upper[j]) - std::log(fc.point[j]);
            CHECK(std::abs(below - above) < 1e-9);
            CHECK(std::abs(above - 1.959963984540054 * fc.se_transformed[j]) < 1e-6);
            if (j > 0) {
                CHECK(fc.upper[j] / fc.lower[j] >= fc.upper[j - 1] / fc.lower[j - 1] - 1e-12);
            }
        }
    }
}

TEST_CASE("vanishing innovation variance collapses the interval") {
    const auto logged = log_transform(dollar_path(30, 4));
    const auto f = model({0, 1, 1, true}, {0.05, {}, {0.3}, 1e-30});
    const auto fc = forecast(f, difference(logged, 1).second, logged, 4, 0.95);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::abs(fc.lower[j] - fc.point[j]) < 1e-9);
        CHECK(std::abs(fc.upper[j] - fc.point[j]) < 1e-9);
    }
}

TEST_CASE("forecast preconditions") {
    const auto logged = log_transform(dollar_path(30, 5));
    const auto state = difference(logged, 1).second;
    auto f = model({0, 1, 1, true}, {0.05, {}, {0.3}, 0.01});
    CHECK(code_of([&] { (void)forecast(f, state, logged, 0, 0.95); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([&] { (void)forecast(f, state, logged, 3, 1.0); }) == ErrorCode::InvalidConfidence);
    CHECK(code_of([&] { (void)forecast(f, difference(logged, 2).second, logged, 3, 0.95); }) ==
          ErrorCode::StateMismatch);
    CHECK(code_of([&] { (void)forecast(f, state, difference(logged, 1).first, 3, 0.95); }) ==
          ErrorCode::StateMismatch);
    f.converged = false;
    CHECK(code_of([&] { (void)forecast(f, state, logged, 3, 0.95); }) == ErrorCode::NotConverged);
}

TEST_CASE("one-step predictions") {
    const auto dollars = dollar_path(20, 6);
    const auto logged = log_transform(dollars);
    const double c = 0.07;
    const auto f = model({0, 1, 0, true}, {c, {}, {}, 0.01});
    const auto pred = one_step_predictions(f, difference(logged, 1).second, logged, 10);
    REQUIRE(pred.size() == 10);
    CHECK(pred.start_year() == 1970);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        CHECK(pred[i] == doctest::Approx(dollars[9 + i] * std::exp(c)).epsilon(1e-12));
    }
}

TEST_CASE("accuracy and growth") {
    const TimeSeries actual(2000, {10.0, 20.0, 40.0});
    CHECK(accuracy(actual, actual) == 100.0);
    CHECK(accuracy(actual, TimeSeries(2000, {9.0, 18.0, 36.0})) == doctest::Approx(90.0));
    CHECK(code_of([&] { (void)accuracy(actual, TimeSeries(2000, {1.0})); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { (void)accuracy(real_series({1.0, 0.0}), real_series({1.0, 1.0})); }) ==
          ErrorCode::ZeroActual);

    Forecast fc;
    fc.point = {90.0, 97.37};
    CHECK(std::abs(growth_rate(fc, 71.1) - 36.95) < 0.05);
    fc.point = {71.1};
    CHECK(growth_rate(fc, 71.1) == 0.0);
    fc.point = {142.2};
    CHECK(growth_rate(fc, 71.1) == doctest::Approx(100.0));
    CHECK(code_of([&] { (void)growth_rate(fc, 0.0); }) == ErrorCode::NonPositiveValue);
}

}  // TEST_SUITE
