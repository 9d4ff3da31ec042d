#include "bj/correlation.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace bj;
using testing::code_of;
using testing::real_series;

TEST_SUITE("correlation") {

TEST_CASE("confidence band") {
    CHECK(confidence_band(100, 0.05) == doctest::Approx(0.196).epsilon(1e-3));
    CHECK(confidence_band(400, 0.05) == doctest::Approx(0.098).epsilon(1e-3));
    CHECK(confidence_band(100, 0.32) == doctest::Approx(0.0995).epsilon(2e-3));
    CHECK(code_of([] { (void)confidence_band(100, 0.0); }) == ErrorCode::InvalidAlpha);
    CHECK(code_of([] { (void)confidence_band(100, 1.0); }) == ErrorCode::InvalidAlpha);
}

TEST_CASE("sample ACF examples") {
    const auto acf = sample_acf(real_series({1, 2, 3, 4, 5}), 2);
    REQUIRE(acf.size() == 3);
    CHECK(acf[0].value == 1.0);
    CHECK(acf[1].value == doctest::Approx(0.4));
    CHECK(acf[1].band_halfwidth == doctest::Approx(confidence_band(5, 0.05)));

    std::vector<double> alt(100);
    for (std::size_t i = 0; i < alt.size(); ++i) {
        alt[i] = i % 2 == 0 ? 1.0 : -1.0;
    }
    CHECK(sample_acf(real_series(alt), 1)[1].value == doctest::Approx(-0.99));

    CHECK(code_of([] { (void)sample_acf(real_series({1, 2, 3}), 3); }) == ErrorCode::LagOutOfRange);
    CHECK(code_of([] { (void)sample_acf(real_series({1}), 0); }) == ErrorCode::LagOutOfRange);
    CHECK(code_of([] { (void)sample_acf(real_series({2, 2, 2, 2}), 1); }) == ErrorCode::ZeroVariance);
}

TEST_CASE("PACF base case and guards") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    std::vector<double> v(40);
    for (auto& x : v) {
        x = z(rng);
    }
    const auto s = real_series(v);
    const auto acf = sample_acf(s, 5);
    const auto pacf = sample_pacf(s, 5);
    CHECK(pacf[0].value == 1.0);
    CHECK(pacf[1].value == doctest::Approx(acf[1].value).epsilon(1e-14));
    CHECK(code_of([&] { (void)sample_pacf(s, 21); }) == ErrorCode::LagOutOfRange);

    const std::vector<double> degenerate{1.0, 1.0, 1.0};
    CHECK(code_of([&] { (void)durbin_levinson_pacf(degenerate); }) == ErrorCode::NumericalBreakdown);
}

TEST_CASE("PACF of a simulated AR(1)") {
    std::mt19937_64 rng(11);
    const std::vector<double> ar{0.7};
    const auto y = oracle::simulate_arma(ar, {}, 1.0, 5000, rng);
    const auto pacf = sample_pacf(real_series(y), 5);
    CHECK(std::abs(pacf[1].value - 0.7) < 0.05);
    for (int k = 2; k <= 5; ++k) {
        CHECK(std::abs(pacf[static_cast<std::size_t>(k)].value) < 0.05);
    }
}

TEST_CASE("PACF of white noise stays inside the band") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> z;
    std::vector<double> v(5000);
    for (auto& x : v) {
        x = z(rng);
    }
    const auto pacf = sample_pacf(real_series(v), 10);
    int inside = 0;
    for (int k = 1; k <= 10; ++k) {
        const auto& p = pacf[static_cast<std::size_t>(k)];
        CHECK(std::abs(p.value) < 1.5 * p.band_halfwidth);
        inside += std::abs(p.value) < p.band_halfwidth ? 1 : 0;
    }
    CHECK(inside >= 9);
}

TEST_CASE("property: ACF and PACF match direct solves") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> z;
    double worst_acf = 0.0;
    double worst_pacf = 0.0;
    for (std::size_t n = 20; n <= 50; ++n) {
        std::vector<double> v(n);
        double level = 0.0;
        for (auto& x : v) {
            level = 0.5 * level + z(rng);
            x = level;
        }
        const auto s = real_series(v);
        const std::size_t lags = std::min<std::size_t>(10, n / 2);
        const auto acf = sample_acf(s, static_cast<int>(lags));
        const auto pacf = sample_pacf(s, static_cast<int>(lags));
        const auto ref_acf = oracle::direct_acf(v, lags);
        const auto ref_pacf = oracle::yule_walker_pacf(v, lags);
        for (std::size_t k = 0; k <= lags; ++k) {
            worst_acf = std::max(worst_acf, std::abs(acf[k].value - ref_acf[k]));
            worst_pacf = std::max(worst_pacf, std::abs(pacf[k].value - ref_pacf[k]));
            CHECK(std::abs(acf[k].value) <= 1.0 + 1e-12);
        }

        std::vector<double> reversed(v.rbegin(), v.rend());
        const auto racf = sample_acf(real_series(reversed), static_cast<int>(lags));
        for (std::size_t k = 0; k <= lags; ++k) {
            CHECK(std::abs(racf[k].value - acf[k].value) < 1e-10);
        }
    }
    CHECK(worst_acf < 1e-10);
    CHECK(worst_pacf < 1e-8);
}

}  // TEST_SUITE
