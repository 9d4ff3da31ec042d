#include "bj/report.hpp"
#include "bj/unit_root.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace bj;
using testing::code_of;
using testing::real_series;

namespace {

constexpr RegressionKind kAllKinds[] = {RegressionKind::NoConstant, RegressionKind::Constant,
                                        RegressionKind::ConstantTrend};

}  // namespace

TEST_SUITE("unit_root") {

TEST_CASE("degenerate designs are rejected") {
    std::vector<double> ramp(30);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = static_cast<double>(i);
    }
    CHECK(code_of([&] { (void)adf_regression(real_series(ramp), RegressionKind::ConstantTrend, 0); }) ==
          ErrorCode::SingularDesign);
    CHECK(code_of([] { (void)adf_regression(real_series({1, 2, 3, 5, 4, 6, 7, 9, 8}), RegressionKind::Constant, 0); }) ==
          ErrorCode::SeriesTooShort);
}

TEST_CASE("Dickey-Fuller t-ratio under the null and the alternative") {
    // Quantiles of the constant-case Dickey-Fuller distribution put roughly 9-10% of the
    // mass below -2.5 and about 1-2% above 0.5, so close to 88% of draws land inside.
    std::mt19937_64 rng(99);
    const int trials = 400;
    int inside = 0;
    for (int i = 0; i < trials; ++i) {
        const auto r = adf_regression(real_series(oracle::random_walk(500, rng)), RegressionKind::Constant, 0);
        inside += (r.t_stat > -2.5 && r.t_stat < 0.5) ? 1 : 0;
    }
    const double share = static_cast<double>(inside) / trials;
    CHECK(share > 0.82);
    CHECK(share < 0.94);

    const std::vector<double> ar{0.5};
    for (int i = 0; i < 50; ++i) {
        const auto y = oracle::simulate_arma(ar, {}, 1.0, 500, rng);
        const auto r = adf_regression(real_series(y), RegressionKind::Constant, 0);
        CHECK(r.t_stat < -5.0);
        CHECK(r.n_used == 499);
    }
}

TEST_CASE("adf_test on a stationary AR(1)") {
    std::mt19937_64 rng(5);
    const std::vector<double> ar{0.3};
    const auto r = adf_test(real_series(oracle::simulate_arma(ar, {}, 1.0, 1000, rng)));
    CHECK(r.p_value < 0.01);
    CHECK(r.regression_kind == RegressionKind::Constant);
    CHECK(r.lag_order >= 0);
    CHECK(r.lag_order <= 21);
}

TEST_CASE("adf_test on the bundled series") {
    const auto raw = ingest_csv(testing::bundled_data());
    const auto before = adf_test(raw);
    CHECK(before.p_value > 0.5);
    const auto growth = difference(log_transform(raw), 1).first;
    const auto after = adf_test(growth);
    CHECK(after.p_value < 0.01);
}

TEST_CASE("critical values") {
    const auto cv = mackinnon_critical_values(58, RegressionKind::Constant);
    CHECK(std::abs(cv.pct1 - -3.568) < 0.05);
    CHECK(std::abs(cv.pct5 - -2.921) < 0.05);
    CHECK(std::abs(cv.pct10 - -2.598) < 0.05);

    const auto limit = mackinnon_critical_values(1'000'000, RegressionKind::Constant);
    CHECK(std::abs(limit.pct1 - -3.43) < 0.01);
    CHECK(std::abs(limit.pct5 - -2.86) < 0.01);
    CHECK(std::abs(limit.pct10 - -2.57) < 0.01);

    for (auto kind : kAllKinds) {
        for (int n = 20; n <= 2000; n += 7) {
            const auto c = mackinnon_critical_values(n, kind);
            CHECK(c.pct1 < c.pct5);
            CHECK(c.pct5 < c.pct10);
        }
    }
    CHECK(code_of([] { (void)mackinnon_critical_values(19, RegressionKind::Constant); }) ==
          ErrorCode::SeriesTooShort);
}

TEST_CASE("p-values") {
    CHECK(mackinnon_pvalue(0.0, RegressionKind::Constant) > 0.9);
    CHECK(mackinnon_pvalue(-10.0, RegressionKind::Constant) == doctest::Approx(1e-6));
    CHECK(mackinnon_pvalue(50.0, RegressionKind::Constant) == doctest::Approx(1.0 - 1e-6));

    // The asymptotic p-value polynomials and the finite-sample critical values agree once
    // the sample is large enough for the finite-sample correction to vanish.
    for (auto kind : kAllKinds) {
        const auto c = mackinnon_critical_values(500, kind);
        CHECK(std::abs(mackinnon_pvalue(c.pct1, kind) - 0.01) < 0.005);
        CHECK(std::abs(mackinnon_pvalue(c.pct5, kind) - 0.05) < 0.005);
        CHECK(std::abs(mackinnon_pvalue(c.pct10, kind) - 0.10) < 0.005);
    }

    double prev = 0.0;
    for (double t = -8.0; t <= 3.0; t += 0.05) {
        const double p = mackinnon_pvalue(t, RegressionKind::Constant);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("property: size and power at the 5% level") {
    std::mt19937_64 rng(1234);
    const int trials = 500;
    int size_rejections = 0;
    int power_rejections = 0;
    const std::vector<double> ar{0.5};
    for (int i = 0; i < trials; ++i) {
        size_rejections += adf_test(real_series(oracle::random_walk(200, rng))).p_value < 0.05 ? 1 : 0;
        power_rejections +=
            adf_test(real_series(oracle::simulate_arma(ar, {}, 1.0, 200, rng))).p_value < 0.05 ? 1 : 0;
    }
    const double size = static_cast<double>(size_rejections) / trials;
    const double power = static_cast<double>(power_rejections) / trials;
    MESSAGE("size " << size << ", power " << power);
    CHECK(size >= 0.02);
    CHECK(size <= 0.09);
    CHECK(power >= 0.95);
}

}  // TEST_SUITE
