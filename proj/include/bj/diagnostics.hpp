#pragma once

#include "bj/arima.hpp"
#include "bj/correlation.hpp"
#include "bj/series.hpp"

#include <span>
#include <vector>

namespace bj {

struct Histogram {
    std::vector<double> edges;  ///< bins + 1 ascending edges
    std::vector<int> counts;
};

struct QQPoint {
    double theoretical = 0.0;
    double empirical = 0.0;
};

struct LjungBox {
    double statistic = 0.0;
    int lags = 0;
    int dof = 0;
    double p_value = 1.0;
};

struct DiagnosticsReport {
    TimeSeries residuals;
    Histogram histogram;
    /// Standardised residuals against standard-normal quantiles at (i - 0.5) / n.
    std::vector<QQPoint> qq_points;
    std::vector<CorrelogramPoint> residual_acf;
    LjungBox ljung_box;
    double mean = 0.0;
    double stddev = 0.0;  ///< 1/n normalisation
};

/// Freedman-Diaconis bins (width 2 IQR n^{-1/3}), at least 5.
[[nodiscard]] Histogram freedman_diaconis_histogram(std::span<const double> x);

/// Q = n (n + 2) sum_{k=1..m} r_k^2 / (n - k) for autocorrelations r_1..r_m.
[[nodiscard]] double ljung_box_q(std::span<const double> r, std::size_t n);

/// Portmanteau test with dof = max_lag - fitted_param_count. Throws InvalidDof unless
/// max_lag > fitted_param_count and n > max_lag + 5.
[[nodiscard]] LjungBox ljung_box(const TimeSeries& residuals, int max_lag, int fitted_param_count);

/// Residual checks for a fitted model. The Ljung-Box lag is max(lb_lags, p + q + 1).
/// Throws TooFewResiduals below 8 residuals.
[[nodiscard]] DiagnosticsReport residual_summary(const ArimaFit& fit, int lb_lags = 10);

}  // namespace bj
