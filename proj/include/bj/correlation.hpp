#pragma once

#include "bj/series.hpp"

#include <optional>
#include <vector>

namespace bj {

struct CorrelogramPoint {
    int lag = 0;
    double value = 0.0;
    double band_halfwidth = 0.0;
};

/// Default plotting depth: min(n - 1, 10 log10 n).
[[nodiscard]] int default_max_lag(std::size_t n);

/// Half-width of the white-noise band, z_{1-alpha/2} / sqrt(n).
[[nodiscard]] double confidence_band(std::size_t n, double alpha);

/// Biased sample autocorrelation at lags 0..max_lag.
///
/// r_k = sum_{t>k} (y_t - ybar)(y_{t-k} - ybar) / sum_t (y_t - ybar)^2
///
/// Throws LagOutOfRange unless 0 <= max_lag < n and n >= 2; ZeroVariance for a constant series.
[[nodiscard]] std::vector<CorrelogramPoint> sample_acf(const TimeSeries& s, int max_lag,
                                                       double alpha = 0.05);

/// Partial autocorrelation at lags 0..max_lag via the Durbin-Levinson recursion on the
/// sample ACF. Lag 0 is reported as 1. Requires max_lag <= n / 2.
[[nodiscard]] std::vector<CorrelogramPoint> sample_pacf(const TimeSeries& s, int max_lag,
                                                        double alpha = 0.05);

/// Durbin-Levinson on an autocorrelation sequence acf[0..m] (acf[0] == 1).
/// Returns the partial autocorrelations for lags 1..m.
[[nodiscard]] std::vector<double> durbin_levinson_pacf(std::span<const double> acf);

}  // namespace bj
