#pragma once

#include "bj/arima.hpp"
#include "bj/series.hpp"

#include <vector>

namespace bj {

struct Forecast {
    std::vector<int> horizon_years;
    /// Back on the original scale (exponentiated when the model ran on logs).
    std::vector<double> point;
    std::vector<double> lower;
    std::vector<double> upper;
    /// Level forecasts and their standard errors on the modeling scale (log scale when logged).
    std::vector<double> point_transformed;
    std::vector<double> se_transformed;
    /// Forecasts of the d-times differenced series.
    std::vector<double> point_differenced;
    double confidence = 0.95;
};

/// MA(infinity) weights psi_0..psi_{h-1}: psi_0 = 1,
/// psi_j = theta_j + sum_{i=1..min(j,p)} phi_i psi_{j-i}, with theta_j = 0 for j > q.
[[nodiscard]] std::vector<double> psi_weights(const ArimaParams& params, const ArimaSpec& spec, int h);

/// h-step forecasts from the end of `last_observed`, the modeling-scale (undifferenced) series
/// the fit was estimated on. Point forecasts are conditional expectations from the Kalman
/// state; the variance at step j is sigma2 * sum_{i<j} psi*_i^2 with psi* the weights of the
/// integrated process. Intervals are symmetric on the modeling scale, so the dollar-scale
/// point is the median forecast.
[[nodiscard]] Forecast forecast(const ArimaFit& fit, const TransformState& state,
                                const TimeSeries& last_observed, int h, double confidence);

/// One-step-ahead predictions for the points of `history` from index `first` onward, using
/// the fitted parameters without re-estimation. `history` is on the modeling scale; the
/// result is mapped back to the original scale.
[[nodiscard]] TimeSeries one_step_predictions(const ArimaFit& fit, const TransformState& state,
                                              const TimeSeries& history, std::size_t first);

/// 100 * (1 - mean |actual - predicted| / actual), i.e. 100 - MAPE.
[[nodiscard]] double accuracy(const TimeSeries& actual, const TimeSeries& predicted);

/// 100 * (last point / base_value - 1).
[[nodiscard]] double growth_rate(const Forecast& forecast, double base_value);

}  // namespace bj
