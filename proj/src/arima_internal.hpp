#pragma once

#include "bj/arima.hpp"

#include <Eigen/Dense>

#include <span>

namespace bj::detail {

/// Harvey form: alpha_{t+1} = T alpha_t + R e_{t+1}, w_t - c = alpha_t[0].
struct StateSpace {
    Eigen::MatrixXd transition;
    Eigen::VectorXd loading;
};

[[nodiscard]] StateSpace build_state_space(std::span<const double> ar, std::span<const double> ma);

/// Stationary covariance of the state with unit innovation variance.
[[nodiscard]] Eigen::MatrixXd stationary_covariance(const StateSpace& ss);

/// Kalman pass with unit innovation variance over mean-adjusted data.
struct UnitFilter {
    std::vector<double> innovations;
    std::vector<double> variance_ratio;
    Eigen::VectorXd next_state;
    double sum_log_f = 0.0;
    double sum_scaled_sq = 0.0;  ///< sum v_t^2 / F_t
};

[[nodiscard]] UnitFilter unit_filter(const StateSpace& ss, std::span<const double> centred);

/// Log-likelihood with sigma2 replaced by its maximiser sum(v^2/F)/n.
[[nodiscard]] double concentrated_loglik(const UnitFilter& run, std::size_t n);

/// Durbin-Levinson expansion of partial autocorrelations into AR coefficients.
[[nodiscard]] std::vector<double> partials_to_coefficients(std::span<const double> partials);
/// Reverse recursion; throws InvalidParams if some partial has |r| >= 1.
[[nodiscard]] std::vector<double> coefficients_to_partials(std::span<const double> coeffs);

}  // namespace bj::detail
