#pragma once

#include "bj/series.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bj {

/// ARIMA(p, d, q) order, optionally with a constant (the drift of the differenced series).
struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    bool with_constant = true;

    /// Parameters counted by the information criteria: constant, AR, MA and sigma^2.
    [[nodiscard]] int parameter_count() const noexcept {
        return (with_constant ? 1 : 0) + p + q + 1;
    }
    /// Harvey state dimension max(p, q + 1).
    [[nodiscard]] int state_dim() const noexcept { return p > q + 1 ? p : q + 1; }
    [[nodiscard]] std::string label() const;

    friend bool operator==(const ArimaSpec&, const ArimaSpec&) = default;
};

/// w_t - c = sum_i ar[i] (w_{t-i} - c) + e_t + sum_j ma[j] e_{t-j},  e_t ~ N(0, sigma2),
/// where w is the d-times differenced series.
struct ArimaParams {
    double constant = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
    double sigma2 = 1.0;
};

struct InformationCriteria {
    double aic = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
};

/// aic = -2 L + 2k, bic = -2 L + k ln n, hqic = -2 L + 2k ln ln n.
[[nodiscard]] InformationCriteria information_criteria(double loglik, int k, int n);

/// One row of the coefficient table.
struct ParamInference {
    std::string name;
    double coef = 0.0;
    /// Unset when the Hessian gives no positive variance for this parameter.
    std::optional<double> std_err;
    std::optional<double> z;
    std::optional<double> p_value;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

struct ArimaFit {
    ArimaSpec spec;
    ArimaParams params;
    double loglik = 0.0;
    InformationCriteria criteria;
    /// One-step prediction errors of the differenced series.
    std::optional<TimeSeries> residuals;
    int n_obs = 0;
    bool converged = false;
    std::vector<ParamInference> inference;
    bool hessian_ok = false;
    int iterations = 0;

    [[nodiscard]] int parameter_count() const noexcept { return spec.parameter_count(); }
};

/// Output of a Kalman pass over a (differenced) series.
struct FilterResult {
    std::vector<double> innovations;    ///< v_t = w_t - E[w_t | past]
    std::vector<double> variance_ratio; ///< F_t / sigma2
    std::vector<double> predictions;    ///< E[w_t | past], constant included
    std::vector<double> next_state;     ///< a_{n+1|n} (mean-adjusted)
    double loglik = 0.0;                ///< exact Gaussian log-likelihood with params.sigma2
};

/// Filter `data` (already differenced d times) through the Harvey state-space form of the
/// ARMA(p, q) part. The constant is subtracted internally when spec.with_constant is set.
/// The initial state covariance is the stationary solution of P = T P T' + sigma2 R R'.
/// Throws InvalidParams for a non-stationary AR part and NonFiniteLikelihood on divergence.
[[nodiscard]] FilterResult kalman_filter(const ArimaSpec& spec, const ArimaParams& params,
                                         std::span<const double> data);

/// Exact Gaussian log-likelihood (prediction-error decomposition).
[[nodiscard]] double kalman_loglik(const ArimaSpec& spec, const ArimaParams& params,
                                   std::span<const double> data);

/// Map an unconstrained vector [ar (p), ma (q), log sigma2] onto stationary AR /
/// invertible MA coefficients: tanh gives partial autocorrelations, Durbin-Levinson
/// expands them. The constant is not part of the vector and is returned as 0.
[[nodiscard]] ArimaParams transform_params(std::span<const double> unconstrained, int p, int q);

/// Inverse of transform_params. Requires AR roots strictly outside the unit circle and MA
/// roots strictly outside as well; throws InvalidParams otherwise.
[[nodiscard]] std::vector<double> inverse_transform(const ArimaParams& params);

enum class PolyKind { AR, MA };

struct RootInfo {
    double real = 0.0;
    double imag = 0.0;
    double modulus = 0.0;
    /// atan2(imag, real) / 2pi; negative real roots report -0.5.
    double frequency = 0.0;
};

/// Roots of 1 + sum theta_i z^i (MA) or 1 - sum phi_i z^i (AR) from the companion matrix,
/// sorted by frequency then modulus. Empty input gives an empty result.
[[nodiscard]] std::vector<RootInfo> polynomial_roots(std::span<const double> coeffs, PolyKind kind);

struct FitOptions {
    std::uint64_t seed = 42;
    int starts = 5;
    int max_iterations = 2000;
    double f_tolerance = 1e-8;
    /// Jitter scale for the extra starts in unconstrained space.
    double jitter = 0.5;
    bool compute_std_errors = true;
};

/// Maximum-likelihood fit. `data` is on the original or log scale and is differenced d
/// times internally. The constant is the mean of the differenced series; the ARMA part
/// maximises the exact likelihood by multi-start Nelder-Mead (Hannan-Rissanen warm start
/// plus jittered copies), with sigma2 profiled out.
/// Throws TooFewObservations when n - d <= k + 5, OptimizerFailed if every start diverges.
[[nodiscard]] ArimaFit fit(const ArimaSpec& spec, const TimeSeries& data,
                           const FitOptions& options = {});

/// Coefficient table from the inverse numerical Hessian of -loglik at the fit, over
/// (constant, ar, ma, sigma2). `data` is the same series that was passed to fit.
[[nodiscard]] std::vector<ParamInference> std_errors(const ArimaFit& fit, const TimeSeries& data,
                                                     bool* hessian_ok = nullptr);

}  // namespace bj
