#pragma once

#include "bj/series.hpp"

#include <array>
#include <optional>
#include <string>

namespace bj {

/// Deterministic terms in the ADF test regression.
enum class RegressionKind {
    NoConstant,     ///< dy_t = g y_{t-1} + ...
    Constant,       ///< dy_t = a + g y_{t-1} + ...
    ConstantTrend,  ///< dy_t = a + b t + g y_{t-1} + ...
};

[[nodiscard]] std::string to_string(RegressionKind kind);

/// Critical values at the 1%, 5% and 10% levels, in that order.
struct CriticalValues {
    double pct1 = 0.0;
    double pct5 = 0.0;
    double pct10 = 0.0;
};

struct AdfRegression {
    double gamma = 0.0;   ///< coefficient on y_{t-1}
    double t_stat = 0.0;  ///< gamma / se(gamma)
    int n_used = 0;
    double aic = 0.0;     ///< -2 loglik + 2k of the auxiliary regression
};

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    CriticalValues critical_values;
    int lag_order = 0;
    RegressionKind regression_kind = RegressionKind::Constant;
    int n_used = 0;
};

/// OLS of dy_t on the deterministic terms, y_{t-1} and dy_{t-1..t-lag_order}.
/// Requires length(s) >= lag_order + 10; throws SingularDesign on a rank-deficient
/// or exactly fitted design.
[[nodiscard]] AdfRegression adf_regression(const TimeSeries& s, RegressionKind kind,
                                           int lag_order);

/// Augmented Dickey-Fuller test. With max_lag unset the upper bound is
/// floor(12 (n/100)^{1/4}); the lag is chosen by AIC over 0..max_lag on a common sample,
/// then the regression is re-run on all available observations. The bound is also capped
/// so that every candidate regression stays estimable on short series, whose critical
/// values then come from the response surface evaluated below n = 20.
[[nodiscard]] AdfResult adf_test(const TimeSeries& s, RegressionKind kind = RegressionKind::Constant,
                                 std::optional<int> max_lag = std::nullopt);

/// Finite-sample critical values from MacKinnon's (2010) response surfaces. Requires n >= 20.
[[nodiscard]] CriticalValues mackinnon_critical_values(int n, RegressionKind kind);

/// Asymptotic p-value from MacKinnon's (1994) normal-quantile polynomials,
/// clamped to [1e-6, 1 - 1e-6].
[[nodiscard]] double mackinnon_pvalue(double statistic, RegressionKind kind);

}  // namespace bj
