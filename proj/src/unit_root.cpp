#include "bj/unit_root.hpp"

#include "bj/error.hpp"
#include "bj/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bj {

std::string to_string(RegressionKind kind) {
    switch (kind) {
        case RegressionKind::NoConstant: return "no_constant";
        case RegressionKind::Constant: return "constant";
        case RegressionKind::ConstantTrend: return "constant_trend";
    }
    return "unknown";
}

namespace {

int deterministic_terms(RegressionKind kind) {
    switch (kind) {
        case RegressionKind::NoConstant: return 0;
        case RegressionKind::Constant: return 1;
        case RegressionKind::ConstantTrend: return 2;
    }
    throw Error(ErrorCode::UnsupportedKind, "unknown regression kind");
}

// Rows use dependent dy[t] for t in [first, n-1), where dy[t] = y[t+1] - y[t].
AdfRegression fit_rows(std::span<const double> y, RegressionKind kind, int lag, int first) {
    const int n = static_cast<int>(y.size());
    const int n_dy = n - 1;
    const int rows = n_dy - first;
    const int det = deterministic_terms(kind);
    const int cols = det + 1 + lag;
    if (rows <= cols) {
        throw Error(ErrorCode::SeriesTooShort, "ADF regression has more regressors than rows");
    }
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd dep(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = first + r;
        dep(r) = y[t + 1] - y[t];
        int c = 0;
        if (det >= 1) {
            x(r, c++) = 1.0;
        }
        if (det >= 2) {
            x(r, c++) = static_cast<double>(r + 1);
        }
        x(r, c++) = y[t];
        for (int j = 1; j <= lag; ++j) {
            x(r, c++) = y[t + 1 - j] - y[t - j];
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) {
        throw Error(ErrorCode::SingularDesign, "ADF design matrix is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(dep);
    const Eigen::VectorXd resid = dep - x * beta;
    const double ssr = resid.squaredNorm();
    if (!(ssr > 1e-24 * std::max(1.0, dep.squaredNorm()))) {
        throw Error(ErrorCode::SingularDesign, "ADF regression fits exactly; t-ratio undefined");
    }
    const double s2 = ssr / static_cast<double>(rows - cols);
    const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();
    const int g = det;
    const double se = std::sqrt(s2 * xtx_inv(g, g));

    AdfRegression out;
    out.gamma = beta(g);
    out.t_stat = beta(g) / se;
    out.n_used = rows;
    const double nobs = rows;
    const double llf =
        -0.5 * nobs * (std::log(2.0 * std::numbers::pi) + std::log(ssr / nobs) + 1.0);
    out.aic = -2.0 * llf + 2.0 * cols;
    return out;
}

}  // namespace

AdfRegression adf_regression(const TimeSeries& s, RegressionKind kind, int lag_order) {
    if (lag_order < 0) {
        throw Error(ErrorCode::LagOutOfRange, "ADF lag order must be non-negative");
    }
    if (s.size() < static_cast<std::size_t>(lag_order) + 10) {
        throw Error(ErrorCode::SeriesTooShort, "ADF needs at least lag_order + 10 observations");
    }
    return fit_rows(s.values(), kind, lag_order, lag_order);
}

namespace {
CriticalValues surface_at(int n, RegressionKind kind);
}  // namespace

AdfResult adf_test(const TimeSeries& s, RegressionKind kind, std::optional<int> max_lag) {
    const auto n = static_cast<int>(s.size());
    int upper = max_lag.value_or(static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25))));
    upper = std::clamp(upper, 0, std::max(0, std::min(n / 2 - deterministic_terms(kind) - 1, n - 10)));
    if (s.size() < static_cast<std::size_t>(upper) + 10) {
        throw Error(ErrorCode::SeriesTooShort, "series too short for ADF test");
    }

    int best_lag = 0;
    if (upper > 0) {
        double best_aic = std::numeric_limits<double>::infinity();
        for (int lag = 0; lag <= upper; ++lag) {
            const auto reg = fit_rows(s.values(), kind, lag, upper);
            if (reg.aic < best_aic) {
                best_aic = reg.aic;
                best_lag = lag;
            }
        }
    }
    const auto reg = adf_regression(s, kind, best_lag);

    AdfResult out;
    out.statistic = reg.t_stat;
    out.p_value = mackinnon_pvalue(reg.t_stat, kind);
    // Short samples extrapolate the response surface below its n >= 20 design range.
    out.critical_values = surface_at(reg.n_used, kind);
    out.lag_order = best_lag;
    out.regression_kind = kind;
    out.n_used = reg.n_used;
    return out;
}

namespace {

// MacKinnon (2010), Table 2: tau_inf, b1/T, b2/T^2, b3/T^3 for 1%, 5%, 10%.
using Surface = std::array<std::array<double, 4>, 3>;

constexpr Surface kCritNoConstant{{{-2.56574, -2.2358, -3.627, 0.0},
                                   {-1.94100, -0.2686, -3.365, 31.223},
                                   {-1.61682, 0.2656, -2.714, 25.364}}};
constexpr Surface kCritConstant{{{-3.43035, -6.5393, -16.786, -79.433},
                                 {-2.86154, -2.8903, -4.234, -40.040},
                                 {-2.56677, -1.5384, -2.809, 0.0}}};
constexpr Surface kCritConstantTrend{{{-3.95877, -9.0531, -28.428, -134.155},
                                      {-3.41049, -4.3904, -9.036, -45.374},
                                      {-3.12705, -2.5856, -3.925, -22.380}}};

const Surface& crit_surface(RegressionKind kind) {
    switch (kind) {
        case RegressionKind::NoConstant: return kCritNoConstant;
        case RegressionKind::Constant: return kCritConstant;
        case RegressionKind::ConstantTrend: return kCritConstantTrend;
    }
    throw Error(ErrorCode::UnsupportedKind, "no critical-value surface for this kind");
}

// MacKinnon (1994) single-series coefficients, pre-scaled.
struct PvalueTable {
    double tau_star;
    double tau_min;
    double tau_max;
    std::array<double, 3> small;
    std::array<double, 4> large;
};

constexpr PvalueTable kPvalNoConstant{-1.04, -19.04, std::numeric_limits<double>::infinity(),
                                      {0.6344, 1.2378, 3.2496e-2},
                                      {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2}};
constexpr PvalueTable kPvalConstant{-1.61, -18.83, 2.74,
                                    {2.1659, 1.4412, 3.8269e-2},
                                    {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
constexpr PvalueTable kPvalConstantTrend{-2.89, -16.18, 0.70,
                                         {3.2512, 1.6047, 4.9588e-2},
                                         {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

const PvalueTable& pvalue_table(RegressionKind kind) {
    switch (kind) {
        case RegressionKind::NoConstant: return kPvalNoConstant;
        case RegressionKind::Constant: return kPvalConstant;
        case RegressionKind::ConstantTrend: return kPvalConstantTrend;
    }
    throw Error(ErrorCode::UnsupportedKind, "no p-value table for this kind");
}

template <std::size_t N>
double polyval(const std::array<double, N>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) {
        acc = acc * x + c[i];
    }
    return acc;
}

}  // namespace

namespace {

CriticalValues surface_at(int n, RegressionKind kind) {
    const auto& surface = crit_surface(kind);
    const double inv = 1.0 / static_cast<double>(n);
    std::array<double, 3> cv{};
    for (std::size_t i = 0; i < 3; ++i) {
        cv[i] = polyval(surface[i], inv);
    }
    return {cv[0], cv[1], cv[2]};
}

}  // namespace

CriticalValues mackinnon_critical_values(int n, RegressionKind kind) {
    if (n < 20) {
        throw Error(ErrorCode::SeriesTooShort, "critical values need n >= 20");
    }
    return surface_at(n, kind);
}

double mackinnon_pvalue(double statistic, RegressionKind kind) {
    constexpr double lo = 1e-6;
    constexpr double hi = 1.0 - 1e-6;
    const auto& table = pvalue_table(kind);
    if (statistic > table.tau_max) {
        return hi;
    }
    if (statistic < table.tau_min) {
        return lo;
    }
    const double z = statistic <= table.tau_star ? polyval(table.small, statistic)
                                                 : polyval(table.large, statistic);
    return std::clamp(stats::normal_cdf(z), lo, hi);
}

}  // namespace bj
