#include "bj/correlation.hpp"

#include "bj/error.hpp"
#include "bj/stats.hpp"

#include <algorithm>
#include <cmath>

namespace bj {

int default_max_lag(std::size_t n) {
    const auto by_log = static_cast<int>(10.0 * std::log10(static_cast<double>(n)));
    return std::max(1, std::min(static_cast<int>(n) - 1, by_log));
}

double confidence_band(std::size_t n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidAlpha, "alpha must lie in (0, 1)");
    }
    if (n < 2) {
        throw Error(ErrorCode::LagOutOfRange, "confidence band needs n >= 2");
    }
    return stats::normal_quantile(1.0 - alpha / 2.0) / std::sqrt(static_cast<double>(n));
}

namespace {

std::vector<double> acf_values(std::span<const double> y, int max_lag) {
    const std::size_t n = y.size();
    if (n < 2 || max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw Error(ErrorCode::LagOutOfRange, "max_lag " + std::to_string(max_lag) +
                                                  " invalid for series of length " +
                                                  std::to_string(n));
    }
    const double ybar = stats::mean(y);
    double denom = 0.0;
    for (double v : y) {
        denom += (v - ybar) * (v - ybar);
    }
    if (!(denom > 0.0)) {
        throw Error(ErrorCode::ZeroVariance, "autocorrelation of a constant series");
    }
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            num += (y[t] - ybar) * (y[t - static_cast<std::size_t>(k)] - ybar);
        }
        r[static_cast<std::size_t>(k)] = num / denom;
    }
    return r;
}

}  // namespace

std::vector<CorrelogramPoint> sample_acf(const TimeSeries& s, int max_lag, double alpha) {
    const auto r = acf_values(s.values(), max_lag);
    const double band = confidence_band(s.size(), alpha);
    std::vector<CorrelogramPoint> out;
    out.reserve(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        out.push_back({static_cast<int>(k), r[k], band});
    }
    return out;
}

std::vector<double> durbin_levinson_pacf(std::span<const double> acf) {
    const std::size_t m = acf.empty() ? 0 : acf.size() - 1;
    std::vector<double> pacf(m);
    std::vector<double> phi(m + 1, 0.0);
    std::vector<double> prev(m + 1, 0.0);
    double v = acf.empty() ? 0.0 : acf[0];
    for (std::size_t k = 1; k <= m; ++k) {
        if (std::abs(v) < 1e-12) {
            throw Error(ErrorCode::NumericalBreakdown,
                        "Durbin-Levinson denominator vanished at lag " + std::to_string(k));
        }
        double num = acf[k];
        for (std::size_t j = 1; j < k; ++j) {
            num -= prev[j] * acf[k - j];
        }
        const double a = num / v;
        phi[k] = a;
        for (std::size_t j = 1; j < k; ++j) {
            phi[j] = prev[j] - a * prev[k - j];
        }
        v *= (1.0 - a * a);
        pacf[k - 1] = a;
        prev = phi;
    }
    return pacf;
}

std::vector<CorrelogramPoint> sample_pacf(const TimeSeries& s, int max_lag, double alpha) {
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) > s.size() / 2) {
        throw Error(ErrorCode::LagOutOfRange, "PACF max_lag " + std::to_string(max_lag) +
                                                  " exceeds n/2 for n=" + std::to_string(s.size()));
    }
    const auto r = acf_values(s.values(), max_lag);
    const auto pacf = durbin_levinson_pacf(r);
    const double band = confidence_band(s.size(), alpha);
    std::vector<CorrelogramPoint> out;
    out.reserve(r.size());
    out.push_back({0, 1.0, band});
    for (std::size_t k = 0; k < pacf.size(); ++k) {
        out.push_back({static_cast<int>(k) + 1, pacf[k], band});
    }
    return out;
}

}  // namespace bj
