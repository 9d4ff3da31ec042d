#include "bj/diagnostics.hpp"

#include "bj/error.hpp"
#include "bj/stats.hpp"

#include <algorithm>
#include <cmath>

namespace bj {

namespace {

// Linear interpolation between order statistics.
double quantile_sorted(std::span<const double> sorted, double prob) {
    const double pos = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Histogram freedman_diaconis_histogram(std::span<const double> x) {
    Histogram h;
    if (x.empty()) {
        return h;
    }
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    const double n = static_cast<double>(sorted.size());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double width = 2.0 * iqr / std::cbrt(n);
    std::size_t bins = 5;
    if (width > 0.0 && hi > lo) {
        bins = std::max<std::size_t>(5, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
        bins = std::min<std::size_t>(bins, std::max<std::size_t>(5, sorted.size()));
    }
    const double span = hi > lo ? hi - lo : 1.0;
    const double left = hi > lo ? lo : lo - 0.5;
    for (std::size_t i = 0; i <= bins; ++i) {
        h.edges.push_back(left + span * static_cast<double>(i) / static_cast<double>(bins));
    }
    h.counts.assign(bins, 0);
    for (double v : sorted) {
        auto idx = static_cast<std::size_t>((v - left) / span * static_cast<double>(bins));
        idx = std::min(idx, bins - 1);
        ++h.counts[idx];
    }
    return h;
}

double ljung_box_q(std::span<const double> r, std::size_t n) {
    const double nn = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 1; k <= r.size(); ++k) {
        sum += r[k - 1] * r[k - 1] / (nn - static_cast<double>(k));
    }
    return nn * (nn + 2.0) * sum;
}

LjungBox ljung_box(const TimeSeries& residuals, int max_lag, int fitted_param_count) {
    if (fitted_param_count < 0 || max_lag <= fitted_param_count) {
        throw Error(ErrorCode::InvalidDof, "Ljung-Box lag " + std::to_string(max_lag) +
                                               " must exceed the fitted parameter count " +
                                               std::to_string(fitted_param_count));
    }
    if (residuals.size() <= static_cast<std::size_t>(max_lag) + 5) {
        throw Error(ErrorCode::InvalidDof, "Ljung-Box needs more than max_lag + 5 residuals");
    }
    const auto acf = sample_acf(residuals, max_lag);
    std::vector<double> r;
    for (std::size_t k = 1; k < acf.size(); ++k) {
        r.push_back(acf[k].value);
    }
    LjungBox out;
    out.statistic = ljung_box_q(r, residuals.size());
    out.lags = max_lag;
    out.dof = max_lag - fitted_param_count;
    out.p_value = stats::chi_square_sf(out.statistic, out.dof);
    return out;
}

DiagnosticsReport residual_summary(const ArimaFit& fit, int lb_lags) {
    if (!fit.residuals || fit.residuals->size() < 8) {
        throw Error(ErrorCode::TooFewResiduals, "diagnostics need at least 8 residuals");
    }
    const TimeSeries& res = *fit.residuals;
    const std::size_t n = res.size();
    const int acf_lags = std::max(1, std::min(20, static_cast<int>(n / 4)));
    auto acf = sample_acf(res, acf_lags);

    const double mu = stats::mean(res.values());
    const double sd = std::sqrt(stats::variance(res.values()));
    std::vector<double> standardised(n);
    for (std::size_t i = 0; i < n; ++i) {
        standardised[i] = (res[i] - mu) / sd;
    }
    std::sort(standardised.begin(), standardised.end());
    std::vector<QQPoint> qq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double prob = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        qq[i] = {stats::normal_quantile(prob), standardised[i]};
    }

    const int arma = fit.spec.p + fit.spec.q;
    return DiagnosticsReport{res,
                             freedman_diaconis_histogram(res.values()),
                             std::move(qq),
                             std::move(acf),
                             ljung_box(res, std::max(lb_lags, arma + 1), arma),
                             mu,
                             sd};
}

}  // namespace bj
