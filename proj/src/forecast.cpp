#include "bj/forecast.hpp"

#include "arima_internal.hpp"
#include "bj/error.hpp"
#include "bj/stats.hpp"

#include <cmath>

namespace bj {

std::vector<double> psi_weights(const ArimaParams& params, const ArimaSpec& spec, int h) {
    std::vector<double> psi(static_cast<std::size_t>(std::max(h, 0)), 0.0);
    if (h <= 0) {
        return psi;
    }
    psi[0] = 1.0;
    for (int j = 1; j < h; ++j) {
        double v = j <= spec.q ? params.ma[static_cast<std::size_t>(j - 1)] : 0.0;
        for (int i = 1; i <= std::min(j, spec.p); ++i) {
            v += params.ar[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        }
        psi[static_cast<std::size_t>(j)] = v;
    }
    return psi;
}

namespace {

void check_state(const ArimaFit& fit, const TransformState& state, const TimeSeries& history) {
    if (state.d != fit.spec.d) {
        throw Error(ErrorCode::StateMismatch, "transform state has d=" + std::to_string(state.d) +
                                                  " but the model has d=" +
                                                  std::to_string(fit.spec.d));
    }
    if (history.scale().diff != 0 || history.scale().is_log() != state.log_applied) {
        throw Error(ErrorCode::StateMismatch,
                    "history must be the undifferenced modeling-scale series, got " +
                        history.scale().name());
    }
}

double to_original(double v, bool log_applied) {
    return log_applied ? std::exp(v) : v;
}

}  // namespace

Forecast forecast(const ArimaFit& fit, const TransformState& state, const TimeSeries& last_observed,
                  int h, double confidence) {
    if (!fit.converged) {
        throw Error(ErrorCode::NotConverged, fit.spec.label() + " fit did not converge");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(ErrorCode::InvalidConfidence, "confidence must lie in (0, 1)");
    }
    if (h < 1) {
        throw Error(ErrorCode::InvalidConfig, "forecast horizon must be at least 1");
    }
    check_state(fit, state, last_observed);

    const auto& spec = fit.spec;
    const int d = spec.d;
    const auto w = difference(last_observed, d).first;
    const auto filtered = kalman_filter(spec, fit.params, w.values());
    const auto ss = detail::build_state_space(fit.params.ar, fit.params.ma);
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(filtered.next_state.data(),
                                                          static_cast<Eigen::Index>(filtered.next_state.size()));
    const double c = spec.with_constant ? fit.params.constant : 0.0;

    Forecast out;
    out.confidence = confidence;
    out.point_differenced.resize(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j) {
        out.point_differenced[static_cast<std::size_t>(j)] = c + a(0);
        a = ss.transition * a;
    }

    // Undo the differencing level by level, continuing from the last value at each level.
    std::vector<double> path = out.point_differenced;
    for (int level = d - 1; level >= 0; --level) {
        const auto lvl = difference(last_observed, level).first;
        TransformState cont{false, 1, {lvl.back()}};
        const TimeSeries incr(0, path, ScaleTag{ScaleBase::Real, 1});
        const auto summed = integrate(incr, cont);
        path.assign(summed.values().begin() + 1, summed.values().end());
    }
    out.point_transformed = path;

    auto psi = psi_weights(fit.params, spec, h);
    for (int pass = 0; pass < d; ++pass) {
        for (std::size_t j = 1; j < psi.size(); ++j) psi[j] += psi[j - 1];
    }
    const double z = stats::normal_quantile(0.5 + confidence / 2.0);
    double cum = 0.0;
    for (int j = 0; j < h; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        cum += psi[uj] * psi[uj];
        const double se = std::sqrt(fit.params.sigma2 * cum);
        out.se_transformed.push_back(se);
        out.horizon_years.push_back(last_observed.end_year() + j + 1);
        const double mid = out.point_transformed[uj];
        out.point.push_back(to_original(mid, state.log_applied));
        out.lower.push_back(to_original(mid - z * se, state.log_applied));
        out.upper.push_back(to_original(mid + z * se, state.log_applied));
    }
    return out;
}

TimeSeries one_step_predictions(const ArimaFit& fit, const TransformState& state,
                                const TimeSeries& history, std::size_t first) {
    check_state(fit, state, history);
    const auto d = static_cast<std::size_t>(fit.spec.d);
    if (first < d || first >= history.size()) {
        throw Error(ErrorCode::SeriesTooShort, "prediction window lies outside the history");
    }
    const auto w = difference(history, fit.spec.d).first;
    const auto filtered = kalman_filter(fit.spec, fit.params, w.values());
    // the innovation of the level equals the innovation of its differences
    std::vector<double> pred;
    pred.reserve(history.size() - first);
    for (std::size_t t = first; t < history.size(); ++t) {
        pred.push_back(to_original(history[t] - filtered.innovations[t - d], state.log_applied));
    }
    const ScaleTag tag = state.log_applied ? ScaleTag{} : ScaleTag{ScaleBase::Real, 0};
    return {history.start_year() + static_cast<int>(first), std::move(pred), tag};
}

double accuracy(const TimeSeries& actual, const TimeSeries& predicted) {
    if (actual.size() != predicted.size()) {
        throw Error(ErrorCode::LengthMismatch, "actual and predicted lengths differ");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!(actual[i] > 0.0)) {
            throw Error(ErrorCode::ZeroActual, "actual value at index " + std::to_string(i) + " is not positive");
        }
        sum += std::abs(actual[i] - predicted[i]) / actual[i];
    }
    return 100.0 * (1.0 - sum / static_cast<double>(actual.size()));
}

double growth_rate(const Forecast& forecast, double base_value) {
    if (!(base_value > 0.0) || forecast.point.empty()) {
        throw Error(ErrorCode::NonPositiveValue, "growth needs a positive base and a non-empty forecast");
    }
    return 100.0 * (forecast.point.back() / base_value - 1.0);
}

}  // namespace bj
