#include "bj/series.hpp"

#include "bj/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bj {

std::string ScaleTag::name() const {
    const char* b = base == ScaleBase::Original ? "original" : base == ScaleBase::Log ? "log" : "real";
    if (diff == 0) {
        return b;
    }
    return "diff(" + std::to_string(diff) + ")-of-" + b;
}

TimeSeries::TimeSeries(int start_year, std::vector<double> values, ScaleTag scale)
    : start_year_(start_year), values_(std::move(values)), scale_(scale) {
    if (values_.empty()) {
        throw Error(ErrorCode::SeriesTooShort, "time series must hold at least one value");
    }
    if (scale_.is_original()) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] > 0.0)) {
                throw Error(ErrorCode::NonPositiveValue,
                            "value at index " + std::to_string(i) + " (year " +
                                std::to_string(start_year_ + static_cast<int>(i)) +
                                ") is not positive");
            }
        }
    }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > values_.size()) {
        throw Error(ErrorCode::SeriesTooShort, "slice exceeds series length");
    }
    std::vector<double> part(values_.begin() + static_cast<std::ptrdiff_t>(first),
                             values_.begin() + static_cast<std::ptrdiff_t>(first + count));
    return {start_year_ + static_cast<int>(first), std::move(part), scale_};
}

TimeSeries log_transform(const TimeSeries& s) {
    if (!s.scale().is_original()) {
        throw Error(ErrorCode::StateMismatch, "log transform expects an original-scale series");
    }
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = std::log(s[i]);
    }
    return {s.start_year(), std::move(out), ScaleTag{ScaleBase::Log, 0}};
}

std::pair<TimeSeries, TransformState> difference(const TimeSeries& s, int d) {
    if (d < 0) {
        throw Error(ErrorCode::StateMismatch, "differencing order must be non-negative");
    }
    if (s.size() <= static_cast<std::size_t>(d)) {
        throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(s.size()) +
                                                   " cannot be differenced " + std::to_string(d) +
                                                   " times");
    }
    TransformState state;
    state.log_applied = s.scale().is_log();
    state.d = d;

    std::vector<double> cur(s.values().begin(), s.values().end());
    for (int pass = 0; pass < d; ++pass) {
        state.heads.push_back(cur.front());
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 1; i < cur.size(); ++i) {
            next[i - 1] = cur[i] - cur[i - 1];
        }
        cur = std::move(next);
    }
    ScaleTag tag{s.scale().base, s.scale().diff + d};
    return {TimeSeries(s.start_year() + d, std::move(cur), tag), std::move(state)};
}

TimeSeries integrate(const TimeSeries& diffed, const TransformState& state) {
    if (state.d < 0 || state.heads.size() != static_cast<std::size_t>(state.d)) {
        throw Error(ErrorCode::StateMismatch,
                    "state records d=" + std::to_string(state.d) + " but holds " +
                        std::to_string(state.heads.size()) + " heads");
    }
    // Running sums are kept in extended precision across passes so that rounding does not
    // compound with d.
    std::vector<long double> wide(diffed.values().begin(), diffed.values().end());
    for (int pass = state.d - 1; pass >= 0; --pass) {
        std::vector<long double> next(wide.size() + 1);
        next[0] = state.heads[static_cast<std::size_t>(pass)];
        for (std::size_t i = 0; i < wide.size(); ++i) {
            next[i + 1] = next[i] + wide[i];
        }
        wide = std::move(next);
    }
    std::vector<double> cur(wide.begin(), wide.end());
    ScaleTag tag{diffed.scale().base, std::max(0, diffed.scale().diff - state.d)};
    if (state.log_applied) {
        for (double& v : cur) {
            v = std::exp(v);
        }
        tag.base = ScaleBase::Original;
    }
    return {diffed.start_year() - state.d, std::move(cur), tag};
}

std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& s, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error(ErrorCode::DegenerateSplit, "train fraction must lie in (0, 1)");
    }
    const auto n_train =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(s.size())));
    if (n_train == 0 || n_train >= s.size()) {
        throw Error(ErrorCode::DegenerateSplit,
                    "split of " + std::to_string(s.size()) + " points leaves an empty part");
    }
    return {s.slice(0, n_train), s.slice(n_train, s.size() - n_train)};
}

}  // namespace bj
