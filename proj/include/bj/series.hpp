#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bj {

/// Base scale of a series before differencing. `Real` marks unconstrained data such as
/// residuals or simulated processes; `Original` data must be strictly positive.
enum class ScaleBase { Original, Log, Real };

/// Where a series sits in the transform pipeline: a base scale, then `diff` differencing passes.
struct ScaleTag {
    ScaleBase base = ScaleBase::Original;
    int diff = 0;

    [[nodiscard]] bool is_original() const noexcept { return base == ScaleBase::Original && diff == 0; }
    [[nodiscard]] bool is_log() const noexcept { return base == ScaleBase::Log; }
    [[nodiscard]] std::string name() const;

    friend bool operator==(const ScaleTag&, const ScaleTag&) = default;
};

/// Yearly observations. Index i maps to calendar year start_year + i.
class TimeSeries {
public:
    /// Throws SeriesTooShort on empty input and NonPositiveValue when an
    /// original-scale series holds a value <= 0.
    TimeSeries(int start_year, std::vector<double> values, ScaleTag scale = {});

    [[nodiscard]] int start_year() const noexcept { return start_year_; }
    [[nodiscard]] int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double front() const { return values_.front(); }
    [[nodiscard]] double back() const { return values_.back(); }
    [[nodiscard]] const ScaleTag& scale() const noexcept { return scale_; }

    /// Points [first, first + count) as a new series with the same scale.
    [[nodiscard]] TimeSeries slice(std::size_t first, std::size_t count) const;

private:
    int start_year_;
    std::vector<double> values_;
    ScaleTag scale_;
};

/// Everything needed to undo `difference` (and a preceding log transform).
struct TransformState {
    bool log_applied = false;
    int d = 0;
    /// heads[k] is the first value of the series after k differencing passes.
    std::vector<double> heads;
};

[[nodiscard]] TimeSeries log_transform(const TimeSeries& s);

[[nodiscard]] std::pair<TimeSeries, TransformState> difference(const TimeSeries& s, int d);

/// Inverse of `difference`; exponentiates last when the state records a log transform.
[[nodiscard]] TimeSeries integrate(const TimeSeries& diffed, const TransformState& state);

/// Chronological split: train gets floor(train_fraction * n) points.
[[nodiscard]] std::pair<TimeSeries, TimeSeries> train_test_split(const TimeSeries& s,
                                                                  double train_fraction);

}  // namespace bj
