#pragma once

#include "bj/arima.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bj {

enum class Criterion { AIC, BIC, HQIC };

[[nodiscard]] std::string to_string(Criterion c);
[[nodiscard]] double criterion_value(const InformationCriteria& ic, Criterion c);

struct GridEntry {
    ArimaSpec spec;
    /// Unset when the fit threw.
    std::optional<double> criterion_value;
    bool converged = false;
    std::optional<ArimaFit> fit;
    std::string failure;
};

struct GridOptions {
    bool with_constant = true;
    FitOptions fit{.compute_std_errors = false};
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
};

/// Fits every (p, q) in [0, p_max] x [0, q_max] at fixed d. Failed fits are kept as
/// non-converged entries. Output is sorted by criterion (failed cells last) and does not
/// depend on thread scheduling: each cell gets seed fit.seed + its grid index.
/// Throws TooFewObservations when the series cannot support ARIMA(p_max, d, q_max) and
/// EmptyGrid when every fit failed.
[[nodiscard]] std::vector<GridEntry> grid_search(const TimeSeries& data, int d, int p_max, int q_max,
                                                 Criterion criterion, const GridOptions& options = {});

/// Converged entry with the smallest criterion; ties go to smaller p + q, then smaller q.
[[nodiscard]] const GridEntry& best_model(std::span<const GridEntry> entries);

}  // namespace bj
