#pragma once

#include "bj/arima.hpp"
#include "bj/correlation.hpp"
#include "bj/diagnostics.hpp"
#include "bj/forecast.hpp"
#include "bj/selection.hpp"
#include "bj/series.hpp"
#include "bj/unit_root.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bj {

enum class FitScope {
    Train,  ///< forecast from the end of the training split, through the test years
    Full,   ///< refit the chosen order on the whole series and forecast from its end
};

enum class OutputFormat { Json, Csv, Svg };

struct RunConfig {
    std::filesystem::path data_path;
    double train_fraction = 0.7;
    bool apply_log = true;
    /// Unset selects d automatically from the ADF test.
    std::optional<int> d;
    int p_max = 6;
    int q_max = 6;
    Criterion criterion = Criterion::AIC;
    int horizon = 5;
    double confidence = 0.95;
    std::filesystem::path out_dir = "out";
    std::set<OutputFormat> formats{OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg};
    std::uint64_t seed = 42;
    FitScope fit_scope = FitScope::Train;

    /// Throws InvalidConfig on out-of-range settings.
    void validate() const;
};

/// Test-period predictions from the training fit next to the held-out actuals.
struct TestComparison {
    std::vector<int> years;
    std::vector<double> actual;
    std::vector<double> predicted;
};

struct RunReport {
    TimeSeries series;
    AdfResult adf_before;
    AdfResult adf_after;
    bool log_applied = true;
    int d = 1;
    TimeSeries transformed;  ///< log (if applied) then differenced d times
    std::vector<CorrelogramPoint> acf;
    std::vector<CorrelogramPoint> pacf;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::vector<GridEntry> grid;
    ArimaSpec chosen;
    ArimaFit fit;  ///< chosen order on the training split
    std::vector<RootInfo> ar_roots;
    std::vector<RootInfo> ma_roots;
    DiagnosticsReport diagnostics;
    TestComparison test;
    FitScope fit_scope = FitScope::Train;
    std::optional<ArimaFit> full_fit;  ///< set when fit_scope is Full
    Forecast forecast;                 ///< the `horizon` years after the data end
    double accuracy_percent = 0.0;
    double growth_percent = 0.0;
};

/// Reads a `year,value` CSV (US$ billions). Rows may be in any order but must cover a
/// contiguous run of years. Throws IoError, ParseError (with row number), MissingYear
/// (first absent year) or NonPositiveValue.
[[nodiscard]] TimeSeries ingest_csv(const std::filesystem::path& path);

/// Runs ingestion, stationarity checks, transformation, split, grid search, fitting,
/// diagnostics, test-period evaluation and forecasting. Failures surface as StageError.
[[nodiscard]] RunReport run_pipeline(const RunConfig& config);

/// Serialised report with a fixed key order.
[[nodiscard]] std::string report_json(const RunReport& report, const RunConfig& config);

/// Writes report.json, forecast.csv and grid.csv as selected by config.formats, plus the
/// SVG charts when requested. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> emit_report(const RunReport& report, const RunConfig& config);

/// Writes trend.svg, correlogram.svg, predicted_vs_actual.svg, residuals.svg and
/// forecast_fan.svg into out_dir. Returns the written paths.
std::vector<std::filesystem::path> render_plots(const RunReport& report,
                                                const std::filesystem::path& out_dir);

[[nodiscard]] std::string to_string(FitScope scope);

}  // namespace bj
