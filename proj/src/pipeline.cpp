#include "bj/error.hpp"
#include "bj/report.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>

namespace bj {

std::string to_string(FitScope scope) {
    return scope == FitScope::Train ? "train" : "full";
}

void RunConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "train fraction must lie in (0, 1)");
    }
    if (horizon < 1) {
        throw Error(ErrorCode::InvalidConfig, "horizon must be at least 1");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "confidence must lie in (0, 1)");
    }
    if (p_max < 0 || q_max < 0) {
        throw Error(ErrorCode::InvalidConfig, "order bounds must be non-negative");
    }
    if (d && (*d < 0 || *d > 2)) {
        throw Error(ErrorCode::InvalidConfig, "d must be auto, 0, 1 or 2");
    }
}

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && !text.empty();
}

}  // namespace

TimeSeries ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, "row 1: missing header");
    }
    std::string_view header = trim(line);
    if (header.starts_with("\xEF\xBB\xBF")) {
        header.remove_prefix(3);
    }
    if (header != "year,value") {
        throw Error(ErrorCode::ParseError, "row 1: expected header 'year,value', got '" +
                                               std::string(header) + "'");
    }

    std::map<int, double> rows;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        const auto text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto comma = text.find(',');
        int year = 0;
        double value = 0.0;
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos ||
            !parse_number(text.substr(0, comma), year) || !parse_number(text.substr(comma + 1), value)) {
            throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ": cannot parse '" +
                                                   std::string(text) + "'");
        }
        if (!rows.emplace(year, value).second) {
            throw Error(ErrorCode::ParseError,
                        "row " + std::to_string(row) + ": duplicate year " + std::to_string(year));
        }
    }
    if (rows.empty()) {
        throw Error(ErrorCode::ParseError, "no data rows in " + path.string());
    }
    std::vector<double> values;
    int expected = rows.begin()->first;
    for (const auto& [year, value] : rows) {
        if (year != expected) {
            throw Error(ErrorCode::MissingYear, "missing year " + std::to_string(expected));
        }
        values.push_back(value);
        ++expected;
    }
    return {rows.begin()->first, std::move(values)};
}

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e);
    }
}

constexpr double kStationaryP = 0.05;
constexpr int kMaxAutoD = 2;

Forecast tail(const Forecast& f, std::size_t count) {
    const auto first = f.point.size() - count;
    auto cut = [first](const auto& v) {
        return std::remove_cvref_t<decltype(v)>(v.begin() + static_cast<std::ptrdiff_t>(first), v.end());
    };
    Forecast out;
    out.horizon_years = cut(f.horizon_years);
    out.point = cut(f.point);
    out.lower = cut(f.lower);
    out.upper = cut(f.upper);
    out.point_transformed = cut(f.point_transformed);
    out.se_transformed = cut(f.se_transformed);
    out.point_differenced = cut(f.point_differenced);
    out.confidence = f.confidence;
    return out;
}

}  // namespace

RunReport run_pipeline(const RunConfig& config) {
    stage("config", [&] { config.validate(); return 0; });
    const TimeSeries series = stage("ingest", [&] { return ingest_csv(config.data_path); });

    // Fail fast when the training split cannot hold the largest grid cell at the smallest
    // admissible d; differencing only removes observations.
    stage("grid", [&] {
        const auto n_train = static_cast<int>(std::floor(config.train_fraction * static_cast<double>(series.size())));
        const ArimaSpec largest{config.p_max, config.d.value_or(0), config.q_max, true};
        if (n_train - largest.d <= largest.parameter_count() + 5) {
            throw Error(ErrorCode::TooFewObservations, std::to_string(n_train) +
                                                           " training observations cannot support " +
                                                           largest.label());
        }
        return 0;
    });

    const AdfResult adf_before = stage("adf_raw", [&] { return adf_test(series); });

    const TimeSeries modeling =
        stage("transform", [&] { return config.apply_log ? log_transform(series) : series; });

    // Auto-d: difference until the ADF test rejects a unit root, up to d = 2.
    int d = config.d.value_or(0);
    AdfResult adf_after = stage("adf_transformed", [&] {
        if (config.d) {
            return adf_test(difference(modeling, d).first);
        }
        AdfResult r = adf_test(modeling);
        while (r.p_value >= kStationaryP && d < kMaxAutoD) {
            ++d;
            r = adf_test(difference(modeling, d).first);
        }
        return r;
    });
    const auto [transformed, state] = stage("transform", [&] { return difference(modeling, d); });

    const int max_lag = default_max_lag(transformed.size());
    auto acf = stage("correlation", [&] { return sample_acf(transformed, max_lag); });
    auto pacf = stage("correlation", [&] {
        return sample_pacf(transformed, std::min<int>(max_lag, static_cast<int>(transformed.size() / 2)));
    });

    const auto [train, test] = stage("split", [&] { return train_test_split(modeling, config.train_fraction); });

    GridOptions grid_options;
    grid_options.fit.seed = config.seed;
    auto grid = stage("grid", [&] {
        return grid_search(train, d, config.p_max, config.q_max, config.criterion, grid_options);
    });
    const ArimaSpec chosen = stage("grid", [&] { return best_model(grid).spec; });

    FitOptions fit_options;
    fit_options.seed = config.seed;
    ArimaFit train_fit = stage("fit", [&] { return fit(chosen, train, fit_options); });
    const auto train_state = difference(train, d).second;

    auto ar_roots = polynomial_roots(train_fit.params.ar, PolyKind::AR);
    auto ma_roots = polynomial_roots(train_fit.params.ma, PolyKind::MA);

    auto diagnostics = stage("diagnostics", [&] { return residual_summary(train_fit); });

    // The training fit is projected through the test years; its tail beyond the data is
    // the forecast when fitting on the training split only.
    const int horizon = config.horizon;
    const auto through = static_cast<int>(test.size()) + horizon;
    const Forecast path = stage("forecast", [&] {
        return forecast(train_fit, train_state, train, through, config.confidence);
    });

    TestComparison comparison;
    for (std::size_t i = 0; i < test.size(); ++i) {
        comparison.years.push_back(test.start_year() + static_cast<int>(i));
        comparison.actual.push_back(series[train.size() + i]);
        comparison.predicted.push_back(path.point[i]);
    }
    const double acc = stage("accuracy", [&] {
        const TimeSeries actual(test.start_year(), comparison.actual);
        const TimeSeries predicted(test.start_year(), comparison.predicted, ScaleTag{ScaleBase::Real, 0});
        return accuracy(actual, predicted);
    });

    std::optional<ArimaFit> full_fit;
    Forecast future;
    if (config.fit_scope == FitScope::Full) {
        full_fit = stage("fit", [&] { return fit(chosen, modeling, fit_options); });
        future = stage("forecast", [&] {
            return forecast(*full_fit, state, modeling, horizon, config.confidence);
        });
    } else {
        future = tail(path, static_cast<std::size_t>(horizon));
    }
    const double growth = stage("forecast", [&] { return growth_rate(future, series.back()); });

    return RunReport{
        .series = series,
        .adf_before = adf_before,
        .adf_after = adf_after,
        .log_applied = config.apply_log,
        .d = d,
        .transformed = transformed,
        .acf = std::move(acf),
        .pacf = std::move(pacf),
        .train_size = train.size(),
        .test_size = test.size(),
        .grid = std::move(grid),
        .chosen = chosen,
        .fit = std::move(train_fit),
        .ar_roots = std::move(ar_roots),
        .ma_roots = std::move(ma_roots),
        .diagnostics = std::move(diagnostics),
        .test = std::move(comparison),
        .fit_scope = config.fit_scope,
        .full_fit = std::move(full_fit),
        .forecast = std::move(future),
        .accuracy_percent = acc,
        .growth_percent = growth,
    };
}

}  // namespace bj
