#include "bj/error.hpp"
#include "bj/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>

namespace bj {

namespace {

using nlohmann::ordered_json;

template <typename T>
ordered_json opt(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json to_json(const AdfResult& r) {
    return {
        {"statistic", r.statistic},
        {"p_value", r.p_value},
        {"lag_order", r.lag_order},
        {"n_used", r.n_used},
        {"regression", to_string(r.regression_kind)},
        {"critical_values",
         {{"1%", r.critical_values.pct1}, {"5%", r.critical_values.pct5}, {"10%", r.critical_values.pct10}}},
    };
}

ordered_json to_json(const std::vector<CorrelogramPoint>& points) {
    auto out = ordered_json::array();
    for (const auto& p : points) {
        out.push_back({{"lag", p.lag}, {"value", p.value}, {"band", p.band_halfwidth}});
    }
    return out;
}

ordered_json to_json(const ArimaSpec& s) {
    return {{"p", s.p}, {"d", s.d}, {"q", s.q}, {"constant", s.with_constant}};
}

ordered_json to_json(const ArimaFit& f) {
    auto coefficients = ordered_json::array();
    for (const auto& row : f.inference) {
        coefficients.push_back({
            {"name", row.name},
            {"coef", row.coef},
            {"std_err", opt(row.std_err)},
            {"z", opt(row.z)},
            {"p_value", opt(row.p_value)},
            {"ci_low", opt(row.ci_low)},
            {"ci_high", opt(row.ci_high)},
        });
    }
    return {
        {"spec", to_json(f.spec)},
        {"n_obs", f.n_obs},
        {"loglik", f.loglik},
        {"aic", f.criteria.aic},
        {"bic", f.criteria.bic},
        {"hqic", f.criteria.hqic},
        {"converged", f.converged},
        {"iterations", f.iterations},
        {"hessian_ok", f.hessian_ok},
        {"constant", f.params.constant},
        {"ar", f.params.ar},
        {"ma", f.params.ma},
        {"sigma2", f.params.sigma2},
        {"coefficients", std::move(coefficients)},
    };
}

ordered_json to_json(const std::vector<RootInfo>& roots) {
    auto out = ordered_json::array();
    for (const auto& r : roots) {
        out.push_back({{"real", r.real}, {"imag", r.imag}, {"modulus", r.modulus}, {"frequency", r.frequency}});
    }
    return out;
}

ordered_json to_json(const Forecast& f) {
    auto rows = ordered_json::array();
    for (std::size_t i = 0; i < f.point.size(); ++i) {
        rows.push_back({
            {"year", f.horizon_years[i]},
            {"forecast", f.point[i]},
            {"lower", f.lower[i]},
            {"upper", f.upper[i]},
            {"point_transformed", f.point_transformed[i]},
            {"se_transformed", f.se_transformed[i]},
        });
    }
    return {{"confidence", f.confidence}, {"rows", std::move(rows)}};
}

std::vector<double> to_vector(const TimeSeries& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

std::string report_json(const RunReport& r, const RunConfig& config) {
    auto grid = ordered_json::array();
    for (const auto& e : r.grid) {
        grid.push_back({
            {"p", e.spec.p},
            {"d", e.spec.d},
            {"q", e.spec.q},
            {"criterion", opt(e.criterion_value)},
            {"aic", e.fit ? ordered_json(e.fit->criteria.aic) : ordered_json(nullptr)},
            {"loglik", e.fit ? ordered_json(e.fit->loglik) : ordered_json(nullptr)},
            {"converged", e.converged},
            {"failure", e.failure},
        });
    }

    const auto& dg = r.diagnostics;
    auto qq = ordered_json::array();
    for (const auto& p : dg.qq_points) {
        qq.push_back({p.theoretical, p.empirical});
    }

    ordered_json doc = {
        {"config",
         {
             {"data_path", config.data_path.string()},
             {"train_fraction", config.train_fraction},
             {"apply_log", config.apply_log},
             {"d", opt(config.d)},
             {"p_max", config.p_max},
             {"q_max", config.q_max},
             {"criterion", to_string(config.criterion)},
             {"horizon", config.horizon},
             {"confidence", config.confidence},
             {"seed", config.seed},
             {"fit_scope", to_string(config.fit_scope)},
         }},
        {"series", {{"start_year", r.series.start_year()}, {"values", to_vector(r.series)}}},
        {"adf_before", to_json(r.adf_before)},
        {"adf_after", to_json(r.adf_after)},
        {"log_applied", r.log_applied},
        {"d", r.d},
        {"acf", to_json(r.acf)},
        {"pacf", to_json(r.pacf)},
        {"train_size", r.train_size},
        {"test_size", r.test_size},
        {"grid", std::move(grid)},
        {"chosen", to_json(r.chosen)},
        {"fit", to_json(r.fit)},
        {"roots", {{"ar", to_json(r.ar_roots)}, {"ma", to_json(r.ma_roots)}}},
        {"diagnostics",
         {
             {"mean", dg.mean},
             {"stddev", dg.stddev},
             {"ljung_box",
              {{"statistic", dg.ljung_box.statistic},
               {"lags", dg.ljung_box.lags},
               {"dof", dg.ljung_box.dof},
               {"p_value", dg.ljung_box.p_value}}},
             {"residuals", to_vector(dg.residuals)},
             {"histogram", {{"edges", dg.histogram.edges}, {"counts", dg.histogram.counts}}},
             {"qq", std::move(qq)},
             {"residual_acf", to_json(dg.residual_acf)},
         }},
        {"test", {{"years", r.test.years}, {"actual", r.test.actual}, {"predicted", r.test.predicted}}},
        {"fit_scope", to_string(r.fit_scope)},
        {"full_fit", r.full_fit ? to_json(*r.full_fit) : ordered_json(nullptr)},
        {"forecast", to_json(r.forecast)},
        {"accuracy_percent", r.accuracy_percent},
        {"growth_percent", r.growth_percent},
    };
    return doc.dump(2);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const RunReport& r, const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + config.out_dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    const auto& formats = config.formats;

    if (formats.contains(OutputFormat::Json)) {
        auto path = config.out_dir / "report.json";
        write_file(path, report_json(r, config) + "\n");
        written.push_back(std::move(path));
    }
    if (formats.contains(OutputFormat::Csv)) {
        std::string text = "year,forecast,lower,upper\n";
        const auto& f = r.forecast;
        for (std::size_t i = 0; i < f.point.size(); ++i) {
            text += fmt::format("{},{},{},{}\n", f.horizon_years[i], f.point[i], f.lower[i], f.upper[i]);
        }
        auto path = config.out_dir / "forecast.csv";
        write_file(path, text);
        written.push_back(std::move(path));

        text = "p,d,q,aic,converged\n";
        for (const auto& e : r.grid) {
            const std::string aic = e.fit ? fmt::format("{}", e.fit->criteria.aic) : "";
            text += fmt::format("{},{},{},{},{}\n", e.spec.p, e.spec.d, e.spec.q, aic, e.converged);
        }
        path = config.out_dir / "grid.csv";
        write_file(path, text);
        written.push_back(std::move(path));
    }
    if (formats.contains(OutputFormat::Svg)) {
        auto plots = render_plots(r, config.out_dir);
        written.insert(written.end(), plots.begin(), plots.end());
    }
    return written;
}

}  // namespace bj
