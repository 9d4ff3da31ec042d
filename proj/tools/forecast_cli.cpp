// forecast run: fit an ARIMA model to a yearly expenditure CSV and write the report.
#include "bj/error.hpp"
#include "bj/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <map>

namespace {

constexpr int kDataError = 2;
constexpr int kModelError = 3;

void print_summary(const bj::RunReport& r) {
    fmt::print("series      {}-{} ({} points)\n", r.series.start_year(), r.series.end_year(), r.series.size());
    fmt::print("ADF raw     stat {:.4f}  p {:.4f}\n", r.adf_before.statistic, r.adf_before.p_value);
    fmt::print("ADF model   stat {:.4f}  p {:.6f}  (log {}, d {})\n", r.adf_after.statistic, r.adf_after.p_value,
               r.log_applied ? "yes" : "no", r.d);
    fmt::print("split       train {}  test {}\n", r.train_size, r.test_size);
    fmt::print("chosen      {}  AIC {:.3f}  loglik {:.3f}\n", r.chosen.label(), r.fit.criteria.aic,
               r.fit.loglik);
    for (const auto& row : r.fit.inference) {
        fmt::print("  {:<8} {:>9.4f}  se {}\n", row.name, row.coef,
                   row.std_err ? fmt::format("{:.4f}", *row.std_err) : std::string("n/a"));
    }
    fmt::print("Ljung-Box   Q {:.3f}  p {:.4f}\n", r.diagnostics.ljung_box.statistic,
               r.diagnostics.ljung_box.p_value);
    fmt::print("accuracy    {:.2f}%  (fit scope {})\n", r.accuracy_percent, bj::to_string(r.fit_scope));
    for (std::size_t i = 0; i < r.forecast.point.size(); ++i) {
        fmt::print("  {}  {:>8.2f}  [{:.2f}, {:.2f}]\n", r.forecast.horizon_years[i], r.forecast.point[i],
                   r.forecast.lower[i], r.forecast.upper[i]);
    }
    fmt::print("growth      {:.2f}% over the last observation\n", r.growth_percent);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Box-Jenkins ARIMA forecasting of yearly expenditure series"};
    app.require_subcommand(1);
    auto* run = app.add_subcommand("run", "Run the full pipeline and write the report");

    bj::RunConfig config;
    std::string d_text = "auto";
    std::string criterion = "aic";
    std::string formats = "json,csv,svg";
    std::string scope = "train";
    bool no_log = false;

    run->add_option("--data", config.data_path, "CSV with header year,value")->required();
    run->add_option("--train-frac", config.train_fraction, "Training fraction")->capture_default_str();
    run->add_flag("--no-log", no_log, "Model the raw series instead of its log");
    run->add_option("--d", d_text, "Differencing order")
        ->check(CLI::IsMember({"auto", "0", "1", "2"}))
        ->capture_default_str();
    run->add_option("--max-p", config.p_max, "Largest AR order in the grid")->capture_default_str();
    run->add_option("--max-q", config.q_max, "Largest MA order in the grid")->capture_default_str();
    run->add_option("--criterion", criterion, "Selection criterion")
        ->check(CLI::IsMember({"aic", "bic", "hqic"}, CLI::ignore_case))
        ->capture_default_str();
    run->add_option("--horizon", config.horizon, "Forecast years")->capture_default_str();
    run->add_option("--confidence", config.confidence, "Interval coverage")->capture_default_str();
    run->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    run->add_option("--format", formats, "Comma-separated subset of json,csv,svg")->capture_default_str();
    run->add_option("--seed", config.seed, "Optimizer seed")->capture_default_str();
    run->add_option("--fit-scope", scope, "Forecast from the training fit or a full-series refit")
        ->check(CLI::IsMember({"train", "full"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kDataError;
    }

    config.apply_log = !no_log;
    if (d_text != "auto") {
        config.d = std::stoi(d_text);
    }
    const std::map<std::string, bj::Criterion> criteria{
        {"aic", bj::Criterion::AIC}, {"bic", bj::Criterion::BIC}, {"hqic", bj::Criterion::HQIC}};
    config.criterion = criteria.at(CLI::detail::to_lower(criterion));
    config.fit_scope = scope == "full" ? bj::FitScope::Full : bj::FitScope::Train;

    const std::map<std::string, bj::OutputFormat> known{
        {"json", bj::OutputFormat::Json}, {"csv", bj::OutputFormat::Csv}, {"svg", bj::OutputFormat::Svg}};
    config.formats.clear();
    for (const auto& item : CLI::detail::split(formats, ',')) {
        const auto name = CLI::detail::to_lower(CLI::detail::trim_copy(item));
        const auto it = known.find(name);
        if (it == known.end()) {
            std::cerr << "unknown format '" << name << "'\n";
            return kDataError;
        }
        config.formats.insert(it->second);
    }

    try {
        const auto report = bj::run_pipeline(config);
        print_summary(report);
        for (const auto& path : bj::emit_report(report, config)) {
            fmt::print("wrote {}\n", path.string());
        }
    } catch (const bj::StageError& e) {
        std::cerr << "error in stage " << e.stage() << ": " << e.what() << "\n";
        return bj::is_data_error(e.code()) ? kDataError : kModelError;
    } catch (const bj::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bj::is_data_error(e.code()) ? kDataError : kModelError;
    }
    return 0;
}
