#include "bj/error.hpp"
#include "bj/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace bj {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 500;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    template <typename C>
    void add_all(const C& values) {
        for (double v : values) {
            add(v);
        }
    }
    /// Pads by 5% and guards against empty or zero-width ranges.
    [[nodiscard]] Range padded() const {
        if (!(lo <= hi)) {
            return {0.0, 1.0};
        }
        const double pad = hi > lo ? 0.05 * (hi - lo) : std::max(1.0, std::abs(lo)) * 0.5;
        return {lo - pad, hi + pad};
    }
};

/// Step between 3 and 8 ticks rounded to 1, 2 or 5 times a power of ten.
double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string tick_label(double v, double step) {
    if (std::abs(v) < step * 1e-9) {
        v = 0.0;
    }
    const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
    return fmt::format("{:.{}f}", v, decimals);
}

/// Plot area mapping data coordinates to canvas pixels.
class Panel {
public:
    Panel(double left, double top, double width, double height, Range x, Range y)
        : left_(left), top_(top), width_(width), height_(height), x_(x), y_(y) {}

    [[nodiscard]] double px(double x) const { return left_ + (x - x_.lo) / (x_.hi - x_.lo) * width_; }
    [[nodiscard]] double py(double y) const { return top_ + (y_.hi - y) / (y_.hi - y_.lo) * height_; }

    [[nodiscard]] std::string frame(std::string_view title, std::string_view xlabel,
                                    std::string_view ylabel) const {
        std::string out = fmt::format(
            R"(<rect class="frame" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#444"/>)"
            "\n",
            num(left_), num(top_), num(width_), num(height_));
        out += axis_ticks();
        out += fmt::format(R"(<text class="title" x="{}" y="{}" text-anchor="middle" font-size="14">{}</text>)"
                           "\n",
                           num(left_ + width_ / 2), num(top_ - 8), title);
        if (!xlabel.empty()) {
            out += fmt::format(R"(<text x="{}" y="{}" text-anchor="middle" font-size="11">{}</text>)"
                               "\n",
                               num(left_ + width_ / 2), num(top_ + height_ + 32), xlabel);
        }
        if (!ylabel.empty()) {
            out += fmt::format(
                R"svg(<text x="{0}" y="{1}" text-anchor="middle" font-size="11" transform="rotate(-90 {0} {1})">{2}</text>)svg"
                "\n",
                num(left_ - 42), num(top_ + height_ / 2), ylabel);
        }
        return out;
    }

    [[nodiscard]] std::string polyline(std::span<const double> xs, std::span<const double> ys,
                                       std::string_view cls, std::string_view color,
                                       std::string_view extra = "") const {
        std::string pts;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!pts.empty()) {
                pts += ' ';
            }
            pts += num(px(xs[i])) + "," + num(py(ys[i]));
        }
        return fmt::format(R"(<polyline class="{}" points="{}" fill="none" stroke="{}" stroke-width="1.5"{}/>)"
                           "\n",
                           cls, pts, color, extra);
    }

    [[nodiscard]] std::string hline(double y, std::string_view cls, std::string_view style) const {
        return fmt::format(R"(<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}" {}/>)"
                           "\n",
                           cls, num(left_), num(py(y)), num(left_ + width_), num(py(y)), style);
    }

    [[nodiscard]] double bottom() const { return top_ + height_; }

private:
    [[nodiscard]] std::string axis_ticks() const {
        std::string out;
        const double xs = nice_step(x_.hi - x_.lo);
        for (double t = std::ceil(x_.lo / xs) * xs; t <= x_.hi; t += xs) {
            out += fmt::format(R"(<text x="{}" y="{}" text-anchor="middle" font-size="10">{}</text>)"
                               "\n",
                               num(px(t)), num(bottom() + 14), tick_label(t, xs));
        }
        const double ys = nice_step(y_.hi - y_.lo);
        for (double t = std::ceil(y_.lo / ys) * ys; t <= y_.hi; t += ys) {
            out += fmt::format(R"(<text x="{}" y="{}" text-anchor="end" font-size="10">{}</text>)"
                               "\n",
                               num(left_ - 4), num(py(t) + 3), tick_label(t, ys));
        }
        return out;
    }

    double left_, top_, width_, height_;
    Range x_, y_;
};

std::string document(std::string_view body) {
    return fmt::format(
        R"(<?xml version="1.0" encoding="UTF-8"?>)"
        "\n"
        R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">)"
        "\n"
        R"(<rect width="{0}" height="{1}" fill="white"/>)"
        "\n{2}</svg>\n",
        kWidth, kHeight, body);
}

std::vector<double> years_of(const TimeSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = s.start_year() + static_cast<double>(i);
    }
    return out;
}

std::vector<double> as_double(std::span<const int> v) { return {v.begin(), v.end()}; }

std::string trend_chart(const RunReport& r) {
    const auto xs = years_of(r.series);
    Range xr, yr;
    xr.add_all(xs);
    yr.add_all(r.series.values());
    const Panel panel(70, 40, 700, 400, xr.padded(), yr.padded());
    auto body = panel.frame("Military expenditure", "Year", "US$ billions");
    body += panel.polyline(xs, r.series.values(), "series", "#1f77b4");
    return document(body);
}

/// Stems with the +/- band drawn as dashed lines. One <line class="stem ..."> per lag.
std::string stems(const Panel& panel, std::span<const CorrelogramPoint> points, std::string_view kind) {
    std::string out = panel.hline(0.0, "zero", R"(stroke="#444")");
    if (!points.empty()) {
        const double band = points.front().band_halfwidth;
        out += panel.hline(band, "band", R"(stroke="#d62728" stroke-dasharray="4 3")");
        out += panel.hline(-band, "band", R"(stroke="#d62728" stroke-dasharray="4 3")");
    }
    for (const auto& p : points) {
        out += fmt::format(
            R"(<line class="stem {0}" data-lag="{1}" x1="{2}" y1="{3}" x2="{2}" y2="{4}" stroke="#1f77b4" stroke-width="2"/>)"
            "\n",
            kind, p.lag, num(panel.px(p.lag)), num(panel.py(0.0)), num(panel.py(p.value)));
    }
    return out;
}

Range lag_range(std::span<const CorrelogramPoint> points) {
    Range r;
    r.add(-0.5);
    r.add(points.empty() ? 0.5 : points.back().lag + 0.5);
    return r;
}

Range correlation_range(std::span<const CorrelogramPoint> points) {
    Range r;
    r.add(1.0);
    for (const auto& p : points) {
        r.add(p.value);
        r.add(-p.band_halfwidth);
    }
    return r.padded();
}

std::string correlogram_chart(const RunReport& r) {
    const Panel top(70, 35, 700, 175, lag_range(r.acf), correlation_range(r.acf));
    const Panel bottom(70, 280, 700, 175, lag_range(r.pacf), correlation_range(r.pacf));
    auto body = std::string(R"(<g id="acf">)") + "\n";
    body += top.frame("ACF of transformed series", "", "ACF");
    body += stems(top, r.acf, "acf");
    body += "</g>\n<g id=\"pacf\">\n";
    body += bottom.frame("PACF of transformed series", "Lag", "PACF");
    body += stems(bottom, r.pacf, "pacf");
    body += "</g>\n";
    return document(body);
}

std::string predicted_chart(const RunReport& r) {
    const auto xs = years_of(r.series);
    const auto test_years = as_double(r.test.years);
    Range xr, yr;
    xr.add_all(xs);
    yr.add_all(r.series.values());
    yr.add_all(r.test.predicted);
    const Panel panel(70, 40, 700, 400, xr.padded(), yr.padded());
    auto body = panel.frame(fmt::format("Predicted vs actual, {}", r.chosen.label()), "Year",
                            "US$ billions");
    body += panel.polyline(xs, r.series.values(), "actual", "#1f77b4");
    body += panel.polyline(test_years, r.test.predicted, "predicted", "#ff7f0e", R"( stroke-dasharray="6 3")");
    return document(body);
}

std::string residuals_chart(const RunReport& r) {
    const auto& dg = r.diagnostics;
    const auto res = dg.residuals.values();
    std::string body;

    {
        const auto xs = years_of(dg.residuals);
        Range xr, yr;
        xr.add_all(xs);
        yr.add_all(res);
        const Panel p(60, 30, 310, 170, xr.padded(), yr.padded());
        body += "<g id=\"trace\">\n" + p.frame("Residuals", "", "");
        body += p.hline(0.0, "zero", R"(stroke="#888")");
        body += p.polyline(xs, res, "residual", "#1f77b4") + "</g>\n";
    }
    {
        const auto& h = dg.histogram;
        Range xr, yr;
        xr.add_all(h.edges);
        yr.add(0.0);
        yr.add_all(as_double(h.counts));
        yr.hi = std::max(yr.hi, 1.0);
        const Panel p(460, 30, 310, 170, xr.padded(), yr.padded());
        body += "<g id=\"histogram\">\n" + p.frame("Histogram", "", "");
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            const double x0 = p.px(h.edges[i]);
            const double x1 = p.px(h.edges[i + 1]);
            const double y = p.py(h.counts[i]);
            body += fmt::format(
                R"(<rect class="bin" x="{}" y="{}" width="{}" height="{}" fill="#9ecae1" stroke="#3182bd"/>)"
                "\n",
                num(x0), num(y), num(x1 - x0), num(p.py(0.0) - y));
        }
        body += "</g>\n";
    }
    {
        Range xr, yr;
        for (const auto& q : dg.qq_points) {
            xr.add(q.theoretical);
            yr.add(q.empirical);
        }
        xr.add(yr.lo);
        xr.add(yr.hi);
        yr.add(xr.lo);
        yr.add(xr.hi);
        const Panel p(60, 280, 310, 170, xr.padded(), yr.padded());
        body += "<g id=\"qq\">\n" + p.frame("Normal Q-Q", "Theoretical", "");
        body += fmt::format(R"(<line class="reference" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d62728"/>)"
                            "\n",
                            num(p.px(xr.lo)), num(p.py(xr.lo)), num(p.px(xr.hi)), num(p.py(xr.hi)));
        for (const auto& q : dg.qq_points) {
            body += fmt::format(R"(<circle class="qq" cx="{}" cy="{}" r="2.5" fill="#1f77b4"/>)"
                                "\n",
                                num(p.px(q.theoretical)), num(p.py(q.empirical)));
        }
        body += "</g>\n";
    }
    {
        const Panel p(460, 280, 310, 170, lag_range(dg.residual_acf), correlation_range(dg.residual_acf));
        body += "<g id=\"residual-acf\">\n" + p.frame("Residual ACF", "Lag", "");
        body += stems(p, dg.residual_acf, "residual-acf") + "</g>\n";
    }
    return document(body);
}

std::string fan_chart(const RunReport& r) {
    const auto& f = r.forecast;
    const auto xs = years_of(r.series);
    const auto fx = as_double(f.horizon_years);
    Range xr, yr;
    xr.add_all(xs);
    xr.add_all(fx);
    yr.add_all(r.series.values());
    yr.add_all(f.lower);
    yr.add_all(f.upper);
    const Panel panel(70, 40, 700, 400, xr.padded(), yr.padded());
    auto body = panel.frame(fmt::format("Forecast with {:g}% interval", 100.0 * f.confidence), "Year",
                            "US$ billions");

    // Band anchored at the last observation: anchor, upper path, reversed lower path, anchor.
    const double ax = xs.back();
    const double ay = r.series.back();
    std::string pts = num(panel.px(ax)) + "," + num(panel.py(ay));
    for (std::size_t i = 0; i < fx.size(); ++i) {
        pts += " " + num(panel.px(fx[i])) + "," + num(panel.py(f.upper[i]));
    }
    for (std::size_t i = fx.size(); i-- > 0;) {
        pts += " " + num(panel.px(fx[i])) + "," + num(panel.py(f.lower[i]));
    }
    pts += " " + num(panel.px(ax)) + "," + num(panel.py(ay));
    body += fmt::format(R"(<polygon class="interval" points="{}" fill="#ff7f0e" fill-opacity="0.25" stroke="none"/>)"
                        "\n",
                        pts);

    body += panel.polyline(xs, r.series.values(), "history", "#1f77b4");
    std::vector<double> px{ax}, py{ay};
    px.insert(px.end(), fx.begin(), fx.end());
    py.insert(py.end(), f.point.begin(), f.point.end());
    body += panel.polyline(px, py, "forecast", "#ff7f0e");
    return document(body);
}

}  // namespace

std::vector<std::filesystem::path> render_plots(const RunReport& report, const std::filesystem::path& out_dir) {
    const std::pair<const char*, std::string> charts[] = {
        {"trend.svg", trend_chart(report)},
        {"correlogram.svg", correlogram_chart(report)},
        {"predicted_vs_actual.svg", predicted_chart(report)},
        {"residuals.svg", residuals_chart(report)},
        {"forecast_fan.svg", fan_chart(report)},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [name, text] : charts) {
        auto path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write " + path.string());
        }
        written.push_back(std::move(path));
    }
    return written;
}

}  // namespace bj
