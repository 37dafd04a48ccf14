#include "webometer/plot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace webometer::plot {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 50;
constexpr double kBottom = 60;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) {
            lo = 0;
            hi = 1;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

double sx(const Range& r, double x) {
    return kLeft + r.frac(x) * kPlotW;
}

double sy(const Range& r, double y) {
    return kTop + (1.0 - r.frac(y)) * kPlotH;
}

std::string header(const ChartLabels& labels) {
    std::string out = fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        kWidth, kHeight);
    out += fmt::format("<text x=\"{}\" y=\"28\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + kPlotW / 2, xml_escape(labels.title));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + kPlotW / 2,
                       kHeight - 15, xml_escape(labels.x_label));
    out += fmt::format(
        "<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">{1}</text>\n",
        kTop + kPlotH / 2, xml_escape(labels.y_label));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n",
                       kLeft, kTop, kPlotW, kPlotH);
    return out;
}

std::string y_ticks(const Range& r, bool log10_axis) {
    std::string out;
    for (int i = 0; i <= 4; ++i) {
        double v = r.lo + (r.hi - r.lo) * i / 4.0;
        double y = sy(r, v);
        std::string text = log10_axis ? fmt::format("{:.3g}", std::pow(10.0, v)) : fmt::format("{:.4g}", v);
        out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n", kLeft,
                           y, kLeft + kPlotW);
        out += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6, y + 4, text);
    }
    return out;
}

std::string legend_entry(std::size_t i, const std::string& name, const char* color) {
    double y = kTop + 15 + 20.0 * static_cast<double>(i);
    return fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n"
        "<text x=\"{4}\" y=\"{5}\">{6}</text>\n",
        kLeft + kPlotW + 12, y, kLeft + kPlotW + 36, color, kLeft + kPlotW + 42, y + 4, xml_escape(name));
}

}  // namespace

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string line_chart(const std::vector<LineSeries>& series, const ChartLabels& labels,
                       std::optional<std::pair<std::string, std::string>> x_tick_labels) {
    Range xr;
    Range yr;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            xr.add(x);
            yr.add(y);
        }
    }
    xr.pad();
    yr.add(0.0);
    yr.pad();

    std::string out = header(labels);
    out += y_ticks(yr, false);
    std::string lo_text = x_tick_labels ? x_tick_labels->first : fmt::format("{:g}", xr.lo);
    std::string hi_text = x_tick_labels ? x_tick_labels->second : fmt::format("{:g}", xr.hi);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"start\">{}</text>\n", kLeft, kTop + kPlotH + 18,
                       xml_escape(lo_text));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLeft + kPlotW,
                       kTop + kPlotH + 18, xml_escape(hi_text));

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        std::string d;
        double prev_x = -std::numeric_limits<double>::infinity();
        for (auto [x, y] : series[i].points) {
            // A skipped day starts a new subpath so gaps stay visible.
            const char* cmd = (d.empty() || x - prev_x > 1.0 + 1e-9) ? "M" : "L";
            d += fmt::format("{}{:.2f},{:.2f} ", cmd, sx(xr, x), sy(yr, y));
            prev_x = x;
        }
        if (!d.empty()) {
            d.pop_back();
        }
        out += fmt::format("<path class=\"series\" data-name=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" "
                           "stroke-width=\"2\"/>\n",
                           xml_escape(series[i].name), d, color);
        out += legend_entry(i, series[i].name, color);
    }
    out += "</svg>\n";
    return out;
}

std::string loglog_scatter(const LineSeries& points, const std::optional<PowerLawLine>& fit,
                           const ChartLabels& labels) {
    Range xr;
    Range yr;
    std::vector<std::pair<double, double>> logged;
    for (auto [x, y] : points.points) {
        if (x > 0 && y > 0) {
            logged.emplace_back(std::log10(x), std::log10(y));
            xr.add(logged.back().first);
            yr.add(logged.back().second);
        }
    }
    if (fit && !logged.empty()) {
        for (double lx : {xr.lo, xr.hi}) {
            yr.add(std::log10(fit->c) - fit->a * lx);
        }
    }
    xr.pad();
    yr.pad();

    std::string out = header(labels);
    out += y_ticks(yr, true);
    for (int i = 0; i <= 4; ++i) {
        double v = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", sx(xr, v),
                           kTop + kPlotH + 18, std::pow(10.0, v));
    }
    std::string d;
    for (auto [lx, ly] : logged) {
        double cx = sx(xr, lx);
        double cy = sy(yr, ly);
        d += fmt::format("M{:.2f},{:.2f} m-3,0 a3,3 0 1,0 6,0 a3,3 0 1,0 -6,0 ", cx, cy);
    }
    if (!d.empty()) {
        d.pop_back();
    }
    out += fmt::format("<path class=\"series\" data-name=\"{}\" d=\"{}\" fill=\"{}\" stroke=\"none\"/>\n",
                       xml_escape(points.name), d, kPalette[0]);
    out += legend_entry(0, points.name, kPalette[0]);
    if (fit && !logged.empty()) {
        std::string pts;
        const int steps = 16;
        for (int i = 0; i <= steps; ++i) {
            double lx = xr.lo + (xr.hi - xr.lo) * i / steps;
            double ly = std::log10(fit->c) - fit->a * lx;
            pts += fmt::format("{:.2f},{:.2f}{}", sx(xr, lx), sy(yr, ly), i == steps ? "" : " ");
        }
        auto name = fmt::format("fit a={:.3f}", fit->a);
        out += fmt::format("<polyline class=\"fit\" data-name=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
                           "stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n",
                           xml_escape(name), pts, kPalette[1]);
        out += legend_entry(1, name, kPalette[1]);
    }
    out += "</svg>\n";
    return out;
}

std::string bar_chart(const std::vector<std::pair<std::string, double>>& bars, const ChartLabels& labels) {
    Range yr;
    yr.add(0.0);
    for (const auto& [name, v] : bars) {
        yr.add(v);
    }
    yr.pad();
    std::string out = header(labels);
    out += y_ticks(yr, false);
    const double slot = bars.empty() ? kPlotW : kPlotW / static_cast<double>(bars.size());
    std::string d;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        double x0 = kLeft + slot * static_cast<double>(i) + slot * 0.15;
        double w = slot * 0.7;
        double y0 = sy(yr, bars[i].second);
        double base = sy(yr, 0.0);
        d += fmt::format("M{:.2f},{:.2f} h{:.2f} V{:.2f} h{:.2f} Z ", x0, base, w, y0, -w);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", x0 + w / 2,
                           kTop + kPlotH + 18, xml_escape(bars[i].first));
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"10\">{:.3g}</text>\n",
                           x0 + w / 2, y0 - 4, bars[i].second);
    }
    if (!d.empty()) {
        d.pop_back();
    }
    out += fmt::format("<path class=\"series\" data-name=\"{}\" d=\"{}\" fill=\"{}\" stroke=\"#333\"/>\n",
                       xml_escape(labels.y_label), d, kPalette[0]);
    out += "</svg>\n";
    return out;
}

}  // namespace webometer::plot
