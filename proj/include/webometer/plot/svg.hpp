#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace webometer::plot {

struct LineSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (x, y); gaps are simply absent x values
};

struct ChartLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

// Every chart is a standalone SVG document. Each plotted series is exactly
// one <path> (data) or <polyline> (fitted line) element.

// Line chart; x values are typically day offsets. `x_tick_labels` maps the
// chart's min/max x to text (e.g. ISO dates) when given.
std::string line_chart(const std::vector<LineSeries>& series, const ChartLabels& labels,
                       std::optional<std::pair<std::string, std::string>> x_tick_labels = std::nullopt);

struct PowerLawLine {
    double c = 0.0;
    double a = 0.0;
};

// Scatter on log10/log10 axes with an optional fitted C*x^-a drawn across
// the x range.
std::string loglog_scatter(const LineSeries& points, const std::optional<PowerLawLine>& fit,
                           const ChartLabels& labels);

std::string bar_chart(const std::vector<std::pair<std::string, double>>& bars, const ChartLabels& labels);

std::string xml_escape(const std::string& s);

}  // namespace webometer::plot
