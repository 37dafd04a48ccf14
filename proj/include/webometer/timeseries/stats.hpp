#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "webometer/timeseries/store.hpp"

namespace webometer::timeseries {

// Pearson product-moment correlation. Throws InsufficientData for fewer
// than two points, RangeError for unequal lengths and UndefinedCorrelation
// when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct LagReport {
    std::size_t max_lag = 0;
    std::vector<std::pair<std::size_t, double>> correlations;  // (lag, r), lag = 0..max_lag
    std::size_t best_lag = 0;
    double best_r = 0.0;
    std::optional<double> mean_ratio;  // mean of y/x at lag 0 over x > 0
};

// Correlates x_t with y_{t+k}: a positive lag means y trails x. The best lag
// is the smallest k with maximal r. Throws InsufficientData naming the first
// lag whose aligned overlap has fewer than 3 points, or when max_lag is not
// below the lag-0 overlap.
LagReport lag_correlate(const Series& x, const Series& y, std::size_t max_lag);

struct RatioSummary {
    double mean_ratio = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t aligned_days = 0;
};

// Statistics of y_t / x_t over days present in both with x_t > 0.
// Throws InsufficientData when there is no such day.
RatioSummary ratio_summary(const Series& x, const Series& y);

nlohmann::json lag_json(const LagReport& rep);
nlohmann::json series_json(const Series& s);

}  // namespace webometer::timeseries
