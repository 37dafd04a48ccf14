#include "webometer/timeseries/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "webometer/errors.hpp"

namespace webometer::timeseries {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw RangeError(fmt::format("pearson needs equal lengths, got {} and {}", x.size(), y.size()));
    }
    if (x.size() < 2) {
        throw InsufficientData("pearson needs at least two points");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedCorrelation("correlation is undefined for a constant series");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::map<Date, double> by_day(const Series& s) {
    std::map<Date, double> out;
    for (const auto& [day, hits] : s.points) {
        out.emplace(day, static_cast<double>(hits));
    }
    return out;
}

}  // namespace

LagReport lag_correlate(const Series& x, const Series& y, std::size_t max_lag) {
    const auto ymap = by_day(y);
    auto aligned = [&](std::size_t lag, std::vector<double>& xs, std::vector<double>& ys) {
        xs.clear();
        ys.clear();
        for (const auto& [day, hits] : x.points) {
            auto it = ymap.find(day.plus_days(static_cast<long>(lag)));
            if (it != ymap.end()) {
                xs.push_back(static_cast<double>(hits));
                ys.push_back(it->second);
            }
        }
    };

    std::vector<double> xs;
    std::vector<double> ys;
    aligned(0, xs, ys);
    if (max_lag >= xs.size()) {
        throw InsufficientData(fmt::format("max_lag {} must be below the overlap length {}", max_lag, xs.size()));
    }

    LagReport rep;
    rep.max_lag = max_lag;
    rep.best_r = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= max_lag; ++k) {
        aligned(k, xs, ys);
        if (xs.size() < 3) {
            throw InsufficientData(fmt::format("lag {}: only {} aligned points (need 3)", k, xs.size()));
        }
        const double r = pearson(xs, ys);
        rep.correlations.emplace_back(k, r);
        if (r > rep.best_r) {
            rep.best_r = r;
            rep.best_lag = k;
        }
    }
    try {
        rep.mean_ratio = ratio_summary(x, y).mean_ratio;
    } catch (const InsufficientData&) {
        rep.mean_ratio.reset();
    }
    return rep;
}

RatioSummary ratio_summary(const Series& x, const Series& y) {
    const auto ymap = by_day(y);
    RatioSummary rs;
    rs.min = std::numeric_limits<double>::infinity();
    rs.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& [day, hits] : x.points) {
        auto it = ymap.find(day);
        if (it == ymap.end() || hits == 0) {
            continue;
        }
        const double r = it->second / static_cast<double>(hits);
        sum += r;
        rs.min = std::min(rs.min, r);
        rs.max = std::max(rs.max, r);
        ++rs.aligned_days;
    }
    if (rs.aligned_days == 0) {
        throw InsufficientData("no aligned day with a positive reference count");
    }
    rs.mean_ratio = sum / static_cast<double>(rs.aligned_days);
    return rs;
}

nlohmann::json lag_json(const LagReport& rep) {
    nlohmann::json corr = nlohmann::json::array();
    for (const auto& [lag, r] : rep.correlations) {
        corr.push_back({{"lag", lag}, {"r", r}});
    }
    return {{"max_lag", rep.max_lag},
            {"correlations", corr},
            {"best_lag", rep.best_lag},
            {"best_r", rep.best_r},
            {"mean_ratio", rep.mean_ratio ? nlohmann::json(*rep.mean_ratio) : nlohmann::json(nullptr)}};
}

nlohmann::json series_json(const Series& s) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [day, hits] : s.points) {
        pts.push_back({{"day", day.iso()}, {"hits", hits}});
    }
    return {{"query", s.query_id}, {"interface", s.interface}, {"points", pts}};
}

}  // namespace webometer::timeseries
