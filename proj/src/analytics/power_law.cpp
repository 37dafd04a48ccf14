#include "webometer/analytics/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "webometer/errors.hpp"

namespace webometer::analytics {

namespace {

constexpr double kMinCount = 1.0;

// Coefficient of determination of `predicted` against `observed`, clamped
// to [0, 1]. A constant observation perfectly reproduced scores 1.
double r_squared(std::span<const double> observed, std::span<const double> predicted) {
    double mean = 0.0;
    for (double y : observed) {
        mean += y;
    }
    mean /= static_cast<double>(observed.size());
    double ss_tot = 0.0;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
        ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    }
    if (ss_tot == 0.0) {
        return ss_res == 0.0 ? 1.0 : 0.0;
    }
    return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

}  // namespace

std::string_view to_string(FitMethod m) {
    return m == FitMethod::OlsLogLog ? "ols-loglog" : "mle-discrete";
}

FitMethod parse_fit_method(std::string_view label) {
    if (label == "ols-loglog" || label == "ols") {
        return FitMethod::OlsLogLog;
    }
    if (label == "mle-discrete" || label == "mle") {
        return FitMethod::MleDiscrete;
    }
    throw QueryError(fmt::format("unknown fit method '{}' (expected ols-loglog or mle-discrete)", label));
}

double PowerLawFit::c() const {
    return std::exp(log_c);
}

double PowerLawFit::predict(double rank) const {
    return std::exp(log_c - exponent_a * std::log(rank));
}

PowerLawFit fit_rank_frequency(std::span<const double> freqs, FitMethod method) {
    if (freqs.size() < 3) {
        throw InsufficientData(fmt::format("power-law fit needs at least 3 ranks, got {}", freqs.size()));
    }
    for (double f : freqs) {
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw std::logic_error("rank-frequency data contains a non-positive count");
        }
    }
    const std::size_t n = freqs.size();
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(static_cast<double>(i + 1));
        y[i] = std::log(freqs[i]);
    }

    PowerLawFit fit;
    fit.method = method;
    fit.n_points = n;
    if (method == FitMethod::OlsLogLog) {
        double mx = 0.0;
        double my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        const double slope = sxy / sxx;
        fit.exponent_a = -slope;
        fit.log_c = my - slope * mx;
    } else {
        // Discrete MLE for the count distribution tail above kMinCount, with
        // the usual half-unit continuity shift.
        double log_sum = 0.0;
        std::size_t tail = 0;
        for (double f : freqs) {
            if (f >= kMinCount) {
                log_sum += std::log(f / (kMinCount - 0.5));
                ++tail;
            }
        }
        if (tail < 3) {
            throw InsufficientData("mle-discrete needs at least 3 counts >= 1");
        }
        const double alpha = 1.0 + static_cast<double>(tail) / log_sum;
        fit.count_exponent = alpha;
        fit.exponent_a = 1.0 / (alpha - 1.0);
        fit.log_c = y[0];
    }
    std::vector<double> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
        predicted[i] = fit.log_c - fit.exponent_a * x[i];
    }
    fit.r_squared = r_squared(y, predicted);
    return fit;
}

PowerLawFit fit_power_law(const TldDistribution& dist, FitMethod method) {
    std::vector<double> freqs;
    freqs.reserve(dist.ranked.size());
    for (const auto& e : dist.ranked) {
        if (e.count == 0) {
            throw std::logic_error("ranked distribution contains a zero count");
        }
        freqs.push_back(static_cast<double>(e.count));
    }
    return fit_rank_frequency(freqs, method);
}

nlohmann::json fit_json(const PowerLawFit& fit) {
    nlohmann::json j = {{"a", fit.exponent_a},
                        {"C", fit.c()},
                        {"r2", fit.r_squared},
                        {"method", std::string(to_string(fit.method))},
                        {"n", fit.n_points}};
    if (fit.count_exponent) {
        j["alpha"] = *fit.count_exponent;
    }
    return j;
}

nlohmann::json distribution_json(const TldDistribution& dist, const std::optional<PowerLawFit>& fit) {
    nlohmann::json ranked = nlohmann::json::array();
    for (const auto& e : dist.ranked) {
        ranked.push_back({{"rank", e.rank}, {"tld", e.label}, {"count", e.count}});
    }
    return {{"ranked", ranked},
            {"total", dist.total_urls},
            {"skipped", dist.skipped},
            {"fit", fit ? fit_json(*fit) : nlohmann::json(nullptr)}};
}

}  // namespace webometer::analytics
