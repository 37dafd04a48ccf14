#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "webometer/analytics/tld.hpp"

namespace webometer::analytics {

enum class FitMethod { OlsLogLog, MleDiscrete };

std::string_view to_string(FitMethod m);
// Accepts "ols-loglog" and "mle-discrete"; throws QueryError otherwise.
FitMethod parse_fit_method(std::string_view label);

// Rank-frequency model freq(rank) = C * rank^-a.
struct PowerLawFit {
    double exponent_a = 0.0;
    double log_c = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
    FitMethod method = FitMethod::OlsLogLog;
    // Only for mle-discrete: the fitted exponent of the count distribution
    // P(count) ~ count^-alpha, from which exponent_a = 1 / (alpha - 1).
    std::optional<double> count_exponent;

    double c() const;
    double predict(double rank) const;
};

// `freqs` are frequencies in rank order (rank 1 first), all > 0.
// Throws InsufficientData for fewer than 3 points.
PowerLawFit fit_rank_frequency(std::span<const double> freqs, FitMethod method);

// Fit over dist.ranked. Throws InsufficientData below 3 ranks.
PowerLawFit fit_power_law(const TldDistribution& dist, FitMethod method);

// {"a", "C", "r2", "method", "n"} (+ "alpha" for mle-discrete).
nlohmann::json fit_json(const PowerLawFit& fit);

// {"ranked": [{"rank","tld","count"}], "total", "skipped", "fit": {...} | null}
nlohmann::json distribution_json(const TldDistribution& dist, const std::optional<PowerLawFit>& fit);

}  // namespace webometer::analytics
