#include "webometer/sim/discrete_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "webometer/errors.hpp"
#include "webometer/hash.hpp"

namespace webometer::sim {

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
    if (weights.empty()) {
        throw ConfigError("weights", "sampler needs at least one weight");
    }
    cumulative_.reserve(weights.size());
    double running = 0.0;
    for (double w : weights) {
        running += w;
        cumulative_.push_back(running);
    }
    if (!(running > 0.0)) {
        throw ConfigError("weights", "sampler weights must have a positive sum");
    }
}

DiscreteSampler DiscreteSampler::zipf(std::size_t n, double exponent) {
    std::vector<double> w(n);
    for (std::size_t r = 0; r < n; ++r) {
        w[r] = std::pow(static_cast<double>(r + 1), -exponent);
    }
    return DiscreteSampler(w);
}

std::size_t DiscreteSampler::sample(double u) const {
    const double target = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::size_t DiscreteSampler::operator()(std::mt19937_64& rng) const {
    return sample(unit_interval(rng()));
}

double DiscreteSampler::probability(std::size_t index) const {
    double lo = index == 0 ? 0.0 : cumulative_[index - 1];
    return (cumulative_[index] - lo) / cumulative_.back();
}

}  // namespace webometer::sim
