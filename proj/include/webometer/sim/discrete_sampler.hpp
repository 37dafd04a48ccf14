#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace webometer::sim {

// Inverse-CDF sampler over a finite weight vector.
class DiscreteSampler {
public:
    explicit DiscreteSampler(std::span<const double> weights);

    // Weights proportional to rank^-exponent for ranks 1..n.
    static DiscreteSampler zipf(std::size_t n, double exponent);

    // Index of the first cumulative weight strictly above u * total.
    std::size_t sample(double u) const;
    std::size_t operator()(std::mt19937_64& rng) const;

    double probability(std::size_t index) const;
    std::size_t size() const noexcept { return cumulative_.size(); }

private:
    std::vector<double> cumulative_;
};

}  // namespace webometer::sim
