#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace webometer::analytics {

struct OverlapReport {
    std::size_t k = 0;             // min of the two normalized list sizes
    std::size_t intersection = 0;
    double jaccard = 0.0;          // 1.0 when both lists are empty
    std::size_t shared_prefix = 0;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
};

// Normalizes with normalize_url (dropping unparseable entries) and removes
// later duplicates before comparing.
std::vector<std::string> normalized_unique(std::span<const std::string> urls);

OverlapReport overlap(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace webometer::analytics
