#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace webometer::analytics {

struct RankedEntry {
    std::size_t rank = 0;  // 1-based
    std::string label;
    std::uint64_t count = 0;

    bool operator==(const RankedEntry&) const = default;
};

// Sorts label counts by count descending, ties by label ascending.
std::vector<RankedEntry> rank_counts(const std::map<std::string, std::uint64_t>& counts);

struct TldDistribution {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_urls = 0;  // parsed URLs only
    std::uint64_t skipped = 0;     // unparseable URLs
    std::vector<RankedEntry> ranked;

    bool operator==(const TldDistribution&) const = default;
};

// Never throws: URLs that fail to parse are counted in `skipped`.
TldDistribution tld_distribution(std::span<const std::string> urls);

}  // namespace webometer::analytics
