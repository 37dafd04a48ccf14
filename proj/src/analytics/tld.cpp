#include "webometer/analytics/tld.hpp"

#include <algorithm>

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"

namespace webometer::analytics {

std::vector<RankedEntry> rank_counts(const std::map<std::string, std::uint64_t>& counts) {
    std::vector<RankedEntry> ranked;
    ranked.reserve(counts.size());
    for (const auto& [label, count] : counts) {
        ranked.push_back({0, label, count});
    }
    // std::map iteration is already label-ascending, so a stable sort on
    // count alone gives the lexicographic tiebreak.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedEntry& a, const RankedEntry& b) { return a.count > b.count; });
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        ranked[i].rank = i + 1;
    }
    return ranked;
}

TldDistribution tld_distribution(std::span<const std::string> urls) {
    TldDistribution dist;
    for (const auto& url : urls) {
        try {
            ++dist.counts[extract_tld(url)];
            ++dist.total_urls;
        } catch (const ParseError&) {
            ++dist.skipped;
        }
    }
    dist.ranked = rank_counts(dist.counts);
    return dist;
}

}  // namespace webometer::analytics
