#include "webometer/analytics/overlap.hpp"

#include <algorithm>
#include <unordered_set>

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"

namespace webometer::analytics {

std::vector<std::string> normalized_unique(std::span<const std::string> urls) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& u : urls) {
        std::string norm;
        try {
            norm = normalize_url(u);
        } catch (const ParseError&) {
            continue;
        }
        if (seen.insert(norm).second) {
            out.push_back(std::move(norm));
        }
    }
    return out;
}

OverlapReport overlap(std::span<const std::string> a, std::span<const std::string> b) {
    auto na = normalized_unique(a);
    auto nb = normalized_unique(b);
    OverlapReport rep;
    rep.size_a = na.size();
    rep.size_b = nb.size();
    rep.k = std::min(na.size(), nb.size());

    std::unordered_set<std::string> set_a(na.begin(), na.end());
    for (const auto& u : nb) {
        rep.intersection += set_a.count(u);
    }
    const std::size_t uni = na.size() + nb.size() - rep.intersection;
    rep.jaccard = uni == 0 ? 1.0 : static_cast<double>(rep.intersection) / static_cast<double>(uni);

    while (rep.shared_prefix < rep.k && na[rep.shared_prefix] == nb[rep.shared_prefix]) {
        ++rep.shared_prefix;
    }
    return rep;
}

}  // namespace webometer::analytics
