#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "webometer/backend/searcher.hpp"
#include "webometer/query.hpp"

namespace webometer::analytics {

enum class FormatMode { FacetQuery, UrlExtension };

std::string_view to_string(FormatMode m);
// "facet-query" / "url-extension" (also "facet" / "url"); QueryError otherwise.
FormatMode parse_format_mode(std::string_view label);

struct FormatShare {
    std::uint64_t count = 0;
    double fraction = 0.0;

    bool operator==(const FormatShare&) const = default;
};

struct FormatDistribution {
    std::map<std::string, FormatShare> shares;
    FormatMode mode = FormatMode::FacetQuery;
    std::uint64_t total = 0;
    bool truncated = false;  // url-extension listing was cut short

    bool empty() const noexcept { return total == 0; }
};

// Fractions over the sum of counts; all zero when the sum is zero.
FormatDistribution shares_from_counts(const std::map<std::string, std::uint64_t>& counts,
                                      FormatMode mode);

// Buckets URLs by url_extension(). Listed extensions appear even at zero.
FormatDistribution classify_urls(std::span<const std::string> urls,
                                 std::span<const std::string> extensions);

// Facet mode issues one hit_count per extension with a filetype filter;
// url-extension mode classifies fetch_top(k).
FormatDistribution format_distribution(backend::Searcher& searcher, const Query& query,
                                       std::span<const std::string> extensions, FormatMode mode,
                                       std::size_t k);

// {"mode", "total", "shares": {ext: {"count","fraction"}}}
nlohmann::json format_json(const FormatDistribution& dist);

}  // namespace webometer::analytics
