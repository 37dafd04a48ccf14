#include "webometer/analytics/formats.hpp"

#include <fmt/format.h>

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"

namespace webometer::analytics {

std::string_view to_string(FormatMode m) {
    return m == FormatMode::FacetQuery ? "facet-query" : "url-extension";
}

FormatMode parse_format_mode(std::string_view label) {
    if (label == "facet-query" || label == "facet") {
        return FormatMode::FacetQuery;
    }
    if (label == "url-extension" || label == "url") {
        return FormatMode::UrlExtension;
    }
    throw QueryError(fmt::format("unknown format mode '{}' (expected facet-query or url-extension)", label));
}

FormatDistribution shares_from_counts(const std::map<std::string, std::uint64_t>& counts,
                                      FormatMode mode) {
    FormatDistribution dist;
    dist.mode = mode;
    for (const auto& [ext, c] : counts) {
        dist.total += c;
    }
    for (const auto& [ext, c] : counts) {
        double frac = dist.total == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(dist.total);
        dist.shares[ext] = {c, frac};
    }
    return dist;
}

FormatDistribution classify_urls(std::span<const std::string> urls,
                                 std::span<const std::string> extensions) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& ext : extensions) {
        counts[ext];
    }
    for (const auto& u : urls) {
        ++counts[url_extension(u)];
    }
    return shares_from_counts(counts, FormatMode::UrlExtension);
}

FormatDistribution format_distribution(backend::Searcher& searcher, const Query& query,
                                       std::span<const std::string> extensions, FormatMode mode,
                                       std::size_t k) {
    if (mode == FormatMode::FacetQuery) {
        if (extensions.empty()) {
            throw QueryError("facet-query mode needs at least one extension");
        }
        std::map<std::string, std::uint64_t> counts;
        for (const auto& ext : extensions) {
            counts[ext] = searcher.hit_count(query.with_filetype(ext));
        }
        return shares_from_counts(counts, mode);
    }
    auto top = searcher.fetch_top(query, k);
    auto dist = classify_urls(top.urls, extensions);
    dist.truncated = top.truncated;
    return dist;
}

nlohmann::json format_json(const FormatDistribution& dist) {
    nlohmann::json shares = nlohmann::json::object();
    for (const auto& [ext, s] : dist.shares) {
        shares[ext] = {{"count", s.count}, {"fraction", s.fraction}};
    }
    return {{"mode", std::string(to_string(dist.mode))},
            {"total", dist.total},
            {"truncated", dist.truncated},
            {"shares", shares}};
}

}  // namespace webometer::analytics
