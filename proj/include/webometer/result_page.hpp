#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace webometer {

struct SearchResult {
    std::size_t rank = 0;  // 1-based, global across pages
    std::string url;
    std::string title;
    std::string snippet;

    bool operator==(const SearchResult&) const = default;
};

struct ResultPage {
    std::uint64_t estimated_total = 0;
    std::size_t start = 0;
    std::vector<SearchResult> results;

    bool operator==(const ResultPage&) const = default;
};

// Wire form: {"estimatedTotal", "start", "results": [{"rank","url","title","snippet"}]}.
nlohmann::json to_wire(const ResultPage& page);
// Throws ParseError on a body that does not follow the wire schema or
// violates the rank/total invariants.
ResultPage from_wire(const nlohmann::json& body);

// Throws RangeError describing the first violated page invariant.
void check_page(const ResultPage& page, std::size_t page_size);

}  // namespace webometer
