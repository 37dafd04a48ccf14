#include "webometer/result_page.hpp"

#include "webometer/errors.hpp"

namespace webometer {

nlohmann::json to_wire(const ResultPage& page) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : page.results) {
        results.push_back({{"rank", r.rank}, {"url", r.url}, {"title", r.title}, {"snippet", r.snippet}});
    }
    return {{"estimatedTotal", page.estimated_total}, {"start", page.start}, {"results", results}};
}

ResultPage from_wire(const nlohmann::json& body) {
    ResultPage page;
    try {
        page.estimated_total = body.at("estimatedTotal").get<std::uint64_t>();
        page.start = body.at("start").get<std::size_t>();
        for (const auto& r : body.at("results")) {
            page.results.push_back({r.at("rank").get<std::size_t>(), r.at("url").get<std::string>(),
                                    r.value("title", std::string{}), r.value("snippet", std::string{})});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed search response: ") + e.what());
    }
    for (std::size_t i = 0; i < page.results.size(); ++i) {
        if (page.results[i].rank != page.start + i + 1) {
            throw ParseError("search response ranks are not consecutive from start+1");
        }
    }
    return page;
}

void check_page(const ResultPage& page, std::size_t page_size) {
    if (page.results.size() > page_size) {
        throw RangeError("page holds more results than requested");
    }
    for (std::size_t i = 0; i < page.results.size(); ++i) {
        if (page.results[i].rank != page.start + i + 1) {
            throw RangeError("ranks are not consecutive from start+1");
        }
    }
    if (!page.results.empty() && page.estimated_total < page.start + page.results.size()) {
        throw RangeError("estimated total is below the last returned rank");
    }
}

}  // namespace webometer
