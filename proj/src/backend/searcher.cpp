#include "webometer/backend/searcher.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"

namespace webometer::backend {

namespace {

std::string dedup_key(const std::string& url) {
    try {
        return analytics::normalize_url(url);
    } catch (const ParseError&) {
        return url;
    }
}

}  // namespace

Searcher::Searcher(std::shared_ptr<const Backend> backend, std::shared_ptr<QuotaLedger> ledger,
                   Clock clock)
    : backend_(std::move(backend)), ledger_(std::move(ledger)), clock_(std::move(clock)) {
    if (!backend_ || !ledger_ || !clock_) {
        throw ConfigError("searcher", "backend, quota ledger and clock are all required");
    }
}

ResultPage Searcher::search(const Query& query, std::size_t start, std::size_t page_size,
                            std::optional<Date> as_of) {
    query.validate();
    const auto& lim = limits();
    if (page_size < 1 || page_size > lim.page_size_max) {
        throw RangeError(fmt::format("page size {} outside [1, {}]", page_size, lim.page_size_max));
    }
    if (start + page_size > lim.per_query_result_cap) {
        throw RangeError(fmt::format("start {} + page size {} exceeds the result cap of {}", start,
                                     page_size, lim.per_query_result_cap));
    }
    const Date now = as_of ? *as_of : clock_();
    ledger_->charge(now, 1);
    return backend_->search(query, start, page_size, now);
}

TopResults Searcher::fetch_top(const Query& query, std::size_t k, std::optional<Date> as_of) {
    query.validate();
    const auto& lim = limits();
    if (k > lim.per_query_result_cap) {
        throw RangeError(fmt::format("k = {} exceeds the result cap of {}", k, lim.per_query_result_cap));
    }
    TopResults top;
    std::unordered_set<std::string> seen;
    std::size_t start = 0;
    while (top.urls.size() < k && start < k) {
        const std::size_t num = std::min(lim.page_size_max, k - start);
        ResultPage page;
        try {
            page = search(query, start, num, as_of);
            ++top.requests;
        } catch (const BackendUnavailable& e) {
            ++top.requests;
            if (top.urls.empty()) {
                throw;
            }
            top.truncated = true;
            top.truncation_reason = e.what();
            break;
        }
        for (const auto& r : page.results) {
            if (top.urls.size() < k && seen.insert(dedup_key(r.url)).second) {
                top.urls.push_back(r.url);
            }
        }
        start += num;
        if (page.results.size() < num || start >= page.estimated_total) {
            break;
        }
    }
    return top;
}

std::uint64_t Searcher::hit_count(const Query& query, std::optional<Date> as_of) {
    return search(query, 0, 1, as_of).estimated_total;
}

}  // namespace webometer::backend
