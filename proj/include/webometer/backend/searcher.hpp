#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "webometer/backend/backend.hpp"
#include "webometer/backend/quota.hpp"
#include "webometer/date.hpp"

namespace webometer::backend {

struct TopResults {
    std::vector<std::string> urls;  // rank order, duplicate-free
    std::size_t requests = 0;       // quota units charged
    bool truncated = false;         // a transport failure cut the listing short
    std::string truncation_reason;
};

// Quota-enforcing client over a Backend. Every request charges one unit of
// the shared ledger before it is issued, whatever it returns.
class Searcher {
public:
    Searcher(std::shared_ptr<const Backend> backend, std::shared_ptr<QuotaLedger> ledger,
             Clock clock);

    // Throws QueryError, RangeError (page size / result cap), QuotaError or
    // BackendUnavailable.
    // `as_of` overrides the clock, e.g. for replaying simulated days.
    ResultPage search(const Query& query, std::size_t start, std::size_t page_size,
                      std::optional<Date> as_of = std::nullopt);

    // Pages through results until k are collected or the listing ends.
    // Later duplicates are dropped. A BackendUnavailable after at least one
    // result marks the listing truncated instead of throwing.
    TopResults fetch_top(const Query& query, std::size_t k, std::optional<Date> as_of = std::nullopt);

    // estimated_total of a one-result probe.
    std::uint64_t hit_count(const Query& query, std::optional<Date> as_of = std::nullopt);

    const QuotaLimits& limits() const noexcept { return ledger_->limits(); }
    QuotaLedger& ledger() noexcept { return *ledger_; }
    const Backend& backend() const noexcept { return *backend_; }
    Date today() const { return clock_(); }

private:
    std::shared_ptr<const Backend> backend_;
    std::shared_ptr<QuotaLedger> ledger_;
    Clock clock_;
};

}  // namespace webometer::backend
