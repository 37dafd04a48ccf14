#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "webometer/date.hpp"
#include "webometer/query.hpp"
#include "webometer/result_page.hpp"
#include "webometer/sim/corpus.hpp"

namespace webometer::backend {

// Raw search interface. Implementations do no quota accounting; see Searcher.
// All implementations are safe to call from several threads.
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::string_view kind() const noexcept = 0;

    // `as_of` is the calendar day the request is issued on. Transport
    // problems surface as BackendUnavailable.
    virtual ResultPage search(const Query& query, std::size_t start, std::size_t page_size,
                              Date as_of) const = 0;
};

// One interface view of a simulated corpus. Day index = as_of - epoch.
class SimBackend final : public Backend {
public:
    SimBackend(std::shared_ptr<const sim::SimCorpus> corpus, sim::InterfaceKind interface,
               Date epoch);

    std::string_view kind() const noexcept override { return "sim"; }
    ResultPage search(const Query& query, std::size_t start, std::size_t page_size,
                      Date as_of) const override;

    long day_index(Date as_of) const { return as_of.days_since(epoch_); }
    const sim::SimCorpus& corpus() const noexcept { return *corpus_; }
    sim::InterfaceKind interface() const noexcept { return interface_; }

private:
    std::shared_ptr<const sim::SimCorpus> corpus_;
    sim::InterfaceKind interface_;
    Date epoch_;
};

// JSON-over-HTTP client:
//   GET {base}/search?q=..&start=..&num=..[&filetype=..][&link=..]
class HttpBackend final : public Backend {
public:
    explicit HttpBackend(std::string base_url,
                         std::chrono::milliseconds timeout = std::chrono::seconds(10));

    std::string_view kind() const noexcept override { return "http"; }
    ResultPage search(const Query& query, std::size_t start, std::size_t page_size,
                      Date as_of) const override;

    // Path plus query string for a request, exposed for tests.
    static std::string request_target(const std::string& base_path, const Query& query,
                                      std::size_t start, std::size_t page_size);

private:
    std::string origin_;     // scheme://host[:port]
    std::string base_path_;  // path prefix without trailing slash
    std::chrono::milliseconds timeout_;
};

}  // namespace webometer::backend
