#include "webometer/backend/backend.hpp"

#include <httplib.h>

#include <fmt/format.h>

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"
#include "webometer/sim/search.hpp"

namespace webometer::backend {

SimBackend::SimBackend(std::shared_ptr<const sim::SimCorpus> corpus, sim::InterfaceKind interface,
                       Date epoch)
    : corpus_(std::move(corpus)), interface_(interface), epoch_(epoch) {
    if (!corpus_) {
        throw ConfigError("corpus", "sim backend needs a corpus");
    }
}

ResultPage SimBackend::search(const Query& query, std::size_t start, std::size_t page_size,
                              Date as_of) const {
    long day = day_index(as_of);
    if (day < 0) {
        throw RangeError(fmt::format("date {} precedes the simulation epoch {}", as_of.iso(), epoch_.iso()));
    }
    return sim::sim_search(*corpus_, interface_, query, day, start, page_size);
}

HttpBackend::HttpBackend(std::string base_url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
    analytics::UrlParts parts;
    try {
        parts = analytics::parse_url(base_url);
    } catch (const ParseError& e) {
        throw ConfigError("base_url", e.what());
    }
    if (parts.scheme != "http") {
        throw ConfigError("base_url", "only plain http:// endpoints are supported");
    }
    origin_ = parts.scheme + "://" + parts.host;
    if (parts.port) {
        origin_ += ":" + std::to_string(*parts.port);
    }
    base_path_ = parts.path;
    while (!base_path_.empty() && base_path_.back() == '/') {
        base_path_.pop_back();
    }
}

std::string HttpBackend::request_target(const std::string& base_path, const Query& query,
                                        std::size_t start, std::size_t page_size) {
    using httplib::detail::encode_query_param;
    std::string_view base = base_path;
    while (!base.empty() && base.back() == '/') {
        base.remove_suffix(1);
    }
    std::string target = fmt::format("{}/search?q={}&start={}&num={}", base,
                                     encode_query_param(query.wire_q()), start, page_size);
    if (query.filetype_filter) {
        target += "&filetype=" + encode_query_param(*query.filetype_filter);
    }
    if (query.link_target) {
        target += "&link=" + encode_query_param(*query.link_target);
    }
    return target;
}

ResultPage HttpBackend::search(const Query& query, std::size_t start, std::size_t page_size,
                               Date /*as_of*/) const {
    query.validate();
    httplib::Client client(origin_);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());

    auto target = request_target(base_path_, query, start, page_size);
    auto res = client.Get(target);
    if (!res) {
        throw BackendUnavailable(
            fmt::format("{}{}: {}", origin_, target, httplib::to_string(res.error())), true);
    }
    if (res->status != 200) {
        bool retryable = res->status >= 500 || res->status == 429;
        throw BackendUnavailable(fmt::format("{}{}: HTTP {}", origin_, target, res->status), retryable);
    }
    try {
        auto page = from_wire(nlohmann::json::parse(res->body));
        check_page(page, page_size);
        return page;
    } catch (const nlohmann::json::exception& e) {
        throw BackendUnavailable(std::string("unparseable search response: ") + e.what(), false);
    } catch (const Error& e) {
        throw BackendUnavailable(std::string("invalid search response: ") + e.what(), false);
    }
}

}  // namespace webometer::backend
