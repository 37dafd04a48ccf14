#include "webometer/sim/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"
#include "webometer/hash.hpp"

namespace webometer::sim {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

bool host_in_site(const std::string& url, const std::string& site) {
    auto host = analytics::parse_url(url).host;
    if (host == site) {
        return true;
    }
    return host.size() > site.size() && host.compare(host.size() - site.size(), site.size(), site) == 0 &&
           host[host.size() - site.size() - 1] == '.';
}

}  // namespace

CompiledQuery compile(const SimCorpus& corpus, const Query& query) {
    query.validate();
    CompiledQuery cq;
    bool saw_wildcard = false;
    for (const auto& t : query.terms) {
        if (t == "*") {
            saw_wildcard = true;
        } else {
            cq.term_ids.push_back(corpus.term_id(t));
        }
    }
    std::sort(cq.term_ids.begin(), cq.term_ids.end());
    cq.term_ids.erase(std::unique(cq.term_ids.begin(), cq.term_ids.end()), cq.term_ids.end());
    cq.wildcard_only = saw_wildcard && cq.term_ids.empty();
    cq.phrase = query.phrase;
    if (query.link_target) {
        std::string norm;
        try {
            norm = analytics::normalize_url(*query.link_target);
        } catch (const ParseError& e) {
            throw QueryError(std::string("malformed link: target: ") + e.what());
        }
        cq.link_doc = corpus.find_url(norm);
        cq.link_unresolved = !cq.link_doc.has_value();
    }
    cq.filetype = query.filetype_filter;
    cq.site = query.site_filter;
    return cq;
}

bool rank_before(const Hit& a, const Hit& b) noexcept {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    if (a.tiebreak != b.tiebreak) {
        return a.tiebreak < b.tiebreak;
    }
    return a.doc_id < b.doc_id;
}

std::optional<std::uint32_t> match_score(const CompiledQuery& query, const SimDocument& doc) {
    if (query.filetype && doc.filetype != *query.filetype) {
        return std::nullopt;
    }
    if (query.site && !host_in_site(doc.url, *query.site)) {
        return std::nullopt;
    }
    if (query.link_unresolved) {
        return std::nullopt;
    }
    if (query.link_doc) {
        bool links = std::binary_search(doc.outlinks.begin(), doc.outlinks.end(), *query.link_doc);
        return links ? std::optional<std::uint32_t>{1} : std::nullopt;
    }
    if (query.phrase) {
        auto c = doc.phrase_count(*query.phrase);
        return c > 0 ? std::optional<std::uint32_t>{c} : std::nullopt;
    }
    if (query.wildcard_only) {
        return 0;
    }
    std::uint32_t score = 0;
    for (auto term : query.term_ids) {
        auto c = doc.term_count(term);
        if (c == 0) {
            return std::nullopt;
        }
        score += c;
    }
    return score;
}

std::vector<Hit> rank_matches_serial(const SimCorpus& corpus, InterfaceKind kind,
                                     const CompiledQuery& query, long day) {
    std::vector<Hit> hits;
    for (const auto& doc : corpus.documents()) {
        if (!corpus.visible(kind, doc, day)) {
            continue;
        }
        if (auto s = match_score(query, doc)) {
            hits.push_back({*s, corpus.tiebreak(kind, doc.doc_id), doc.doc_id});
        }
    }
    std::sort(hits.begin(), hits.end(), rank_before);
    return hits;
}

std::vector<Hit> rank_matches_parallel(const SimCorpus& corpus, InterfaceKind kind,
                                       const CompiledQuery& query, long day) {
    const auto docs = corpus.documents();
    const auto n = static_cast<std::int64_t>(docs.size());
    std::vector<Hit> hits;
#pragma omp parallel
    {
        std::vector<Hit> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            const auto& doc = docs[static_cast<std::size_t>(i)];
            if (!corpus.visible(kind, doc, day)) {
                continue;
            }
            if (auto s = match_score(query, doc)) {
                local.push_back({*s, corpus.tiebreak(kind, doc.doc_id), doc.doc_id});
            }
        }
#pragma omp critical(webometer_rank_merge)
        hits.insert(hits.end(), local.begin(), local.end());
    }
    // Total order, so the merge order of thread-local buffers is irrelevant.
    std::sort(hits.begin(), hits.end(), rank_before);
    return hits;
}

std::size_t count_matches(const SimCorpus& corpus, InterfaceKind kind, const CompiledQuery& query,
                          long day) {
    const auto docs = corpus.documents();
    const auto n = static_cast<std::int64_t>(docs.size());
    std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& doc = docs[static_cast<std::size_t>(i)];
        if (corpus.visible(kind, doc, day) && match_score(query, doc)) {
            ++count;
        }
    }
    return static_cast<std::size_t>(count);
}

std::uint64_t noisy_total(const SimCorpus& corpus, InterfaceKind kind, const Query& query, long day,
                          std::uint64_t true_count) {
    const double amplitude = corpus.config().noise_amplitude;
    if (true_count == 0 || amplitude == 0.0) {
        return true_count;
    }
    std::uint64_t key = hash_combine(corpus.config().seed ^ kNoiseStream, fnv1a64(query.to_string()));
    key = hash_combine(key, static_cast<std::uint64_t>(day));
    key = hash_combine(key, kind == InterfaceKind::Standard ? 1 : 2);
    // Box-Muller on two keyed uniforms; u1 is kept away from zero.
    double u1 = (static_cast<double>(mix64(key) >> 11) + 0.5) * 0x1.0p-53;
    double u2 = unit_interval(mix64(key + 1));
    double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    double est = static_cast<double>(true_count) * std::exp(amplitude * g);
    return static_cast<std::uint64_t>(std::llround(std::max(est, 0.0)));
}

ResultPage sim_search(const SimCorpus& corpus, InterfaceKind kind, const Query& query, long day,
                      std::size_t start, std::size_t page_size) {
    if (page_size < 1) {
        throw RangeError("page_size must be at least 1");
    }
    if (day < 0) {
        throw RangeError("day must be non-negative");
    }
    auto cq = compile(corpus, query);
    auto hits = rank_matches_parallel(corpus, kind, cq, day);

    ResultPage page;
    page.start = start;
    for (std::size_t i = start; i < hits.size() && i < start + page_size; ++i) {
        const auto& doc = corpus.document(hits[i].doc_id);
        page.results.push_back({i + 1, doc.url, doc.title(), doc.snippet()});
    }
    auto est = noisy_total(corpus, kind, query, day, hits.size());
    // Never report fewer hits than were actually returned.
    page.estimated_total =
        page.results.empty() ? est : std::max<std::uint64_t>(est, start + page.results.size());
    return page;
}

}  // namespace webometer::sim
