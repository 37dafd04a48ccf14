#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "webometer/query.hpp"
#include "webometer/result_page.hpp"
#include "webometer/sim/corpus.hpp"

namespace webometer::sim {

// A Query resolved against a corpus vocabulary and URL table.
struct CompiledQuery {
    std::vector<std::uint32_t> term_ids;  // sorted, unique; wildcard excluded
    bool wildcard_only = false;
    std::optional<std::string> phrase;
    std::optional<std::uint32_t> link_doc;
    bool link_unresolved = false;  // link target is not a corpus URL
    std::optional<std::string> filetype;
    std::optional<std::string> site;
};

// Throws QueryError for malformed queries (including unparseable link targets).
CompiledQuery compile(const SimCorpus& corpus, const Query& query);

struct Hit {
    std::uint32_t score = 0;
    std::uint64_t tiebreak = 0;
    std::uint32_t doc_id = 0;

    bool operator==(const Hit&) const = default;
};

// Rank order: score descending, then tiebreak, then doc id.
bool rank_before(const Hit& a, const Hit& b) noexcept;

// Term-overlap score of one document, or nullopt when it does not match.
// Visibility is not considered here.
std::optional<std::uint32_t> match_score(const CompiledQuery& query, const SimDocument& doc);

// Every document visible to `kind` on `day` that matches, in rank order.
// The serial form is the reference the parallel kernel is tested against.
std::vector<Hit> rank_matches_serial(const SimCorpus& corpus, InterfaceKind kind,
                                     const CompiledQuery& query, long day);
std::vector<Hit> rank_matches_parallel(const SimCorpus& corpus, InterfaceKind kind,
                                       const CompiledQuery& query, long day);

// Number of matching visible documents, without ranking.
std::size_t count_matches(const SimCorpus& corpus, InterfaceKind kind,
                          const CompiledQuery& query, long day);

// True count perturbed by multiplicative log-normal jitter seeded per
// (query, day, interface). Zero stays zero.
std::uint64_t noisy_total(const SimCorpus& corpus, InterfaceKind kind, const Query& query,
                          long day, std::uint64_t true_count);

// One page of results. Throws RangeError for page_size < 1 or negative
// start/day and QueryError for malformed queries.
ResultPage sim_search(const SimCorpus& corpus, InterfaceKind kind, const Query& query, long day,
                      std::size_t start, std::size_t page_size);

}  // namespace webometer::sim
