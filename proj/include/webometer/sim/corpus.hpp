#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "webometer/sim/config.hpp"

namespace webometer::sim {

struct TermCount {
    std::uint32_t term = 0;
    std::uint32_t count = 0;

    bool operator==(const TermCount&) const = default;
};

struct PhraseCount {
    std::string phrase;  // normalized
    std::uint32_t count = 0;

    bool operator==(const PhraseCount&) const = default;
};

struct SimDocument {
    std::uint32_t doc_id = 0;
    std::string url;
    std::string tld;
    std::string filetype;
    std::uint32_t created_day = 0;
    std::vector<TermCount> terms;          // sorted by term id, counts > 0
    std::vector<std::uint32_t> outlinks;   // sorted, unique, never self
    std::vector<PhraseCount> phrases;      // planted phrases only

    std::uint32_t term_count(std::uint32_t term) const;
    std::uint32_t phrase_count(std::string_view normalized_phrase) const;
    std::string title() const;
    std::string snippet() const;

    bool operator==(const SimDocument&) const = default;
};

// Immutable pseudo-web. Generation is single-threaded; all queries are const
// and safe to run concurrently.
class SimCorpus {
public:
    // Throws ConfigError on an invalid configuration.
    static SimCorpus generate(const SimConfig& config);

    // One JSON document per line: doc_id, url, tld, filetype, created_day,
    // terms (flat sorted multiset of term ids), outlinks, phrases.
    void write_jsonl(std::ostream& out) const;
    static SimCorpus read_jsonl(std::istream& in, const SimConfig& config);

    const SimConfig& config() const noexcept { return config_; }
    std::span<const SimDocument> documents() const noexcept { return docs_; }
    const SimDocument& document(std::uint32_t doc_id) const { return docs_.at(doc_id); }
    std::size_t size() const noexcept { return docs_.size(); }

    // Deterministic membership in the Api subsample.
    bool api_keeps(std::uint32_t doc_id) const noexcept;
    // Per-interface rank tiebreak; distinct hash streams for the two kinds.
    std::uint64_t tiebreak(InterfaceKind kind, std::uint32_t doc_id) const noexcept;
    bool visible(InterfaceKind kind, const SimDocument& doc, long day) const noexcept;

    // Exact number of documents visible to `kind` on `day`.
    std::size_t corpus_size(InterfaceKind kind, long day) const;

    // Maps a query token to a term id. "w<n>" with n < vocab_size names
    // term n directly; any other token folds onto one of the most frequent
    // terms by hash so free-text queries return realistic result volumes.
    std::uint32_t term_id(std::string_view token) const noexcept;
    static std::string token(std::uint32_t term);

    std::optional<std::uint32_t> find_url(std::string_view normalized_url) const;

    const std::vector<std::uint32_t>& planted_homepages() const noexcept { return homepages_; }

private:
    explicit SimCorpus(SimConfig config, std::vector<SimDocument> docs);
    void index();

    SimConfig config_;
    std::vector<SimDocument> docs_;
    std::unordered_map<std::string, std::uint32_t> url_index_;
    std::vector<std::uint32_t> homepages_;
};

}  // namespace webometer::sim
