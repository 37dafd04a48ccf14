#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "webometer/backend/searcher.hpp"
#include "webometer/query.hpp"
#include "webometer/timeseries/store.hpp"

namespace webometer::timeseries {

struct NamedSearcher {
    std::string name;
    backend::Searcher* searcher = nullptr;
};

struct NamedQuery {
    std::string id;
    Query query;
};

enum class SampleStatus { New, Updated, Missing };

struct CollectOutcome {
    std::string query_id;
    std::string backend;
    SampleStatus status = SampleStatus::Missing;
    std::optional<std::uint64_t> hits;
    std::string error;  // set when Missing
};

struct CollectReport {
    Date day;
    std::vector<CollectOutcome> outcomes;

    std::size_t appended() const;  // New
    std::size_t updated() const;
    std::size_t missing() const;
};

// One hit-count probe per (query, backend) for `day`, upserted into `store`.
// Backend and quota failures become gaps. Queries are issued sequentially.
CollectReport collect(std::span<const NamedSearcher> backends, std::span<const NamedQuery> queries,
                      Date day, SampleStore& store);

// Loads the store at `path`, collects, and atomically replaces the file.
// On a write failure the previous file is left untouched.
CollectReport collect_to_file(std::span<const NamedSearcher> backends,
                              std::span<const NamedQuery> queries, Date day,
                              const std::filesystem::path& path);

// One query per line; blank lines and lines starting with '#' are skipped.
// An optional "id<TAB>query" form names the query, otherwise the canonical
// query text is the id.
std::vector<NamedQuery> read_query_file(std::istream& in);

std::string_view to_string(SampleStatus s);

}  // namespace webometer::timeseries
