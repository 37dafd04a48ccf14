#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "webometer/backend/searcher.hpp"

namespace webometer::coverage {

struct JournalRecord {
    std::string title;  // trimmed, non-empty
    std::optional<std::string> issn;

    bool operator==(const JournalRecord&) const = default;
};

struct JournalList {
    std::vector<JournalRecord> records;
    std::size_t blank_titles = 0;  // rows skipped for an empty title
    std::size_t duplicates = 0;    // later rows with an already seen title
};

// CSV with a header naming a "title" column and optionally "issn", in any
// order. Throws LoadError (with line number) for a missing file, a header
// without "title", ragged rows or a malformed ISSN.
JournalList load_journal_list(const std::filesystem::path& path);
JournalList read_journal_list(std::istream& in);

bool valid_issn(const std::string& issn);

struct CoverageRow {
    JournalRecord journal;
    std::uint64_t hits = 0;
    std::optional<std::string> top_url;
    std::optional<std::uint64_t> backlinks;  // only with top_url
    std::string status;                      // "ok" | "no-hits" | "error:<kind>"

    bool completed() const { return status == "ok" || status == "no-hits"; }
    bool operator==(const CoverageRow&) const = default;
};

// Buckets: 0, 1-9, 10-99, 100-999, >=1000.
using HitHistogram = std::array<std::uint64_t, 5>;
inline constexpr std::array<const char*, 5> kHistogramLabels = {"0", "1-9", "10-99", "100-999", ">=1000"};
std::size_t histogram_bucket(std::uint64_t hits);

struct CoverageReport {
    std::vector<CoverageRow> rows;
    double covered_fraction = 0.0;  // rows with hits > 0 / rows
    HitHistogram hit_histogram{};
    std::uint64_t quota_spent = 0;  // 1 per completed row, +1 when backlinks were queried
    bool quota_exhausted = false;

    bool operator==(const CoverageReport&) const = default;
};

// Recomputes covered_fraction, histogram and quota_spent from `rows`.
CoverageReport make_report(std::vector<CoverageRow> rows, bool quota_exhausted = false);

struct CoverageOptions {
    bool do_backlinks = false;
    std::optional<std::size_t> max_journals;
    std::optional<std::filesystem::path> checkpoint;
    std::size_t checkpoint_every = 100;
    std::optional<Date> as_of;
};

// Per journal: a one-result phrase probe on the exact title gives the hit
// count and top URL; with do_backlinks a link: query on the normalized top
// URL counts backlinks. Quota exhaustion marks the current and all later
// rows "error:quota"; other failures mark only their row. Completed rows are
// appended to the checkpoint file and skipped on the next run.
CoverageReport assess_coverage(backend::Searcher& searcher, std::span<const JournalRecord> journals,
                               const CoverageOptions& options = {});

// Completed rows from a checkpoint file (missing file -> empty).
std::vector<CoverageRow> read_checkpoint(const std::filesystem::path& path);

nlohmann::json row_json(const CoverageRow& row);
CoverageRow row_from_json(const nlohmann::json& j);

struct Summary {
    std::string text;
    std::string csv;  // title,hits,top_url,backlinks,status
};

Summary summarize(const CoverageReport& report);

}  // namespace webometer::coverage
