#include "webometer/coverage/coverage.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "webometer/analytics/url.hpp"
#include "webometer/coverage/csv.hpp"
#include "webometer/errors.hpp"

namespace webometer::coverage {

namespace {

std::string trim(const std::string& s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string error_status(const Error& e) {
    return "error:" + e.kind();
}

}  // namespace

bool valid_issn(const std::string& issn) {
    if (issn.size() != 9 || issn[4] != '-') {
        return false;
    }
    for (std::size_t i = 0; i < 9; ++i) {
        if (i == 4) {
            continue;
        }
        const bool digit = std::isdigit(static_cast<unsigned char>(issn[i])) != 0;
        if (!digit && !(i == 8 && (issn[i] == 'X' || issn[i] == 'x'))) {
            return false;
        }
    }
    return true;
}

JournalList load_journal_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError(0, "cannot open journal list " + path.string());
    }
    return read_journal_list(in);
}

JournalList read_journal_list(std::istream& in) {
    auto records = read_csv(in);
    if (records.empty()) {
        throw LoadError(1, "journal list is empty (expected a header with a 'title' column)");
    }
    const auto& header = records.front();
    std::optional<std::size_t> title_col;
    std::optional<std::size_t> issn_col;
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        auto name = lower(trim(header.fields[i]));
        if (name == "title") {
            title_col = i;
        } else if (name == "issn") {
            issn_col = i;
        }
    }
    if (!title_col) {
        throw LoadError(header.line, "header has no 'title' column");
    }

    JournalList list;
    std::set<std::string> seen;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() == 1 && trim(rec.fields[0]).empty()) {
            ++list.blank_titles;
            continue;
        }
        if (rec.fields.size() != header.fields.size()) {
            throw LoadError(rec.line, fmt::format("expected {} fields, found {}", header.fields.size(),
                                                  rec.fields.size()));
        }
        JournalRecord jr;
        jr.title = trim(rec.fields[*title_col]);
        if (jr.title.empty()) {
            ++list.blank_titles;
            continue;
        }
        if (issn_col) {
            auto issn = trim(rec.fields[*issn_col]);
            if (!issn.empty()) {
                if (!valid_issn(issn)) {
                    throw LoadError(rec.line, "malformed ISSN '" + issn + "' (expected NNNN-NNNC)");
                }
                jr.issn = issn;
            }
        }
        if (!seen.insert(jr.title).second) {
            ++list.duplicates;
            continue;
        }
        list.records.push_back(std::move(jr));
    }
    return list;
}

std::size_t histogram_bucket(std::uint64_t hits) {
    if (hits == 0) return 0;
    if (hits < 10) return 1;
    if (hits < 100) return 2;
    if (hits < 1000) return 3;
    return 4;
}

CoverageReport make_report(std::vector<CoverageRow> rows, bool quota_exhausted) {
    CoverageReport rep;
    rep.rows = std::move(rows);
    rep.quota_exhausted = quota_exhausted;
    std::size_t covered = 0;
    for (const auto& row : rep.rows) {
        ++rep.hit_histogram[histogram_bucket(row.hits)];
        if (row.hits > 0) {
            ++covered;
        }
        if (row.completed()) {
            rep.quota_spent += 1 + (row.backlinks ? 1 : 0);
        }
    }
    rep.covered_fraction =
        rep.rows.empty() ? 0.0 : static_cast<double>(covered) / static_cast<double>(rep.rows.size());
    return rep;
}

nlohmann::json row_json(const CoverageRow& row) {
    nlohmann::json j = {{"title", row.journal.title}, {"hits", row.hits}, {"status", row.status}};
    j["issn"] = row.journal.issn ? nlohmann::json(*row.journal.issn) : nlohmann::json(nullptr);
    j["top_url"] = row.top_url ? nlohmann::json(*row.top_url) : nlohmann::json(nullptr);
    j["backlinks"] = row.backlinks ? nlohmann::json(*row.backlinks) : nlohmann::json(nullptr);
    return j;
}

CoverageRow row_from_json(const nlohmann::json& j) {
    CoverageRow row;
    row.journal.title = j.at("title").get<std::string>();
    if (j.contains("issn") && !j.at("issn").is_null()) {
        row.journal.issn = j.at("issn").get<std::string>();
    }
    row.hits = j.at("hits").get<std::uint64_t>();
    if (j.contains("top_url") && !j.at("top_url").is_null()) {
        row.top_url = j.at("top_url").get<std::string>();
    }
    if (j.contains("backlinks") && !j.at("backlinks").is_null()) {
        row.backlinks = j.at("backlinks").get<std::uint64_t>();
    }
    row.status = j.at("status").get<std::string>();
    return row;
}

std::vector<CoverageRow> read_checkpoint(const std::filesystem::path& path) {
    std::vector<CoverageRow> rows;
    std::ifstream in(path);
    if (!in) {
        return rows;
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            auto row = row_from_json(nlohmann::json::parse(line));
            if (row.completed()) {
                rows.push_back(std::move(row));
            }
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(lineno, "checkpoint " + path.string() + ": " + e.what());
        }
    }
    return rows;
}

CoverageReport assess_coverage(backend::Searcher& searcher, std::span<const JournalRecord> journals,
                               const CoverageOptions& options) {
    std::map<std::string, CoverageRow> done;
    if (options.checkpoint) {
        for (auto& row : read_checkpoint(*options.checkpoint)) {
            done.emplace(row.journal.title, std::move(row));
        }
    }
    std::ofstream ckpt;
    if (options.checkpoint) {
        ckpt.open(*options.checkpoint, std::ios::app);
        if (!ckpt) {
            throw StoreError("cannot open checkpoint " + options.checkpoint->string());
        }
    }
    std::vector<CoverageRow> pending;
    auto flush = [&] {
        if (!ckpt.is_open()) {
            pending.clear();
            return;
        }
        for (const auto& row : pending) {
            ckpt << row_json(row).dump() << '\n';
        }
        ckpt.flush();
        if (!ckpt) {
            throw StoreError("checkpoint write failed");
        }
        pending.clear();
    };

    const std::size_t limit = std::min(journals.size(), options.max_journals.value_or(journals.size()));
    std::vector<CoverageRow> rows;
    rows.reserve(limit);
    bool quota_out = false;
    std::size_t processed = 0;

    for (std::size_t i = 0; i < limit; ++i) {
        const auto& journal = journals[i];
        if (auto it = done.find(journal.title); it != done.end()) {
            rows.push_back(it->second);
            continue;
        }
        CoverageRow row;
        row.journal = journal;
        if (quota_out) {
            row.status = "error:quota";
            rows.push_back(std::move(row));
            continue;
        }
        try {
            auto probe = searcher.search(Query::of_phrase(journal.title), 0, 1, options.as_of);
            row.hits = probe.estimated_total;
            if (!probe.results.empty()) {
                row.top_url = probe.results.front().url;
            }
            if (row.hits > 0 && options.do_backlinks && row.top_url) {
                auto target = analytics::normalize_url(*row.top_url);
                row.backlinks = searcher.hit_count(Query::of_link(target), options.as_of);
            }
            row.status = row.hits > 0 ? "ok" : "no-hits";
        } catch (const QuotaError&) {
            quota_out = true;
            row = CoverageRow{journal, 0, std::nullopt, std::nullopt, "error:quota"};
        } catch (const Error& e) {
            row = CoverageRow{journal, 0, std::nullopt, std::nullopt, error_status(e)};
        }
        if (row.completed()) {
            pending.push_back(row);
            if (++processed % options.checkpoint_every == 0) {
                flush();
            }
        }
        rows.push_back(std::move(row));
    }
    flush();
    return make_report(std::move(rows), quota_out);
}

Summary summarize(const CoverageReport& report) {
    Summary s;
    std::ostringstream text;
    text << fmt::format("journals: {}\n", report.rows.size());
    text << fmt::format("covered_fraction: {:.4f}\n", report.covered_fraction);
    text << "hit_histogram:";
    for (std::size_t b = 0; b < report.hit_histogram.size(); ++b) {
        text << fmt::format(" {}={}", kHistogramLabels[b], report.hit_histogram[b]);
    }
    text << '\n';
    text << fmt::format("quota_spent: {}\n", report.quota_spent);
    if (report.quota_exhausted) {
        text << "status: stopped on daily quota; rerun later to resume\n";
    }
    s.text = text.str();

    std::ostringstream csv;
    csv << "title,hits,top_url,backlinks,status\n";
    for (const auto& row : report.rows) {
        csv << csv_escape(row.journal.title) << ',' << row.hits << ','
            << csv_escape(row.top_url.value_or("")) << ','
            << (row.backlinks ? std::to_string(*row.backlinks) : std::string{}) << ','
            << csv_escape(row.status) << '\n';
    }
    s.csv = csv.str();
    return s;
}

}  // namespace webometer::coverage
