#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"
#include "webometer/analytics/url.hpp"
#include "webometer/app/config.hpp"
#include "webometer/backend/backend.hpp"
#include "webometer/coverage/coverage.hpp"
#include "webometer/coverage/csv.hpp"
#include "webometer/errors.hpp"

using namespace webometer;
using namespace webometer::coverage;
using testing_support::fixture;
using testing_support::Gen;
using testing_support::TempDir;

// --- csv -------------------------------------------------------------------

TEST(Csv, QuotedFieldsAndLineNumbers) {
    std::stringstream ss("a,b\n\"x, y\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",z\n");
    auto recs = read_csv(ss);
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_EQ(recs[1].fields, (std::vector<std::string>{"x, y", "say \"hi\""}));
    EXPECT_EQ(recs[2].fields, (std::vector<std::string>{"multi\nline", "z"}));
    EXPECT_EQ(recs[1].line, 2u);
    EXPECT_EQ(recs[2].line, 3u);
}

TEST(Csv, UnterminatedQuoteIsLoadError) {
    std::stringstream ss("title\n\"never closed\n");
    EXPECT_THROW(read_csv(ss), LoadError);
}

TEST(Csv, EscapeThenParseIsIdentity) {
    Gen g(2);
    const std::string alphabet = "ab ,\"\n\r\txyz";
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<std::string>> rows;
        std::ostringstream out;
        int cols = g.range(1, 4);
        for (int r = g.range(1, 6); r > 0; --r) {
            std::vector<std::string> row;
            for (int c = 0; c < cols; ++c) {
                std::string f;
                for (int i = g.range(0, 8); i > 0; --i) f += alphabet[g.range(0, int(alphabet.size()) - 1)];
                row.push_back(f);
                out << (c ? "," : "") << csv_escape(f);
            }
            out << "\n";
            rows.push_back(row);
        }
        std::stringstream in(out.str());
        auto recs = read_csv(in);
        // a row of one empty field is indistinguishable from a blank line
        std::vector<std::vector<std::string>> expect;
        for (const auto& row : rows) {
            if (!(row.size() == 1 && row[0].empty())) expect.push_back(row);
        }
        std::vector<std::vector<std::string>> got;
        for (const auto& r : recs) {
            if (!(r.fields.size() == 1 && r.fields[0].empty())) got.push_back(r.fields);
        }
        ASSERT_EQ(got, expect) << out.str();
    }
}

// --- journal list ----------------------------------------------------------

TEST(JournalList, HeaderInAnyOrderAndCase) {
    std::stringstream ss("ISSN , Title\n0022-0418,Journal of Documentation\n,Scientometrics\n");
    auto list = read_journal_list(ss);
    ASSERT_EQ(list.records.size(), 2u);
    EXPECT_EQ(list.records[0].title, "Journal of Documentation");
    EXPECT_EQ(list.records[0].issn, "0022-0418");
    EXPECT_FALSE(list.records[1].issn);
}

TEST(JournalList, BlankAndDuplicateTitlesAreCounted) {
    std::stringstream ss("title\nA\n\n  \nB\nA\n");
    auto list = read_journal_list(ss);
    EXPECT_EQ(list.records.size(), 2u);
    EXPECT_EQ(list.blank_titles, 2u);
    EXPECT_EQ(list.duplicates, 1u);
}

TEST(JournalList, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::stringstream ss(text);
        try {
            read_journal_list(ss);
        } catch (const LoadError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("title,issn\nA,0022-0418\nB,12345678\n"), 3u);
    EXPECT_EQ(line_of("title,issn\nA,0022-0418,extra\n"), 2u);
    EXPECT_EQ(line_of("name\nA\n"), 1u);
    EXPECT_EQ(line_of(""), 1u);
    EXPECT_THROW(load_journal_list("/nonexistent/journals.csv"), LoadError);
}

TEST(JournalList, IssnFormat) {
    EXPECT_TRUE(valid_issn("0022-0418"));
    EXPECT_TRUE(valid_issn("1007-919X"));
    EXPECT_FALSE(valid_issn("00220418"));
    EXPECT_FALSE(valid_issn("0022-041"));
    EXPECT_FALSE(valid_issn("X022-0418"));
}

TEST(JournalList, FixtureLoads) {
    auto list = load_journal_list(fixture("journals50.csv"));
    EXPECT_EQ(list.records.size(), 50u);
    EXPECT_EQ(list.blank_titles, 0u);
    EXPECT_TRUE(std::any_of(list.records.begin(), list.records.end(),
                            [](const JournalRecord& r) { return r.title == "Electronic Library, The"; }));
}

// --- assess_coverage -------------------------------------------------------

namespace {

app::AppConfig fixture_config() {
    return app::AppConfig::load(fixture("coverage_config.json"));
}

}  // namespace

TEST(Coverage, PlantedFixtureGroundTruth) {
    auto cfg = fixture_config();
    app::Workspace ws(cfg);
    auto list = load_journal_list(fixture("journals50.csv"));
    CoverageOptions opts;
    opts.do_backlinks = true;
    auto rep = assess_coverage(ws.searcher("standard"), list.records, opts);
    ASSERT_EQ(rep.rows.size(), 50u);
    EXPECT_DOUBLE_EQ(rep.covered_fraction, 0.60);

    const auto& corpus = *ws.corpus();
    std::size_t checked = 0;
    for (std::size_t i = 0; i < cfg.sim.planted.size(); ++i) {
        const auto& plant = cfg.sim.planted[i];
        auto row = std::find_if(rep.rows.begin(), rep.rows.end(),
                                [&](const CoverageRow& r) { return normalize_phrase(r.journal.title) == normalize_phrase(plant.phrase); });
        ASSERT_NE(row, rep.rows.end()) << plant.phrase;
        EXPECT_EQ(row->status, "ok");
        EXPECT_EQ(row->hits, plant.mentions + 1) << plant.phrase;
        std::uint32_t home = corpus.planted_homepages()[i];
        ASSERT_TRUE(row->top_url);
        EXPECT_EQ(*row->top_url, corpus.document(home).url);
        std::uint64_t links = 0;
        for (const auto& d : corpus.documents()) {
            links += std::binary_search(d.outlinks.begin(), d.outlinks.end(), home);
        }
        ASSERT_TRUE(row->backlinks);
        EXPECT_EQ(*row->backlinks, links);
        EXPECT_EQ(*row->backlinks, plant.inlinks);
        ++checked;
    }
    EXPECT_EQ(checked, 30u);
    for (const auto& row : rep.rows) {
        if (row.hits == 0) {
            EXPECT_EQ(row.status, "no-hits");
            EXPECT_FALSE(row.backlinks);
        }
    }
    EXPECT_EQ(rep.quota_spent, 50u + 30u);
    EXPECT_EQ(rep.hit_histogram[0], 20u);
}

TEST(Coverage, ZeroJournalsIsEmptyReport) {
    app::Workspace ws(fixture_config());
    auto rep = assess_coverage(ws.searcher("standard"), {}, {});
    EXPECT_TRUE(rep.rows.empty());
    EXPECT_EQ(rep.covered_fraction, 0.0);
}

TEST(Coverage, MaxJournalsLimitsRows) {
    app::Workspace ws(fixture_config());
    auto list = load_journal_list(fixture("journals50.csv"));
    CoverageOptions opts;
    opts.max_journals = 7;
    EXPECT_EQ(assess_coverage(ws.searcher("standard"), list.records, opts).rows.size(), 7u);
}

TEST(Coverage, QuotaStopThenResumeEqualsUninterruptedRun) {
    TempDir tmp;
    auto list = load_journal_list(fixture("journals50.csv"));
    CoverageOptions opts;
    opts.do_backlinks = true;

    app::Workspace full(fixture_config());
    auto uninterrupted = assess_coverage(full.searcher("standard"), list.records, opts);

    auto cfg = fixture_config();
    cfg.quota.daily_limit = 33;
    cfg.quota_state = tmp / "quota.json";
    opts.checkpoint = tmp / "ckpt.jsonl";
    opts.checkpoint_every = 4;

    int runs = 0;
    CoverageReport last;
    Date day = *cfg.today;
    do {
        cfg.today = day;
        app::Workspace ws(cfg);
        last = assess_coverage(ws.searcher("standard"), list.records, opts);
        day = day.next();
        ++runs;
        if (last.quota_exhausted) {
            auto it = std::find_if(last.rows.begin(), last.rows.end(),
                                   [](const CoverageRow& r) { return !r.completed(); });
            ASSERT_NE(it, last.rows.end());
            EXPECT_TRUE(std::all_of(it, last.rows.end(),
                                    [](const CoverageRow& r) { return r.status == "error:quota"; }));
        }
    } while (last.quota_exhausted && runs < 10);
    EXPECT_GE(runs, 3);
    EXPECT_EQ(last, uninterrupted);
}

namespace {

// Delegates to a sim backend but fails for one phrase.
class FailingFor : public backend::Backend {
public:
    FailingFor(std::shared_ptr<const backend::Backend> inner, std::string phrase)
        : inner_(std::move(inner)), phrase_(std::move(phrase)) {}
    std::string_view kind() const noexcept override { return "failing"; }
    ResultPage search(const Query& q, std::size_t start, std::size_t n, Date as_of) const override {
        if (q.phrase == phrase_) throw BackendUnavailable("down for this one", true);
        return inner_->search(q, start, n, as_of);
    }

private:
    std::shared_ptr<const backend::Backend> inner_;
    std::string phrase_;
};

}  // namespace

TEST(Coverage, BackendFailureMarksOnlyThatRow) {
    app::Workspace ws(fixture_config());
    auto inner = std::make_shared<backend::SimBackend>(ws.corpus(), sim::InterfaceKind::Standard, ws.config().epoch);
    backend::Searcher s(std::make_shared<FailingFor>(inner, "scientometrics"),
                        std::make_shared<backend::QuotaLedger>(), ws.clock());
    auto list = load_journal_list(fixture("journals50.csv"));
    auto rep = assess_coverage(s, list.records, {});
    std::size_t errors = 0;
    for (const auto& row : rep.rows) {
        if (row.journal.title == "Scientometrics") {
            EXPECT_EQ(row.status, "error:backend-unavailable");
        }
        errors += !row.completed();
    }
    EXPECT_EQ(errors, 1u);
    EXPECT_NEAR(rep.covered_fraction, 29.0 / 50.0, 1e-12);
}

TEST(Coverage, SummaryCsvReparsesToRows) {
    app::Workspace ws(fixture_config());
    auto list = load_journal_list(fixture("journals50.csv"));
    CoverageOptions opts;
    opts.do_backlinks = true;
    auto rep = assess_coverage(ws.searcher("standard"), list.records, opts);
    auto summary = summarize(rep);
    EXPECT_NE(summary.text.find("covered_fraction: 0.6000"), std::string::npos);
    std::stringstream ss(summary.csv);
    auto recs = read_csv(ss);
    ASSERT_EQ(recs.size(), 51u);
    EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"title", "hits", "top_url", "backlinks", "status"}));
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        const auto& f = recs[i + 1].fields;
        EXPECT_EQ(f[0], row.journal.title);
        EXPECT_EQ(f[1], std::to_string(row.hits));
        EXPECT_EQ(f[2], row.top_url.value_or(""));
        EXPECT_EQ(f[3], row.backlinks ? std::to_string(*row.backlinks) : "");
        EXPECT_EQ(f[4], row.status);
    }
}

TEST(Coverage, AllZeroRowsSummarizeToZero) {
    std::vector<CoverageRow> rows = {{{"A", std::nullopt}, 0, std::nullopt, std::nullopt, "no-hits"},
                                     {{"B", std::nullopt}, 0, std::nullopt, std::nullopt, "no-hits"}};
    auto rep = make_report(rows);
    EXPECT_EQ(rep.covered_fraction, 0.0);
    EXPECT_NE(summarize(rep).text.find("covered_fraction: 0.0000"), std::string::npos);
}

TEST(Coverage, HistogramBuckets) {
    EXPECT_EQ(histogram_bucket(0), 0u);
    EXPECT_EQ(histogram_bucket(9), 1u);
    EXPECT_EQ(histogram_bucket(10), 2u);
    EXPECT_EQ(histogram_bucket(999), 3u);
    EXPECT_EQ(histogram_bucket(1000), 4u);
}

TEST(Coverage, RowJsonRoundTrip) {
    CoverageRow row{{"T, with comma", "0022-0418"}, 5, "http://a.org/", 2, "ok"};
    EXPECT_EQ(row_from_json(row_json(row)), row);
    CoverageRow bare{{"U", std::nullopt}, 0, std::nullopt, std::nullopt, "no-hits"};
    EXPECT_EQ(row_from_json(row_json(bare)), bare);
}
