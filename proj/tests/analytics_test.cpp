#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "support.hpp"
#include "webometer/analytics/formats.hpp"
#include "webometer/analytics/overlap.hpp"
#include "webometer/analytics/power_law.hpp"
#include "webometer/analytics/tld.hpp"
#include "webometer/analytics/url.hpp"
#include "webometer/backend/backend.hpp"
#include "webometer/backend/searcher.hpp"
#include "webometer/errors.hpp"
#include "webometer/sim/corpus.hpp"

using namespace webometer;
using namespace webometer::analytics;
using testing_support::Gen;

// --- url -------------------------------------------------------------------

TEST(Url, ParsesComponents) {
    auto p = parse_url("HTTP://user:pw@WWW.Example.ORG:8080/a/b.pdf?x=1#top");
    EXPECT_EQ(p.scheme, "http");
    EXPECT_EQ(p.userinfo, "user:pw");
    EXPECT_EQ(p.host, "www.example.org");
    EXPECT_EQ(p.port, 8080u);
    EXPECT_EQ(p.path, "/a/b.pdf");
    EXPECT_EQ(p.query, "x=1");
    EXPECT_EQ(p.fragment, "top");
}

TEST(Url, RejectsMalformed) {
    for (const char* bad : {"", "www.example.org", "http://", "http:///path", "http://host:port/", "mailto:x@y.z",
                            "http://host:99999/"}) {
        EXPECT_THROW(parse_url(bad), ParseError) << bad;
    }
}

TEST(Url, NormalizationExamples) {
    EXPECT_EQ(normalize_url("HTTP://WWW.Example.COM:80/"), "http://www.example.com");
    EXPECT_EQ(normalize_url("https://a.org:443/x/"), "https://a.org/x/");
    EXPECT_EQ(normalize_url("http://a.org:8080/x"), "http://a.org:8080/x");
    EXPECT_EQ(normalize_url("http://a.org/x?B=2&a=1#frag"), "http://a.org/x?B=2&a=1");
    EXPECT_EQ(normalize_url("http://a.org/Path/Case"), "http://a.org/Path/Case");
    EXPECT_EQ(normalize_url("ftp://files.a.org:21/pub"), "ftp://files.a.org/pub");
}

TEST(Url, NormalizationIsIdempotent) {
    for (const char* u : {"HTTP://WWW.Example.COM:80/", "http://a.org/x?q#f", "https://[::1]:443/", "http://1.2.3.4/x"}) {
        auto once = normalize_url(u);
        EXPECT_EQ(normalize_url(once), once) << u;
    }
}

TEST(Url, TldExtraction) {
    EXPECT_EQ(extract_tld("http://www.uni-duesseldorf.DE/x"), "de");
    EXPECT_EQ(extract_tld("http://www.bbc.co.uk/"), "uk");
    EXPECT_EQ(extract_tld("http://example.com./"), "com");
    EXPECT_EQ(extract_tld("http://192.168.0.1/x"), kIpTld);
    EXPECT_EQ(extract_tld("http://[2001:db8::1]:8080/"), kIpTld);
    EXPECT_EQ(extract_tld("http://localhost/"), "localhost");
    EXPECT_FALSE(is_ip_literal("256.1.1.1"));
    EXPECT_FALSE(is_ip_literal("1.2.3"));
    EXPECT_TRUE(is_ip_literal("10.0.0.255"));
}

TEST(Url, ExtensionRule) {
    EXPECT_EQ(url_extension("http://a.org/report.PDF"), "pdf");
    EXPECT_EQ(url_extension("http://a.org/dir.v2/readme"), "html");
    EXPECT_EQ(url_extension("http://a.org/"), "html");
    EXPECT_EQ(url_extension("http://a.org"), "html");
    EXPECT_EQ(url_extension("http://a.org/archive.tar.gz?dl=1"), "gz");
    EXPECT_EQ(url_extension("http://a.org/x.toolong"), "html");
    EXPECT_EQ(url_extension("http://a.org/x.p-s"), "html");
    EXPECT_EQ(url_extension("http://a.org/x."), "html");
}

// --- tld distribution ------------------------------------------------------

TEST(TldDistribution, CountsAndRanks) {
    std::vector<std::string> urls = {"http://a.com/", "http://b.com/", "http://c.de/", "http://d.org/",
                                     "http://e.org/", "http://f.com/", "not a url",     "http://1.2.3.4/"};
    auto d = tld_distribution(urls);
    EXPECT_EQ(d.total_urls, 7u);
    EXPECT_EQ(d.skipped, 1u);
    ASSERT_EQ(d.ranked.size(), 4u);
    EXPECT_EQ(d.ranked[0], (RankedEntry{1, "com", 3}));
    EXPECT_EQ(d.ranked[1], (RankedEntry{2, "org", 2}));
    // ties by label ascending
    EXPECT_EQ(d.ranked[2], (RankedEntry{3, "(ip)", 1}));
    EXPECT_EQ(d.ranked[3], (RankedEntry{4, "de", 1}));
}

TEST(TldDistribution, TotalPlusSkippedEqualsInputAndIsOrderFree) {
    Gen g(3);
    const std::vector<std::string> pool = {"http://a.com/", "http://b.de/x", "bogus", "http://c.org",
                                           "https://d.edu/", "::", "http://e.jp/", "http://[::1]/"};
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> urls;
        int n = g.range(0, 60);
        for (int i = 0; i < n; ++i) {
            urls.push_back(g.pick(pool));
        }
        auto d = tld_distribution(urls);
        ASSERT_EQ(d.total_urls + d.skipped, urls.size());
        std::uint64_t sum = 0;
        for (const auto& e : d.ranked) {
            sum += e.count;
        }
        ASSERT_EQ(sum, d.total_urls);
        std::shuffle(urls.begin(), urls.end(), g.engine());
        ASSERT_EQ(tld_distribution(urls), d);
    }
}

// --- power law -------------------------------------------------------------

namespace {

// Textbook OLS with raw sums, independent of the library's centered form.
std::pair<double, double> reference_ols(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

}  // namespace

TEST(PowerLaw, ExactHarmonicExample) {
    std::vector<double> f = {64, 32, 64.0 / 3.0, 16, 12.8};
    auto fit = fit_rank_frequency(f, FitMethod::OlsLogLog);
    EXPECT_NEAR(fit.exponent_a, 1.0, 1e-9);
    EXPECT_NEAR(fit.c(), 64.0, 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
    EXPECT_EQ(fit.n_points, 5u);
    EXPECT_NEAR(fit.predict(4), 16.0, 1e-9);
}

TEST(PowerLaw, RecoversExactSyntheticCurves) {
    Gen g(17);
    for (int trial = 0; trial < 100; ++trial) {
        double a = g.real(0.3, 3.0);
        double c = g.real(1.0, 1e5);
        int n = g.range(3, 60);
        std::vector<double> f;
        for (int r = 1; r <= n; ++r) {
            f.push_back(c * std::pow(r, -a));
        }
        auto fit = fit_rank_frequency(f, FitMethod::OlsLogLog);
        ASSERT_NEAR(fit.exponent_a, a, 1e-9);
        ASSERT_NEAR(fit.c() / c, 1.0, 1e-9);
        ASSERT_NEAR(fit.r_squared, 1.0, 1e-9);
    }
}

TEST(PowerLaw, AgreesWithReferenceRegressionOnNoisyData) {
    Gen g(18);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f, x, y;
        int n = g.range(3, 40);
        for (int r = 1; r <= n; ++r) {
            f.push_back(std::max(1.0, std::round(500.0 * std::pow(r, -1.1) * g.real(0.5, 1.5))));
            x.push_back(std::log(r));
            y.push_back(std::log(f.back()));
        }
        auto [slope, intercept] = reference_ols(x, y);
        auto fit = fit_rank_frequency(f, FitMethod::OlsLogLog);
        ASSERT_NEAR(fit.exponent_a, -slope, 1e-9);
        ASSERT_NEAR(fit.log_c, intercept, 1e-9);
        ASSERT_GE(fit.r_squared, 0.0);
        ASSERT_LE(fit.r_squared, 1.0);
    }
}

TEST(PowerLaw, ScalingCountsLeavesExponentAlone) {
    Gen g(19);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> f;
        int n = g.range(3, 25);
        for (int r = 1; r <= n; ++r) {
            f.push_back(g.real(1, 1000));
        }
        std::sort(f.rbegin(), f.rend());
        double k = g.real(0.1, 50);
        std::vector<double> scaled = f;
        for (auto& v : scaled) {
            v *= k;
        }
        auto a = fit_rank_frequency(f, FitMethod::OlsLogLog);
        auto b = fit_rank_frequency(scaled, FitMethod::OlsLogLog);
        ASSERT_NEAR(a.exponent_a, b.exponent_a, 1e-9);
        ASSERT_NEAR(a.r_squared, b.r_squared, 1e-9);
        ASSERT_NEAR(b.log_c - a.log_c, std::log(k), 1e-9);
    }
}

TEST(PowerLaw, TooFewRanksIsInsufficientData) {
    std::vector<double> two = {10, 5};
    EXPECT_THROW(fit_rank_frequency(two, FitMethod::OlsLogLog), InsufficientData);
    EXPECT_THROW(fit_rank_frequency(two, FitMethod::MleDiscrete), InsufficientData);
    std::vector<double> zero = {10, 5, 0};
    EXPECT_THROW(fit_rank_frequency(zero, FitMethod::OlsLogLog), std::logic_error);
}

TEST(PowerLaw, DiscreteMleFollowsItsClosedForm) {
    std::vector<double> f = {97, 40, 22, 9, 4, 2, 1, 1};
    double s = 0;
    for (double v : f) {
        s += std::log(v / 0.5);
    }
    double alpha = 1.0 + f.size() / s;
    auto fit = fit_rank_frequency(f, FitMethod::MleDiscrete);
    ASSERT_TRUE(fit.count_exponent);
    EXPECT_NEAR(*fit.count_exponent, alpha, 1e-12);
    EXPECT_NEAR(fit.exponent_a, 1.0 / (alpha - 1.0), 1e-12);
    EXPECT_NEAR(fit.c(), 97.0, 1e-9);
    EXPECT_EQ(fit.method, FitMethod::MleDiscrete);
}

TEST(PowerLaw, MethodLabels) {
    EXPECT_EQ(parse_fit_method("ols-loglog"), FitMethod::OlsLogLog);
    EXPECT_EQ(parse_fit_method("mle-discrete"), FitMethod::MleDiscrete);
    EXPECT_THROW(parse_fit_method("spline"), QueryError);
    EXPECT_EQ(to_string(FitMethod::MleDiscrete), "mle-discrete");
}

TEST(PowerLaw, JsonShape) {
    std::vector<std::string> urls;
    for (int i = 0; i < 8; ++i) urls.push_back("http://a" + std::to_string(i) + ".com/");
    for (int i = 0; i < 4; ++i) urls.push_back("http://a" + std::to_string(i) + ".org/");
    for (int i = 0; i < 2; ++i) urls.push_back("http://a" + std::to_string(i) + ".de/");
    auto dist = tld_distribution(urls);
    auto fit = fit_power_law(dist, FitMethod::OlsLogLog);
    auto j = distribution_json(dist, fit);
    EXPECT_EQ(j.at("ranked").at(0), (nlohmann::json{{"rank", 1}, {"tld", "com"}, {"count", 8}}));
    for (const char* k : {"a", "C", "r2", "method", "n"}) {
        EXPECT_TRUE(j.at("fit").contains(k)) << k;
    }
    EXPECT_TRUE(distribution_json(dist, std::nullopt).at("fit").is_null());
}

// --- overlap ---------------------------------------------------------------

TEST(Overlap, Examples) {
    std::vector<std::string> a = {"http://a.org/", "http://b.org/x", "http://c.org/"};
    std::vector<std::string> b = {"HTTP://A.ORG", "http://c.org/", "http://d.org/"};
    auto r = overlap(a, b);
    EXPECT_EQ(r.intersection, 2u);
    EXPECT_DOUBLE_EQ(r.jaccard, 0.5);
    EXPECT_EQ(r.shared_prefix, 1u);
    EXPECT_EQ(r.k, 3u);

    std::vector<std::string> none;
    EXPECT_DOUBLE_EQ(overlap(none, none).jaccard, 1.0);
    EXPECT_DOUBLE_EQ(overlap(a, none).jaccard, 0.0);
    EXPECT_DOUBLE_EQ(overlap(a, a).jaccard, 1.0);
    EXPECT_EQ(overlap(a, a).shared_prefix, 3u);
}

TEST(Overlap, SymmetricAndMatchesSetOracle) {
    Gen g(23);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> a, b;
        for (int i = g.range(0, 30); i > 0; --i) a.push_back("http://h" + std::to_string(g.range(0, 40)) + ".org/");
        for (int i = g.range(0, 30); i > 0; --i) b.push_back("http://h" + std::to_string(g.range(0, 40)) + ".org/");
        auto ab = overlap(a, b);
        auto ba = overlap(b, a);
        ASSERT_EQ(ab.intersection, ba.intersection);
        ASSERT_DOUBLE_EQ(ab.jaccard, ba.jaccard);
        ASSERT_EQ(ab.shared_prefix, ba.shared_prefix);

        std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end()), inter, uni;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.end()));
        std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
        ASSERT_EQ(ab.intersection, inter.size());
        ASSERT_DOUBLE_EQ(ab.jaccard, uni.empty() ? 1.0 : double(inter.size()) / double(uni.size()));
        ASSERT_GE(ab.jaccard, 0.0);
        ASSERT_LE(ab.jaccard, 1.0);
    }
}

// --- formats ---------------------------------------------------------------

TEST(Formats, ClassifyUrlsListsZeroExtensions) {
    std::vector<std::string> urls = {"http://a.org/x.pdf", "http://a.org/", "http://a.org/y.PDF", "http://a.org/z.rtf"};
    std::vector<std::string> exts = {"pdf", "html", "ps"};
    auto d = classify_urls(urls, exts);
    EXPECT_EQ(d.total, 4u);
    EXPECT_EQ(d.shares.at("pdf").count, 2u);
    EXPECT_EQ(d.shares.at("html").count, 1u);
    EXPECT_EQ(d.shares.at("ps").count, 0u);
    EXPECT_EQ(d.shares.at("rtf").count, 1u);
    double sum = 0;
    for (const auto& [e, s] : d.shares) sum += s.fraction;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Formats, EmptyCountsGiveZeroFractions) {
    auto d = shares_from_counts({{"pdf", 0}, {"html", 0}}, FormatMode::FacetQuery);
    EXPECT_TRUE(d.empty());
    EXPECT_EQ(d.shares.at("pdf").fraction, 0.0);
}

TEST(Formats, ModeLabels) {
    EXPECT_EQ(parse_format_mode("facet-query"), FormatMode::FacetQuery);
    EXPECT_EQ(parse_format_mode("url-extension"), FormatMode::UrlExtension);
    EXPECT_THROW(parse_format_mode("guess"), QueryError);
}

TEST(Formats, FacetCountsEqualCorpusScan) {
    auto cfg = testing_support::small_config(41, 2000);
    auto corpus = std::make_shared<const sim::SimCorpus>(sim::SimCorpus::generate(cfg));
    Date epoch(2004, 7, 1);
    backend::Searcher s(std::make_shared<backend::SimBackend>(corpus, sim::InterfaceKind::Standard, epoch),
                        std::make_shared<backend::QuotaLedger>(), fixed_clock(epoch.plus_days(500)));
    std::vector<std::string> exts;
    for (const auto& [e, w] : cfg.filetype_weights) exts.push_back(e);
    for (const char* text : {"*", "w4", "w9 site:com"}) {
        auto q = Query::parse(text);
        auto d = format_distribution(s, q, exts, FormatMode::FacetQuery, 100);
        std::map<std::string, std::uint64_t> oracle;
        for (const auto& doc : corpus->documents()) {
            bool has_terms = std::string(text) == "*" ||
                             doc.term_count(corpus->term_id(std::string(text).substr(0, 2))) > 0;
            bool site_ok = std::string(text).find("site:com") == std::string::npos || doc.tld == "com";
            if (has_terms && site_ok) ++oracle[doc.filetype];
        }
        for (const auto& e : exts) {
            EXPECT_EQ(d.shares.at(e).count, oracle[e]) << text << " " << e;
        }
    }
}
