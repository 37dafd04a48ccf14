// webometer: collection, analysis and reporting over the configured search
// backends. Exit codes: 0 ok, 1 usage/config/backend, 2 partial or empty
// result, 3 quota exhausted.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <httplib.h>

#include "webometer/analytics/formats.hpp"
#include "webometer/analytics/power_law.hpp"
#include "webometer/analytics/tld.hpp"
#include "webometer/app/config.hpp"
#include "webometer/coverage/coverage.hpp"
#include "webometer/errors.hpp"
#include "webometer/plot/svg.hpp"
#include "webometer/service/live_service.hpp"
#include "webometer/timeseries/collect.hpp"
#include "webometer/timeseries/stats.hpp"
#include "webometer/timeseries/store.hpp"

namespace {

using namespace webometer;

enum Exit { kOk = 0, kFail = 1, kPartial = 2, kQuota = 3 };

struct Globals {
    std::string config_path;
    std::string store;
    std::string today;
    std::string quota_state;
};

app::AppConfig load_config(const Globals& g) {
    std::string path = g.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("WEBOMETER_CONFIG")) {
            path = env;
        }
    }
    auto cfg = path.empty() ? app::AppConfig::defaults() : app::AppConfig::load(path);
    if (!g.store.empty()) {
        cfg.store_path = g.store;
    }
    if (!g.today.empty()) {
        cfg.today = Date::parse(g.today);
    }
    if (!g.quota_state.empty()) {
        cfg.quota_state = g.quota_state;
    }
    return cfg;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    if (!out) {
        throw StoreError("cannot write " + path);
    }
}

int report_error(const Error& e) {
    fmt::print(stderr, "error [{}]: {}\n", e.kind(), e.what());
    if (const auto* q = dynamic_cast<const QuotaError*>(&e)) {
        fmt::print(stderr, "daily quota exhausted; retry after {}\n", q->reset_date().iso());
        return kQuota;
    }
    if (const auto* b = dynamic_cast<const BackendUnavailable*>(&e)) {
        if (b->retryable()) {
            fmt::print(stderr, "the backend may recover; retrying later can succeed\n");
        }
        return kFail;
    }
    if (dynamic_cast<const InsufficientData*>(&e) || dynamic_cast<const UndefinedCorrelation*>(&e)) {
        return kPartial;
    }
    return kFail;
}

// collect ---------------------------------------------------------------

struct CollectArgs {
    std::string queries;
    std::string day;
    int days = 1;
    std::vector<std::string> backends;
};

int cmd_collect(const Globals& g, const CollectArgs& a) {
    app::Workspace ws(load_config(g));
    std::ifstream in(a.queries);
    if (!in) {
        throw LoadError(0, "cannot open query file " + a.queries);
    }
    auto queries = timeseries::read_query_file(in);
    auto named = ws.named(a.backends);
    Date first = a.day.empty() ? ws.clock()() : Date::parse(a.day);
    if (a.days < 1) {
        throw RangeError("--days must be at least 1");
    }
    std::size_t missing = 0;
    for (int i = 0; i < a.days; ++i) {
        auto rep = timeseries::collect_to_file(named, queries, first.plus_days(i), ws.config().store_path);
        for (const auto& o : rep.outcomes) {
            fmt::print("{} {} {} {} {}{}\n", rep.day.iso(), o.query_id, o.backend,
                       o.hits ? std::to_string(*o.hits) : "-", timeseries::to_string(o.status),
                       o.error.empty() ? "" : " (" + o.error + ")");
        }
        missing += rep.missing();
    }
    return missing == 0 ? kOk : kPartial;
}

// compare ---------------------------------------------------------------

struct CompareArgs {
    std::string query;
    std::size_t max_lag = 7;
    std::string x;
    std::string y;
    std::string plot;
};

int cmd_compare(const Globals& g, const CompareArgs& a) {
    auto cfg = load_config(g);
    auto names = cfg.backend_names();
    std::string x_name = a.x.empty() ? names.front() : a.x;
    std::string y_name = a.y.empty() ? (names.size() > 1 ? names[1] : names.front()) : a.y;
    auto store = timeseries::SampleStore::load(cfg.store_path);
    auto x = store.series(a.query, x_name);
    auto y = store.series(a.query, y_name);
    if (x.empty() || y.empty()) {
        fmt::print(stderr, "error: no series for '{}' on {}\n", a.query, x.empty() ? x_name : y_name);
        return kFail;
    }
    if (!a.plot.empty()) {
        Date origin = std::min(x.points.front().first, y.points.front().first);
        Date last = std::max(x.points.back().first, y.points.back().first);
        std::vector<plot::LineSeries> lines;
        for (const auto* s : {&x, &y}) {
            plot::LineSeries ls{s->interface, {}};
            for (const auto& [day, hits] : s->points) {
                ls.points.emplace_back(static_cast<double>(day.days_since(origin)), static_cast<double>(hits));
            }
            lines.push_back(std::move(ls));
        }
        write_file(a.plot, plot::line_chart(lines, {"Hit counts: " + a.query, "day", "hits"},
                                            std::make_pair(origin.iso(), last.iso())));
    }
    auto rep = timeseries::lag_correlate(x, y, a.max_lag);
    fmt::print("query: {}\nx: {} ({} days)\ny: {} ({} days)\n", a.query, x_name, x.points.size(), y_name,
               y.points.size());
    fmt::print("lag  r\n");
    for (const auto& [k, r] : rep.correlations) {
        fmt::print("{:>3}  {:.6f}\n", k, r);
    }
    fmt::print("best_lag={} best_r={:.6f}\n", rep.best_lag, rep.best_r);
    try {
        auto ratio = timeseries::ratio_summary(x, y);
        fmt::print("ratio y/x: mean={:.4f} min={:.4f} max={:.4f} over {} days\n", ratio.mean_ratio, ratio.min,
                   ratio.max, ratio.aligned_days);
    } catch (const InsufficientData&) {
        fmt::print("ratio y/x: undefined (no aligned day with x > 0)\n");
    }
    return kOk;
}

// tld -------------------------------------------------------------------

struct TldArgs {
    std::string query;
    std::size_t n = 250;
    std::string backend;
    std::string fit = "ols-loglog";
    std::string plot;
    bool json = false;
};

int cmd_tld(const Globals& g, const TldArgs& a) {
    app::Workspace ws(load_config(g));
    auto name = a.backend.empty() ? ws.backend_names().front() : a.backend;
    auto& searcher = ws.searcher(name);
    auto method = analytics::parse_fit_method(a.fit);
    auto query = Query::parse(a.query);
    if (a.n < 1) {
        throw RangeError("--n must be at least 1");
    }
    auto top = searcher.fetch_top(query, a.n);
    auto dist = analytics::tld_distribution(top.urls);
    if (top.truncated) {
        fmt::print(stderr, "warning: listing truncated after {} URLs: {}\n", top.urls.size(), top.truncation_reason);
    }
    if (dist.total_urls == 0) {
        fmt::print("empty distribution: no URLs for {}\n", query.to_string());
        return kPartial;
    }
    std::optional<analytics::PowerLawFit> fit;
    std::string fit_error;
    try {
        fit = analytics::fit_power_law(dist, method);
    } catch (const InsufficientData& e) {
        fit_error = e.what();
    }
    if (a.json) {
        fmt::print("{}\n", analytics::distribution_json(dist, fit).dump(2));
    } else {
        fmt::print("query: {}\nbackend: {}\nrequested: {} analyzed: {} skipped: {}\n", query.to_string(), name, a.n,
                   dist.total_urls, dist.skipped);
        fmt::print("rank  tld        count\n");
        for (const auto& e : dist.ranked) {
            fmt::print("{:>4}  {:<9} {:>6}\n", e.rank, e.label, e.count);
        }
        if (fit) {
            fmt::print("fit ({}): a={:.6f} C={:.6f} r2={:.6f} n={}\n", analytics::to_string(fit->method),
                       fit->exponent_a, fit->c(), fit->r_squared, fit->n_points);
        } else {
            fmt::print("fit: none ({})\n", fit_error);
        }
    }
    if (!a.plot.empty()) {
        plot::LineSeries pts{"TLD counts", {}};
        for (const auto& e : dist.ranked) {
            pts.points.emplace_back(static_cast<double>(e.rank), static_cast<double>(e.count));
        }
        std::optional<plot::PowerLawLine> line;
        if (fit) {
            line = plot::PowerLawLine{fit->c(), fit->exponent_a};
        }
        write_file(a.plot, plot::loglog_scatter(pts, line, {"TLD rank-frequency: " + query.to_string(), "rank",
                                                            "count"}));
    }
    if (!fit || top.truncated) {
        return kPartial;
    }
    return kOk;
}

// formats ---------------------------------------------------------------

struct FormatArgs {
    std::string query;
    std::string mode = "facet-query";
    std::optional<std::size_t> k;
    std::vector<std::string> ext;
    std::string backend;
    std::string plot;
    bool json = false;
};

int cmd_formats(const Globals& g, const FormatArgs& a) {
    app::Workspace ws(load_config(g));
    auto name = a.backend.empty() ? ws.backend_names().front() : a.backend;
    auto& searcher = ws.searcher(name);
    auto mode = analytics::parse_format_mode(a.mode);
    auto query = Query::parse(a.query);
    auto exts = a.ext.empty() ? ws.default_extensions() : a.ext;
    auto k = a.k.value_or(ws.config().default_k);
    auto dist = analytics::format_distribution(searcher, query, exts, mode, k);
    if (a.json) {
        fmt::print("{}\n", analytics::format_json(dist).dump(2));
    } else {
        fmt::print("query: {}\nmode: {}\ntotal: {}\n", query.to_string(), analytics::to_string(dist.mode),
                   dist.total);
        fmt::print("ext      count  fraction\n");
        for (const auto& [ext, share] : dist.shares) {
            fmt::print("{:<6} {:>7}  {:.4f}\n", ext, share.count, share.fraction);
        }
    }
    if (!a.plot.empty()) {
        std::vector<std::pair<std::string, double>> bars;
        for (const auto& [ext, share] : dist.shares) {
            bars.emplace_back(ext, share.fraction);
        }
        write_file(a.plot, plot::bar_chart(bars, {"File formats: " + query.to_string(), "format", "fraction"}));
    }
    if (dist.empty()) {
        fmt::print("empty distribution: no results\n");
        return kPartial;
    }
    return dist.truncated ? kPartial : kOk;
}

// coverage --------------------------------------------------------------

struct CoverageArgs {
    std::string journals;
    bool backlinks = false;
    std::string checkpoint;
    std::string out;
    std::optional<std::size_t> max;
    std::string backend;
};

int cmd_coverage(const Globals& g, const CoverageArgs& a) {
    auto list = coverage::load_journal_list(a.journals);
    app::Workspace ws(load_config(g));
    auto name = a.backend.empty() ? ws.backend_names().front() : a.backend;
    coverage::CoverageOptions opts;
    opts.do_backlinks = a.backlinks;
    opts.max_journals = a.max;
    opts.checkpoint = a.checkpoint.empty() ? a.journals + ".checkpoint.jsonl" : a.checkpoint;
    auto report = coverage::assess_coverage(ws.searcher(name), list.records, opts);
    auto summary = coverage::summarize(report);
    if (a.out.empty()) {
        fmt::print("{}", summary.csv);
    } else {
        write_file(a.out, summary.csv);
    }
    fmt::print(stderr, "{}", summary.text);
    if (list.blank_titles || list.duplicates) {
        fmt::print(stderr, "skipped {} blank and {} duplicate titles\n", list.blank_titles, list.duplicates);
    }
    if (report.quota_exhausted) {
        fmt::print(stderr, "checkpoint kept at {}\n", opts.checkpoint->string());
        return kQuota;
    }
    for (const auto& row : report.rows) {
        if (!row.completed()) {
            return kPartial;
        }
    }
    return kOk;
}

// serve -----------------------------------------------------------------

struct ServeArgs {
    int port = 8077;
    std::string host = "127.0.0.1";
};

int cmd_serve(const Globals& g, const ServeArgs& a) {
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

    app::Workspace ws(load_config(g));
    service::LiveService svc(ws);
    httplib::Server server;
    svc.mount(server);
    server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
        fmt::print(stderr, "{} {} -> {}\n", req.method, req.target, res.status);
    });
    if (!server.bind_to_port(a.host, a.port)) {
        fmt::print(stderr, "error: cannot listen on {}:{}\n", a.host, a.port);
        return kFail;
    }
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&stop_signals, &sig);
        server.stop();
    });
    fmt::print(stderr, "serving on http://{}:{}/\n", a.host, a.port);
    server.listen_after_bind();
    if (waiter.joinable()) {
        // listen ended on its own; wake the waiter so it can exit.
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
    }
    fmt::print(stderr, "stopped\n");
    return kOk;
}

// export-corpus ---------------------------------------------------------

int cmd_export(const Globals& g, const std::string& out) {
    app::Workspace ws(load_config(g));
    if (!ws.corpus()) {
        throw ConfigError("backends", "no simulated backend configured");
    }
    if (out.empty() || out == "-") {
        ws.corpus()->write_jsonl(std::cout);
    } else {
        std::ofstream f(out);
        ws.corpus()->write_jsonl(f);
        if (!f) {
            throw StoreError("cannot write " + out);
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Webometric measurements over quota-limited search backends"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "JSON config file (default: $WEBOMETER_CONFIG)");
    app.add_option("--store", g.store, "sample store JSONL (overrides config)");
    app.add_option("--today", g.today, "fixed current date YYYY-MM-DD (overrides config)");
    app.add_option("--quota-state", g.quota_state, "quota ledger file (overrides config)");

    CollectArgs ca;
    auto* collect = app.add_subcommand("collect", "record one hit count per query and backend for a day");
    collect->add_option("--queries", ca.queries, "query file, one per line")->required();
    collect->add_option("--day", ca.day, "day to record (default today)");
    collect->add_option("--days", ca.days, "consecutive days starting at --day");
    collect->add_option("--backend", ca.backends, "backend name (repeatable; default all)");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "lag correlation between two stored series");
    compare->add_option("--query", cmp.query, "query id")->required();
    compare->add_option("--max-lag", cmp.max_lag, "largest lag in days");
    compare->add_option("--x", cmp.x, "leading backend (default first)");
    compare->add_option("--y", cmp.y, "trailing backend (default second)");
    compare->add_option("--plot", cmp.plot, "write an SVG line chart");

    TldArgs ta;
    auto* tld = app.add_subcommand("tld", "TLD distribution and power-law fit of the top results");
    tld->add_option("--query", ta.query, "query")->required();
    tld->add_option("--n", ta.n, "URLs to fetch");
    tld->add_option("--backend", ta.backend, "backend name");
    tld->add_option("--fit", ta.fit, "ols-loglog | mle-discrete");
    tld->add_option("--plot", ta.plot, "write a log-log SVG scatter");
    tld->add_flag("--json", ta.json, "print JSON");

    FormatArgs fa;
    auto* formats = app.add_subcommand("formats", "file-format distribution for a query");
    formats->add_option("--query", fa.query, "query")->required();
    formats->add_option("--mode", fa.mode, "facet-query | url-extension");
    formats->add_option("--k", fa.k, "results to classify (url-extension)");
    formats->add_option("--ext", fa.ext, "extension (repeatable)");
    formats->add_option("--backend", fa.backend, "backend name");
    formats->add_option("--plot", fa.plot, "write an SVG bar chart");
    formats->add_flag("--json", fa.json, "print JSON");

    CoverageArgs cov;
    auto* coverage_cmd = app.add_subcommand("coverage", "web coverage of a journal list");
    coverage_cmd->add_option("--journals", cov.journals, "CSV with a title column")->required();
    coverage_cmd->add_flag("--backlinks", cov.backlinks, "count links to each top URL");
    coverage_cmd->add_option("--checkpoint", cov.checkpoint, "checkpoint JSONL (default <journals>.checkpoint.jsonl)");
    coverage_cmd->add_option("--out", cov.out, "CSV report path (default stdout)");
    coverage_cmd->add_option("--max", cov.max, "process at most this many journals");
    coverage_cmd->add_option("--backend", cov.backend, "backend name");

    ServeArgs sa;
    auto* serve = app.add_subcommand("serve", "HTTP JSON service");
    serve->add_option("--port", sa.port, "port");
    serve->add_option("--host", sa.host, "bind address");

    std::string export_out;
    auto* exporter = app.add_subcommand("export-corpus", "write the simulated corpus as JSONL");
    exporter->add_option("--out", export_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kFail;
    }

    try {
        if (*collect) return cmd_collect(g, ca);
        if (*compare) return cmd_compare(g, cmp);
        if (*tld) return cmd_tld(g, ta);
        if (*formats) return cmd_formats(g, fa);
        if (*coverage_cmd) return cmd_coverage(g, cov);
        if (*serve) return cmd_serve(g, sa);
        if (*exporter) return cmd_export(g, export_out);
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kFail;
    }
    return kFail;
}
