#include "webometer/service/live_service.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include <httplib.h>

#include "webometer/analytics/formats.hpp"
#include "webometer/analytics/power_law.hpp"
#include "webometer/analytics/tld.hpp"
#include "webometer/backend/backend.hpp"
#include "webometer/errors.hpp"
#include "webometer/sim/search.hpp"
#include "webometer/timeseries/stats.hpp"
#include "webometer/timeseries/store.hpp"

namespace webometer::service {

namespace {

std::optional<std::string> param(const Params& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string required(const Params& params, const std::string& key) {
    auto v = param(params, key);
    if (!v || v->empty()) {
        throw QueryError("missing parameter '" + key + "'");
    }
    return *v;
}

std::size_t count_param(const Params& params, const std::string& key, std::size_t fallback) {
    auto v = param(params, key);
    if (!v) {
        return fallback;
    }
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size() || v->empty()) {
        throw QueryError("parameter '" + key + "' must be a non-negative integer");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

Response fail(int status, const std::string& message, const std::string& kind) {
    return {status, error_body(message, kind)};
}

// Maps the error hierarchy onto HTTP statuses.
template <typename F>
Response guarded(F&& f) {
    try {
        return f();
    } catch (const QuotaError& e) {
        auto r = fail(429, e.what(), e.kind());
        r.body["reset"] = e.reset_date().iso();
        return r;
    } catch (const BackendUnavailable& e) {
        auto r = fail(502, e.what(), e.kind());
        r.body["retryable"] = e.retryable();
        return r;
    } catch (const InsufficientData& e) {
        return fail(422, e.what(), e.kind());
    } catch (const Error& e) {
        return fail(400, e.what(), e.kind());
    } catch (const std::exception& e) {
        return fail(500, e.what(), "internal");
    }
}

}  // namespace

nlohmann::json error_body(const std::string& message, const std::string& kind) {
    return {{"error", message}, {"kind", kind}};
}

LiveService::LiveService(app::Workspace& workspace) : ws_(workspace) {}

std::string LiveService::backend_param(const Params& params) const {
    auto name = param(params, "backend").value_or(ws_.backend_names().front());
    if (!ws_.has_backend(name)) {
        throw ConfigError("backend", "unknown backend '" + name + "'");
    }
    return name;
}

Response LiveService::tld(const Params& params) {
    return guarded([&] {
        auto query = Query::parse(required(params, "q"));
        query.validate();
        auto name = backend_param(params);
        auto& searcher = ws_.searcher(name);
        const auto cap = searcher.limits().per_query_result_cap;
        auto n = count_param(params, "n", 250);
        if (n < 1 || n > cap) {
            throw RangeError("n must be between 1 and " + std::to_string(cap));
        }
        auto method = analytics::parse_fit_method(param(params, "fit").value_or("ols-loglog"));

        auto top = searcher.fetch_top(query, n);
        auto dist = analytics::tld_distribution(top.urls);
        std::optional<analytics::PowerLawFit> fit;
        if (dist.ranked.size() >= 3) {
            fit = analytics::fit_power_law(dist, method);
        }
        auto body = analytics::distribution_json(dist, fit);
        body["query"] = query.to_string();
        body["backend"] = name;
        body["n_requested"] = n;
        body["n_analyzed"] = dist.total_urls;
        body["quota_remaining"] = searcher.ledger().remaining(searcher.today());
        body["truncated"] = top.truncated;
        return Response{200, std::move(body)};
    });
}

Response LiveService::formats(const Params& params) {
    return guarded([&] {
        auto query = Query::parse(required(params, "q"));
        query.validate();
        auto name = backend_param(params);
        auto& searcher = ws_.searcher(name);
        auto mode = analytics::parse_format_mode(param(params, "mode").value_or("facet-query"));
        const auto cap = searcher.limits().per_query_result_cap;
        auto k = count_param(params, "k", std::min(ws_.config().default_k, cap));
        if (k < 1 || k > cap) {
            throw RangeError("k must be between 1 and " + std::to_string(cap));
        }
        auto exts = param(params, "ext") ? split_list(*param(params, "ext")) : ws_.default_extensions();
        if (exts.empty()) {
            throw QueryError("ext lists no extensions");
        }
        auto dist = analytics::format_distribution(searcher, query, exts, mode, k);
        auto body = analytics::format_json(dist);
        body["query"] = query.to_string();
        body["backend"] = name;
        body["k"] = k;
        body["quota_remaining"] = searcher.ledger().remaining(searcher.today());
        return Response{200, std::move(body)};
    });
}

Response LiveService::timeseries(const Params& params) {
    return guarded([&] {
        auto id = required(params, "q");
        auto names = ws_.backend_names();
        auto x_name = param(params, "x").value_or(names.front());
        auto y_name = param(params, "y").value_or(names.size() > 1 ? names[1] : names.front());
        auto max_lag = count_param(params, "max_lag", 7);

        auto store = timeseries::SampleStore::load(ws_.config().store_path);
        if (!store.query_ids().count(id)) {
            return fail(404, "unknown query id '" + id + "'", "not-found");
        }
        auto x = store.series(id, x_name);
        auto y = store.series(id, y_name);
        if (x.empty() || y.empty()) {
            return fail(404, "no series for '" + id + "' on " + (x.empty() ? x_name : y_name), "not-found");
        }

        nlohmann::json body;
        body["query"] = id;
        body["x"] = timeseries::series_json(x);
        body["y"] = timeseries::series_json(y);
        nlohmann::json aligned = nlohmann::json::array();
        std::map<Date, std::uint64_t> y_by_day(y.points.begin(), y.points.end());
        for (const auto& [day, hits] : x.points) {
            if (auto it = y_by_day.find(day); it != y_by_day.end()) {
                aligned.push_back({{"day", day.iso()}, {"x", hits}, {"y", it->second}});
            }
        }
        body["aligned"] = std::move(aligned);
        try {
            body["lag"] = timeseries::lag_json(timeseries::lag_correlate(x, y, max_lag));
            body["lag_error"] = nullptr;
        } catch (const Error& e) {
            body["lag"] = nullptr;
            body["lag_error"] = error_body(e.what(), e.kind());
        }
        return Response{200, std::move(body)};
    });
}

Response LiveService::search(const Params& params) {
    return guarded([&] {
        auto name = backend_param(params);
        const auto* sim_backend = dynamic_cast<const backend::SimBackend*>(&ws_.searcher(name).backend());
        if (!sim_backend) {
            throw ConfigError("backend", "'" + name + "' is not a simulated backend");
        }
        auto q = param(params, "q").value_or("");
        Query query = q.empty() ? Query{} : Query::parse(q);
        if (auto link = param(params, "link"); link && !link->empty()) {
            query.link_target = *link;
        }
        if (auto ft = param(params, "filetype"); ft && !ft->empty()) {
            query = query.with_filetype(*ft);
        }
        query.validate();
        auto start = count_param(params, "start", 0);
        auto num = count_param(params, "num", 10);
        if (num < 1 || num > 100) {
            throw RangeError("num must be between 1 and 100");
        }
        auto page = sim_backend->search(query, start, num, ws_.clock()());
        return Response{200, to_wire(page)};
    });
}

std::string LiveService::allow_origin(const std::string& origin) const {
    const auto& allowed = ws_.config().cors_origins;
    if (std::find(allowed.begin(), allowed.end(), "*") != allowed.end()) {
        return "*";
    }
    if (!origin.empty() && std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
        return origin;
    }
    return {};
}

void LiveService::mount(httplib::Server& server) {
    auto route = [this](Response (LiveService::*handler)(const Params&)) {
        return [this, handler](const httplib::Request& req, httplib::Response& res) {
            Params params(req.params.begin(), req.params.end());
            auto out = (this->*handler)(params);
            res.status = out.status;
            res.set_content(out.body.dump(), "application/json");
            if (auto origin = allow_origin(req.get_header_value("Origin")); !origin.empty()) {
                res.set_header("Access-Control-Allow-Origin", origin);
                res.set_header("Vary", "Origin");
            }
        };
    };
    server.Get("/api/tld", route(&LiveService::tld));
    server.Get("/api/formats", route(&LiveService::formats));
    server.Get("/api/timeseries", route(&LiveService::timeseries));
    server.Get("/search", route(&LiveService::search));
    server.Options(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto origin = allow_origin(req.get_header_value("Origin")); !origin.empty()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
        res.status = 204;
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) {
            return httplib::Server::HandlerResponse::Unhandled;
        }
        auto kind = res.status == 404 ? "not-found" : "http";
        res.set_content(error_body("no route for " + req.method + " " + req.path, kind).dump(),
                        "application/json");
        return httplib::Server::HandlerResponse::Handled;
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(error_body(what, "internal").dump(), "application/json");
    });
}

}  // namespace webometer::service
