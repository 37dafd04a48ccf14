#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "webometer/app/config.hpp"

namespace httplib {
class Server;
}

namespace webometer::service {

using Params = std::multimap<std::string, std::string>;

struct Response {
    int status = 200;
    nlohmann::json body;
};

// JSON endpoints over a Workspace. Handlers are plain functions of the query
// parameters so they can be exercised without sockets; mount() wires them to
// an httplib server. Every error body is {"error", "kind"}.
class LiveService {
public:
    explicit LiveService(app::Workspace& workspace);

    // q, n (250), backend (first configured), fit (ols-loglog)
    Response tld(const Params& params);
    // q, mode (facet-query), k (default_k), backend, ext (comma list)
    Response formats(const Params& params);
    // q (query id), x / y (first two backends), max_lag (7)
    Response timeseries(const Params& params);
    // Wire protocol over a sim backend: q, start, num, filetype, link, backend.
    // Not quota-charged; this plays the remote engine's role.
    Response search(const Params& params);

    void mount(httplib::Server& server);

    // Access-Control-Allow-Origin value for a request origin, or "" to omit.
    std::string allow_origin(const std::string& origin) const;

private:
    std::string backend_param(const Params& params) const;

    app::Workspace& ws_;
};

nlohmann::json error_body(const std::string& message, const std::string& kind);

}  // namespace webometer::service
