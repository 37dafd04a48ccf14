#include "webometer/app/config.hpp"

#include <fstream>
#include <set>

#include "webometer/errors.hpp"

namespace webometer::app {

AppConfig AppConfig::defaults() {
    AppConfig c;
    c.backends = {{"standard", "sim", sim::InterfaceKind::Standard, {}},
                  {"api", "sim", sim::InterfaceKind::Api, {}}};
    return c;
}

AppConfig AppConfig::from_json(const nlohmann::json& j) {
    AppConfig c = defaults();
    try {
        if (j.contains("backends")) {
            c.backends.clear();
            for (const auto& b : j.at("backends")) {
                BackendSpec spec;
                spec.name = b.at("name").get<std::string>();
                spec.kind = b.value("kind", std::string("sim"));
                if (spec.kind == "sim") {
                    spec.interface = sim::parse_interface(b.value("interface", std::string("standard")));
                } else if (spec.kind == "http") {
                    spec.base_url = b.at("base_url").get<std::string>();
                } else {
                    throw ConfigError("backends", "unknown backend kind '" + spec.kind + "'");
                }
                c.backends.push_back(std::move(spec));
            }
        }
        c.default_k = j.value("default_k", c.default_k);
        if (j.contains("quota")) {
            const auto& q = j.at("quota");
            c.quota.daily_limit = q.value("daily_limit", c.quota.daily_limit);
            c.quota.per_query_result_cap = q.value("per_query_result_cap", c.quota.per_query_result_cap);
            c.quota.page_size_max = q.value("page_size_max", c.quota.page_size_max);
            if (q.contains("state_file") && !q.at("state_file").is_null()) {
                c.quota_state = q.at("state_file").get<std::string>();
            }
        }
        if (j.contains("store_path")) {
            c.store_path = j.at("store_path").get<std::string>();
        }
        if (j.contains("sim")) {
            sim::from_json(j.at("sim"), c.sim);
        }
        if (j.contains("epoch")) {
            c.epoch = Date::parse(j.at("epoch").get<std::string>());
        }
        if (j.contains("today") && !j.at("today").is_null()) {
            c.today = Date::parse(j.at("today").get<std::string>());
        }
        if (j.contains("cors_origins")) {
            c.cors_origins = j.at("cors_origins").get<std::vector<std::string>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", e.what());
    } catch (const ParseError& e) {
        throw ConfigError("config", e.what());
    }
    c.validate();
    return c;
}

AppConfig AppConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", path.string() + ": " + e.what());
    }
    return from_json(j);
}

void AppConfig::validate() const {
    if (backends.empty()) {
        throw ConfigError("backends", "at least one backend is required");
    }
    std::set<std::string> names;
    for (const auto& b : backends) {
        if (b.name.empty() || !names.insert(b.name).second) {
            throw ConfigError("backends", "backend names must be unique and non-empty");
        }
    }
    if (quota.page_size_max < 1 || quota.per_query_result_cap < 1 || quota.daily_limit < 1) {
        throw ConfigError("quota", "limits must be positive");
    }
    if (default_k < 1) {
        throw ConfigError("default_k", "must be positive");
    }
    sim.validate();
}

Workspace::Workspace(AppConfig config) : config_(std::move(config)) {
    config_.validate();
    ledger_ = std::make_shared<backend::QuotaLedger>(config_.quota, config_.quota_state);
    for (const auto& spec : config_.backends) {
        std::shared_ptr<const backend::Backend> be;
        if (spec.kind == "sim") {
            if (!corpus_) {
                corpus_ = std::make_shared<const sim::SimCorpus>(sim::SimCorpus::generate(config_.sim));
            }
            be = std::make_shared<backend::SimBackend>(corpus_, spec.interface, config_.epoch);
        } else {
            be = std::make_shared<backend::HttpBackend>(spec.base_url);
        }
        searchers_.emplace(spec.name, std::make_unique<backend::Searcher>(be, ledger_, clock()));
    }
}

Clock Workspace::clock() const {
    return config_.today ? fixed_clock(*config_.today) : system_clock();
}

backend::Searcher& Workspace::searcher(const std::string& name) {
    auto it = searchers_.find(name);
    if (it == searchers_.end()) {
        throw ConfigError("backend", "unknown backend '" + name + "'");
    }
    return *it->second;
}

const BackendSpec& Workspace::spec(const std::string& name) const {
    for (const auto& b : config_.backends) {
        if (b.name == name) {
            return b;
        }
    }
    throw ConfigError("backend", "unknown backend '" + name + "'");
}

bool Workspace::has_backend(const std::string& name) const {
    return searchers_.count(name) > 0;
}

std::vector<std::string> AppConfig::backend_names() const {
    std::vector<std::string> out;
    for (const auto& b : backends) {
        out.push_back(b.name);
    }
    return out;
}

std::vector<std::string> Workspace::backend_names() const {
    return config_.backend_names();
}

std::vector<timeseries::NamedSearcher> Workspace::named(const std::vector<std::string>& names) {
    std::vector<timeseries::NamedSearcher> out;
    for (const auto& n : names.empty() ? backend_names() : names) {
        out.push_back({n, &searcher(n)});
    }
    return out;
}

std::vector<std::string> Workspace::default_extensions() const {
    std::vector<std::string> out;
    for (const auto& [ext, w] : config_.sim.filetype_weights) {
        out.push_back(ext);
    }
    return out;
}

}  // namespace webometer::app
