#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "webometer/backend/quota.hpp"
#include "webometer/backend/searcher.hpp"
#include "webometer/date.hpp"
#include "webometer/sim/config.hpp"
#include "webometer/sim/corpus.hpp"
#include "webometer/timeseries/collect.hpp"

namespace webometer::app {

struct BackendSpec {
    std::string name;
    std::string kind;  // "sim" | "http"
    sim::InterfaceKind interface = sim::InterfaceKind::Standard;  // sim only
    std::string base_url;                                         // http only
};

// Single JSON document; every key is optional and falls back to defaults.
struct AppConfig {
    std::vector<BackendSpec> backends;
    std::size_t default_k = 100;
    backend::QuotaLimits quota;
    std::optional<std::filesystem::path> quota_state;
    std::filesystem::path store_path = "samples.jsonl";
    sim::SimConfig sim;
    Date epoch{2004, 7, 1};
    std::optional<Date> today;  // fixed clock; system date when absent
    std::vector<std::string> cors_origins{"*"};

    // Two sim backends, "standard" and "api", over the default corpus.
    static AppConfig defaults();
    static AppConfig from_json(const nlohmann::json& j);
    static AppConfig load(const std::filesystem::path& path);

    std::vector<std::string> backend_names() const;

    // Throws ConfigError: at least one backend, unique names, valid sim config.
    void validate() const;
};

// Runtime objects built from an AppConfig: the (immutable) sim corpus, one
// shared quota ledger and a Searcher per backend.
class Workspace {
public:
    explicit Workspace(AppConfig config);

    const AppConfig& config() const noexcept { return config_; }
    Clock clock() const;

    // Throws ConfigError for an unknown name.
    backend::Searcher& searcher(const std::string& name);
    const BackendSpec& spec(const std::string& name) const;
    bool has_backend(const std::string& name) const;
    std::vector<std::string> backend_names() const;
    std::vector<timeseries::NamedSearcher> named(const std::vector<std::string>& names);

    // nullptr when no sim backend is configured.
    std::shared_ptr<const sim::SimCorpus> corpus() const noexcept { return corpus_; }
    backend::QuotaLedger& ledger() noexcept { return *ledger_; }

    // Filetype extensions to facet on (the sim corpus's own types).
    std::vector<std::string> default_extensions() const;

private:
    AppConfig config_;
    std::shared_ptr<const sim::SimCorpus> corpus_;
    std::shared_ptr<backend::QuotaLedger> ledger_;
    std::map<std::string, std::unique_ptr<backend::Searcher>> searchers_;
};

}  // namespace webometer::app
