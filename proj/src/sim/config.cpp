#include "webometer/sim/config.hpp"

#include <cmath>
#include <set>

#include "webometer/errors.hpp"
#include "webometer/query.hpp"

namespace webometer::sim {

std::string_view to_string(InterfaceKind kind) {
    return kind == InterfaceKind::Standard ? "standard" : "api";
}

InterfaceKind parse_interface(std::string_view label) {
    if (label == "standard") {
        return InterfaceKind::Standard;
    }
    if (label == "api") {
        return InterfaceKind::Api;
    }
    throw ConfigError("interface", "expected 'standard' or 'api', got '" + std::string(label) + "'");
}

std::vector<std::string> SimConfig::default_tld_alphabet() {
    return {"com", "org", "de", "net", "edu", "uk", "es", "fr", "it", "nl",
            "jp",  "ca",  "au", "ch",  "se",  "at", "br", "gov", "info", "ru"};
}

std::vector<std::pair<std::string, double>> SimConfig::default_filetype_weights() {
    return {{"html", 0.70}, {"pdf", 0.15}, {"doc", 0.06}, {"ps", 0.04}, {"xls", 0.03}, {"ppt", 0.02}};
}

void SimConfig::validate() const {
    if (num_docs < 1) {
        throw ConfigError("num_docs", "must be at least 1");
    }
    if (num_docs > 0xffffffffULL) {
        throw ConfigError("num_docs", "must fit in 32 bits");
    }
    if (vocab_size < 1) {
        throw ConfigError("vocab_size", "must be at least 1");
    }
    if (tld_alphabet.empty()) {
        throw ConfigError("tld_alphabet", "must not be empty");
    }
    std::set<std::string> seen;
    for (const auto& tld : tld_alphabet) {
        if (tld.empty() || tld.find('.') != std::string::npos || !seen.insert(tld).second) {
            throw ConfigError("tld_alphabet", "labels must be unique, non-empty and dot-free");
        }
    }
    if (!(tld_zipf_exponent > 0.0) || !std::isfinite(tld_zipf_exponent)) {
        throw ConfigError("tld_zipf_exponent", "must be positive");
    }
    if (!(term_zipf_exponent > 0.0) || !std::isfinite(term_zipf_exponent)) {
        throw ConfigError("term_zipf_exponent", "must be positive");
    }
    if (terms_per_doc < 1) {
        throw ConfigError("terms_per_doc", "must be at least 1");
    }
    if (filetype_weights.empty()) {
        throw ConfigError("filetype_weights", "must not be empty");
    }
    double sum = 0.0;
    std::set<std::string> exts;
    for (const auto& [ext, w] : filetype_weights) {
        if (ext.empty() || !exts.insert(ext).second || !(w >= 0.0)) {
            throw ConfigError("filetype_weights", "extensions must be unique with weights >= 0");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("filetype_weights", "weights must sum to 1");
    }
    if (!(api_subsample_ratio > 0.0 && api_subsample_ratio <= 1.0)) {
        throw ConfigError("api_subsample_ratio", "must lie in (0, 1]");
    }
    if (docs_per_day < 1) {
        throw ConfigError("docs_per_day", "must be at least 1");
    }
    if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude)) {
        throw ConfigError("noise_amplitude", "must be >= 0");
    }
    std::set<std::string> phrases;
    for (const auto& p : planted) {
        auto norm = normalize_phrase(p.phrase);
        if (norm.empty() || !phrases.insert(norm).second) {
            throw ConfigError("planted", "phrases must be unique and non-empty");
        }
        if (1 + p.mentions + p.inlinks > num_docs) {
            throw ConfigError("planted", "'" + p.phrase + "' needs more documents than the corpus has");
        }
    }
}

std::size_t SimConfig::days_to_full_visibility() const {
    return (num_docs - 1) / docs_per_day + api_lag_days;
}

void to_json(nlohmann::json& j, const SimConfig& c) {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [ext, w] : c.filetype_weights) {
        weights[ext] = w;
    }
    nlohmann::json planted = nlohmann::json::array();
    for (const auto& p : c.planted) {
        planted.push_back({{"phrase", p.phrase}, {"mentions", p.mentions}, {"inlinks", p.inlinks}});
    }
    j = {{"seed", c.seed},
         {"num_docs", c.num_docs},
         {"tld_alphabet", c.tld_alphabet},
         {"tld_zipf_exponent", c.tld_zipf_exponent},
         {"vocab_size", c.vocab_size},
         {"term_zipf_exponent", c.term_zipf_exponent},
         {"terms_per_doc", c.terms_per_doc},
         {"filetype_weights", weights},
         {"api_subsample_ratio", c.api_subsample_ratio},
         {"api_lag_days", c.api_lag_days},
         {"docs_per_day", c.docs_per_day},
         {"noise_amplitude", c.noise_amplitude},
         {"max_outlinks", c.max_outlinks},
         {"planted", planted}};
}

void from_json(const nlohmann::json& j, SimConfig& c) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) {
            try {
                j.at(key).get_to(field);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(key, e.what());
            }
        }
    };
    get("seed", c.seed);
    get("num_docs", c.num_docs);
    get("tld_alphabet", c.tld_alphabet);
    get("tld_zipf_exponent", c.tld_zipf_exponent);
    get("vocab_size", c.vocab_size);
    get("term_zipf_exponent", c.term_zipf_exponent);
    get("terms_per_doc", c.terms_per_doc);
    get("api_subsample_ratio", c.api_subsample_ratio);
    get("api_lag_days", c.api_lag_days);
    get("docs_per_day", c.docs_per_day);
    get("noise_amplitude", c.noise_amplitude);
    get("max_outlinks", c.max_outlinks);
    if (j.contains("filetype_weights")) {
        const auto& w = j.at("filetype_weights");
        if (!w.is_object()) {
            throw ConfigError("filetype_weights", "expected an object of extension -> weight");
        }
        c.filetype_weights.clear();
        for (auto it = w.begin(); it != w.end(); ++it) {
            if (!it.value().is_number()) {
                throw ConfigError("filetype_weights", "weight for '" + it.key() + "' is not a number");
            }
            c.filetype_weights.emplace_back(it.key(), it.value().get<double>());
        }
    }
    if (j.contains("planted")) {
        c.planted.clear();
        for (const auto& p : j.at("planted")) {
            PlantedPhrase pp;
            pp.phrase = p.at("phrase").get<std::string>();
            pp.mentions = p.value("mentions", std::size_t{0});
            pp.inlinks = p.value("inlinks", std::size_t{0});
            c.planted.push_back(std::move(pp));
        }
    }
}

}  // namespace webometer::sim
