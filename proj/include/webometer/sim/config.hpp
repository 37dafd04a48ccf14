#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace webometer::sim {

enum class InterfaceKind { Standard, Api };

std::string_view to_string(InterfaceKind kind);
InterfaceKind parse_interface(std::string_view label);

// A phrase injected into the corpus: one "homepage" document carrying the
// phrase three times, `mentions` further documents carrying it once, and
// exactly `inlinks` documents linking to the homepage.
struct PlantedPhrase {
    std::string phrase;
    std::size_t mentions = 0;
    std::size_t inlinks = 0;
};

struct SimConfig {
    std::uint64_t seed = 42;
    std::size_t num_docs = 10'000;
    std::vector<std::string> tld_alphabet = default_tld_alphabet();
    double tld_zipf_exponent = 1.0;
    std::size_t vocab_size = 5'000;
    double term_zipf_exponent = 1.1;
    std::size_t terms_per_doc = 50;
    // Ordered so that generation does not depend on map iteration order.
    std::vector<std::pair<std::string, double>> filetype_weights = default_filetype_weights();
    double api_subsample_ratio = 0.7;
    std::size_t api_lag_days = 3;
    std::size_t docs_per_day = 100;
    double noise_amplitude = 0.0;
    std::size_t max_outlinks = 5;
    std::vector<PlantedPhrase> planted;

    static std::vector<std::string> default_tld_alphabet();
    static std::vector<std::pair<std::string, double>> default_filetype_weights();

    // Throws ConfigError naming the first violated field.
    void validate() const;

    // Days needed before the last document is visible through both interfaces.
    std::size_t days_to_full_visibility() const;
};

void to_json(nlohmann::json& j, const SimConfig& c);
// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, SimConfig& c);

}  // namespace webometer::sim
