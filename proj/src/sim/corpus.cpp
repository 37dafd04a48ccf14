#include "webometer/sim/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "webometer/analytics/url.hpp"
#include "webometer/errors.hpp"
#include "webometer/hash.hpp"
#include "webometer/query.hpp"
#include "webometer/sim/discrete_sampler.hpp"

namespace webometer::sim {

namespace {

constexpr std::uint64_t kPlantStream = 0x706c616e74ULL;
constexpr std::uint64_t kKeepStream = 0x6b656570ULL;
constexpr std::uint64_t kStandardRank = 0x7374616e64ULL;
constexpr std::uint64_t kApiRank = 0x617069ULL;
constexpr std::uint32_t kFoldedTerms = 64;
constexpr std::uint32_t kHomepageRepeats = 3;

std::string make_url(std::uint32_t id, const std::string& tld, const std::string& ext) {
    auto host = fmt::format("http://www.site{}.{}", id, tld);
    if (ext != "html") {
        return fmt::format("{}/files/p{}.{}", host, id, ext);
    }
    switch (id % 3) {
        case 0: return host;
        case 1: return fmt::format("{}/p{}.html", host, id);
        default: return fmt::format("{}/docs/p{}", host, id);
    }
}

// Draws `count` distinct ids from [0, n) excluding `excluded`.
std::vector<std::uint32_t> draw_distinct(std::mt19937_64& rng, std::uint32_t n, std::size_t count,
                                         const std::set<std::uint32_t>& excluded) {
    std::vector<std::uint32_t> out;
    std::set<std::uint32_t> taken;
    while (out.size() < count) {
        auto id = static_cast<std::uint32_t>(rng() % n);
        if (excluded.count(id) || !taken.insert(id).second) {
            continue;
        }
        out.push_back(id);
    }
    return out;
}

}  // namespace

std::uint32_t SimDocument::term_count(std::uint32_t term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term,
                               [](const TermCount& tc, std::uint32_t t) { return tc.term < t; });
    return it != terms.end() && it->term == term ? it->count : 0;
}

std::uint32_t SimDocument::phrase_count(std::string_view normalized_phrase) const {
    for (const auto& p : phrases) {
        if (p.phrase == normalized_phrase) {
            return p.count;
        }
    }
    return 0;
}

std::string SimDocument::title() const {
    if (!phrases.empty()) {
        return phrases.front().phrase;
    }
    std::string out = fmt::format("Page {}", doc_id);
    for (std::size_t i = 0; i < terms.size() && i < 3; ++i) {
        out += " " + SimCorpus::token(terms[i].term);
    }
    return out;
}

std::string SimDocument::snippet() const {
    std::string out;
    for (const auto& p : phrases) {
        out += p.phrase + " ... ";
    }
    for (std::size_t i = 0; i < terms.size() && i < 8; ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += SimCorpus::token(terms[i].term);
    }
    return out;
}

SimCorpus::SimCorpus(SimConfig config, std::vector<SimDocument> docs)
    : config_(std::move(config)), docs_(std::move(docs)) {
    index();
}

void SimCorpus::index() {
    url_index_.clear();
    url_index_.reserve(docs_.size());
    homepages_.clear();
    for (const auto& d : docs_) {
        url_index_.emplace(analytics::normalize_url(d.url), d.doc_id);
    }
    for (const auto& p : config_.planted) {
        auto norm = normalize_phrase(p.phrase);
        for (const auto& d : docs_) {
            if (d.phrase_count(norm) == kHomepageRepeats) {
                homepages_.push_back(d.doc_id);
                break;
            }
        }
    }
}

SimCorpus SimCorpus::generate(const SimConfig& config) {
    config.validate();
    const auto n = static_cast<std::uint32_t>(config.num_docs);

    // Planted structure is chosen first so random links can avoid homepages.
    std::mt19937_64 plant_rng(hash_combine(config.seed, kPlantStream));
    std::set<std::uint32_t> homepage_set;
    struct Plan {
        std::string phrase;
        std::uint32_t homepage;
        std::vector<std::uint32_t> mentions;
        std::vector<std::uint32_t> inlinks;
    };
    std::vector<Plan> plans;
    if (config.planted.size() > config.num_docs) {
        throw ConfigError("planted", "more planted phrases than documents");
    }
    for (const auto& p : config.planted) {
        auto hp = draw_distinct(plant_rng, n, 1, homepage_set).front();
        homepage_set.insert(hp);
        plans.push_back({normalize_phrase(p.phrase), hp, {}, {}});
    }
    for (std::size_t i = 0; i < plans.size(); ++i) {
        auto& plan = plans[i];
        std::set<std::uint32_t> not_me{plan.homepage};
        if (config.planted[i].mentions > n - homepage_set.size() || config.planted[i].inlinks > n - 1) {
            throw ConfigError("planted", "'" + plan.phrase + "' needs more documents than the corpus has");
        }
        plan.mentions = draw_distinct(plant_rng, n, config.planted[i].mentions, homepage_set);
        plan.inlinks = draw_distinct(plant_rng, n, config.planted[i].inlinks, not_me);
    }

    std::mt19937_64 rng(config.seed);
    auto tld_sampler = DiscreteSampler::zipf(config.tld_alphabet.size(), config.tld_zipf_exponent);
    auto term_sampler = DiscreteSampler::zipf(config.vocab_size, config.term_zipf_exponent);
    std::vector<double> ft_weights;
    for (const auto& [ext, w] : config.filetype_weights) {
        ft_weights.push_back(w);
    }
    DiscreteSampler ft_sampler(ft_weights);
    const bool can_link = n - homepage_set.size() >= 2;

    std::vector<SimDocument> docs(n);
    std::map<std::uint32_t, std::uint32_t> bag;
    for (std::uint32_t id = 0; id < n; ++id) {
        auto& d = docs[id];
        d.doc_id = id;
        d.tld = config.tld_alphabet[tld_sampler(rng)];
        d.filetype = config.filetype_weights[ft_sampler(rng)].first;
        d.created_day = static_cast<std::uint32_t>(id / config.docs_per_day);
        d.url = make_url(id, d.tld, d.filetype);
        bag.clear();
        for (std::size_t t = 0; t < config.terms_per_doc; ++t) {
            ++bag[static_cast<std::uint32_t>(term_sampler(rng))];
        }
        d.terms.reserve(bag.size());
        for (auto [term, count] : bag) {
            d.terms.push_back({term, count});
        }
        auto links = static_cast<std::size_t>(rng() % (config.max_outlinks + 1));
        if (can_link) {
            for (std::size_t k = 0; k < links; ++k) {
                std::uint32_t target;
                do {
                    target = static_cast<std::uint32_t>(rng() % n);
                } while (target == id || homepage_set.count(target));
                d.outlinks.push_back(target);
            }
        }
    }

    for (const auto& plan : plans) {
        docs[plan.homepage].phrases.push_back({plan.phrase, kHomepageRepeats});
        for (auto m : plan.mentions) {
            docs[m].phrases.push_back({plan.phrase, 1});
        }
        for (auto src : plan.inlinks) {
            docs[src].outlinks.push_back(plan.homepage);
        }
    }
    for (auto& d : docs) {
        std::sort(d.outlinks.begin(), d.outlinks.end());
        d.outlinks.erase(std::unique(d.outlinks.begin(), d.outlinks.end()), d.outlinks.end());
    }
    return SimCorpus(config, std::move(docs));
}

bool SimCorpus::api_keeps(std::uint32_t doc_id) const noexcept {
    return unit_interval(hash_combine(config_.seed ^ kKeepStream, doc_id)) < config_.api_subsample_ratio;
}

std::uint64_t SimCorpus::tiebreak(InterfaceKind kind, std::uint32_t doc_id) const noexcept {
    auto stream = kind == InterfaceKind::Standard ? kStandardRank : kApiRank;
    return hash_combine(config_.seed ^ stream, doc_id);
}

bool SimCorpus::visible(InterfaceKind kind, const SimDocument& doc, long day) const noexcept {
    if (kind == InterfaceKind::Standard) {
        return static_cast<long>(doc.created_day) <= day;
    }
    return static_cast<long>(doc.created_day) <= day - static_cast<long>(config_.api_lag_days) &&
           api_keeps(doc.doc_id);
}

std::size_t SimCorpus::corpus_size(InterfaceKind kind, long day) const {
    return static_cast<std::size_t>(std::count_if(
        docs_.begin(), docs_.end(), [&](const SimDocument& d) { return visible(kind, d, day); }));
}

std::uint32_t SimCorpus::term_id(std::string_view token) const noexcept {
    const auto vocab = static_cast<std::uint32_t>(config_.vocab_size);
    if (token.size() > 1 && token.front() == 'w') {
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), value);
        if (ec == std::errc{} && ptr == token.data() + token.size() && value < vocab) {
            return value;
        }
    }
    return static_cast<std::uint32_t>(fnv1a64(token) % std::min(vocab, kFoldedTerms));
}

std::string SimCorpus::token(std::uint32_t term) {
    return "w" + std::to_string(term);
}

std::optional<std::uint32_t> SimCorpus::find_url(std::string_view normalized_url) const {
    auto it = url_index_.find(std::string(normalized_url));
    if (it == url_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void SimCorpus::write_jsonl(std::ostream& out) const {
    for (const auto& d : docs_) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& tc : d.terms) {
            for (std::uint32_t k = 0; k < tc.count; ++k) {
                terms.push_back(tc.term);
            }
        }
        nlohmann::json phrases = nlohmann::json::array();
        for (const auto& p : d.phrases) {
            phrases.push_back({{"phrase", p.phrase}, {"count", p.count}});
        }
        nlohmann::json line = {{"doc_id", d.doc_id},       {"url", d.url},
                               {"tld", d.tld},             {"filetype", d.filetype},
                               {"created_day", d.created_day}, {"terms", terms},
                               {"outlinks", d.outlinks},   {"phrases", phrases}};
        out << line.dump() << '\n';
    }
}

SimCorpus SimCorpus::read_jsonl(std::istream& in, const SimConfig& config) {
    std::vector<SimDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            auto j = nlohmann::json::parse(line);
            SimDocument d;
            d.doc_id = j.at("doc_id").get<std::uint32_t>();
            d.url = j.at("url").get<std::string>();
            d.tld = j.at("tld").get<std::string>();
            d.filetype = j.at("filetype").get<std::string>();
            d.created_day = j.at("created_day").get<std::uint32_t>();
            std::map<std::uint32_t, std::uint32_t> bag;
            for (const auto& t : j.at("terms")) {
                ++bag[t.get<std::uint32_t>()];
            }
            for (auto [term, count] : bag) {
                d.terms.push_back({term, count});
            }
            d.outlinks = j.at("outlinks").get<std::vector<std::uint32_t>>();
            for (const auto& p : j.value("phrases", nlohmann::json::array())) {
                d.phrases.push_back({p.at("phrase").get<std::string>(), p.at("count").get<std::uint32_t>()});
            }
            if (d.doc_id != docs.size()) {
                throw LoadError(lineno, "doc_id values must be dense and ordered");
            }
            auto host = analytics::parse_url(d.url).host;
            if (host.size() <= d.tld.size() || host.compare(host.size() - d.tld.size() - 1,
                                                            d.tld.size() + 1, "." + d.tld) != 0) {
                throw LoadError(lineno, "url host does not end with ." + d.tld);
            }
            docs.push_back(std::move(d));
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(lineno, e.what());
        } catch (const ParseError& e) {
            throw LoadError(lineno, e.what());
        }
    }
    SimConfig c = config;
    c.num_docs = docs.size();
    c.validate();
    return SimCorpus(std::move(c), std::move(docs));
}

}  // namespace webometer::sim
