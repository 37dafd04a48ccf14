#include "webometer/timeseries/collect.hpp"

#include <algorithm>
#include <istream>

#include "webometer/errors.hpp"

namespace webometer::timeseries {

std::string_view to_string(SampleStatus s) {
    switch (s) {
        case SampleStatus::New: return "new";
        case SampleStatus::Updated: return "updated";
        case SampleStatus::Missing: return "missing";
    }
    return "missing";
}

std::size_t CollectReport::appended() const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                  [](const auto& o) { return o.status == SampleStatus::New; }));
}

std::size_t CollectReport::updated() const {
    return static_cast<std::size_t>(std::count_if(
        outcomes.begin(), outcomes.end(), [](const auto& o) { return o.status == SampleStatus::Updated; }));
}

std::size_t CollectReport::missing() const {
    return static_cast<std::size_t>(std::count_if(
        outcomes.begin(), outcomes.end(), [](const auto& o) { return o.status == SampleStatus::Missing; }));
}

CollectReport collect(std::span<const NamedSearcher> backends, std::span<const NamedQuery> queries,
                      Date day, SampleStore& store) {
    CollectReport report;
    report.day = day;
    for (const auto& q : queries) {
        for (const auto& b : backends) {
            CollectOutcome out{q.id, b.name, SampleStatus::Missing, std::nullopt, {}};
            try {
                auto hits = b.searcher->hit_count(q.query, day);
                auto up = store.upsert({day, q.id, b.name, hits});
                out.status = up == Upsert::Inserted ? SampleStatus::New : SampleStatus::Updated;
                out.hits = hits;
            } catch (const BackendUnavailable& e) {
                out.error = e.what();
            } catch (const QuotaError& e) {
                out.error = e.what();
            } catch (const RangeError& e) {
                out.error = e.what();
            }
            report.outcomes.push_back(std::move(out));
        }
    }
    return report;
}

CollectReport collect_to_file(std::span<const NamedSearcher> backends,
                              std::span<const NamedQuery> queries, Date day,
                              const std::filesystem::path& path) {
    auto store = SampleStore::load(path);
    auto report = collect(backends, queries, day, store);
    store.save(path);
    return report;
}

std::vector<NamedQuery> read_query_file(std::istream& in) {
    std::vector<NamedQuery> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        try {
            if (auto tab = line.find('\t'); tab != std::string::npos) {
                auto id = line.substr(first, tab - first);
                out.push_back({id, Query::parse(line.substr(tab + 1))});
            } else {
                auto q = Query::parse(line);
                out.push_back({q.to_string(), q});
            }
        } catch (const QueryError& e) {
            throw LoadError(lineno, e.what());
        }
    }
    return out;
}

}  // namespace webometer::timeseries
