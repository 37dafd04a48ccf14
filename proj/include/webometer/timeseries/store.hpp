#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "webometer/date.hpp"

namespace webometer::timeseries {

struct Sample {
    Date day;
    std::string query_id;
    std::string interface;  // "standard", "api" or a backend name
    std::uint64_t hits = 0;

    bool operator==(const Sample&) const = default;
};

// Strictly increasing days; missing days are gaps, never zeros.
struct Series {
    std::string query_id;
    std::string interface;
    std::vector<std::pair<Date, std::uint64_t>> points;

    bool empty() const noexcept { return points.empty(); }
};

enum class Upsert { Inserted, Updated };

// In-memory sample set keyed by (day, query, interface), persisted as JSONL:
//   {"day":"YYYY-MM-DD","query":str,"interface":str,"hits":int}
class SampleStore {
public:
    // A missing file yields an empty store. Throws StoreError on bad content.
    static SampleStore load(const std::filesystem::path& path);
    static SampleStore read_jsonl(std::istream& in);

    // Writes to a temporary file and renames, so readers never see a
    // partially written store.
    void save(const std::filesystem::path& path) const;
    void write_jsonl(std::ostream& out) const;

    // CSV with header day,query,interface,hits.
    void write_csv(std::ostream& out) const;

    Upsert upsert(const Sample& s);

    std::size_t size() const noexcept { return samples_.size(); }
    std::vector<Sample> samples() const;
    Series series(const std::string& query_id, const std::string& interface) const;
    std::set<std::string> query_ids() const;
    std::set<std::string> interfaces(const std::string& query_id) const;

private:
    using Key = std::tuple<Date, std::string, std::string>;
    std::map<Key, std::uint64_t> samples_;
};

}  // namespace webometer::timeseries
