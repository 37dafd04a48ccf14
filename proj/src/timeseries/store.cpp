#include "webometer/timeseries/store.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "webometer/errors.hpp"

namespace webometer::timeseries {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    return out + "\"";
}

}  // namespace

SampleStore SampleStore::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        return {};
    }
    std::ifstream in(path);
    if (!in) {
        throw StoreError("cannot open sample store " + path.string());
    }
    return read_jsonl(in);
}

SampleStore SampleStore::read_jsonl(std::istream& in) {
    SampleStore store;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            auto j = nlohmann::json::parse(line);
            Sample s{Date::parse(j.at("day").get<std::string>()), j.at("query").get<std::string>(),
                     j.at("interface").get<std::string>(), j.at("hits").get<std::uint64_t>()};
            store.upsert(s);
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(lineno, std::string("sample store: ") + e.what());
        } catch (const ParseError& e) {
            throw LoadError(lineno, std::string("sample store: ") + e.what());
        }
    }
    return store;
}

void SampleStore::write_jsonl(std::ostream& out) const {
    for (const auto& [key, hits] : samples_) {
        const auto& [day, query, iface] = key;
        nlohmann::json j = {{"day", day.iso()}, {"query", query}, {"interface", iface}, {"hits", hits}};
        out << j.dump() << '\n';
    }
}

void SampleStore::save(const std::filesystem::path& path) const {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw StoreError("cannot write " + tmp.string());
        }
        write_jsonl(out);
        out.flush();
        if (!out) {
            throw StoreError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw StoreError("cannot replace " + path.string() + ": " + ec.message());
    }
}

void SampleStore::write_csv(std::ostream& out) const {
    out << "day,query,interface,hits\n";
    for (const auto& [key, hits] : samples_) {
        const auto& [day, query, iface] = key;
        out << day.iso() << ',' << csv_field(query) << ',' << csv_field(iface) << ',' << hits << '\n';
    }
}

Upsert SampleStore::upsert(const Sample& s) {
    auto [it, inserted] = samples_.insert_or_assign(Key{s.day, s.query_id, s.interface}, s.hits);
    return inserted ? Upsert::Inserted : Upsert::Updated;
}

std::vector<Sample> SampleStore::samples() const {
    std::vector<Sample> out;
    out.reserve(samples_.size());
    for (const auto& [key, hits] : samples_) {
        const auto& [day, query, iface] = key;
        out.push_back({day, query, iface, hits});
    }
    return out;
}

Series SampleStore::series(const std::string& query_id, const std::string& interface) const {
    Series s{query_id, interface, {}};
    for (const auto& [key, hits] : samples_) {
        const auto& [day, query, iface] = key;
        if (query == query_id && iface == interface) {
            s.points.emplace_back(day, hits);
        }
    }
    return s;
}

std::set<std::string> SampleStore::query_ids() const {
    std::set<std::string> out;
    for (const auto& [key, hits] : samples_) {
        out.insert(std::get<1>(key));
    }
    return out;
}

std::set<std::string> SampleStore::interfaces(const std::string& query_id) const {
    std::set<std::string> out;
    for (const auto& [key, hits] : samples_) {
        if (std::get<1>(key) == query_id) {
            out.insert(std::get<2>(key));
        }
    }
    return out;
}

}  // namespace webometer::timeseries
