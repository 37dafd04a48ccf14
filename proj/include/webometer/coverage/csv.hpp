#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace webometer::coverage {

struct CsvRecord {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Throws LoadError on an unterminated quote.
std::vector<CsvRecord> read_csv(std::istream& in);

std::string csv_escape(const std::string& field);

}  // namespace webometer::coverage
