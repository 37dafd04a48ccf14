#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace webometer {

// A search request clause set. Exactly one primary clause (terms, phrase or
// link_target) is set; filetype and site narrow it.
//
// Text syntax, shared by the CLI, the HTTP protocol and query files:
//   word word          terms (all must match)
//   "exact phrase"     phrase
//   link:URL           backlink query
//   filetype:pdf       filetype facet
//   site:example.org   host-suffix restriction
//   *                  wildcard term matching every document
struct Query {
    std::vector<std::string> terms;
    std::optional<std::string> phrase;
    std::optional<std::string> link_target;
    std::optional<std::string> filetype_filter;
    std::optional<std::string> site_filter;

    static Query parse(std::string_view text);
    static Query of_terms(std::vector<std::string> terms);
    static Query of_phrase(std::string phrase);
    static Query of_link(std::string url);

    Query with_filetype(std::string ext) const;

    // Throws QueryError if the clause invariants do not hold.
    void validate() const;

    // Canonical text; parse(to_string()) reproduces the query.
    std::string to_string() const;

    // Canonical text without the link and filetype clauses (the wire `q`).
    std::string wire_q() const;

    bool operator==(const Query&) const = default;
};

// Lowercase and collapse internal whitespace.
std::string normalize_phrase(std::string_view phrase);

}  // namespace webometer
