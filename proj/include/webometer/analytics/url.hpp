#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace webometer::analytics {

struct UrlParts {
    std::string scheme;              // lowercased
    std::string userinfo;            // without '@'
    std::string host;                // lowercased; IPv6 keeps its brackets
    std::optional<unsigned> port;
    std::string path;                // as given, may be empty
    std::optional<std::string> query;
    std::optional<std::string> fragment;
};

// Splits an absolute URL. Throws ParseError when there is no scheme, no
// "//" authority, an empty host or a non-numeric port.
UrlParts parse_url(std::string_view url);

// Lowercase scheme and host, drop the scheme's default port, drop the
// fragment, drop a lone "/" path. Query strings are kept verbatim.
std::string normalize_url(std::string_view url);

inline constexpr std::string_view kIpTld = "(ip)";

// Last dot-separated host label, lowercased; IP literals map to "(ip)".
std::string extract_tld(std::string_view url);

bool is_ip_literal(std::string_view host);

// Characters after the final '.' of the last path segment when they are
// 1-5 alphanumerics (lowercased); otherwise "html".
std::string url_extension(std::string_view url);

}  // namespace webometer::analytics
