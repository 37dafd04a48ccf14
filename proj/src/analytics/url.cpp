#include "webometer/analytics/url.hpp"

#include <algorithm>
#include <cctype>

#include "webometer/errors.hpp"

namespace webometer::analytics {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<unsigned> default_port(std::string_view scheme) {
    if (scheme == "http") return 80;
    if (scheme == "https") return 443;
    if (scheme == "ftp") return 21;
    return std::nullopt;
}

}  // namespace

UrlParts parse_url(std::string_view url) {
    auto fail = [&](std::string_view why) {
        return ParseError("cannot parse URL '" + std::string(url) + "': " + std::string(why));
    };
    auto colon = url.find(':');
    if (colon == std::string_view::npos || colon == 0 ||
        !std::isalpha(static_cast<unsigned char>(url[0]))) {
        throw fail("missing scheme");
    }
    for (char c : url.substr(0, colon)) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
            throw fail("bad scheme");
        }
    }
    if (url.substr(colon + 1, 2) != "//") {
        throw fail("missing authority");
    }
    UrlParts parts;
    parts.scheme = lower(url.substr(0, colon));

    std::string_view rest = url.substr(colon + 3);
    auto auth_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, auth_end);
    rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
        parts.userinfo = std::string(authority.substr(0, at));
        authority.remove_prefix(at + 1);
    }

    std::string_view host = authority;
    std::string_view port;
    if (!authority.empty() && authority.front() == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos) {
            throw fail("unterminated IPv6 literal");
        }
        host = authority.substr(0, close + 1);
        auto tail = authority.substr(close + 1);
        if (!tail.empty()) {
            if (tail.front() != ':') {
                throw fail("garbage after IPv6 literal");
            }
            port = tail.substr(1);
        }
    } else if (auto c = authority.rfind(':'); c != std::string_view::npos) {
        host = authority.substr(0, c);
        port = authority.substr(c + 1);
    }
    if (host.empty()) {
        throw fail("empty host");
    }
    for (unsigned char ch : host) {
        if (std::isspace(ch) || ch < 0x20) {
            throw fail("invalid character in host");
        }
    }
    parts.host = lower(host);
    if (!port.empty()) {
        unsigned value = 0;
        for (char ch : port) {
            if (!std::isdigit(static_cast<unsigned char>(ch)) || value > 65535) {
                throw fail("bad port");
            }
            value = value * 10 + static_cast<unsigned>(ch - '0');
        }
        if (value > 65535) {
            throw fail("bad port");
        }
        parts.port = value;
    }

    if (auto hash = rest.find('#'); hash != std::string_view::npos) {
        parts.fragment = std::string(rest.substr(hash + 1));
        rest = rest.substr(0, hash);
    }
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        parts.query = std::string(rest.substr(q + 1));
        rest = rest.substr(0, q);
    }
    parts.path = std::string(rest);
    return parts;
}

std::string normalize_url(std::string_view url) {
    UrlParts p = parse_url(url);
    std::string out = p.scheme + "://";
    if (!p.userinfo.empty()) {
        out += p.userinfo + "@";
    }
    out += p.host;
    if (p.port && p.port != default_port(p.scheme)) {
        out += ":" + std::to_string(*p.port);
    }
    if (p.path != "/") {
        out += p.path;
    }
    if (p.query) {
        out += "?" + *p.query;
    }
    return out;
}

bool is_ip_literal(std::string_view host) {
    if (!host.empty() && host.front() == '[') {
        return true;
    }
    int labels = 0;
    std::size_t start = 0;
    while (start <= host.size()) {
        auto dot = host.find('.', start);
        auto label = host.substr(start, dot == std::string_view::npos ? host.npos : dot - start);
        if (label.empty() || label.size() > 3 ||
            !std::all_of(label.begin(), label.end(),
                         [](unsigned char c) { return std::isdigit(c); }) ||
            std::stoi(std::string(label)) > 255) {
            return false;
        }
        ++labels;
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return labels == 4;
}

std::string extract_tld(std::string_view url) {
    UrlParts p = parse_url(url);
    std::string_view host = p.host;
    if (is_ip_literal(host)) {
        return std::string(kIpTld);
    }
    while (!host.empty() && host.back() == '.') {
        host.remove_suffix(1);
    }
    if (host.empty()) {
        throw ParseError("URL host has no labels: '" + std::string(url) + "'");
    }
    auto dot = host.rfind('.');
    return std::string(dot == std::string_view::npos ? host : host.substr(dot + 1));
}

std::string url_extension(std::string_view url) {
    std::string path;
    try {
        path = parse_url(url).path;
    } catch (const ParseError&) {
        auto cut = url.find_first_of("?#");
        path = std::string(url.substr(0, cut));
    }
    auto slash = path.rfind('/');
    std::string_view segment = path;
    if (slash != std::string::npos) {
        segment.remove_prefix(slash + 1);
    }
    auto dot = segment.rfind('.');
    if (dot == std::string_view::npos) {
        return "html";
    }
    auto ext = segment.substr(dot + 1);
    if (ext.empty() || ext.size() > 5 ||
        !std::all_of(ext.begin(), ext.end(), [](unsigned char c) { return std::isalnum(c); })) {
        return "html";
    }
    return lower(ext);
}

}  // namespace webometer::analytics
