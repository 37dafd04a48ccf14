#include "webometer/query.hpp"

#include <algorithm>
#include <cctype>

#include "webometer/errors.hpp"

namespace webometer {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && lower(s.substr(0, prefix.size())) == prefix;
}

}  // namespace

std::string normalize_phrase(std::string_view phrase) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : phrase) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

Query Query::of_terms(std::vector<std::string> terms) {
    Query q;
    for (auto& t : terms) {
        q.terms.push_back(lower(t));
    }
    q.validate();
    return q;
}

Query Query::of_phrase(std::string phrase) {
    Query q;
    q.phrase = normalize_phrase(phrase);
    q.validate();
    return q;
}

Query Query::of_link(std::string url) {
    Query q;
    q.link_target = std::move(url);
    q.validate();
    return q;
}

Query Query::with_filetype(std::string ext) const {
    Query q = *this;
    if (!ext.empty() && ext.front() == '.') {
        ext.erase(0, 1);
    }
    q.filetype_filter = lower(ext);
    q.validate();
    return q;
}

Query Query::parse(std::string_view text) {
    Query q;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] == '"') {
            auto close = text.find('"', i + 1);
            if (close == std::string_view::npos) {
                throw QueryError("unterminated phrase in query");
            }
            if (q.phrase) {
                throw QueryError("query has more than one phrase");
            }
            q.phrase = normalize_phrase(text.substr(i + 1, close - i - 1));
            i = close + 1;
        } else {
            std::size_t end = i;
            while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
                ++end;
            }
            std::string_view token = text.substr(i, end - i);
            i = end;
            if (starts_with_ci(token, "link:")) {
                if (q.link_target) {
                    throw QueryError("query has more than one link: clause");
                }
                q.link_target = std::string(token.substr(5));
            } else if (starts_with_ci(token, "filetype:")) {
                auto ext = token.substr(9);
                if (!ext.empty() && ext.front() == '.') {
                    ext.remove_prefix(1);
                }
                q.filetype_filter = lower(ext);
            } else if (starts_with_ci(token, "site:")) {
                q.site_filter = lower(token.substr(5));
            } else {
                q.terms.push_back(lower(token));
            }
        }
        skip_space();
    }
    q.validate();
    return q;
}

void Query::validate() const {
    int primaries = (terms.empty() ? 0 : 1) + (phrase ? 1 : 0) + (link_target ? 1 : 0);
    if (primaries != 1) {
        throw QueryError("query needs exactly one of terms, phrase or link: (got " +
                         std::to_string(primaries) + ")");
    }
    if (phrase && phrase->empty()) {
        throw QueryError("empty phrase");
    }
    if (link_target && link_target->empty()) {
        throw QueryError("empty link: target");
    }
    for (const auto& t : terms) {
        if (t.empty() || std::any_of(t.begin(), t.end(), [](unsigned char c) {
                return std::isspace(c) || std::isupper(c) || c == '"';
            })) {
            throw QueryError("malformed term '" + t + "'");
        }
    }
    if (filetype_filter) {
        const auto& ext = *filetype_filter;
        if (ext.empty() || std::any_of(ext.begin(), ext.end(), [](unsigned char c) {
                return !std::isalnum(c) || std::isupper(c);
            })) {
            throw QueryError("filetype filter must be a lowercase extension without dot");
        }
    }
    if (site_filter && site_filter->empty()) {
        throw QueryError("empty site: filter");
    }
}

std::string Query::wire_q() const {
    std::string out;
    auto append = [&](const std::string& part) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += part;
    };
    for (const auto& t : terms) {
        append(t);
    }
    if (phrase) {
        append("\"" + *phrase + "\"");
    }
    if (site_filter) {
        append("site:" + *site_filter);
    }
    return out;
}

std::string Query::to_string() const {
    std::string out = wire_q();
    auto append = [&](const std::string& part) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += part;
    };
    if (link_target) {
        append("link:" + *link_target);
    }
    if (filetype_filter) {
        append("filetype:" + *filetype_filter);
    }
    return out;
}

}  // namespace webometer
