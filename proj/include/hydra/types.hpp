#pragma once
// Core domain types and small text utilities shared across the engine.

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hydra {

// Evidence provenance kind. Individual KG files carry their own source
// names ("freebase", "wikikg", ...); for scoring they all count as Kg.
enum class SourceKind { Kg, Wiki, Web };

inline const char* to_string(SourceKind k) {
    switch (k) {
        case SourceKind::Kg: return "kg";
        case SourceKind::Wiki: return "wiki";
        case SourceKind::Web: return "web";
    }
    throw std::runtime_error("unknown source kind");
}

inline SourceKind source_kind_from_string(std::string_view s) {
    if (s == "kg") return SourceKind::Kg;
    if (s == "wiki") return SourceKind::Wiki;
    if (s == "web") return SourceKind::Web;
    throw std::runtime_error("unknown source kind: " + std::string(s));
}

// One provenance-tagged fact. Immutable once stored in a graph.
// `source` is the originating store name ("freebase", "wikikg") or a
// synthesized "wiki"/"web" for injected text edges.
struct Triple {
    std::string head;
    std::string relation;
    std::string tail;
    std::string source;

    bool operator==(const Triple& o) const {
        return head == o.head && relation == o.relation && tail == o.tail &&
               source == o.source;
    }
};

struct Entity {
    std::string id;
    std::string label;
    std::set<std::string> aliases;
    std::set<std::string> sources;
};

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Canonical form used for entity-label matching: case-folded, trimmed,
// internal whitespace collapsed.
inline std::string normalize_label(std::string_view s) {
    std::string lowered = to_lower(trim(s));
    std::string out;
    out.reserve(lowered.size());
    bool in_space = false;
    for (char c : lowered) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

inline bool contains_ci(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    std::string h = to_lower(haystack), n = to_lower(needle);
    return h.find(n) != std::string::npos;
}

}  // namespace hydra
