#pragma once
// Entity paths: traversal steps over the fused graph or distilled from text,
// plus the bracketed serialization format shared with the language model.

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hydra/graph.hpp"
#include "hydra/types.hpp"

namespace hydra {

// One traversal step. forward means the stored triple reads
// (head, relation, tail); otherwise the step walks the triple backwards.
struct PathStep {
    std::string head_id;
    std::string head_label;
    std::string relation;
    std::string tail_id;
    std::string tail_label;
    bool forward = true;

    bool operator==(const PathStep& o) const {
        return head_id == o.head_id && relation == o.relation &&
               tail_id == o.tail_id && forward == o.forward;
    }
};

// Stored orientation of the step's underlying triple.
inline Triple underlying_triple(const PathStep& s, const std::string& source = "") {
    Triple t;
    t.relation = s.relation;
    t.source = source;
    if (s.forward) {
        t.head = s.head_id;
        t.tail = s.tail_id;
    } else {
        t.head = s.tail_id;
        t.tail = s.head_id;
    }
    return t;
}

struct EvidencePath {
    std::vector<PathStep> steps;
    SourceKind origin = SourceKind::Kg;

    size_t length() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

// Entity ids along the path, in traversal order, first occurrence only.
inline std::vector<std::string> path_entities(const EvidencePath& p) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto push = [&](const std::string& id) {
        if (seen.insert(id).second) out.push_back(id);
    };
    for (const PathStep& s : p.steps) {
        push(s.head_id);
        push(s.tail_id);
    }
    return out;
}

inline std::set<std::string> path_entity_set(const EvidencePath& p) {
    std::set<std::string> out;
    for (const PathStep& s : p.steps) {
        out.insert(s.head_id);
        out.insert(s.tail_id);
    }
    return out;
}

// [{e0} - r1 - {e1} - r2 - {e2}] over display labels.
inline std::string serialize_path(const EvidencePath& p) {
    if (p.steps.empty())
        throw std::runtime_error("serialize_path: path has no steps");
    std::ostringstream os;
    os << "[{" << p.steps.front().head_label << "}";
    for (const PathStep& s : p.steps)
        os << " - " << s.relation << " - {" << s.tail_label << "}";
    os << "]";
    return os.str();
}

// Identity key for deduplication; ids, relations and direction, not labels.
inline std::string path_key(const EvidencePath& p) {
    std::ostringstream os;
    for (const PathStep& s : p.steps) {
        os << s.head_id << '\x1f' << s.relation << '\x1f' << s.tail_id
           << '\x1f' << (s.forward ? 'f' : 'b') << '\x1e';
    }
    return os.str();
}

struct ParsedPath {
    std::vector<std::string> entities;
    std::vector<std::string> relations;  // size = entities.size() - 1
};

// Parses one bracketed path expression. Returns nullopt when the text does
// not alternate {entity} - relation - {entity} cleanly or has fewer than two
// entities.
inline std::optional<ParsedPath> parse_bracketed_path(std::string_view text) {
    std::string_view body = text;
    size_t open = body.find('[');
    size_t close = body.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos ||
        close <= open)
        return std::nullopt;
    body = body.substr(open + 1, close - open - 1);

    ParsedPath parsed;
    size_t pos = 0;
    while (true) {
        size_t eb = body.find('{', pos);
        if (eb == std::string_view::npos) break;
        size_t ee = body.find('}', eb + 1);
        if (ee == std::string_view::npos) return std::nullopt;
        if (!parsed.entities.empty()) {
            // Between two entity groups sits " - relation - ".
            std::string_view infix = body.substr(pos, eb - pos);
            std::string rel = trim(infix);
            if (rel.size() < 2 || rel.front() != '-' || rel.back() != '-')
                return std::nullopt;
            rel = trim(std::string_view(rel).substr(1, rel.size() - 2));
            if (rel.empty()) return std::nullopt;
            parsed.relations.push_back(rel);
        }
        std::string label = trim(body.substr(eb + 1, ee - eb - 1));
        if (label.empty()) return std::nullopt;
        parsed.entities.push_back(label);
        pos = ee + 1;
    }
    if (parsed.entities.size() < 2) return std::nullopt;
    if (parsed.relations.size() + 1 != parsed.entities.size())
        return std::nullopt;
    return parsed;
}

// Every parseable bracketed path in a block of text, in order of appearance.
inline std::vector<ParsedPath> parse_bracketed_paths(std::string_view text) {
    std::vector<ParsedPath> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t open = text.find('[', pos);
        if (open == std::string_view::npos) break;
        size_t close = text.find(']', open + 1);
        if (close == std::string_view::npos) break;
        auto parsed =
            parse_bracketed_path(text.substr(open, close - open + 1));
        if (parsed) out.push_back(std::move(*parsed));
        pos = close + 1;
    }
    return out;
}

// Builds an evidence path from parsed labels. Entity ids resolve against the
// graph by label or alias; unresolved labels keep the label itself as id.
inline EvidencePath to_evidence_path(const ParsedPath& parsed,
                                     SourceKind origin,
                                     const KnowledgeGraph& graph) {
    auto resolve = [&](const std::string& label) {
        std::string id = graph.find_by_label(label);
        return id.empty() ? label : id;
    };
    EvidencePath path;
    path.origin = origin;
    for (size_t i = 0; i < parsed.relations.size(); ++i) {
        PathStep s;
        s.head_label = parsed.entities[i];
        s.tail_label = parsed.entities[i + 1];
        s.head_id = resolve(s.head_label);
        s.tail_id = resolve(s.tail_label);
        s.relation = parsed.relations[i];
        s.forward = true;
        path.steps.push_back(std::move(s));
    }
    return path;
}

}  // namespace hydra
