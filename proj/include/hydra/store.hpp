#pragma once
// On-disk formats: knowledge graph TSV, question datasets, and the ingested
// store layout with its manifest.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hydra/graph.hpp"

namespace hydra {

// head_id <tab> head_label <tab> relation <tab> tail_id <tab> tail_label.
// Blank lines and lines starting with '#' are skipped.
inline KnowledgeGraph load_kg_tsv(const std::string& path,
                                  const std::string& source) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    KnowledgeGraph g;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 5)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected 5 tab separated columns, got " +
                                     std::to_string(cols.size()));
        Triple t;
        t.head = trim(cols[0]);
        t.relation = trim(cols[2]);
        t.tail = trim(cols[3]);
        t.source = source;
        if (t.head.empty() || t.relation.empty() || t.tail.empty())
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": empty id or relation");
        g.add_entity(t.head, trim(cols[1]), source);
        g.add_entity(t.tail, trim(cols[4]), source);
        g.add_triple(std::move(t));
    }
    return g;
}

inline void save_kg_tsv(const KnowledgeGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    for (const Triple& t : g.triples()) {
        out << t.head << '\t' << g.label_of(t.head) << '\t' << t.relation
            << '\t' << t.tail << '\t' << g.label_of(t.tail) << '\n';
    }
}

struct DatasetItem {
    std::string id;
    std::string question;
    std::string answer;
};

// Lines of {"id": ..., "question": ..., "answer": ...}.
inline std::vector<DatasetItem> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    std::vector<DatasetItem> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& ex) {
            throw std::runtime_error("dataset line " + std::to_string(lineno) +
                                     ": " + ex.what());
        }
        DatasetItem item;
        item.id = j.value("id", "q" + std::to_string(lineno));
        item.question = j.at("question").get<std::string>();
        item.answer = j.at("answer").get<std::string>();
        out.push_back(std::move(item));
    }
    return out;
}

struct StoreManifest {
    size_t kg_entities = 0;
    size_t kg_triples = 0;
    size_t documents = 0;
    bool web_fixture = false;
    std::vector<std::string> graph_sources;
};

inline void write_manifest(const StoreManifest& m, const std::string& path) {
    nlohmann::json j{
        {"kg_entities", m.kg_entities},
        {"kg_triples", m.kg_triples},
        {"documents", m.documents},
        {"web_fixture", m.web_fixture},
        {"graph_sources", m.graph_sources},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

inline StoreManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    StoreManifest m;
    m.kg_entities = j.value("kg_entities", 0u);
    m.kg_triples = j.value("kg_triples", 0u);
    m.documents = j.value("documents", 0u);
    m.web_fixture = j.value("web_fixture", false);
    if (j.contains("graph_sources"))
        for (const auto& s : j["graph_sources"])
            m.graph_sources.push_back(s.get<std::string>());
    return m;
}

}  // namespace hydra
