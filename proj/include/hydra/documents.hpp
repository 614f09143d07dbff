#pragma once
// Unstructured evidence: entity-keyed documents, sentence segmentation, and
// similarity-ranked sentence selection.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hydra/embedding.hpp"
#include "hydra/types.hpp"

namespace hydra {

struct Document {
    std::string entity;  // label the document is filed under
    std::string title;
    std::string body;
};

class DocumentStore {
public:
    void add(Document doc) {
        if (doc.entity.empty())
            throw std::runtime_error("document needs an entity label");
        docs_.push_back(std::move(doc));
    }

    // Lines of {"entity": ..., "title": ..., "body": ...}.
    void load_jsonl(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open documents: " + path);
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
                throw std::runtime_error("documents line " +
                                         std::to_string(lineno) + ": " +
                                         ex.what());
            }
            Document d;
            d.entity = j.at("entity").get<std::string>();
            d.title = j.value("title", d.entity);
            d.body = j.at("body").get<std::string>();
            add(std::move(d));
        }
    }

    // Documents filed under a label, matched after normalization.
    std::vector<const Document*> find(std::string_view entity_label) const {
        std::string key = normalize_label(entity_label);
        std::vector<const Document*> out;
        for (const Document& d : docs_)
            if (normalize_label(d.entity) == key) out.push_back(&d);
        return out;
    }

    size_t size() const { return docs_.size(); }
    const std::vector<Document>& all() const { return docs_; }

private:
    std::vector<Document> docs_;
};

// Splits on sentence-final punctuation followed by whitespace. Fragments
// shorter than min_chars merge into the following sentence, so initials and
// abbreviations do not shred the text.
inline std::vector<std::string> split_sentences(std::string_view text,
                                                size_t min_chars = 20) {
    std::vector<std::string> raw;
    std::string cur;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        cur += c;
        bool final_punct = (c == '.' || c == '!' || c == '?');
        bool boundary =
            final_punct && (i + 1 >= text.size() ||
                            std::isspace(static_cast<unsigned char>(
                                text[i + 1])));
        if (boundary) {
            std::string s = trim(cur);
            if (!s.empty()) raw.push_back(std::move(s));
            cur.clear();
        }
    }
    std::string tail = trim(cur);
    if (!tail.empty()) raw.push_back(std::move(tail));

    std::vector<std::string> out;
    std::string pending;
    for (std::string& frag : raw) {
        std::string joined =
            pending.empty() ? std::move(frag) : pending + " " + frag;
        if (joined.size() < min_chars) {
            pending = std::move(joined);
            continue;
        }
        out.push_back(std::move(joined));
        pending.clear();
    }
    if (!pending.empty()) {
        if (out.empty())
            out.push_back(std::move(pending));
        else
            out.back() += " " + pending;
    }
    return out;
}

// The limit most reference-similar sentences, best first, earlier sentence
// winning ties.
inline std::vector<std::string> select_sentences(
    const std::vector<std::string>& sentences, const Embedder& embedder,
    const Vector& reference, size_t limit) {
    struct Ranked {
        double score;
        size_t index;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(sentences.size());
    for (size_t i = 0; i < sentences.size(); ++i) {
        double c = cosine(reference, embedder.embed(sentences[i]));
        if (!embedder.nonnegative()) c = (c + 1.0) / 2.0;
        ranked.push_back({c, i});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.index < b.index;
    });
    if (ranked.size() > limit) ranked.resize(limit);
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (const Ranked& r : ranked) out.push_back(sentences[r.index]);
    return out;
}

}  // namespace hydra
