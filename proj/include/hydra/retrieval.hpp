#pragma once
// Evidence gathering outside the graph: web search abstraction with a file
// fixture implementation, and the document and web retrieval pipelines that
// distill text into evidence paths through one model call each.

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hydra/documents.hpp"
#include "hydra/llm.hpp"
#include "hydra/parsing.hpp"
#include "hydra/paths.hpp"
#include "hydra/prompts.hpp"

namespace hydra {

struct WebResult {
    std::string title;
    std::string snippet;
    std::string url;
};

class WebSearchProvider {
public:
    virtual ~WebSearchProvider() = default;
    virtual std::vector<WebResult> search(const std::string& query) = 0;
    virtual std::string fetch(const std::string& url) = 0;
};

// Serves canned searches from a JSONL file. Each line holds a query, its
// result list, and the page bodies those results point at.
class FixtureWebSearch final : public WebSearchProvider {
public:
    void load_jsonl(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open web fixture: " + path);
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
                throw std::runtime_error("web fixture line " +
                                         std::to_string(lineno) + ": " +
                                         ex.what());
            }
            std::string query = j.at("query").get<std::string>();
            std::vector<WebResult> results;
            for (const auto& r : j.at("results")) {
                WebResult w;
                w.title = r.value("title", std::string{});
                w.snippet = r.value("snippet", std::string{});
                w.url = r.value("url", std::string{});
                results.push_back(std::move(w));
            }
            queries_[normalize_label(query)] = std::move(results);
            if (j.contains("pages"))
                for (const auto& [url, text] : j.at("pages").items())
                    pages_[url] = text.get<std::string>();
        }
    }

    std::vector<WebResult> search(const std::string& query) override {
        auto it = queries_.find(normalize_label(query));
        if (it != queries_.end()) return it->second;
        return {};
    }

    std::string fetch(const std::string& url) override {
        auto it = pages_.find(url);
        if (it != pages_.end()) return it->second;
        return {};
    }

private:
    std::map<std::string, std::vector<WebResult>> queries_;
    std::map<std::string, std::string> pages_;
};

// Sources with anything to offer for this run.
inline std::set<SourceKind> detect_available_sources(
    const KnowledgeGraph* kg, const DocumentStore* docs,
    WebSearchProvider* web) {
    std::set<SourceKind> out;
    if (kg && !kg->empty()) out.insert(SourceKind::Kg);
    if (docs && docs->size() > 0) out.insert(SourceKind::Wiki);
    if (web) out.insert(SourceKind::Web);
    return out;
}

struct RetrievalResult {
    std::vector<EvidencePath> paths;
    std::vector<std::string> paragraphs;  // what the model actually saw
    size_t dropped = 0;   // parsed paths that failed the topic constraint
    size_t llm_calls = 0;
};

namespace detail {

// Paths must depart from a topic entity; anything else is hallucination
// risk and gets dropped.
inline bool starts_at_topic(const EvidencePath& p,
                            const std::set<std::string>& topic_ids,
                            const std::set<std::string>& topic_keys) {
    if (p.steps.empty()) return false;
    if (topic_ids.count(p.steps[0].head_id)) return true;
    return topic_keys.count(normalize_label(p.steps[0].head_label)) > 0;
}

inline std::set<std::string> topic_label_keys(
    const KnowledgeGraph& graph, const std::vector<std::string>& topic_ids) {
    std::set<std::string> keys;
    for (const auto& id : topic_ids) {
        const Entity* e = graph.entity(id);
        if (!e) {
            keys.insert(normalize_label(id));
            continue;
        }
        keys.insert(normalize_label(e->label));
        for (const auto& a : e->aliases) keys.insert(normalize_label(a));
    }
    return keys;
}

inline std::string topic_display(const KnowledgeGraph& graph,
                                 const std::vector<std::string>& topic_ids) {
    std::string out;
    for (const auto& id : topic_ids) {
        if (!out.empty()) out += "; ";
        const Entity* e = graph.entity(id);
        out += e ? e->label : id;
    }
    return out;
}

// Shared tail of both pipelines: pick the three best sentences, run one
// distillation call, keep aligned paths that start at a topic.
inline RetrievalResult distill(
    const std::vector<std::string>& sentences, const std::string& question,
    const KnowledgeGraph& graph, const std::vector<std::string>& topic_ids,
    SourceKind origin, const Embedder& embedder, const Vector& reference,
    const PromptPack& prompts, LlmClient& llm, const LlmSettings& settings) {
    RetrievalResult out;
    if (sentences.empty()) return out;
    out.paragraphs = select_sentences(sentences, embedder, reference, 3);

    SlotValues values{{"Query", question},
                      {"Topic Entity", topic_display(graph, topic_ids)}};
    for (size_t i = 0; i < 3; ++i) {
        std::string key = "Paragraph " + std::to_string(i + 1);
        values[key] =
            i < out.paragraphs.size() ? out.paragraphs[i] : "(none)";
    }
    LlmRequest req{PromptKind::ParagraphToPath,
                   prompts.render(PromptKind::ParagraphToPath, values),
                   settings};
    std::string response = llm.complete(req);
    out.llm_calls = 1;

    std::set<std::string> ids(topic_ids.begin(), topic_ids.end());
    auto keys = topic_label_keys(graph, topic_ids);
    for (const ParsedPath& parsed :
         parse_bracketed_paths(answer_region(response))) {
        EvidencePath p = to_evidence_path(parsed, origin, graph);
        if (starts_at_topic(p, ids, keys))
            out.paths.push_back(std::move(p));
        else
            ++out.dropped;
    }
    return out;
}

}  // namespace detail

// Document pipeline: gather sentences from every document filed under a
// topic entity's label or alias, then distill.
inline RetrievalResult unstructured_retrieve(
    const DocumentStore& docs, const std::string& question,
    const KnowledgeGraph& graph, const std::vector<std::string>& topic_ids,
    const Embedder& embedder, const Vector& reference,
    const PromptPack& prompts, LlmClient& llm, const LlmSettings& settings) {
    std::vector<std::string> sentences;
    std::set<const Document*> seen;
    for (const auto& id : topic_ids) {
        std::vector<std::string> labels;
        const Entity* e = graph.entity(id);
        if (e) {
            labels.push_back(e->label);
            labels.insert(labels.end(), e->aliases.begin(), e->aliases.end());
        } else {
            labels.push_back(id);
        }
        for (const auto& label : labels) {
            for (const Document* d : docs.find(label)) {
                if (!seen.insert(d).second) continue;
                for (auto& s : split_sentences(d->body))
                    sentences.push_back(std::move(s));
            }
        }
    }
    return detail::distill(sentences, question, graph, topic_ids,
                           SourceKind::Wiki, embedder, reference, prompts,
                           llm, settings);
}

// Web pipeline: search with the question, rank hits by snippet similarity,
// read the two best pages (falling back to snippets), then distill.
inline RetrievalResult web_retrieve(
    WebSearchProvider& web, const std::string& question,
    const KnowledgeGraph& graph, const std::vector<std::string>& topic_ids,
    const Embedder& embedder, const Vector& reference,
    const PromptPack& prompts, LlmClient& llm, const LlmSettings& settings) {
    auto results = web.search(question);
    struct Ranked {
        double score;
        size_t index;
    };
    std::vector<Ranked> ranked;
    for (size_t i = 0; i < results.size(); ++i) {
        double c = cosine(
            reference, embedder.embed(results[i].title + " " +
                                      results[i].snippet));
        if (!embedder.nonnegative()) c = (c + 1.0) / 2.0;
        ranked.push_back({c, i});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.index < b.index;
    });
    if (ranked.size() > 2) ranked.resize(2);

    std::vector<std::string> sentences;
    for (const Ranked& r : ranked) {
        const WebResult& hit = results[r.index];
        std::string body = hit.url.empty() ? "" : web.fetch(hit.url);
        if (body.empty()) body = hit.snippet;
        for (auto& s : split_sentences(body)) sentences.push_back(std::move(s));
    }
    return detail::distill(sentences, question, graph, topic_ids,
                           SourceKind::Web, embedder, reference, prompts, llm,
                           settings);
}

}  // namespace hydra
