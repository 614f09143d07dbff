#pragma once
// The exploration loop. A question flows through initialization (subgraph
// detection, analysis, source selection), retrieval, and up to three
// evidence phases before a generative fallback answers from whatever
// survives pruning.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hydra/config.hpp"
#include "hydra/documents.hpp"
#include "hydra/graph.hpp"
#include "hydra/llm.hpp"
#include "hydra/parsing.hpp"
#include "hydra/paths.hpp"
#include "hydra/prompts.hpp"
#include "hydra/retrieval.hpp"
#include "hydra/scoring.hpp"
#include "hydra/search.hpp"
#include "hydra/trace.hpp"

namespace hydra {

struct EngineSources {
    const KnowledgeGraph* graph = nullptr;
    const DocumentStore* docs = nullptr;
    WebSearchProvider* web = nullptr;
};

struct AnswerResult {
    std::string answer;
    std::string phase;  // initial, refined, predict, or final
    std::vector<ScoredPath> supporting;
    std::set<SourceKind> verified_by;
    size_t llm_calls = 0;
    bool degraded = false;
};

class Engine {
public:
    Engine(EngineConfig cfg, EngineSources sources, LlmClient& llm,
           const Embedder& embedder, TraceWriter& trace)
        : cfg_(std::move(cfg)),
          sources_(sources),
          llm_(llm),
          embedder_(embedder),
          trace_(trace) {
        cfg_.validate();
        if (!cfg_.prompts_dir.empty()) prompts_.load_dir(cfg_.prompts_dir);
    }

    const PromptPack& prompts() const { return prompts_; }

    AnswerResult answer_question(const std::string& question,
                                 const std::string& qid = "") {
        State st;
        st.question = question;
        st.qid = qid;
        trace_.event("question_start",
                     {{"id", qid}, {"question", question}});

        initialize(st);
        retrieve(st);

        if (auto r = run_phase(st, "initial")) return finish(st, *r);
        if (auto r = run_phase(st, "refined")) return finish(st, *r);
        if (auto r = run_phase(st, "predict")) return finish(st, *r);
        return finish(st, final_phase(st));
    }

private:
    struct State {
        std::string question;
        std::string qid;
        std::vector<std::string> topic_ids;    // graph ids, labels as fallback
        std::vector<std::string> present_ids;  // the subset living in the graph
        std::vector<std::string> topic_labels;
        std::set<std::string> topic_id_set;
        KnowledgeGraph gq;           // question subgraph, grows by injection
        KnowledgeGraph exploration;  // gq, relation-sampled in hydra-e mode
        std::set<std::string> kg_entities;
        Vector reference;
        std::vector<std::string> splits;
        std::string indicator_text;
        std::optional<IndicatorChain> chain;
        size_t depth = 1;
        std::set<SourceKind> available;
        std::set<SourceKind> chosen;
        std::vector<EvidencePath> text_paths;
        std::vector<ScoredPath> best_union;
        std::set<std::string> best_keys;
        size_t llm_calls = 0;
        bool degraded = false;
    };

    EngineConfig cfg_;
    EngineSources sources_;
    LlmClient& llm_;
    const Embedder& embedder_;
    TraceWriter& trace_;
    PromptPack prompts_;

    std::string complete(State& st, PromptKind kind, const SlotValues& values,
                         double temperature) {
        LlmRequest req{kind, prompts_.render(kind, values),
                       {temperature, cfg_.max_tokens}};
        std::string response = llm_.complete(req);
        ++st.llm_calls;
        trace_.event("llm_call",
                     {{"kind", to_string(kind)},
                      {"temperature", temperature},
                      {"prompt_tokens", token_estimate(req.prompt)},
                      {"response_tokens", token_estimate(response)}});
        return response;
    }

    void degrade(State& st, const std::string& where,
                 const std::string& detail) {
        st.degraded = true;
        trace_.event("degradation", {{"where", where}, {"detail", detail}});
    }

    // ---- initialization -------------------------------------------------

    void initialize(State& st) {
        // First analysis pass only names the topic entities.
        auto first = parse_question_analysis(
            complete(st, PromptKind::QuestionAnalysis,
                     {{"Query", st.question},
                      {"Topic Entity", "(to be identified)"}},
                     cfg_.temperature_decide));
        if (first.topic_labels.empty())
            degrade(st, "detection", "no topic entities named");
        st.topic_labels = first.topic_labels;

        const KnowledgeGraph* graph = sources_.graph;
        for (const std::string& label : st.topic_labels) {
            std::string id = graph ? graph->find_by_label(label) : "";
            if (id.empty()) {
                st.topic_ids.push_back(label);
            } else {
                st.topic_ids.push_back(id);
                st.present_ids.push_back(id);
            }
        }
        st.topic_id_set.insert(st.topic_ids.begin(), st.topic_ids.end());

        if (graph && !st.present_ids.empty()) {
            KnowledgeGraph detected =
                detect_subgraph(*graph, st.present_ids, cfg_.d_max);
            if (!detected.empty())
                st.gq = cluster_and_reduce(detected, st.present_ids,
                                           cfg_.d_max);
        }
        refresh_exploration(st);
        trace_.event("detection",
                     {{"topics", st.topic_ids},
                      {"matched", st.present_ids},
                      {"subgraph_entities", st.gq.entity_count()},
                      {"subgraph_triples", st.gq.triple_count()}});

        // Second pass reads the skeleton against the matched entities.
        std::string display;
        for (const auto& id : st.topic_ids) {
            if (!display.empty()) display += "; ";
            const Entity* e = st.gq.entity(id);
            display += e ? e->label : id;
        }
        if (display.empty()) display = "(none)";
        auto analysis = parse_question_analysis(
            complete(st, PromptKind::QuestionAnalysis,
                     {{"Query", st.question}, {"Topic Entity", display}},
                     cfg_.temperature_decide));
        st.splits = analysis.split_questions;
        if (st.splits.empty()) st.splits.push_back(st.question);
        st.indicator_text = analysis.indicator_text;
        st.chain = parse_indicator(st.indicator_text);

        std::optional<size_t> predicted;
        if (st.chain) predicted = predict_depth(*st.chain, st.topic_labels);
        if (!predicted && !st.indicator_text.empty())
            degrade(st, "analysis", "indicator unusable for depth");
        st.depth = std::min(predicted.value_or(cfg_.d_max), cfg_.d_max);
        if (st.depth < 1) st.depth = 1;

        reorder_topics(st);

        st.reference = embedder_.embed(
            st.indicator_text.empty() ? st.question : st.indicator_text);
        trace_.event("analysis", {{"topics", st.topic_labels},
                                  {"splits", st.splits},
                                  {"indicator", st.indicator_text},
                                  {"depth", st.depth}});

        select_sources(st);
    }

    void refresh_exploration(State& st) {
        if (cfg_.mode == "hydra-e" && !st.gq.empty()) {
            st.gq.cluster_relations();
            st.exploration = sample_relation_per_edge(st.gq, cfg_.seed);
        } else {
            st.exploration = st.gq;
        }
        st.kg_entities.clear();
        for (const Entity& e : st.gq.entities()) st.kg_entities.insert(e.id);
    }

    // Topics take the order their labels appear in the skyline indicator;
    // anything the indicator does not mention keeps its original order at
    // the back.
    void reorder_topics(State& st) {
        if (!st.chain || st.topic_ids.size() < 2) return;
        std::vector<std::string> chain_keys;
        for (const auto& slot : st.chain->slots)
            chain_keys.push_back(normalize_label(slot));
        auto position = [&](size_t topic_idx) {
            std::set<std::string> keys;
            keys.insert(normalize_label(st.topic_labels[topic_idx]));
            const Entity* e = st.gq.entity(st.topic_ids[topic_idx]);
            if (e) {
                keys.insert(normalize_label(e->label));
                for (const auto& a : e->aliases)
                    keys.insert(normalize_label(a));
            }
            for (size_t i = 0; i < chain_keys.size(); ++i)
                if (keys.count(chain_keys[i])) return i;
            return chain_keys.size() + topic_idx;
        };
        std::vector<size_t> order(st.topic_ids.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) {
                             return position(a) < position(b);
                         });
        std::vector<std::string> ids, labels;
        for (size_t i : order) {
            ids.push_back(st.topic_ids[i]);
            labels.push_back(st.topic_labels[i]);
        }
        st.topic_ids = std::move(ids);
        st.topic_labels = std::move(labels);
        st.present_ids.clear();
        for (const auto& id : st.topic_ids)
            if (st.gq.contains(id) ||
                (sources_.graph && sources_.graph->contains(id)))
                st.present_ids.push_back(id);
    }

    void select_sources(State& st) {
        st.available = detect_available_sources(sources_.graph, sources_.docs,
                                                sources_.web);
        std::string provided;
        auto action_name = [](SourceKind k) {
            switch (k) {
                case SourceKind::Kg: return "action1";
                case SourceKind::Wiki: return "action2";
                case SourceKind::Web: return "action3";
            }
            return "";
        };
        for (SourceKind k : st.available) {
            if (!provided.empty()) provided += ", ";
            provided += action_name(k);
        }
        if (st.available.empty()) {
            degrade(st, "source_select", "no sources available");
            trace_.event("source_select",
                         {{"available", nlohmann::json::array()},
                          {"selected", nlohmann::json::array()}});
            return;
        }
        std::string response = complete(
            st, PromptKind::SourceSelect,
            {{"Query", st.question},
             {"Provided sources", provided},
             {"Question analysis", st.indicator_text.empty()
                                       ? st.question
                                       : st.indicator_text}},
            cfg_.temperature_decide);
        std::set<SourceKind> picked = parse_source_selection(response);
        for (SourceKind k : picked)
            if (st.available.count(k)) st.chosen.insert(k);
        if (st.chosen.empty()) {
            degrade(st, "source_select", "selection unusable, taking all");
            st.chosen = st.available;
        }
        nlohmann::json avail = nlohmann::json::array();
        for (SourceKind k : st.available) avail.push_back(to_string(k));
        nlohmann::json sel = nlohmann::json::array();
        for (SourceKind k : st.chosen) sel.push_back(to_string(k));
        trace_.event("source_select",
                     {{"available", avail}, {"selected", sel}});
    }

    // ---- retrieval ------------------------------------------------------

    void retrieve(State& st) {
        LlmSettings explore{cfg_.temperature_explore, cfg_.max_tokens};
        if (st.chosen.count(SourceKind::Wiki) && sources_.docs) {
            auto res = unstructured_retrieve(
                *sources_.docs, st.question, st.gq, st.topic_ids, embedder_,
                st.reference, prompts_, llm_, explore);
            st.llm_calls += res.llm_calls;
            if (res.llm_calls)
                trace_.event("llm_call",
                             {{"kind", to_string(PromptKind::ParagraphToPath)},
                              {"temperature", cfg_.temperature_explore},
                              {"source", "wiki"}});
            if (res.dropped)
                degrade(st, "wiki_retrieve",
                        std::to_string(res.dropped) +
                            " paths off topic, dropped");
            trace_.event("retrieve", {{"source", "wiki"},
                                      {"paths", res.paths.size()},
                                      {"dropped", res.dropped}});
            append_text_paths(st, std::move(res.paths));
        }
        if (st.chosen.count(SourceKind::Web) && sources_.web) {
            auto res = web_retrieve(*sources_.web, st.question, st.gq,
                                    st.topic_ids, embedder_, st.reference,
                                    prompts_, llm_, explore);
            st.llm_calls += res.llm_calls;
            if (res.llm_calls)
                trace_.event("llm_call",
                             {{"kind", to_string(PromptKind::ParagraphToPath)},
                              {"temperature", cfg_.temperature_explore},
                              {"source", "web"}});
            if (res.dropped)
                degrade(st, "web_retrieve",
                        std::to_string(res.dropped) +
                            " paths off topic, dropped");
            trace_.event("retrieve", {{"source", "web"},
                                      {"paths", res.paths.size()},
                                      {"dropped", res.dropped}});
            append_text_paths(st, std::move(res.paths));
        }
    }

    void append_text_paths(State& st, std::vector<EvidencePath> paths) {
        std::set<std::string> keys;
        for (const auto& p : st.text_paths) keys.insert(path_key(p));
        for (auto& p : paths) {
            if (keys.insert(path_key(p)).second)
                st.text_paths.push_back(std::move(p));
        }
    }

    // ---- phases ---------------------------------------------------------

    std::vector<EvidencePath> kg_candidates(State& st, size_t lo, size_t hi) {
        if (st.present_ids.empty() || st.exploration.empty()) return {};
        if (!st.chosen.count(SourceKind::Kg)) return {};
        PathScorer scorer = [&](const EvidencePath& p) {
            return relevance_score(embedder_, st.reference, p,
                                   st.topic_id_set, cfg_.lambda_sem);
        };
        auto paths = enumerate_entity_paths(
            st.exploration, st.present_ids,
            {.depth = st.depth, .width = cfg_.w1}, scorer);
        return filter_band(std::move(paths), lo, hi);
    }

    std::optional<AnswerResult> run_phase(State& st,
                                          const std::string& phase) {
        size_t k = std::max<size_t>(st.present_ids.size(), 1);
        std::vector<EvidencePath> candidates;
        if (phase == "initial") {
            size_t hi = k * st.depth;
            size_t lo = k * (st.depth - 1);
            candidates = kg_candidates(st, lo, hi);
        } else if (phase == "refined") {
            size_t prior = st.depth;
            st.depth = cfg_.d_max;
            candidates = kg_candidates(st, 0, k * cfg_.d_max);
            st.depth = prior;
            auto hints = refined_hints(st);
            candidates.insert(candidates.end(), hints.begin(), hints.end());
        } else if (phase == "predict") {
            candidates = predicted_paths(st);
            for (const ScoredPath& sp : st.best_union)
                candidates.push_back(sp.path);
        }
        for (const EvidencePath& p : st.text_paths) candidates.push_back(p);
        dedup_paths(candidates);
        trace_.event("phase",
                     {{"name", phase}, {"candidates", candidates.size()}});
        if (candidates.empty()) {
            trace_.event("answer_attempt",
                         {{"phase", phase}, {"verdict", "no_candidates"}});
            return std::nullopt;
        }

        auto pruned = prune_candidates(st, candidates);
        remember_best(st, pruned.selected);
        inject(st, pruned.selected);
        return answer_attempt(st, pruned.selected, phase);
    }

    static void dedup_paths(std::vector<EvidencePath>& paths) {
        std::set<std::string> seen;
        std::vector<EvidencePath> out;
        out.reserve(paths.size());
        for (auto& p : paths)
            if (seen.insert(path_key(p)).second) out.push_back(std::move(p));
        paths = std::move(out);
    }

    // Exploration hints for the refined phase: model-proposed continuations
    // kept only when every step exists in the question subgraph.
    std::vector<EvidencePath> refined_hints(State& st) {
        std::string splits;
        for (const auto& s : st.splits) {
            if (!splits.empty()) splits += " | ";
            splits += s;
        }
        std::string related = render_paths(st.best_union);
        std::string response =
            complete(st, PromptKind::RefinedExploration,
                     {{"Query", st.question},
                      {"Split Question", splits},
                      {"Related Paths", related}},
                     cfg_.temperature_explore);
        std::vector<EvidencePath> out;
        size_t dropped = 0;
        for (const ParsedPath& parsed :
             parse_bracketed_paths(answer_region(response))) {
            EvidencePath p = to_evidence_path(parsed, SourceKind::Kg, st.gq);
            if (edge_aligned(st.gq, p))
                out.push_back(std::move(p));
            else
                ++dropped;
        }
        if (dropped)
            degrade(st, "refined",
                    std::to_string(dropped) + " hints outside subgraph");
        return out;
    }

    // Predicted links: aligned predictions count as graph evidence, the
    // rest keep the lowest reliability tier.
    std::vector<EvidencePath> predicted_paths(State& st) {
        std::string existing = render_paths(st.best_union);
        std::string response =
            complete(st, PromptKind::PredictExploration,
                     {{"Query", st.question},
                      {"Skyline Indicator", st.indicator_text.empty()
                                                ? "(none)"
                                                : st.indicator_text},
                      {"Existing Knowledge Paths", existing}},
                     cfg_.temperature_explore);
        std::vector<EvidencePath> out;
        for (const ParsedPath& parsed :
             parse_bracketed_paths(answer_region(response))) {
            EvidencePath p = to_evidence_path(parsed, SourceKind::Kg, st.gq);
            if (!edge_aligned(st.gq, p)) p.origin = SourceKind::Web;
            out.push_back(std::move(p));
        }
        if (out.empty()) degrade(st, "predict", "no predictions parsed");
        return out;
    }

    static bool edge_aligned(const KnowledgeGraph& g, const EvidencePath& p) {
        if (p.steps.empty()) return false;
        for (const PathStep& s : p.steps) {
            bool found = false;
            for (size_t idx : g.incident(s.head_id)) {
                const Triple& t = g.triple(idx);
                if (t.relation != s.relation) continue;
                if ((t.head == s.head_id && t.tail == s.tail_id) ||
                    (t.head == s.tail_id && t.tail == s.head_id)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    std::string render_paths(const std::vector<ScoredPath>& paths) {
        if (paths.empty()) return "(none)";
        std::string out;
        for (const ScoredPath& sp : paths) {
            if (!out.empty()) out += "\n";
            out += serialize_path(sp.path);
        }
        return out;
    }

    PruneResult prune_candidates(State& st,
                                 const std::vector<EvidencePath>& candidates) {
        PruneConfig pc = cfg_.prune();
        SelectionHook hook = nullptr;
        bool hook_possible = candidates.size() > cfg_.w_max;
        if (hook_possible) {
            hook = [&](const std::vector<ScoredPath>& stage)
                -> std::optional<std::vector<size_t>> {
                if (stage.size() <= cfg_.w_max) {
                    std::vector<size_t> identity(stage.size());
                    for (size_t i = 0; i < identity.size(); ++i)
                        identity[i] = i;
                    return identity;
                }
                std::string listing;
                for (size_t i = 0; i < stage.size(); ++i) {
                    listing += std::to_string(i + 1) + ". " +
                               serialize_path(stage[i].path) + "\n";
                }
                std::string response =
                    complete(st, PromptKind::PathSelect,
                             {{"Query", st.question},
                              {"Candidate Paths", listing}},
                             cfg_.temperature_decide);
                return parse_ranked_selection(response, stage.size());
            };
        }
        auto result = prune_paths(candidates, pc, embedder_, st.reference,
                                  st.topic_id_set, st.kg_entities, hook);
        if (result.selection_degraded)
            degrade(st, "prune", "selection fell back to cross scores");
        trace_.event("prune",
                     {{"candidates", candidates.size()},
                      {"relevance_stage", result.relevance_stage.size()},
                      {"verification_stage", result.verification_stage.size()},
                      {"selected", result.selected.size()},
                      {"degraded", result.selection_degraded}});
        return result;
    }

    void remember_best(State& st, const std::vector<ScoredPath>& selected) {
        for (const ScoredPath& sp : selected) {
            if (st.best_keys.insert(path_key(sp.path)).second)
                st.best_union.push_back(sp);
        }
    }

    // Text evidence that survived pruning with enough cross-source backing
    // becomes part of the question subgraph for later phases.
    void inject(State& st, const std::vector<ScoredPath>& selected) {
        size_t added = 0;
        for (const ScoredPath& sp : selected) {
            if (sp.path.origin == SourceKind::Kg) continue;
            if (sp.cross < cfg_.injection_threshold) continue;
            for (const PathStep& s : sp.path.steps) {
                st.gq.add_entity(s.head_id, s.head_label,
                                 to_string(sp.path.origin));
                st.gq.add_entity(s.tail_id, s.tail_label,
                                 to_string(sp.path.origin));
                if (st.gq.add_triple(underlying_triple(
                        s, to_string(sp.path.origin))))
                    ++added;
            }
        }
        if (added) {
            refresh_exploration(st);
            trace_.event("inject", {{"triples", added}});
        }
    }

    std::optional<AnswerResult> answer_attempt(
        State& st, const std::vector<ScoredPath>& selected,
        const std::string& phase) {
        if (selected.empty()) {
            trace_.event("answer_attempt",
                         {{"phase", phase}, {"verdict", "no_evidence"}});
            return std::nullopt;
        }
        std::string listing;
        for (size_t i = 0; i < selected.size(); ++i) {
            listing += std::to_string(i + 1) + ". " +
                       serialize_path(selected[i].path) + "\n";
        }
        std::string refined =
            complete(st, PromptKind::PathRefine,
                     {{"Query", st.question}, {"Candidate Paths", listing}},
                     cfg_.temperature_decide);
        std::string related;
        auto refined_parsed = parse_bracketed_paths(answer_region(refined));
        if (refined_parsed.empty()) {
            degrade(st, "path_refine", "no refined paths parsed");
            related = render_paths(selected);
        } else {
            for (const ParsedPath& parsed : refined_parsed) {
                EvidencePath p =
                    to_evidence_path(parsed, SourceKind::Kg, st.gq);
                if (!related.empty()) related += "\n";
                related += serialize_path(p);
            }
        }

        std::string verdict_response =
            complete(st, PromptKind::CotEvaluate,
                     {{"Query", st.question}, {"Related Paths", related}},
                     cfg_.temperature_decide);
        auto verdict = parse_yes_no(verdict_response);
        if (!verdict) {
            degrade(st, "cot_evaluate", "no verdict token");
            trace_.event("answer_attempt",
                         {{"phase", phase}, {"verdict", "unparsed"}});
            return std::nullopt;
        }
        trace_.event("answer_attempt",
                     {{"phase", phase}, {"verdict", *verdict ? "yes" : "no"}});
        if (!*verdict) return std::nullopt;

        AnswerResult result;
        result.answer = parse_answer_text(verdict_response);
        result.phase = phase;
        result.supporting = selected;
        result.verified_by = verified_by(selected);
        return result;
    }

    AnswerResult final_phase(State& st) {
        trace_.event("phase", {{"name", "final"},
                               {"candidates", st.best_union.size()}});
        std::string related = render_paths(st.best_union);
        std::string response =
            complete(st, PromptKind::CotGenerate,
                     {{"Query", st.question}, {"Related Paths", related}},
                     cfg_.temperature_decide);
        AnswerResult result;
        result.answer = parse_answer_text(response);
        result.phase = "final";
        result.supporting = st.best_union;
        result.verified_by = verified_by(st.best_union);
        return result;
    }

    static std::set<SourceKind> verified_by(
        const std::vector<ScoredPath>& paths) {
        std::set<SourceKind> out;
        for (const ScoredPath& sp : paths) {
            out.insert(sp.path.origin);
            out.insert(sp.support_kinds.begin(), sp.support_kinds.end());
        }
        return out;
    }

    AnswerResult finish(State& st, AnswerResult result) {
        result.llm_calls = st.llm_calls;
        result.degraded = st.degraded;
        nlohmann::json verified = nlohmann::json::array();
        for (SourceKind k : result.verified_by)
            verified.push_back(to_string(k));
        trace_.event("answer", {{"id", st.qid},
                                {"text", result.answer},
                                {"phase", result.phase},
                                {"verified_by", verified},
                                {"llm_calls", result.llm_calls},
                                {"degraded", result.degraded}});
        trace_.flush();
        return result;
    }
};

}  // namespace hydra
