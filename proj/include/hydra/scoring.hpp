#pragma once
// Evidence pruning: relevance ranking, cross-source verification, and
// model-guided final selection, each stage narrowing the candidate set.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hydra/embedding.hpp"
#include "hydra/paths.hpp"

namespace hydra {

struct PruneConfig {
    size_t w1 = 100;   // relevance stage survivors
    size_t w2 = 20;    // verification stage survivors
    size_t w_max = 3;  // final evidence budget
    double lambda_sem = 0.7;   // semantic share of relevance
    double alpha_cross = 0.7;  // relevance share of the combined score
    double gamma = 0.80;       // similarity floor for cross-source support
    double rho_kg = 1.0;
    double rho_wiki = 0.8;
    double rho_web = 0.7;
    std::array<double, 3> alpha = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    bool relevance_only = false;  // ablation: ignore verification entirely

    double rho(SourceKind k) const {
        switch (k) {
            case SourceKind::Kg: return rho_kg;
            case SourceKind::Wiki: return rho_wiki;
            case SourceKind::Web: return rho_web;
        }
        return 0.0;
    }

    void validate() const {
        if (w1 == 0 || w2 == 0 || w_max == 0)
            throw std::runtime_error("prune widths must be positive");
        if (lambda_sem < 0.0 || lambda_sem > 1.0)
            throw std::runtime_error("lambda_sem must lie in [0, 1]");
        if (alpha_cross < 0.0 || alpha_cross > 1.0)
            throw std::runtime_error("alpha_cross must lie in [0, 1]");
        if (!(rho_kg > rho_wiki && rho_wiki > rho_web))
            throw std::runtime_error(
                "source reliability must decrease kg > wiki > web");
        if (rho_web <= 0.0 || rho_kg > 1.0)
            throw std::runtime_error("source reliability must lie in (0, 1]");
    }

    std::array<double, 3> normalized_alpha() const {
        double sum = alpha[0] + alpha[1] + alpha[2];
        if (sum <= 0.0)
            throw std::runtime_error("verification weights must sum above 0");
        return {alpha[0] / sum, alpha[1] / sum, alpha[2] / sum};
    }
};

struct ScoredPath {
    EvidencePath path;
    double relevance = 0.0;
    double verification = 0.0;
    double cross = 0.0;
    double llm = 0.0;
    double f_source = 0.0;
    double f_agreement = 0.0;
    double f_coverage = 0.0;
    std::set<SourceKind> support_kinds;
};

inline double jaccard(const std::set<std::string>& a,
                      const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// lambda_sem * sim(reference, path text) + (1 - lambda_sem) * topic overlap.
inline double relevance_score(const Embedder& embedder,
                              const Vector& reference,
                              const EvidencePath& path,
                              const std::set<std::string>& topic_ids,
                              double lambda_sem) {
    Vector pv = embedder.embed(serialize_path(path));
    double sem = cosine(reference, pv);
    if (!embedder.nonnegative()) sem = (sem + 1.0) / 2.0;
    if (sem < 0.0) sem = 0.0;
    if (sem > 1.0) sem = 1.0;
    double ent = jaccard(topic_ids, path_entity_set(path));
    return lambda_sem * sem + (1.0 - lambda_sem) * ent;
}

// Paths from other source kinds whose text embedding sits within gamma of
// this path's. Returns indices into `all`.
inline std::vector<size_t> supporting_paths(size_t self,
                                            const std::vector<EvidencePath>& all,
                                            const std::vector<Vector>& vecs,
                                            double gamma) {
    std::vector<size_t> out;
    for (size_t i = 0; i < all.size(); ++i) {
        if (i == self) continue;
        if (all[i].origin == all[self].origin) continue;
        if (cosine(vecs[self], vecs[i]) >= gamma) out.push_back(i);
    }
    return out;
}

// Weighted sum of source reliability, cross-source agreement, and coverage
// of the question subgraph's entities.
inline double verification_score(const PruneConfig& cfg, SourceKind origin,
                                 size_t support_count,
                                 const std::set<std::string>& path_ids,
                                 const std::set<std::string>& kg_entities,
                                 double* f1_out = nullptr,
                                 double* f2_out = nullptr,
                                 double* f3_out = nullptr) {
    double f1 = cfg.rho(origin);
    double capped = static_cast<double>(
        support_count < cfg.w_max ? support_count : cfg.w_max);
    double f2 = capped / static_cast<double>(cfg.w_max);
    double f3 = 0.0;
    if (!path_ids.empty()) {
        size_t inter = 0;
        for (const auto& id : path_ids) inter += kg_entities.count(id);
        f3 = static_cast<double>(inter) / static_cast<double>(path_ids.size());
    }
    if (f1_out) *f1_out = f1;
    if (f2_out) *f2_out = f2;
    if (f3_out) *f3_out = f3;
    auto a = cfg.normalized_alpha();
    return a[0] * f1 + a[1] * f2 + a[2] * f3;
}

inline double cross_score(const PruneConfig& cfg, double relevance,
                          double verification) {
    return cfg.alpha_cross * relevance + (1.0 - cfg.alpha_cross) * verification;
}

// Final-stage ranking hook. Receives the verification-stage survivors and
// returns their preferred order as indices, best first; nullopt means the
// ranking could not be obtained and the caller falls back to cross scores.
using SelectionHook = std::function<std::optional<std::vector<size_t>>(
    const std::vector<ScoredPath>&)>;

struct PruneResult {
    std::vector<ScoredPath> selected;          // at most w_max, best first
    std::vector<ScoredPath> relevance_stage;   // at most w1
    std::vector<ScoredPath> verification_stage;  // at most w2
    bool selection_hook_used = false;
    bool selection_degraded = false;  // hook unavailable or unparseable
};

namespace detail {

inline void sort_scored(std::vector<ScoredPath>& v,
                        double ScoredPath::* field) {
    std::sort(v.begin(), v.end(),
              [field](const ScoredPath& a, const ScoredPath& b) {
                  if (a.*field != b.*field) return a.*field > b.*field;
                  return path_key(a.path) < path_key(b.path);
              });
}

}  // namespace detail

// Three-stage narrowing. Stage one keeps the w1 most relevant paths; stage
// two rescores them with cross-source verification and keeps w2; stage three
// asks the selection hook for the final w_max, falling back to cross scores
// when no usable ranking comes back.
inline PruneResult prune_paths(const std::vector<EvidencePath>& candidates,
                               const PruneConfig& cfg,
                               const Embedder& embedder,
                               const Vector& reference,
                               const std::set<std::string>& topic_ids,
                               const std::set<std::string>& kg_entities,
                               const SelectionHook& hook = nullptr) {
    cfg.validate();
    PruneResult result;

    std::vector<ScoredPath> scored;
    scored.reserve(candidates.size());
    for (const EvidencePath& p : candidates) {
        ScoredPath sp;
        sp.path = p;
        sp.relevance =
            relevance_score(embedder, reference, p, topic_ids, cfg.lambda_sem);
        scored.push_back(std::move(sp));
    }
    detail::sort_scored(scored, &ScoredPath::relevance);
    if (scored.size() > cfg.w1) scored.resize(cfg.w1);
    result.relevance_stage = scored;

    std::vector<EvidencePath> stage_paths;
    std::vector<Vector> vecs;
    stage_paths.reserve(scored.size());
    for (const ScoredPath& sp : scored) {
        stage_paths.push_back(sp.path);
        vecs.push_back(embedder.embed(serialize_path(sp.path)));
    }
    for (size_t i = 0; i < scored.size(); ++i) {
        ScoredPath& sp = scored[i];
        auto supp = supporting_paths(i, stage_paths, vecs, cfg.gamma);
        for (size_t j : supp) sp.support_kinds.insert(stage_paths[j].origin);
        sp.verification = verification_score(
            cfg, sp.path.origin, supp.size(), path_entity_set(sp.path),
            kg_entities, &sp.f_source, &sp.f_agreement, &sp.f_coverage);
        sp.cross = cfg.relevance_only
                       ? sp.relevance
                       : cross_score(cfg, sp.relevance, sp.verification);
    }
    detail::sort_scored(scored, &ScoredPath::cross);
    if (scored.size() > cfg.w2) scored.resize(cfg.w2);
    result.verification_stage = scored;

    std::optional<std::vector<size_t>> ranking;
    if (hook && !scored.empty()) {
        result.selection_hook_used = true;
        ranking = hook(scored);
        if (ranking) {
            // Discard rankings that point outside the stage or repeat.
            std::set<size_t> seen;
            for (size_t idx : *ranking) {
                if (idx >= scored.size() || !seen.insert(idx).second) {
                    ranking.reset();
                    break;
                }
            }
        }
        if (!ranking) result.selection_degraded = true;
    }

    if (ranking) {
        size_t take = std::min(cfg.w_max, ranking->size());
        for (size_t r = 0; r < take; ++r) {
            ScoredPath sp = scored[(*ranking)[r]];
            sp.llm = static_cast<double>(cfg.w_max - r) /
                     static_cast<double>(cfg.w_max);
            result.selected.push_back(std::move(sp));
        }
        // A short ranking tops up from the cross ordering.
        if (result.selected.size() < cfg.w_max) {
            std::set<std::string> taken;
            for (const ScoredPath& sp : result.selected)
                taken.insert(path_key(sp.path));
            for (const ScoredPath& sp : scored) {
                if (result.selected.size() >= cfg.w_max) break;
                if (taken.count(path_key(sp.path))) continue;
                result.selected.push_back(sp);
            }
        }
    } else {
        size_t take = std::min(cfg.w_max, scored.size());
        result.selected.assign(scored.begin(), scored.begin() + take);
    }
    return result;
}

}  // namespace hydra
