#pragma once
// Entity-path enumeration. Topic entities anchor per-topic traversal trees
// that are grown breadth-first up to a depth budget and joined where their
// frontiers meet; adjacent topic connections concatenate into full paths.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hydra/graph.hpp"
#include "hydra/paths.hpp"

namespace hydra {

constexpr size_t kUnlimited = std::numeric_limits<size_t>::max();

struct SearchConfig {
    size_t depth = 3;            // per-tree hop budget
    size_t width = kUnlimited;   // frontier budget per expansion round
};

// Scores a partial path during search; higher survives width pruning.
using PathScorer = std::function<double(const EvidencePath&)>;

namespace detail {

struct Branch {
    std::vector<PathStep> steps;
    std::string endpoint;
    std::unordered_set<std::string> visited;
};

inline PathStep make_step(const KnowledgeGraph& g, const Triple& t,
                          const std::string& from) {
    PathStep s;
    bool fwd = (t.head == from);
    s.forward = fwd;
    s.head_id = from;
    s.tail_id = fwd ? t.tail : t.head;
    s.relation = t.relation;
    s.head_label = g.label_of(s.head_id);
    s.tail_label = g.label_of(s.tail_id);
    return s;
}

inline std::vector<PathStep> reverse_steps(const std::vector<PathStep>& steps) {
    std::vector<PathStep> out;
    out.reserve(steps.size());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        PathStep s = *it;
        std::swap(s.head_id, s.tail_id);
        std::swap(s.head_label, s.tail_label);
        s.forward = !s.forward;
        out.push_back(std::move(s));
    }
    return out;
}

inline void prune_frontier(std::vector<Branch>& frontier, size_t width,
                           const PathScorer& scorer) {
    if (width == kUnlimited || frontier.size() <= width) return;
    struct Ranked {
        double score;
        std::string key;
        size_t idx;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(frontier.size());
    for (size_t i = 0; i < frontier.size(); ++i) {
        EvidencePath p;
        p.steps = frontier[i].steps;
        double sc = scorer ? scorer(p) : 0.0;
        ranked.push_back({sc, path_key(p), i});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key < b.key;
    });
    ranked.resize(width);
    std::vector<Branch> kept;
    kept.reserve(width);
    for (const Ranked& r : ranked) kept.push_back(std::move(frontier[r.idx]));
    frontier = std::move(kept);
}

// All vertex-simple branches rooted at `root`, grouped by length 0..depth.
inline std::vector<std::vector<Branch>> grow_tree(const KnowledgeGraph& g,
                                                  const std::string& root,
                                                  size_t depth, size_t width,
                                                  const PathScorer& scorer) {
    std::vector<std::vector<Branch>> levels(depth + 1);
    Branch seed;
    seed.endpoint = root;
    seed.visited.insert(root);
    levels[0].push_back(std::move(seed));
    for (size_t d = 0; d < depth; ++d) {
        for (const Branch& b : levels[d]) {
            for (size_t idx : g.incident(b.endpoint)) {
                const Triple& t = g.triple(idx);
                std::string other =
                    (t.head == b.endpoint) ? t.tail : t.head;
                if (b.visited.count(other)) continue;
                Branch next = b;
                next.steps.push_back(make_step(g, t, b.endpoint));
                next.endpoint = other;
                next.visited.insert(other);
                levels[d + 1].push_back(std::move(next));
            }
        }
        prune_frontier(levels[d + 1], width, scorer);
    }
    return levels;
}

// Simple paths between two topics reachable by joining depth-bounded trees
// grown from each end. Covers every simple path of length <= 2 * depth.
inline std::vector<std::vector<PathStep>> connect_pair(
    const KnowledgeGraph& g, const std::string& a, const std::string& b,
    size_t depth, size_t width, const PathScorer& scorer) {
    std::vector<std::vector<PathStep>> out;
    if (!g.contains(a) || !g.contains(b)) return out;

    auto tree_a = grow_tree(g, a, depth, width, scorer);
    auto tree_b = grow_tree(g, b, depth, width, scorer);

    std::unordered_map<std::string, std::vector<const Branch*>> by_end;
    for (const auto& level : tree_b)
        for (const Branch& br : level) by_end[br.endpoint].push_back(&br);

    std::unordered_set<std::string> dedup;
    for (const auto& level : tree_a) {
        for (const Branch& one : level) {
            auto it = by_end.find(one.endpoint);
            if (it == by_end.end()) continue;
            for (const Branch* two : it->second) {
                if (one.steps.empty() && two->steps.empty()) continue;
                bool disjoint = true;
                for (const auto& v : two->visited) {
                    if (v != one.endpoint && one.visited.count(v)) {
                        disjoint = false;
                        break;
                    }
                }
                if (!disjoint) continue;
                std::vector<PathStep> joined = one.steps;
                auto back = reverse_steps(two->steps);
                joined.insert(joined.end(), back.begin(), back.end());
                EvidencePath probe;
                probe.steps = joined;
                if (dedup.insert(path_key(probe)).second)
                    out.push_back(std::move(joined));
            }
        }
    }
    return out;
}

}  // namespace detail

// Paths through all topic entities, in order. A single topic yields simple
// paths rooted there of length 1..depth; multiple topics yield every
// concatenation of adjacent-topic connections, each connection at most
// 2 * depth hops. Output is deduplicated and sorted by length then key.
inline std::vector<EvidencePath> enumerate_entity_paths(
    const KnowledgeGraph& g, const std::vector<std::string>& topics,
    const SearchConfig& cfg, const PathScorer& scorer = nullptr) {
    std::vector<EvidencePath> out;
    if (topics.empty()) return out;

    if (topics.size() == 1) {
        if (!g.contains(topics[0])) return out;
        auto levels = detail::grow_tree(g, topics[0], cfg.depth, cfg.width,
                                        scorer);
        std::unordered_set<std::string> dedup;
        for (size_t d = 1; d < levels.size(); ++d) {
            for (const detail::Branch& b : levels[d]) {
                EvidencePath p;
                p.origin = SourceKind::Kg;
                p.steps = b.steps;
                if (dedup.insert(path_key(p)).second)
                    out.push_back(std::move(p));
            }
        }
    } else {
        std::vector<std::vector<std::vector<PathStep>>> segments;
        for (size_t i = 0; i + 1 < topics.size(); ++i) {
            auto conns = detail::connect_pair(g, topics[i], topics[i + 1],
                                              cfg.depth, cfg.width, scorer);
            if (conns.empty()) return out;
            segments.push_back(std::move(conns));
        }
        std::vector<std::vector<PathStep>> acc = segments[0];
        for (size_t s = 1; s < segments.size(); ++s) {
            std::vector<std::vector<PathStep>> next;
            for (const auto& prefix : acc) {
                for (const auto& conn : segments[s]) {
                    std::vector<PathStep> joined = prefix;
                    joined.insert(joined.end(), conn.begin(), conn.end());
                    next.push_back(std::move(joined));
                }
            }
            acc = std::move(next);
        }
        std::unordered_set<std::string> dedup;
        for (auto& steps : acc) {
            EvidencePath p;
            p.origin = SourceKind::Kg;
            p.steps = std::move(steps);
            if (dedup.insert(path_key(p)).second) out.push_back(std::move(p));
        }
    }

    std::sort(out.begin(), out.end(),
              [](const EvidencePath& a, const EvidencePath& b) {
                  if (a.steps.size() != b.steps.size())
                      return a.steps.size() < b.steps.size();
                  return path_key(a) < path_key(b);
              });
    return out;
}

// Keeps paths whose length sits in (lo, hi].
inline std::vector<EvidencePath> filter_band(std::vector<EvidencePath> paths,
                                             size_t lo_exclusive,
                                             size_t hi_inclusive) {
    std::vector<EvidencePath> out;
    for (auto& p : paths) {
        if (p.length() > lo_exclusive && p.length() <= hi_inclusive)
            out.push_back(std::move(p));
    }
    return out;
}

// Reference enumeration by exhaustive depth-first walk, for small graphs
// only. Semantics match enumerate_entity_paths with unlimited width.
inline std::vector<EvidencePath> brute_force_entity_paths(
    const KnowledgeGraph& g, const std::vector<std::string>& topics,
    size_t depth) {
    if (g.triple_count() > 1000)
        throw std::runtime_error(
            "brute_force_entity_paths: graph too large for reference search");

    // All simple paths from `from`, visiting at most max_len edges; when
    // `to` is set, only paths ending there are kept.
    auto walk = [&](const std::string& from, const std::string* to,
                    size_t max_len) {
        std::vector<std::vector<PathStep>> found;
        if (!g.contains(from) || (to && !g.contains(*to))) return found;
        std::vector<PathStep> stack;
        std::unordered_set<std::string> visited{from};
        std::function<void(const std::string&)> dfs =
            [&](const std::string& cur) {
                if (!stack.empty()) {
                    if (!to)
                        found.push_back(stack);
                    else if (cur == *to)
                        found.push_back(stack);
                }
                if (stack.size() == max_len) return;
                for (size_t idx : g.incident(cur)) {
                    const Triple& t = g.triple(idx);
                    std::string other = (t.head == cur) ? t.tail : t.head;
                    if (visited.count(other)) continue;
                    stack.push_back(detail::make_step(g, t, cur));
                    visited.insert(other);
                    dfs(other);
                    visited.erase(other);
                    stack.pop_back();
                }
            };
        dfs(from);
        return found;
    };

    std::vector<EvidencePath> out;
    if (topics.empty()) return out;
    std::unordered_set<std::string> dedup;
    auto emit = [&](std::vector<PathStep> steps) {
        EvidencePath p;
        p.origin = SourceKind::Kg;
        p.steps = std::move(steps);
        if (dedup.insert(path_key(p)).second) out.push_back(std::move(p));
    };

    if (topics.size() == 1) {
        for (auto& steps : walk(topics[0], nullptr, depth)) emit(std::move(steps));
    } else {
        std::vector<std::vector<std::vector<PathStep>>> segments;
        for (size_t i = 0; i + 1 < topics.size(); ++i) {
            auto conns = walk(topics[i], &topics[i + 1], 2 * depth);
            if (conns.empty()) return out;
            segments.push_back(std::move(conns));
        }
        std::vector<std::vector<PathStep>> acc = segments[0];
        for (size_t s = 1; s < segments.size(); ++s) {
            std::vector<std::vector<PathStep>> next;
            for (const auto& prefix : acc)
                for (const auto& conn : segments[s]) {
                    std::vector<PathStep> joined = prefix;
                    joined.insert(joined.end(), conn.begin(), conn.end());
                    next.push_back(std::move(joined));
                }
            acc = std::move(next);
        }
        for (auto& steps : acc) emit(std::move(steps));
    }

    std::sort(out.begin(), out.end(),
              [](const EvidencePath& a, const EvidencePath& b) {
                  if (a.steps.size() != b.steps.size())
                      return a.steps.size() < b.steps.size();
                  return path_key(a) < path_key(b);
              });
    return out;
}

}  // namespace hydra
