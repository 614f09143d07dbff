#pragma once
// Provenance-tagged triple store: neighborhood expansion, question-subgraph
// detection, multi-source fusion, relation clustering, graph reduction.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hydra/embedding.hpp"
#include "hydra/types.hpp"

namespace hydra {

constexpr size_t kNoDistance = std::numeric_limits<size_t>::max();

class KnowledgeGraph {
public:
    // Adds or extends an entity. First label wins; later labels become
    // aliases. Source sets union.
    void add_entity(const std::string& id, const std::string& label,
                    const std::string& source = "",
                    const std::set<std::string>& aliases = {}) {
        auto it = index_.find(id);
        if (it == index_.end()) {
            index_.emplace(id, entities_.size());
            Entity e;
            e.id = id;
            e.label = label.empty() ? id : label;
            e.aliases = aliases;
            if (!source.empty()) e.sources.insert(source);
            entities_.push_back(std::move(e));
        } else {
            Entity& e = entities_[it->second];
            if (!label.empty() && label != e.label) e.aliases.insert(label);
            for (const auto& a : aliases)
                if (a != e.label) e.aliases.insert(a);
            if (!source.empty()) e.sources.insert(source);
        }
    }

    // Stores a triple unless the exact (head, relation, tail, source)
    // quadruple is already present. Returns false on duplicates.
    bool add_triple(Triple t) {
        if (t.head.empty() || t.tail.empty() || t.relation.empty())
            throw std::runtime_error("triple fields must be nonempty");
        std::string key =
            t.head + '\x1f' + t.relation + '\x1f' + t.tail + '\x1f' + t.source;
        if (!seen_.insert(key).second) return false;
        add_entity(t.head, "", t.source);
        add_entity(t.tail, "", t.source);
        size_t idx = triples_.size();
        by_head_[t.head].push_back(idx);
        by_tail_[t.tail].push_back(idx);
        triples_.push_back(std::move(t));
        return true;
    }

    bool contains(const std::string& id) const { return index_.count(id) > 0; }

    const Entity* entity(const std::string& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &entities_[it->second];
    }

    const std::string& label_of(const std::string& id) const {
        static const std::string empty;
        const Entity* e = entity(id);
        return e ? e->label : empty;
    }

    // Entities in insertion order.
    const std::vector<Entity>& entities() const { return entities_; }
    const std::vector<Triple>& triples() const { return triples_; }
    size_t entity_count() const { return entities_.size(); }
    size_t triple_count() const { return triples_.size(); }
    bool empty() const { return triples_.empty() && entities_.empty(); }

    // Relation groups per ordered (head, tail) pair; populated by
    // cluster_relations().
    const std::map<std::pair<std::string, std::string>, std::set<std::string>>&
    edge_groups() const {
        return edge_groups_;
    }

    // All triple indices touching an entity, insertion order, no duplicates.
    std::vector<size_t> incident(const std::string& id) const {
        std::vector<size_t> out;
        auto h = by_head_.find(id);
        auto t = by_tail_.find(id);
        std::set<size_t> dedup;
        if (h != by_head_.end())
            for (size_t i : h->second) dedup.insert(i);
        if (t != by_tail_.end())
            for (size_t i : t->second) dedup.insert(i);
        out.assign(dedup.begin(), dedup.end());
        return out;
    }

    const Triple& triple(size_t idx) const { return triples_[idx]; }

    // Undirected BFS distance from a seed set to every reachable entity.
    std::unordered_map<std::string, size_t> distances_from(
        const std::vector<std::string>& seeds) const {
        std::unordered_map<std::string, size_t> dist;
        std::deque<std::string> queue;
        for (const auto& s : seeds) {
            if (!contains(s) || dist.count(s)) continue;
            dist[s] = 0;
            queue.push_back(s);
        }
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            size_t d = dist[cur];
            for (size_t idx : incident(cur)) {
                const Triple& t = triples_[idx];
                const std::string& other = (t.head == cur) ? t.tail : t.head;
                if (!dist.count(other)) {
                    dist[other] = d + 1;
                    queue.push_back(other);
                }
            }
        }
        return dist;
    }

    // Resolves a display label to an entity id via normalized label/alias
    // match. Empty string when nothing matches.
    std::string find_by_label(std::string_view label) const {
        std::string norm = normalize_label(label);
        for (const Entity& e : entities_) {
            if (normalize_label(e.label) == norm) return e.id;
        }
        for (const Entity& e : entities_) {
            for (const auto& a : e.aliases)
                if (normalize_label(a) == norm) return e.id;
        }
        return {};
    }

    // Index coherence: every stored triple is reachable from both of its
    // endpoint indexes.
    bool check_index_coherence() const {
        size_t head_total = 0, tail_total = 0;
        for (const auto& [id, idxs] : by_head_) head_total += idxs.size();
        for (const auto& [id, idxs] : by_tail_) tail_total += idxs.size();
        if (head_total != triples_.size() || tail_total != triples_.size())
            return false;
        for (size_t i = 0; i < triples_.size(); ++i) {
            const Triple& t = triples_[i];
            auto h = by_head_.find(t.head);
            auto tl = by_tail_.find(t.tail);
            if (h == by_head_.end() || tl == by_tail_.end()) return false;
            if (std::find(h->second.begin(), h->second.end(), i) ==
                h->second.end())
                return false;
            if (std::find(tl->second.begin(), tl->second.end(), i) ==
                tl->second.end())
                return false;
        }
        return true;
    }

    void cluster_relations() {
        edge_groups_.clear();
        for (const Triple& t : triples_)
            edge_groups_[{t.head, t.tail}].insert(t.relation);
    }

private:
    std::vector<Entity> entities_;
    std::unordered_map<std::string, size_t> index_;
    std::vector<Triple> triples_;
    std::unordered_map<std::string, std::vector<size_t>> by_head_;
    std::unordered_map<std::string, std::vector<size_t>> by_tail_;
    std::unordered_set<std::string> seen_;
    std::map<std::pair<std::string, std::string>, std::set<std::string>>
        edge_groups_;
};

struct ExpandResult {
    std::vector<Triple> triples;
    bool known_entity = true;
};

// All triples with head = e or tail = e, each exactly once, insertion order.
// Unknown ids yield an empty result with the warning flag set.
inline ExpandResult expand_one_hop(const KnowledgeGraph& g,
                                   const std::string& e) {
    ExpandResult out;
    if (!g.contains(e)) {
        out.known_entity = false;
        return out;
    }
    for (size_t idx : g.incident(e)) out.triples.push_back(g.triple(idx));
    return out;
}

// Subgraph of all triples lying on some <= d_max-hop undirected walk from any
// topic entity. Empty when no topic entity is present in g.
inline KnowledgeGraph detect_subgraph(const KnowledgeGraph& g,
                                      const std::vector<std::string>& topics,
                                      size_t d_max) {
    if (d_max < 1) throw std::runtime_error("detect_subgraph: d_max must be >= 1");
    if (topics.empty())
        throw std::runtime_error("detect_subgraph: topics must be nonempty");
    KnowledgeGraph out;
    std::vector<std::string> present;
    for (const auto& t : topics)
        if (g.contains(t)) present.push_back(t);
    if (present.empty()) return out;

    auto dist = g.distances_from(present);
    auto copy_entity = [&](const std::string& id) {
        const Entity* e = g.entity(id);
        if (!e) return;
        out.add_entity(e->id, e->label, "", e->aliases);
        for (const auto& s : e->sources) out.add_entity(e->id, "", s);
    };
    for (const auto& t : present) copy_entity(t);
    for (const Triple& t : g.triples()) {
        auto h = dist.find(t.head);
        auto tl = dist.find(t.tail);
        size_t dh = (h == dist.end()) ? kNoDistance : h->second;
        size_t dt = (tl == dist.end()) ? kNoDistance : tl->second;
        if (std::min(dh, dt) <= d_max - 1) {
            copy_entity(t.head);
            copy_entity(t.tail);
            out.add_triple(t);
        }
    }
    return out;
}

// Entity resolution across graphs: normalized labels equal, alias-linked, or
// label-embedding cosine >= match_threshold merge under the first-seen id.
// Parts are visited in the given order, so configured source order decides
// canonical ids.
inline KnowledgeGraph fuse_graphs(const std::vector<KnowledgeGraph>& parts,
                                  double match_threshold,
                                  const Embedder& embedder) {
    if (parts.empty())
        throw std::runtime_error("fuse_graphs: parts must be nonempty");
    KnowledgeGraph out;
    // Canonical entities in insertion order, with their match keys.
    struct Canon {
        std::string id;
        std::set<std::string> keys;  // normalized label + aliases
        Vector vec;
    };
    std::vector<Canon> canon;
    std::unordered_map<std::string, size_t> by_key;
    std::unordered_map<std::string, std::string> remap;  // old id -> canonical

    auto resolve = [&](const Entity& e) -> std::string {
        std::set<std::string> keys;
        keys.insert(normalize_label(e.label));
        for (const auto& a : e.aliases) keys.insert(normalize_label(a));
        // Exact label/alias linkage first.
        for (const auto& k : keys) {
            auto it = by_key.find(k);
            if (it != by_key.end()) {
                Canon& c = canon[it->second];
                for (const auto& nk : keys)
                    if (c.keys.insert(nk).second) by_key.emplace(nk, it->second);
                return c.id;
            }
        }
        // Embedding match against existing canonicals; best cosine wins,
        // earliest canonical breaks ties.
        Vector v = embedder.embed(e.label);
        double best = -1.0;
        size_t best_idx = canon.size();
        for (size_t i = 0; i < canon.size(); ++i) {
            double c = cosine(v, canon[i].vec);
            if (!embedder.nonnegative()) c = (c + 1.0) / 2.0;
            if (c >= match_threshold && c > best) {
                best = c;
                best_idx = i;
            }
        }
        if (best_idx < canon.size()) {
            Canon& c = canon[best_idx];
            for (const auto& nk : keys)
                if (c.keys.insert(nk).second) by_key.emplace(nk, best_idx);
            return c.id;
        }
        // New canonical entity.
        Canon c;
        c.id = e.id;
        c.keys = keys;
        c.vec = std::move(v);
        for (const auto& k : keys) by_key.emplace(k, canon.size());
        canon.push_back(std::move(c));
        return e.id;
    };

    for (const KnowledgeGraph& part : parts) {
        for (const Entity& e : part.entities()) {
            std::string cid = resolve(e);
            remap[e.id] = cid;  // per-part remap; same id may recur across parts
            out.add_entity(cid, e.label, "", e.aliases);
            if (cid != e.id) out.add_entity(cid, "", "", {e.label});
            for (const auto& s : e.sources) out.add_entity(cid, "", s);
        }
        for (const Triple& t : part.triples()) {
            Triple r = t;
            r.head = remap[t.head];
            r.tail = remap[t.tail];
            out.add_triple(std::move(r));
        }
    }
    return out;
}

// Relation clustering plus reduction. Keeps an entity when it is within
// d_max hops of a topic entity or lies on an undirected path of length
// <= |topics| * d_max between two topic entities; everything else goes.
// Either condition covers every entity reachable by an in-budget entity
// path, so reduction cannot destroy eligible paths.
inline KnowledgeGraph cluster_and_reduce(const KnowledgeGraph& g,
                                         const std::vector<std::string>& topics,
                                         size_t d_max) {
    if (topics.empty())
        throw std::runtime_error("cluster_and_reduce: topics must be nonempty");
    std::vector<std::unordered_map<std::string, size_t>> dists;
    for (const auto& t : topics) dists.push_back(g.distances_from({t}));
    size_t path_budget = topics.size() * d_max;

    auto keep = [&](const std::string& id) {
        for (const auto& d : dists) {
            auto it = d.find(id);
            if (it != d.end() && it->second <= d_max) return true;
        }
        for (size_t i = 0; i < dists.size(); ++i) {
            auto a = dists[i].find(id);
            if (a == dists[i].end()) continue;
            for (size_t j = i + 1; j < dists.size(); ++j) {
                auto b = dists[j].find(id);
                if (b == dists[j].end()) continue;
                if (a->second + b->second <= path_budget) return true;
            }
        }
        return false;
    };

    KnowledgeGraph out;
    for (const Entity& e : g.entities()) {
        if (!keep(e.id)) continue;
        out.add_entity(e.id, e.label, "", e.aliases);
        for (const auto& s : e.sources) out.add_entity(e.id, "", s);
    }
    for (const Triple& t : g.triples()) {
        if (out.contains(t.head) && out.contains(t.tail)) out.add_triple(t);
    }
    out.cluster_relations();
    return out;
}

// One uniformly sampled relation per clustered edge, deterministic under a
// fixed seed. Requires edge_groups populated.
inline KnowledgeGraph sample_relation_per_edge(const KnowledgeGraph& g,
                                               uint64_t seed) {
    if (g.edge_groups().empty() && !g.triples().empty())
        throw std::runtime_error(
            "sample_relation_per_edge: edge groups not populated");
    std::mt19937_64 rng(seed);
    KnowledgeGraph out;
    for (const Entity& e : g.entities()) {
        out.add_entity(e.id, e.label, "", e.aliases);
        for (const auto& s : e.sources) out.add_entity(e.id, "", s);
    }
    // edge_groups is an ordered map, so iteration order is stable.
    for (const auto& [pair, relations] : g.edge_groups()) {
        std::vector<std::string> rels(relations.begin(), relations.end());
        std::uniform_int_distribution<size_t> pick(0, rels.size() - 1);
        const std::string& chosen = rels[pick(rng)];
        for (const Triple& t : g.triples()) {
            if (t.head == pair.first && t.tail == pair.second &&
                t.relation == chosen) {
                out.add_triple(t);
                break;  // exactly one triple per edge group
            }
        }
    }
    out.cluster_relations();
    return out;
}

}  // namespace hydra
