#pragma once
// Shared test utilities: random graph construction and fixture paths.

#include <random>
#include <string>
#include <vector>

#include "hydra/graph.hpp"

inline std::string fixture_path(const std::string& name) {
#ifdef HYDRA_FIXTURE_DIR
    return std::string(HYDRA_FIXTURE_DIR) + "/" + name;
#else
    return "fixtures/" + name;
#endif
}

inline hydra::KnowledgeGraph make_random_graph(std::mt19937_64& rng,
                                               size_t nodes, size_t edges) {
    hydra::KnowledgeGraph g;
    if (nodes == 0) return g;
    static const char* relations[] = {"knows", "near", "part_of", "owns",
                                      "links"};
    for (size_t i = 0; i < nodes; ++i) {
        std::string id = "n" + std::to_string(i);
        g.add_entity(id, "Node " + std::to_string(i), "kg");
    }
    std::uniform_int_distribution<size_t> pick_node(0, nodes - 1);
    std::uniform_int_distribution<size_t> pick_rel(0, 4);
    for (size_t i = 0; i < edges; ++i) {
        size_t a = pick_node(rng);
        size_t b = pick_node(rng);
        if (a == b) continue;  // no self loops
        hydra::Triple t;
        t.head = "n" + std::to_string(a);
        t.tail = "n" + std::to_string(b);
        t.relation = relations[pick_rel(rng)];
        t.source = "kg";
        g.add_triple(t);
    }
    return g;
}
