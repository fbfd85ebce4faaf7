#pragma once

#include <vector>

#include "diomega/graph.hpp"
#include "diomega/rng.hpp"

namespace testutil {

// Each ordered pair gets an arc independently; antiparallel pairs arise
// naturally at higher densities.
inline diomega::DirectedGraph random_digraph(int n, double p, diomega::Rng& rng) {
    diomega::DirectedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            if (u != w && rng.next_unit() < p) g.add_arc(u, w);
    return g;
}

inline diomega::UndirectedGraph random_undirected(int n, double p, diomega::Rng& rng) {
    diomega::UndirectedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w)
            if (rng.next_unit() < p) g.add_edge(u, w);
    return g;
}

inline diomega::LinearOrder random_order(int n, diomega::Rng& rng) {
    std::vector<int> seq(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) seq[static_cast<size_t>(i)] = i;
    rng.shuffle(std::span<int>(seq));
    return diomega::LinearOrder(std::move(seq));
}

// Relabels vertices by perm: vertex v becomes perm[v].
inline diomega::DirectedGraph permute_digraph(const diomega::DirectedGraph& g,
                                              const std::vector<int>& perm) {
    diomega::DirectedGraph h(g.n());
    for (const auto& [u, w] : g.arcs())
        h.add_arc(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(w)]);
    return h;
}

}  // namespace testutil
