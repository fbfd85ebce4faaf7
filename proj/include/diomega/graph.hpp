#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diomega/bitset.hpp"
#include "diomega/rng.hpp"

namespace diomega {

using VertexId = int;
using Arc = std::pair<VertexId, VertexId>;
using Edge = std::pair<VertexId, VertexId>;

/// Undirected graph on dense vertex ids. No loops, no duplicate edges.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(int n) : n_(check_size(n)), adj_(static_cast<size_t>(n), Bitset(n)) {}

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    bool add_edge(VertexId u, VertexId w) {
        check_vertex(u);
        check_vertex(w);
        if (u == w) throw std::invalid_argument("loop edge");
        if (adj_[static_cast<size_t>(u)].test(w)) return false;
        adj_[static_cast<size_t>(u)].set(w);
        adj_[static_cast<size_t>(w)].set(u);
        edges_.emplace_back(std::min(u, w), std::max(u, w));
        return true;
    }

    bool has_edge(VertexId u, VertexId w) const {
        check_vertex(u);
        check_vertex(w);
        return u != w && adj_[static_cast<size_t>(u)].test(w);
    }

    const Bitset& neighbors(VertexId v) const {
        check_vertex(v);
        return adj_[static_cast<size_t>(v)];
    }

    int degree(VertexId v) const { return neighbors(v).count(); }

    const std::vector<Edge>& edges() const { return edges_; }

private:
    static int check_size(int n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        return n;
    }
    void check_vertex(VertexId v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
    }

    int n_ = 0;
    std::vector<Bitset> adj_;
    std::vector<Edge> edges_;
};

/// Directed graph on dense vertex ids. Antiparallel arc pairs are allowed,
/// loops and same-direction duplicates are not. Adjacency is kept both as an
/// arc list and as per-vertex bitmask rows; arc existence is O(1).
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(int n)
        : n_(check_size(n)),
          out_(static_cast<size_t>(n), Bitset(n)),
          in_(static_cast<size_t>(n), Bitset(n)) {}

    int n() const { return n_; }
    int m() const { return static_cast<int>(arcs_.size()); }

    /// Inserts arc (u, w); returns false when it is already present.
    bool add_arc(VertexId u, VertexId w) {
        check_vertex(u);
        check_vertex(w);
        if (u == w) throw std::invalid_argument("loop arc");
        if (out_[static_cast<size_t>(u)].test(w)) return false;
        out_[static_cast<size_t>(u)].set(w);
        in_[static_cast<size_t>(w)].set(u);
        arcs_.emplace_back(u, w);
        return true;
    }

    bool has_arc(VertexId u, VertexId w) const {
        check_vertex(u);
        check_vertex(w);
        return u != w && out_[static_cast<size_t>(u)].test(w);
    }

    const Bitset& out(VertexId v) const {
        check_vertex(v);
        return out_[static_cast<size_t>(v)];
    }
    const Bitset& in(VertexId v) const {
        check_vertex(v);
        return in_[static_cast<size_t>(v)];
    }

    int out_degree(VertexId v) const { return out(v).count(); }
    int in_degree(VertexId v) const { return in(v).count(); }

    const std::vector<Arc>& arcs() const { return arcs_; }

private:
    static int check_size(int n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        return n;
    }
    void check_vertex(VertexId v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
    }

    int n_ = 0;
    std::vector<Bitset> out_, in_;
    std::vector<Arc> arcs_;
};

/// A permutation of a graph's vertices. rank 0 is the smallest element.
class LinearOrder {
public:
    LinearOrder() = default;

    explicit LinearOrder(std::vector<VertexId> sequence) : seq_(std::move(sequence)) {
        const int n = static_cast<int>(seq_.size());
        rank_.assign(static_cast<size_t>(n), -1);
        for (int r = 0; r < n; ++r) {
            VertexId v = seq_[static_cast<size_t>(r)];
            if (v < 0 || v >= n || rank_[static_cast<size_t>(v)] != -1)
                throw std::invalid_argument("order is not a permutation");
            rank_[static_cast<size_t>(v)] = r;
        }
    }

    static LinearOrder identity(int n) {
        std::vector<VertexId> seq(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) seq[static_cast<size_t>(i)] = i;
        return LinearOrder(std::move(seq));
    }

    int n() const { return static_cast<int>(seq_.size()); }
    int rank(VertexId v) const { return rank_.at(static_cast<size_t>(v)); }
    VertexId at(int rank) const { return seq_.at(static_cast<size_t>(rank)); }
    /// u strictly before w.
    bool before(VertexId u, VertexId w) const { return rank(u) < rank(w); }
    const std::vector<VertexId>& sequence() const { return seq_; }

    LinearOrder reversed() const {
        std::vector<VertexId> seq(seq_.rbegin(), seq_.rend());
        return LinearOrder(std::move(seq));
    }

    bool operator==(const LinearOrder&) const = default;

private:
    std::vector<VertexId> seq_;
    std::vector<int> rank_;
};

/// Undirected graph whose edges are the arcs of g pointing against ord.
inline UndirectedGraph backedge_graph(const DirectedGraph& g, const LinearOrder& ord) {
    if (ord.n() != g.n()) throw std::invalid_argument("order/graph vertex count mismatch");
    UndirectedGraph b(g.n());
    for (const auto& [u, w] : g.arcs())
        if (ord.rank(w) < ord.rank(u)) b.add_edge(u, w);
    return b;
}

/// Kahn's algorithm. Returns an order with every arc pointing forward, or
/// nullopt when the graph has a directed cycle (an antiparallel pair counts).
inline std::optional<LinearOrder> topological_order(const DirectedGraph& g) {
    const int n = g.n();
    std::vector<int> indeg(static_cast<size_t>(n));
    std::vector<VertexId> queue, seq;
    seq.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        indeg[static_cast<size_t>(v)] = g.in_degree(v);
        if (indeg[static_cast<size_t>(v)] == 0) queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId v = queue.back();
        queue.pop_back();
        seq.push_back(v);
        g.out(v).for_each([&](int w) {
            if (--indeg[static_cast<size_t>(w)] == 0) queue.push_back(w);
        });
    }
    if (static_cast<int>(seq.size()) != n) return std::nullopt;
    return LinearOrder(std::move(seq));
}

inline bool is_transitive(const DirectedGraph& g) { return topological_order(g).has_value(); }

inline bool is_tournament(const DirectedGraph& g) {
    const int n = g.n();
    if (2 * g.m() != n * (n - 1)) return false;
    for (int u = 0; u < n; ++u)
        if (g.out(u).intersects(g.in(u))) return false;
    return true;
}

inline DirectedGraph make_transitive_tournament(int n) {
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_arc(i, j);
    return g;
}

inline DirectedGraph make_complete_digraph(int n) {
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) g.add_arc(i, j);
    return g;
}

inline DirectedGraph make_random_tournament(int n, std::uint64_t seed) {
    DirectedGraph g(n);
    Rng rng = Rng::derive(seed, 0x746f75726eull);  // per-seed stream
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_bool())
                g.add_arc(i, j);
            else
                g.add_arc(j, i);
        }
    return g;
}

/// Subgraph induced by subset, relabeled densely in ascending id order.
inline DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const VertexId> subset) {
    std::vector<int> to_new(static_cast<size_t>(g.n()), -1);
    std::vector<VertexId> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        VertexId v = sorted[i];
        if (v < 0 || v >= g.n()) throw std::out_of_range("subset vertex out of range");
        if (to_new[static_cast<size_t>(v)] != -1) throw std::invalid_argument("subset has duplicates");
        to_new[static_cast<size_t>(v)] = static_cast<int>(i);
    }
    DirectedGraph h(static_cast<int>(sorted.size()));
    for (const auto& [u, w] : g.arcs()) {
        int nu = to_new[static_cast<size_t>(u)], nw = to_new[static_cast<size_t>(w)];
        if (nu != -1 && nw != -1) h.add_arc(nu, nw);
    }
    return h;
}

}  // namespace diomega
