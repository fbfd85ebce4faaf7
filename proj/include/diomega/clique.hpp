#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "diomega/graph.hpp"

namespace diomega {

struct CliqueResult {
    int size = 0;
    std::vector<VertexId> witness;  // pairwise adjacent, |witness| == size
};

namespace detail {

// Branch and bound with a greedy-coloring upper bound. Vertices are searched
// in a fixed preorder (descending degree, ties by id), which pins down the
// reported witness. `target` stops the search at the first clique of that
// size; target == 0 means optimize to the maximum.
class CliqueSearch {
public:
    explicit CliqueSearch(const UndirectedGraph& g) : n_(g.n()) {
        order_.resize(static_cast<size_t>(n_));
        for (int v = 0; v < n_; ++v) order_[static_cast<size_t>(v)] = v;
        std::vector<int> deg(static_cast<size_t>(n_));
        for (int v = 0; v < n_; ++v) deg[static_cast<size_t>(v)] = g.degree(v);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            int da = deg[static_cast<size_t>(a)], db = deg[static_cast<size_t>(b)];
            return da != db ? da > db : a < b;
        });
        // adjacency in search-index space
        std::vector<int> index_of(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) index_of[static_cast<size_t>(order_[static_cast<size_t>(i)])] = i;
        adj_.assign(static_cast<size_t>(n_), Bitset(n_));
        for (const auto& [u, w] : g.edges()) {
            int iu = index_of[static_cast<size_t>(u)], iw = index_of[static_cast<size_t>(w)];
            adj_[static_cast<size_t>(iu)].set(iw);
            adj_[static_cast<size_t>(iw)].set(iu);
        }
    }

    CliqueResult run(int target) {
        target_ = target;
        best_.size = 0;
        best_.witness.clear();
        if (n_ == 0) return best_;
        Bitset all(n_);
        for (int i = 0; i < n_; ++i) all.set(i);
        std::vector<int> current;
        expand(all, current);
        std::sort(best_.witness.begin(), best_.witness.end());
        return best_;
    }

private:
    bool done() const { return target_ > 0 && best_.size >= target_; }

    void record(const std::vector<int>& current) {
        best_.size = static_cast<int>(current.size());
        best_.witness.clear();
        for (int i : current) best_.witness.push_back(order_[static_cast<size_t>(i)]);
    }

    // Sequential greedy coloring of cand; emits vertices grouped by color so
    // color classes are nondecreasing along `verts`.
    void color_sort(const Bitset& cand, std::vector<int>& verts, std::vector<int>& colors) const {
        verts.clear();
        colors.clear();
        Bitset uncolored = cand;
        int color = 0;
        while (!uncolored.empty()) {
            ++color;
            Bitset cls = uncolored;
            while (true) {
                int v = cls.first();
                if (v < 0) break;
                verts.push_back(v);
                colors.push_back(color);
                uncolored.reset(v);
                cls.reset(v);
                cls.and_not(adj_[static_cast<size_t>(v)]);
            }
        }
    }

    void expand(Bitset cand, std::vector<int>& current) {
        if (done()) return;
        if (cand.empty()) {
            if (static_cast<int>(current.size()) > best_.size) record(current);
            return;
        }
        std::vector<int> verts, colors;
        color_sort(cand, verts, colors);
        for (int i = static_cast<int>(verts.size()) - 1; i >= 0; --i) {
            int bound = static_cast<int>(current.size()) + colors[static_cast<size_t>(i)];
            int needed = target_ > 0 ? target_ : best_.size + 1;
            if (bound < needed) return;  // colors only decrease leftwards
            int v = verts[static_cast<size_t>(i)];
            current.push_back(v);
            if (static_cast<int>(current.size()) > best_.size) record(current);
            if (done()) return;
            Bitset next = cand & adj_[static_cast<size_t>(v)];
            if (!next.empty()) expand(next, current);
            current.pop_back();
            if (done()) return;
            cand.reset(v);
        }
    }

    int n_;
    int target_ = 0;
    std::vector<int> order_;
    std::vector<Bitset> adj_;
    CliqueResult best_;
};

}  // namespace detail

/// Exact maximum clique. The 0-vertex graph has clique number 0; any
/// nonempty graph has clique number at least 1.
inline CliqueResult max_clique(const UndirectedGraph& g) {
    detail::CliqueSearch s(g);
    return s.run(0);
}

/// Decision form with early exit: a witness of size exactly s, or nullopt.
/// s == 0 is trivially satisfied by the empty set.
inline std::optional<std::vector<VertexId>> find_clique_of_size(const UndirectedGraph& g, int s) {
    if (s < 0) throw std::invalid_argument("clique size must be nonnegative");
    if (s == 0) return std::vector<VertexId>{};
    if (s > g.n()) return std::nullopt;
    detail::CliqueSearch search(g);
    CliqueResult r = search.run(s);
    if (r.size < s) return std::nullopt;
    r.witness.resize(static_cast<size_t>(s));
    return r.witness;
}

inline bool has_clique_of_size(const UndirectedGraph& g, int s) {
    return find_clique_of_size(g, s).has_value();
}

/// Independent oracle: exhaustive subset scan, first-found maximum by
/// ascending bitmask. Guarded to 20 vertices.
inline CliqueResult max_clique_brute(const UndirectedGraph& g) {
    const int n = g.n();
    if (n > 20) throw std::invalid_argument("max_clique_brute limited to 20 vertices");
    if (n == 0) return {};
    std::vector<std::uint32_t> adj(static_cast<size_t>(n), 0);
    for (const auto& [u, w] : g.edges()) {
        adj[static_cast<size_t>(u)] |= std::uint32_t(1) << w;
        adj[static_cast<size_t>(w)] |= std::uint32_t(1) << u;
    }
    const std::uint32_t full = n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1;
    std::vector<std::uint8_t> is_clique(static_cast<size_t>(full) + 1, 0);
    is_clique[0] = 1;
    CliqueResult best;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int v = std::countr_zero(mask);
        std::uint32_t rest = mask & (mask - 1);
        bool ok = is_clique[rest] && (adj[static_cast<size_t>(v)] & rest) == rest;
        is_clique[mask] = ok;
        if (ok) {
            int size = std::popcount(mask);
            if (size > best.size) {
                best.size = size;
                best.witness.clear();
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1) best.witness.push_back(i);
            }
        }
    }
    return best;
}

}  // namespace diomega
