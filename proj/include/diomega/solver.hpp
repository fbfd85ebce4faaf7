#pragma once

#include <chrono>
#include <climits>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "diomega/clique.hpp"
#include "diomega/graph.hpp"
#include "diomega/rng.hpp"

namespace diomega {

struct SearchBudget {
    std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
    double time_limit_seconds = std::numeric_limits<double>::infinity();

    bool limited() const {
        return node_limit != std::numeric_limits<std::uint64_t>::max() ||
               time_limit_seconds != std::numeric_limits<double>::infinity();
    }
};

enum class SolveStatus { Exact, BudgetExhausted };

struct DiomegaResult {
    int value = 0;        // exact when status == Exact, otherwise the best upper bound
    LinearOrder witness;  // order whose backedge clique number equals `upper`
    SolveStatus status = SolveStatus::Exact;
    int lower = 0;
    int upper = 0;
    std::uint64_t nodes = 0;
};

struct DecideResult {
    bool yes = false;
    std::optional<LinearOrder> witness;  // engaged on yes
    SolveStatus status = SolveStatus::Exact;
};

struct HeuristicResult {
    LinearOrder order;
    int value = 0;  // clique number of the backedge graph under `order`
};

struct TransitiveSetResult {
    std::vector<VertexId> vertices;
    bool exact = true;
};

struct PeelingResult {
    LinearOrder order;
    int blocks = 0;
    bool exact_blocks = true;  // false when any extraction used the greedy fallback
};

/// Largest vertex set inducing a transitive subtournament. Exact up to 20
/// vertices; beyond that a greedy chain-insertion pass runs and the result is
/// flagged non-exact.
inline TransitiveSetResult max_transitive_subtournament(const DirectedGraph& t) {
    if (!is_tournament(t)) throw std::invalid_argument("input is not a tournament");
    const int n = t.n();
    TransitiveSetResult result;
    if (n == 0) return result;

    if (n <= 20) {
        std::vector<std::uint32_t> out(static_cast<size_t>(n), 0);
        for (const auto& [u, w] : t.arcs()) out[static_cast<size_t>(u)] |= std::uint32_t(1) << w;
        std::uint32_t full = (n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1);
        std::vector<int> chain;
        std::vector<int> best;
        // A transitive set is generated exactly once, in its dominance order:
        // each extension must be beaten by everything already in the chain.
        // Later picks may have smaller ids than the current one, so the only
        // sound growth bound is the full candidate set.
        auto rec = [&](auto&& self, std::uint32_t cand) -> void {
            if (chain.size() > best.size()) best = chain;
            if (chain.size() + static_cast<size_t>(std::popcount(cand)) <= best.size()) return;
            std::uint32_t rest = cand;
            while (rest) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                std::uint32_t next = cand & out[static_cast<size_t>(v)];
                if (chain.size() + 1 + static_cast<size_t>(std::popcount(next)) <= best.size())
                    continue;
                chain.push_back(v);
                self(self, next);
                chain.pop_back();
            }
        };
        rec(rec, full);
        std::sort(best.begin(), best.end());
        result.vertices = best;
        result.exact = true;
        return result;
    }

    // Greedy fallback: insert each vertex into a maintained transitive chain
    // when some position keeps every arc pointing forward.
    std::vector<int> chain;
    for (int v = 0; v < n; ++v) {
        const int k = static_cast<int>(chain.size());
        int beats_prefix = 0;  // chain[0..p-1] must all beat v
        while (beats_prefix < k && t.has_arc(chain[static_cast<size_t>(beats_prefix)], v)) ++beats_prefix;
        bool valid = true;
        for (int i = beats_prefix; i < k; ++i)
            if (!t.has_arc(v, chain[static_cast<size_t>(i)])) {
                valid = false;
                break;
            }
        if (valid) chain.insert(chain.begin() + beats_prefix, v);
    }
    std::sort(chain.begin(), chain.end());
    result.vertices = chain;
    result.exact = false;
    return result;
}

/// Order built by repeatedly extracting a maximum transitive subtournament:
/// extracted blocks are emitted last-first, each internally ordered with all
/// arcs forward. The backedge clique number under this order is at most the
/// number of blocks.
inline PeelingResult peeling_order(const DirectedGraph& t) {
    if (!is_tournament(t)) throw std::invalid_argument("input is not a tournament");
    std::vector<VertexId> alive(static_cast<size_t>(t.n()));
    for (int v = 0; v < t.n(); ++v) alive[static_cast<size_t>(v)] = v;
    std::vector<std::vector<VertexId>> blocks;
    bool exact = true;
    while (!alive.empty()) {
        DirectedGraph sub = induced_subgraph(t, alive);
        TransitiveSetResult r = max_transitive_subtournament(sub);
        exact = exact && r.exact;
        std::vector<VertexId> block;
        block.reserve(r.vertices.size());
        for (int idx : r.vertices) block.push_back(alive[static_cast<size_t>(idx)]);
        // alive is ascending, so sub's dense ids map back by position
        std::sort(block.begin(), block.end(), [&](VertexId a, VertexId b) { return t.has_arc(a, b); });
        std::vector<VertexId> rest;
        rest.reserve(alive.size() - block.size());
        std::vector<char> taken(static_cast<size_t>(t.n()), 0);
        for (VertexId v : block) taken[static_cast<size_t>(v)] = 1;
        for (VertexId v : alive)
            if (!taken[static_cast<size_t>(v)]) rest.push_back(v);
        blocks.push_back(std::move(block));
        alive = std::move(rest);
    }
    std::vector<VertexId> seq;
    seq.reserve(static_cast<size_t>(t.n()));
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
        seq.insert(seq.end(), it->begin(), it->end());
    return {LinearOrder(std::move(seq)), static_cast<int>(blocks.size()), exact};
}

/// Best order among a deterministic candidate pool: identity, a topological
/// order when one exists, the peeling order for tournaments, and `restarts`
/// seeded shuffles. Upper-bound semantics only.
inline HeuristicResult heuristic_order(const DirectedGraph& g, int restarts = 32,
                                       std::uint64_t seed = 1) {
    const int n = g.n();
    if (n == 0) return {LinearOrder(), 0};
    std::optional<HeuristicResult> best;
    auto consider = [&](const LinearOrder& ord) {
        int value = max_clique(backedge_graph(g, ord)).size;
        if (!best || value < best->value ||
            (value == best->value && ord.sequence() < best->order.sequence()))
            best = HeuristicResult{ord, value};
    };
    consider(LinearOrder::identity(n));
    if (auto topo = topological_order(g)) consider(*topo);
    if (is_tournament(g)) consider(peeling_order(g).order);
    std::vector<VertexId> seq(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) seq[static_cast<size_t>(i)] = i;
    for (int r = 0; r < restarts; ++r) {
        Rng rng = Rng::derive(seed, 0x72657374ull, static_cast<std::uint64_t>(r));
        rng.shuffle(std::span<VertexId>(seq));
        consider(LinearOrder(seq));
    }
    return *best;
}

namespace detail {

// Exact search over linear orders, built left to right. Placing v adds
// backedges from v to its already-placed out-neighbors, so the clique number
// of the partial backedge graph only grows along a branch; a branch dies as
// soon as that number reaches the current bound. Plain DP over placed
// subsets would be unsound here: the partial clique number depends on the
// internal order of the placed set, not just on the set.
class OrderSearch {
public:
    OrderSearch(const DirectedGraph& g, const SearchBudget& budget)
        : n_(g.n()), budget_(budget) {
        if (n_ > 64) throw std::invalid_argument("exact order search is limited to 64 vertices");
        out_.assign(static_cast<size_t>(n_), 0);
        for (const auto& [u, w] : g.arcs()) out_[static_cast<size_t>(u)] |= std::uint64_t(1) << w;
        back_adj_.assign(static_cast<size_t>(n_), 0);
        deadline_valid_ = budget_.time_limit_seconds != std::numeric_limits<double>::infinity();
        if (deadline_valid_)
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(budget_.time_limit_seconds));
    }

    // Optimize mode: bound starts at the incumbent value; every leaf reached
    // strictly improves it. Decide mode (decide=true): bound stays t+1 and
    // the first leaf wins.
    void run(int initial_bound, bool decide) {
        decide_ = decide;
        bound_ = initial_bound;
        stop_ = false;
        found_leaf_ = false;
        aborted_ = false;
        min_aborted_ = INT_MAX;
        nodes_ = 0;
        seq_.clear();
        placed_ = 0;
        scratch_.assign(static_cast<size_t>(n_) + 1, {});
        for (auto& s : scratch_) s.reserve(static_cast<size_t>(n_));
        if (bound_ <= (n_ > 0 ? 1 : 0)) return;  // nothing can beat the bound
        dfs(0, 0);
    }

    bool found_leaf() const { return found_leaf_; }
    int leaf_value() const { return leaf_value_; }
    const std::vector<VertexId>& leaf_seq() const { return leaf_seq_; }
    bool aborted() const { return aborted_; }
    int min_aborted() const { return min_aborted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool out_of_budget() {
        if (nodes_ > budget_.node_limit) return true;
        if (deadline_valid_ && (nodes_ & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline_)
            return true;
        return false;
    }

    // Max clique within the current backedge graph restricted to `cand`,
    // capped at `cap`.
    int clique_capped(std::uint64_t cand, int cap) {
        cbest_ = 0;
        ccap_ = cap;
        if (cap > 0) crec(cand, 0);
        return cbest_;
    }

    void crec(std::uint64_t cand, int size) {
        if (size > cbest_) cbest_ = size;
        if (cbest_ >= ccap_) return;
        while (cand) {
            if (size + std::popcount(cand) <= cbest_) return;
            int v = std::countr_zero(cand);
            cand &= cand - 1;
            crec(cand & back_adj_[static_cast<size_t>(v)], size + 1);
            if (cbest_ >= ccap_) return;
        }
    }

    void dfs(int depth, int prefix_omega) {
        if (stop_) return;
        ++nodes_;
        if (out_of_budget()) {
            stop_ = true;
            aborted_ = true;
            min_aborted_ = std::min(min_aborted_, prefix_omega);
            return;
        }
        if (depth == n_) {
            leaf_value_ = prefix_omega;
            leaf_seq_ = seq_;
            found_leaf_ = true;
            if (decide_)
                stop_ = true;  // decision satisfied; unwind without marking aborted
            else
                bound_ = prefix_omega;
            return;
        }
        // fewest immediate backedges first, ties by id
        auto& cands = scratch_[static_cast<size_t>(depth)];
        cands.clear();
        for (int v = 0; v < n_; ++v)
            if (!(placed_ >> v & 1))
                cands.push_back({std::popcount(out_[static_cast<size_t>(v)] & placed_), v});
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.key != b.key ? a.key < b.key : a.v < b.v; });
        for (const Cand& c : cands) {
            if (stop_) {
                if (aborted_) min_aborted_ = std::min(min_aborted_, prefix_omega);
                return;
            }
            int v = c.v;
            std::uint64_t nb = out_[static_cast<size_t>(v)] & placed_;
            int through = 1 + clique_capped(nb, bound_ - 1);
            int next_omega = std::max(prefix_omega, through);
            if (next_omega >= bound_) continue;
            // place v
            placed_ |= std::uint64_t(1) << v;
            seq_.push_back(v);
            back_adj_[static_cast<size_t>(v)] = nb;
            std::uint64_t rest = nb;
            while (rest) {
                int u = std::countr_zero(rest);
                rest &= rest - 1;
                back_adj_[static_cast<size_t>(u)] |= std::uint64_t(1) << v;
            }
            dfs(depth + 1, next_omega);
            // unplace v
            rest = nb;
            while (rest) {
                int u = std::countr_zero(rest);
                rest &= rest - 1;
                back_adj_[static_cast<size_t>(u)] &= ~(std::uint64_t(1) << v);
            }
            back_adj_[static_cast<size_t>(v)] = 0;
            seq_.pop_back();
            placed_ &= ~(std::uint64_t(1) << v);
        }
    }

    struct Cand {
        int key;
        int v;
    };

    int n_;
    SearchBudget budget_;
    std::vector<std::vector<Cand>> scratch_;
    bool deadline_valid_ = false;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<std::uint64_t> out_;
    std::vector<std::uint64_t> back_adj_;
    std::uint64_t placed_ = 0;
    std::vector<VertexId> seq_;
    bool decide_ = false;
    int bound_ = 0;
    bool stop_ = false;
    bool found_leaf_ = false;
    int leaf_value_ = 0;
    std::vector<VertexId> leaf_seq_;
    bool aborted_ = false;
    int min_aborted_ = INT_MAX;
    std::uint64_t nodes_ = 0;
    int cbest_ = 0;
    int ccap_ = 0;
};

}  // namespace detail

/// Exact directed clique number with a witness order. On budget exhaustion
/// the result carries the bounds proved so far and the best order found.
inline DiomegaResult diomega_exact(const DirectedGraph& g, const SearchBudget& budget = {}) {
    DiomegaResult res;
    const int n = g.n();
    if (n == 0) return res;

    HeuristicResult inc = heuristic_order(g);
    const int floor_bound = is_transitive(g) ? 1 : 2;
    res.value = inc.value;
    res.witness = inc.order;
    res.upper = inc.value;
    res.lower = floor_bound;
    if (inc.value <= floor_bound) {
        res.lower = res.value;
        return res;
    }

    detail::OrderSearch search(g, budget);
    search.run(inc.value, /*decide=*/false);
    res.nodes = search.nodes();
    if (search.found_leaf()) {
        res.value = search.leaf_value();
        res.witness = LinearOrder(search.leaf_seq());
    }
    res.upper = res.value;
    if (search.aborted()) {
        int lb = std::max(floor_bound, std::min(search.min_aborted(), res.value));
        if (lb >= res.value) {
            res.lower = res.value;  // aborted subtrees could not have improved
        } else {
            res.lower = lb;
            res.status = SolveStatus::BudgetExhausted;
        }
    } else {
        res.lower = res.value;
    }
    return res;
}

/// Decision: is there an order whose backedge graph is K_{t+1}-free?
inline DecideResult diomega_decide(const DirectedGraph& g, int t, const SearchBudget& budget = {}) {
    if (t < 0) throw std::invalid_argument("threshold must be nonnegative");
    DecideResult res;
    const int n = g.n();
    if (n == 0) {
        res.yes = true;
        res.witness = LinearOrder();
        return res;
    }
    HeuristicResult inc = heuristic_order(g);
    if (inc.value <= t) {
        res.yes = true;
        res.witness = inc.order;
        return res;
    }
    if ((is_transitive(g) ? 1 : 2) > t) return res;  // exact no

    detail::OrderSearch search(g, budget);
    search.run(t + 1, /*decide=*/true);
    if (search.found_leaf()) {
        res.yes = true;
        res.witness = LinearOrder(search.leaf_seq());
    } else if (search.aborted()) {
        res.status = SolveStatus::BudgetExhausted;
    }
    return res;
}

/// Independent oracle: evaluates every permutation. Guarded to 9 vertices.
inline DiomegaResult diomega_brute(const DirectedGraph& g) {
    const int n = g.n();
    if (n > 9) throw std::invalid_argument("diomega_brute limited to 9 vertices");
    DiomegaResult res;
    if (n == 0) return res;

    const auto& arcs = g.arcs();
    std::vector<VertexId> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    int pos[9];
    std::uint32_t adjm[9];
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    std::vector<std::uint8_t> is_clique(static_cast<size_t>(full) + 1);
    int best = INT_MAX;
    std::vector<VertexId> best_seq;
    std::uint64_t count = 0;
    do {
        ++count;
        for (int r = 0; r < n; ++r) pos[perm[static_cast<size_t>(r)]] = r;
        for (int v = 0; v < n; ++v) adjm[v] = 0;
        for (const auto& [u, w] : arcs)
            if (pos[w] < pos[u]) {
                adjm[u] |= std::uint32_t(1) << w;
                adjm[w] |= std::uint32_t(1) << u;
            }
        int omega = 0;
        is_clique[0] = 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            int v = std::countr_zero(mask);
            std::uint32_t rest = mask & (mask - 1);
            bool ok = is_clique[rest] && (adjm[v] & rest) == rest;
            is_clique[mask] = static_cast<std::uint8_t>(ok);
            if (ok) omega = std::max(omega, std::popcount(mask));
        }
        if (omega < best) {
            best = omega;
            best_seq = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    res.value = best;
    res.witness = LinearOrder(best_seq);
    res.lower = res.upper = best;
    res.nodes = count;
    return res;
}

/// DIMACS CNF that is satisfiable iff some order keeps the backedge graph
/// K_{t+1}-free. Order variables o(u,v) for u < v mean "u before v";
/// transitivity is enforced over all triples and one clause blocks each
/// (t+1)-subset whose pairs all carry arcs.
inline std::string emit_cnf_decision(const DirectedGraph& g, int t,
                                     std::uint64_t max_subsets = 4000000) {
    if (t < 1) throw std::invalid_argument("threshold must be at least 1");
    const int n = g.n();
    const int k = t + 1;

    // C(n, k) guard
    if (k <= n) {
        unsigned long long c = 1;
        for (int i = 1; i <= k; ++i) {
            c = c * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
            if (c > max_subsets) throw std::invalid_argument("too many subsets to enumerate");
        }
    }

    std::vector<int> var_offset(static_cast<size_t>(n) + 1, 0);
    for (int u = 0; u < n; ++u)
        var_offset[static_cast<size_t>(u) + 1] = var_offset[static_cast<size_t>(u)] + (n - u - 1);
    auto var = [&](int u, int v) {  // requires u < v
        return var_offset[static_cast<size_t>(u)] + (v - u - 1) + 1;
    };
    const int nvars = n < 2 ? 0 : var_offset[static_cast<size_t>(n)];

    std::ostringstream body;
    std::uint64_t nclauses = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w) {
                body << -var(u, v) << ' ' << -var(v, w) << ' ' << var(u, w) << " 0\n";
                body << var(u, v) << ' ' << var(v, w) << ' ' << -var(u, w) << " 0\n";
                nclauses += 2;
            }

    // forward literal: arc (p, q) contributes no backedge iff p before q
    auto forward_literal = [&](int p, int q) { return p < q ? var(p, q) : -var(q, p); };

    std::vector<int> subset;
    auto emit_blockers = [&](auto&& self, int from) -> void {
        if (static_cast<int>(subset.size()) == k) {
            for (size_t i = 0; i < subset.size(); ++i)
                for (size_t j = i + 1; j < subset.size(); ++j) {
                    int u = subset[i], v = subset[j];
                    if (g.has_arc(u, v) && g.has_arc(v, u)) continue;  // edge under any order
                    if (g.has_arc(u, v))
                        body << forward_literal(u, v) << ' ';
                    else
                        body << forward_literal(v, u) << ' ';
                }
            body << "0\n";
            ++nclauses;
            return;
        }
        for (int v = from; v < n; ++v) {
            bool linked = true;
            for (int u : subset)
                if (!g.has_arc(u, v) && !g.has_arc(v, u)) {
                    linked = false;
                    break;
                }
            if (!linked) continue;  // some pair can never become an edge
            subset.push_back(v);
            self(self, v + 1);
            subset.pop_back();
        }
    };
    if (k <= n) emit_blockers(emit_blockers, 0);

    std::ostringstream out;
    out << "c order encoding: o(u,v) with u < v means u precedes v\n";
    out << "c satisfiable iff the directed clique number is at most " << t << '\n';
    out << "p cnf " << nvars << ' ' << nclauses << '\n';
    out << body.str();
    return out.str();
}

}  // namespace diomega
