#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "diomega/clique.hpp"
#include "diomega/formula.hpp"
#include "diomega/graph.hpp"
#include "diomega/parallel.hpp"
#include "diomega/rng.hpp"

namespace diomega {

/// A structural check failed: a gadget or clique certificate did not behave
/// as required. Distinct from bad inputs, which raise std::invalid_argument.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RoleKind { X, XF, XT, W, APrime, AF, AT, A1, A2, A3, A4, YA, YB };

struct VertexRole {
    RoleKind kind = RoleKind::X;
    int var = -1;      // X variable for gadget vertices, Y variable for YA/YB
    int clause = -1;   // occurrence clause; first clause of the pair for copy-owned vertices
    int clause2 = -1;  // second clause of the pair, -1 outside copy gadgets
    int member = -1;   // index inside a clique set, -1 for named vertices

    bool operator==(const VertexRole&) const = default;
};

inline bool is_clique_member(RoleKind k) {
    switch (k) {
        case RoleKind::APrime:
        case RoleKind::AF:
        case RoleKind::AT:
        case RoleKind::A1:
        case RoleKind::A2:
        case RoleKind::A3:
        case RoleKind::A4:
            return true;
        default:
            return false;
    }
}

struct Group {
    Literal lit;
    VertexId a = -1, b = -1;
};

/// Output of the formula-to-graph compiler: the graph, the threshold
/// t = 2c - 1, a role per vertex, and per-clause occurrence groups.
struct ReductionArtifact {
    DirectedGraph graph;
    int t = 0;
    int x_count = 0;
    std::vector<VertexRole> roles;
    std::vector<std::array<Group, 3>> groups;  // empty when loaded from files

    bool has_groups() const { return !groups.empty(); }
    int clause_count() const { return (t + 1) / 2; }
};

struct BinaryGadgetRefs {
    VertexId x = -1, xf = -1, xt = -1, w = -1;
    std::vector<VertexId> a_prime, a_f, a_t;
};

struct CopyGadgetRefs {
    BinaryGadgetRefs middle;
    std::array<std::vector<VertexId>, 4> rings;  // A1..A4
};

namespace detail {

// Accumulates vertices and arcs; the bitmask graph is materialized once the
// final vertex count is known. Arc insertion is idempotent.
struct GraphBuild {
    int n = 0;
    std::vector<Arc> arcs;
    std::unordered_set<std::uint64_t> seen;
    std::vector<VertexRole> roles;

    VertexId add_vertex(const VertexRole& role) {
        roles.push_back(role);
        return n++;
    }
    void arc(VertexId u, VertexId w) {
        if (u == w) throw std::logic_error("loop arc in gadget construction");
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
                            static_cast<std::uint32_t>(w);
        if (seen.insert(key).second) arcs.emplace_back(u, w);
    }
    void antiparallel(VertexId u, VertexId w) {
        arc(u, w);
        arc(w, u);
    }
    void complete_digraph(const std::vector<VertexId>& vs) {
        for (VertexId u : vs)
            for (VertexId w : vs)
                if (u != w) arc(u, w);
    }
    void join_antiparallel(VertexId v, const std::vector<VertexId>& vs) {
        for (VertexId u : vs) antiparallel(v, u);
    }
    DirectedGraph finalize() const {
        DirectedGraph g(n);
        for (const auto& [u, w] : arcs) g.add_arc(u, w);
        return g;
    }
};

// One binary gadget: internal cliques A' (t-2), A_F and A_T (t-1 each), named
// vertices x, x_F, x_T, w. Single arcs (x_F,w), (w,x_T), (x_T,x_F) force
// x_F << w << x_T in any K_{t+1}-free order; the red arcs (x,x_F) and (x_T,x)
// leave exactly one of the backedges {x,x_F}, {x,x_T}.
inline BinaryGadgetRefs emit_binary_gadget(GraphBuild& b, int t, int var, int k, int l = -1) {
    if (t < 3) throw std::invalid_argument("binary gadget requires t >= 3");
    BinaryGadgetRefs r;
    r.x = b.add_vertex({RoleKind::X, var, k, l, -1});
    r.xf = b.add_vertex({RoleKind::XF, var, k, l, -1});
    r.xt = b.add_vertex({RoleKind::XT, var, k, l, -1});
    r.w = b.add_vertex({RoleKind::W, var, k, l, -1});
    for (int i = 0; i < t - 2; ++i) r.a_prime.push_back(b.add_vertex({RoleKind::APrime, var, k, l, i}));
    for (int i = 0; i < t - 1; ++i) r.a_f.push_back(b.add_vertex({RoleKind::AF, var, k, l, i}));
    for (int i = 0; i < t - 1; ++i) r.a_t.push_back(b.add_vertex({RoleKind::AT, var, k, l, i}));

    b.complete_digraph(r.a_prime);
    b.complete_digraph(r.a_f);
    b.complete_digraph(r.a_t);
    b.join_antiparallel(r.w, r.a_f);
    b.join_antiparallel(r.w, r.a_t);
    b.join_antiparallel(r.xf, r.a_f);
    b.join_antiparallel(r.xt, r.a_t);
    b.join_antiparallel(r.x, r.a_prime);
    b.join_antiparallel(r.xf, r.a_prime);
    b.join_antiparallel(r.xt, r.a_prime);
    b.arc(r.xf, r.w);
    b.arc(r.w, r.xt);
    b.arc(r.xt, r.xf);
    b.arc(r.x, r.xf);  // red
    b.arc(r.xt, r.x);  // red
    return r;
}

// Copy gadget between the binary gadgets of two occurrences of one variable:
// a middle binary gadget plus four rings A_1..A_4 (t-3 vertices each). Each
// ring together with its four surrounding vertices blocks one combination of
// red backedges; the surrounding quadruple is fully joined except along the
// two red pairs. No arcs run between the two outer gadgets.
inline CopyGadgetRefs emit_copy_gadget(GraphBuild& b, int t, const BinaryGadgetRefs& gk,
                                       const BinaryGadgetRefs& gl, int var, int k, int l) {
    if (t < 4) throw std::invalid_argument("copy gadget requires t >= 4");
    CopyGadgetRefs r;
    r.middle = emit_binary_gadget(b, t, var, k, l);
    static constexpr RoleKind ring_kinds[4] = {RoleKind::A1, RoleKind::A2, RoleKind::A3, RoleKind::A4};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < t - 3; ++i)
            r.rings[static_cast<size_t>(j)].push_back(b.add_vertex({ring_kinds[j], var, k, l, i}));

    const BinaryGadgetRefs& m = r.middle;
    // {red pair one, red pair two} per ring
    const std::array<std::array<VertexId, 4>, 4> surround = {{
        {gk.x, gk.xf, m.x, m.xt},  // A1: F-edge of k with T-edge of middle
        {gk.x, gk.xt, m.x, m.xf},  // A2: T-edge of k with F-edge of middle
        {m.x, m.xt, gl.x, gl.xf},  // A3: T-edge of middle with F-edge of l
        {m.x, m.xf, gl.x, gl.xt},  // A4: F-edge of middle with T-edge of l
    }};
    for (int j = 0; j < 4; ++j) {
        const auto& s = surround[static_cast<size_t>(j)];
        b.complete_digraph(r.rings[static_cast<size_t>(j)]);
        for (VertexId v : s) b.join_antiparallel(v, r.rings[static_cast<size_t>(j)]);
        // cross pairs between the two red pairs
        b.antiparallel(s[0], s[2]);
        b.antiparallel(s[0], s[3]);
        b.antiparallel(s[1], s[2]);
        b.antiparallel(s[1], s[3]);
    }
    return r;
}

}  // namespace detail

struct BinaryGadget {
    DirectedGraph graph;
    std::vector<VertexRole> roles;
    BinaryGadgetRefs refs;
};

/// Standalone binary gadget on 3t vertices.
inline BinaryGadget build_binary_gadget(int t) {
    detail::GraphBuild b;
    BinaryGadgetRefs refs = detail::emit_binary_gadget(b, t, 0, 0);
    return {b.finalize(), std::move(b.roles), std::move(refs)};
}

struct CopyComplex {
    DirectedGraph graph;
    std::vector<VertexRole> roles;
    BinaryGadgetRefs gadget_k, gadget_l;
    CopyGadgetRefs copy;
};

/// Two binary gadgets for the same variable in clauses 0 and 1 linked by a
/// copy gadget; the graph the copy-gadget certificate is stated on.
inline CopyComplex build_copy_complex(int t) {
    detail::GraphBuild b;
    BinaryGadgetRefs gk = detail::emit_binary_gadget(b, t, 0, 0);
    BinaryGadgetRefs gl = detail::emit_binary_gadget(b, t, 0, 1);
    CopyGadgetRefs copy = detail::emit_copy_gadget(b, t, gk, gl, 0, 0, 1);
    return {b.finalize(), std::move(b.roles), std::move(gk), std::move(gl), std::move(copy)};
}

struct OrderConstraint {
    std::vector<std::pair<VertexId, VertexId>> precede;  // (u, v): u before v
};

/// Static check that `clique_set` is a backedge clique under EVERY order
/// satisfying the constraints: each pair needs an antiparallel arc pair, or a
/// single arc whose backedge condition follows from the constraint closure.
inline bool check_clique_obligation(const DirectedGraph& g, std::span<const VertexId> clique_set,
                                    const OrderConstraint& constraints) {
    // transitive closure over the constrained vertices only
    std::vector<VertexId> cons_vertices;
    for (const auto& [u, v] : constraints.precede) {
        cons_vertices.push_back(u);
        cons_vertices.push_back(v);
    }
    std::sort(cons_vertices.begin(), cons_vertices.end());
    cons_vertices.erase(std::unique(cons_vertices.begin(), cons_vertices.end()), cons_vertices.end());
    const int m = static_cast<int>(cons_vertices.size());
    auto index_of = [&](VertexId v) -> int {
        auto it = std::lower_bound(cons_vertices.begin(), cons_vertices.end(), v);
        if (it == cons_vertices.end() || *it != v) return -1;
        return static_cast<int>(it - cons_vertices.begin());
    };
    std::vector<std::vector<char>> closure(static_cast<size_t>(m),
                                           std::vector<char>(static_cast<size_t>(m), 0));
    for (const auto& [u, v] : constraints.precede)
        closure[static_cast<size_t>(index_of(u))][static_cast<size_t>(index_of(v))] = 1;
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            if (closure[static_cast<size_t>(i)][static_cast<size_t>(k)])
                for (int j = 0; j < m; ++j)
                    if (closure[static_cast<size_t>(k)][static_cast<size_t>(j)])
                        closure[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
    for (int i = 0; i < m; ++i)
        if (closure[static_cast<size_t>(i)][static_cast<size_t>(i)])
            throw std::invalid_argument("cyclic order constraints");

    auto implied_before = [&](VertexId u, VertexId v) {
        int iu = index_of(u), iv = index_of(v);
        return iu >= 0 && iv >= 0 && closure[static_cast<size_t>(iu)][static_cast<size_t>(iv)];
    };
    for (size_t i = 0; i < clique_set.size(); ++i)
        for (size_t j = i + 1; j < clique_set.size(); ++j) {
            VertexId p = clique_set[i], q = clique_set[j];
            bool pq = g.has_arc(p, q), qp = g.has_arc(q, p);
            if (pq && qp) continue;                       // an edge under any order
            if (pq && implied_before(q, p)) continue;     // backedge forced
            if (qp && implied_before(p, q)) continue;
            return false;
        }
    return true;
}

namespace detail {

struct ObligationSpec {
    std::string name;
    std::vector<VertexId> set;
    OrderConstraint constraints;
};

// Every static clique certificate the two gadget claims rest on, instantiated
// on a copy complex. The binary-gadget rows force x_F << w << x_T and the
// exactly-one property; the ring rows block equal red choices from differing.
inline std::vector<ObligationSpec> claim_obligations(const CopyComplex& cc) {
    std::vector<ObligationSpec> out;
    auto binary_rows = [&](const BinaryGadgetRefs& g, const std::string& tag) {
        ObligationSpec af{"AF(" + tag + ") with w before xF", g.a_f, {}};
        af.set.push_back(g.xf);
        af.set.push_back(g.w);
        af.constraints.precede = {{g.w, g.xf}};
        out.push_back(std::move(af));
        ObligationSpec at{"AT(" + tag + ") with xT before w", g.a_t, {}};
        at.set.push_back(g.xt);
        at.set.push_back(g.w);
        at.constraints.precede = {{g.xt, g.w}};
        out.push_back(std::move(at));
        ObligationSpec ap{"A'(" + tag + ") with xF before x before xT", g.a_prime, {}};
        ap.set.push_back(g.x);
        ap.set.push_back(g.xf);
        ap.set.push_back(g.xt);
        ap.constraints.precede = {{g.xf, g.x}, {g.x, g.xt}};
        out.push_back(std::move(ap));
    };
    binary_rows(cc.gadget_k, "k");
    binary_rows(cc.copy.middle, "kl");
    binary_rows(cc.gadget_l, "l");

    const BinaryGadgetRefs& k = cc.gadget_k;
    const BinaryGadgetRefs& m = cc.copy.middle;
    const BinaryGadgetRefs& l = cc.gadget_l;
    struct RingRow {
        int ring;
        std::array<VertexId, 4> surround;
        std::vector<std::pair<VertexId, VertexId>> precede;
        std::string name;
    };
    const std::vector<RingRow> rows = {
        {0, {k.x, k.xf, m.x, m.xt}, {{k.xf, k.x}, {m.x, m.xt}}, "A1 with F-edge(k) and T-edge(kl)"},
        {1, {k.x, k.xt, m.x, m.xf}, {{k.x, k.xt}, {m.xf, m.x}}, "A2 with T-edge(k) and F-edge(kl)"},
        {2, {m.x, m.xt, l.x, l.xf}, {{m.x, m.xt}, {l.xf, l.x}}, "A3 with T-edge(kl) and F-edge(l)"},
        {3, {m.x, m.xf, l.x, l.xt}, {{m.xf, m.x}, {l.x, l.xt}}, "A4 with F-edge(kl) and T-edge(l)"},
    };
    for (const auto& row : rows) {
        ObligationSpec spec{row.name, cc.copy.rings[static_cast<size_t>(row.ring)], {}};
        for (VertexId v : row.surround) spec.set.push_back(v);
        spec.constraints.precede = row.precede;
        out.push_back(std::move(spec));
    }
    return out;
}

// Rejects an arc orientation that fails any static certificate. Runs once per
// compile; the exhaustive and sampled claim checks live in the verifiers.
inline void validate_gadget_template(int t) {
    CopyComplex cc = build_copy_complex(t);
    for (const auto& ob : claim_obligations(cc))
        if (!check_clique_obligation(cc.graph, ob.set, ob.constraints))
            throw std::logic_error("gadget self-check failed: " + ob.name);
}

}  // namespace detail

/// Compiles a two-level 3-CNF instance into (graph, t = 2c - 1): one binary
/// gadget per X occurrence, one copy gadget per pair of occurrences of an X
/// variable, a vertex pair per Y occurrence, and full cross wiring between
/// compatible groups of different clauses.
inline ReductionArtifact compile(const FormulaInstance& f) {
    const int c = f.clause_count();
    if (c <= 6) throw std::invalid_argument("reduction requires more than 6 clauses");
    for (const Clause& clause : f.clauses)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (clause.lits[static_cast<size_t>(i)].level == clause.lits[static_cast<size_t>(j)].level &&
                    clause.lits[static_cast<size_t>(i)].index == clause.lits[static_cast<size_t>(j)].index)
                    throw std::invalid_argument("clause repeats a variable");

    const int t = 2 * c - 1;
    detail::validate_gadget_template(t);

    detail::GraphBuild b;
    std::vector<std::vector<std::pair<int, BinaryGadgetRefs>>> x_occurrences(
        static_cast<size_t>(f.x_count));
    std::vector<std::array<Group, 3>> groups(static_cast<size_t>(c));

    for (int k = 0; k < c; ++k) {
        const Clause& clause = f.clauses[static_cast<size_t>(k)];
        for (int pos = 0; pos < 3; ++pos) {
            const Literal& lit = clause.lits[static_cast<size_t>(pos)];
            Group group;
            group.lit = lit;
            if (lit.level == VarLevel::X) {
                BinaryGadgetRefs refs = detail::emit_binary_gadget(b, t, lit.index, k);
                group.a = refs.x;
                group.b = lit.negated ? refs.xf : refs.xt;
                x_occurrences[static_cast<size_t>(lit.index)].emplace_back(k, std::move(refs));
            } else {
                VertexId ya = b.add_vertex({RoleKind::YA, lit.index, k, -1, -1});
                VertexId yb = b.add_vertex({RoleKind::YB, lit.index, k, -1, -1});
                b.antiparallel(ya, yb);
                group.a = ya;
                group.b = yb;
            }
            groups[static_cast<size_t>(k)][static_cast<size_t>(pos)] = group;
        }
    }

    for (int i = 0; i < f.x_count; ++i) {
        const auto& occ = x_occurrences[static_cast<size_t>(i)];
        for (size_t p = 0; p < occ.size(); ++p)
            for (size_t q = p + 1; q < occ.size(); ++q)
                detail::emit_copy_gadget(b, t, occ[p].second, occ[q].second, i, occ[p].first,
                                         occ[q].first);
    }

    // all eight arcs between compatible groups of different clauses
    for (int k = 0; k < c; ++k)
        for (int l = k + 1; l < c; ++l)
            for (const Group& gk : groups[static_cast<size_t>(k)])
                for (const Group& gl : groups[static_cast<size_t>(l)]) {
                    bool same_var = gk.lit.level == gl.lit.level && gk.lit.index == gl.lit.index;
                    if (same_var && gk.lit.negated != gl.lit.negated) continue;
                    b.antiparallel(gk.a, gl.a);
                    b.antiparallel(gk.a, gl.b);
                    b.antiparallel(gk.b, gl.a);
                    b.antiparallel(gk.b, gl.b);
                }

    ReductionArtifact art;
    art.graph = b.finalize();
    art.t = t;
    art.x_count = f.x_count;
    art.roles = std::move(b.roles);
    art.groups = std::move(groups);
    return art;
}

namespace detail {

struct GadgetBlock {
    int var = -1;
    VertexId x = -1, xf = -1, xt = -1, w = -1;
    std::vector<VertexId> members;  // internal clique vertices, ascending
    VertexId min_id = -1;
};

// Groups roles into gadget blocks keyed by (var, clause, clause2); ring
// vertices of a copy gadget land in its middle gadget's block. Works for
// loaded artifacts as well as compiled ones.
inline std::vector<GadgetBlock> collect_gadget_blocks(const std::vector<VertexRole>& roles) {
    std::map<std::tuple<int, int, int>, GadgetBlock> by_key;
    for (size_t v = 0; v < roles.size(); ++v) {
        const VertexRole& r = roles[v];
        if (r.kind == RoleKind::YA || r.kind == RoleKind::YB) continue;
        auto key = std::make_tuple(r.var, r.clause, r.clause2);
        GadgetBlock& block = by_key[key];
        block.var = r.var;
        VertexId id = static_cast<VertexId>(v);
        switch (r.kind) {
            case RoleKind::X: block.x = id; break;
            case RoleKind::XF: block.xf = id; break;
            case RoleKind::XT: block.xt = id; break;
            case RoleKind::W: block.w = id; break;
            default: block.members.push_back(id); break;
        }
        if (block.min_id < 0 || id < block.min_id) block.min_id = id;
    }
    std::vector<GadgetBlock> blocks;
    blocks.reserve(by_key.size());
    for (auto& [key, block] : by_key) {
        if (block.x < 0 || block.xf < 0 || block.xt < 0 || block.w < 0)
            throw std::invalid_argument("artifact roles are missing a named gadget vertex");
        std::sort(block.members.begin(), block.members.end());
        blocks.push_back(std::move(block));
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const GadgetBlock& a, const GadgetBlock& b) { return a.min_id < b.min_id; });
    return blocks;
}

}  // namespace detail

/// The completeness order for valuation nu: per gadget, the four named
/// vertices follow the proof pattern for nu's polarity, internal clique
/// vertices come right after in id order, gadget blocks are concatenated by
/// creation order, and Y vertices close the order in id order. The backedge
/// graph does not depend on the canonical choices.
inline LinearOrder witness_order(const ReductionArtifact& art, const Valuation& nu) {
    auto blocks = detail::collect_gadget_blocks(art.roles);
    std::vector<VertexId> seq;
    seq.reserve(static_cast<size_t>(art.graph.n()));
    for (const auto& block : blocks) {
        if (block.var < 0 || static_cast<size_t>(block.var) >= nu.size())
            throw std::invalid_argument("valuation does not cover every X variable");
        if (nu[static_cast<size_t>(block.var)]) {
            seq.insert(seq.end(), {block.x, block.xf, block.w, block.xt});
        } else {
            seq.insert(seq.end(), {block.xf, block.w, block.xt, block.x});
        }
        seq.insert(seq.end(), block.members.begin(), block.members.end());
    }
    for (size_t v = 0; v < art.roles.size(); ++v)
        if (art.roles[v].kind == RoleKind::YA || art.roles[v].kind == RoleKind::YB)
            seq.push_back(static_cast<VertexId>(v));
    return LinearOrder(std::move(seq));
}

/// Reads the valuation back from a K_{2c}-free order: nu_i is true iff the
/// backedge {x, x_T} is present for i's occurrences. Raises when any gadget
/// carries both or neither red backedge, or occurrences of one variable
/// disagree.
inline Valuation extract_valuation(const ReductionArtifact& art, const LinearOrder& ord) {
    const int two_c = art.t + 1;
    UndirectedGraph b = backedge_graph(art.graph, ord);
    if (has_clique_of_size(b, two_c))
        throw std::invalid_argument("backedge graph is not K_{2c}-free");

    int x_vars = art.x_count;
    auto blocks = detail::collect_gadget_blocks(art.roles);
    for (const auto& block : blocks) x_vars = std::max(x_vars, block.var + 1);
    Valuation nu(static_cast<size_t>(x_vars), false);
    std::vector<int> seen(static_cast<size_t>(x_vars), -1);  // -1 unseen, else 0/1
    for (const auto& block : blocks) {
        bool t_edge = b.has_edge(block.x, block.xt);
        bool f_edge = b.has_edge(block.x, block.xf);
        if (t_edge == f_edge)
            throw VerificationError("gadget does not carry exactly one red backedge");
        int bit = t_edge ? 1 : 0;
        int& s = seen[static_cast<size_t>(block.var)];
        if (s == -1)
            s = bit;
        else if (s != bit)
            throw VerificationError("occurrences of one variable disagree on the red backedge");
        nu[static_cast<size_t>(block.var)] = t_edge;
    }
    return nu;
}

/// The soundness clique: for each clause, the group of one occurrence that
/// (nu, mu) satisfies. The returned 2c vertices are verified to be pairwise
/// adjacent in the backedge graph of `ord`.
inline std::vector<VertexId> build_soundness_clique(const ReductionArtifact& art, const Valuation& nu,
                                                    const Valuation& mu, const LinearOrder& ord) {
    if (!art.has_groups())
        throw std::invalid_argument("artifact carries no group data (loaded from files?)");
    UndirectedGraph b = backedge_graph(art.graph, ord);
    std::vector<VertexId> clique;
    for (size_t k = 0; k < art.groups.size(); ++k) {
        const Group* picked = nullptr;
        for (const Group& g : art.groups[k])
            if (eval_literal(g.lit, nu, mu)) {
                picked = &g;
                break;
            }
        if (!picked)
            throw std::invalid_argument("(nu, mu) does not satisfy clause " + std::to_string(k + 1));
        if (picked->lit.level == VarLevel::X && !b.has_edge(picked->a, picked->b))
            throw VerificationError("red backedges of the order are inconsistent with nu");
        clique.push_back(picked->a);
        clique.push_back(picked->b);
    }
    for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j)
            if (!b.has_edge(clique[i], clique[j]))
                throw VerificationError("selected groups are not pairwise adjacent");
    return clique;
}

// ---------------------------------------------------------------------------
// Claim verification

struct Claim1Report {
    int t = 0;
    bool exhaustive = false;
    std::uint64_t orders_checked = 0;
    std::uint64_t free_orders = 0;   // orders whose backedge graph is K_{t+1}-free
    std::uint64_t free_with_f = 0;   // free orders carrying the {x, x_F} backedge
    std::uint64_t free_with_t = 0;
    std::uint64_t violations = 0;    // free orders with not exactly one red backedge

    bool passed() const { return violations == 0 && free_orders > 0; }
};

/// Enumerates every order of the standalone binary gadget. Only t = 3 (nine
/// vertices, 362880 orders) is within reach; larger t must use sampling.
inline Claim1Report verify_claim1_exhaustive(int t) {
    if (t != 3)
        throw std::invalid_argument(
            "exhaustive claim-1 check is limited to t = 3; use sampled verification for larger t");
    BinaryGadget gadget = build_binary_gadget(t);
    const int n = gadget.graph.n();  // 9
    const auto& arcs = gadget.graph.arcs();

    Claim1Report report;
    report.t = t;
    report.exhaustive = true;

    std::vector<int> seq(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) seq[static_cast<size_t>(i)] = i;
    std::vector<int> pos(static_cast<size_t>(n));
    std::uint32_t adj[16];
    auto has_k = [&](int target) {
        // greedy-free recursive check on <= 16 vertices
        auto rec = [&](auto&& self, std::uint32_t cand, int size) -> bool {
            if (size >= target) return true;
            while (cand) {
                if (size + std::popcount(cand) < target) return false;
                int v = std::countr_zero(cand);
                cand &= cand - 1;
                if (self(self, cand & adj[v], size + 1)) return true;
            }
            return false;
        };
        return rec(rec, (std::uint32_t(1) << n) - 1, 0);
    };

    do {
        ++report.orders_checked;
        for (int r = 0; r < n; ++r) pos[static_cast<size_t>(seq[static_cast<size_t>(r)])] = r;
        for (int v = 0; v < n; ++v) adj[v] = 0;
        for (const auto& [u, w] : arcs)
            if (pos[static_cast<size_t>(w)] < pos[static_cast<size_t>(u)]) {
                adj[u] |= std::uint32_t(1) << w;
                adj[w] |= std::uint32_t(1) << u;
            }
        if (has_k(t + 1)) continue;
        ++report.free_orders;
        bool f_edge = (adj[gadget.refs.x] >> gadget.refs.xf) & 1;
        bool t_edge = (adj[gadget.refs.x] >> gadget.refs.xt) & 1;
        if (f_edge == t_edge) {
            ++report.violations;
        } else if (f_edge) {
            ++report.free_with_f;
        } else {
            ++report.free_with_t;
        }
    } while (std::next_permutation(seq.begin(), seq.end()));
    return report;
}

/// Randomized variant for any t >= 3: uniform orders of the standalone
/// gadget, red-edge check on every K_{t+1}-free sample.
inline Claim1Report verify_claim1_sampled(int t, std::uint64_t samples, std::uint64_t seed,
                                          int threads = 1) {
    BinaryGadget gadget = build_binary_gadget(t);
    const int n = gadget.graph.n();

    Claim1Report report;
    report.t = t;
    std::atomic<std::uint64_t> free_orders{0}, with_f{0}, with_t{0}, violations{0};
    parallel_for(samples, threads, [&](std::uint64_t idx) {
        Rng rng = Rng::derive(seed, 0x636c31ull, idx);
        std::vector<VertexId> seq(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) seq[static_cast<size_t>(i)] = i;
        rng.shuffle(std::span<VertexId>(seq));
        LinearOrder ord(std::move(seq));
        UndirectedGraph b = backedge_graph(gadget.graph, ord);
        if (has_clique_of_size(b, t + 1)) return;
        free_orders.fetch_add(1, std::memory_order_relaxed);
        bool f_edge = b.has_edge(gadget.refs.x, gadget.refs.xf);
        bool t_edge = b.has_edge(gadget.refs.x, gadget.refs.xt);
        if (f_edge == t_edge)
            violations.fetch_add(1, std::memory_order_relaxed);
        else if (f_edge)
            with_f.fetch_add(1, std::memory_order_relaxed);
        else
            with_t.fetch_add(1, std::memory_order_relaxed);
    });
    report.orders_checked = samples;
    report.free_orders = free_orders;
    report.free_with_f = with_f;
    report.free_with_t = with_t;
    report.violations = violations;
    return report;
}

struct ObligationResult {
    std::string name;
    bool holds = false;
};

struct Claim2Report {
    int t = 0;
    std::vector<ObligationResult> obligations;
    bool witness_true_free = false;   // completeness order for nu = true
    bool witness_false_free = false;  // and for nu = false
    std::uint64_t sampled = 0;
    std::uint64_t sampled_free = 0;
    std::uint64_t sampled_violations = 0;
    // Factored tier: the backedge graph of the complex is a function of the
    // three named-vertex orders alone once every arc touching a clique member
    // is antiparallel; that premise is checked structurally, and then all
    // (4!)^3 patterns are enumerated.
    bool factored_premise = false;
    std::uint64_t factored_patterns = 0;
    std::uint64_t factored_free = 0;
    std::uint64_t factored_violations = 0;

    bool passed() const {
        for (const auto& ob : obligations)
            if (!ob.holds) return false;
        return witness_true_free && witness_false_free && sampled_violations == 0 &&
               factored_premise && factored_violations == 0 && factored_free > 0;
    }
};

namespace detail {

inline LinearOrder complex_order(const CopyComplex& cc,
                                 const std::array<std::array<VertexId, 4>, 3>& named_patterns) {
    // blocks in creation order: gadget k, middle (+rings), gadget l
    std::vector<VertexId> seq;
    auto block = [&](const BinaryGadgetRefs& g, const std::array<VertexId, 4>& named,
                     const std::vector<VertexId>* extra) {
        seq.insert(seq.end(), named.begin(), named.end());
        std::vector<VertexId> members;
        members.insert(members.end(), g.a_prime.begin(), g.a_prime.end());
        members.insert(members.end(), g.a_f.begin(), g.a_f.end());
        members.insert(members.end(), g.a_t.begin(), g.a_t.end());
        if (extra) members.insert(members.end(), extra->begin(), extra->end());
        std::sort(members.begin(), members.end());
        seq.insert(seq.end(), members.begin(), members.end());
    };
    std::vector<VertexId> rings;
    for (const auto& ring : cc.copy.rings) rings.insert(rings.end(), ring.begin(), ring.end());
    block(cc.gadget_k, named_patterns[0], nullptr);
    block(cc.copy.middle, named_patterns[1], &rings);
    block(cc.gadget_l, named_patterns[2], nullptr);
    return LinearOrder(std::move(seq));
}

inline std::array<VertexId, 4> polarity_pattern(const BinaryGadgetRefs& g, bool value) {
    if (value) return {g.x, g.xf, g.w, g.xt};
    return {g.xf, g.w, g.xt, g.x};
}

}  // namespace detail

/// Three-tier check of the copy-gadget claim plus a factored-exhaustive tier:
/// (i) static clique obligations, (ii) both completeness polarities are
/// K_{t+1}-free, (iii) sampled uniform orders, (iv) all named-order patterns.
inline Claim2Report verify_claim2(int t, std::uint64_t samples, std::uint64_t seed,
                                  int threads = 1) {
    CopyComplex cc = build_copy_complex(t);
    Claim2Report report;
    report.t = t;

    for (const auto& ob : detail::claim_obligations(cc))
        report.obligations.push_back({ob.name, check_clique_obligation(cc.graph, ob.set, ob.constraints)});

    auto free_under = [&](const LinearOrder& ord) {
        return !has_clique_of_size(backedge_graph(cc.graph, ord), t + 1);
    };
    for (bool value : {true, false}) {
        std::array<std::array<VertexId, 4>, 3> patterns = {
            detail::polarity_pattern(cc.gadget_k, value),
            detail::polarity_pattern(cc.copy.middle, value),
            detail::polarity_pattern(cc.gadget_l, value)};
        bool free = free_under(detail::complex_order(cc, patterns));
        (value ? report.witness_true_free : report.witness_false_free) = free;
    }

    const int n = cc.graph.n();
    auto biconditional_holds = [&](const UndirectedGraph& b) {
        bool fk = b.has_edge(cc.gadget_k.x, cc.gadget_k.xf);
        bool fl = b.has_edge(cc.gadget_l.x, cc.gadget_l.xf);
        return fk == fl;
    };

    std::atomic<std::uint64_t> free_count{0}, violation_count{0};
    parallel_for(samples, threads, [&](std::uint64_t idx) {
        Rng rng = Rng::derive(seed, 0x636c32ull, idx);
        std::vector<VertexId> seq(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) seq[static_cast<size_t>(i)] = i;
        rng.shuffle(std::span<VertexId>(seq));
        LinearOrder ord(std::move(seq));
        UndirectedGraph b = backedge_graph(cc.graph, ord);
        if (has_clique_of_size(b, t + 1)) return;
        free_count.fetch_add(1, std::memory_order_relaxed);
        if (!biconditional_holds(b)) violation_count.fetch_add(1, std::memory_order_relaxed);
    });
    report.sampled = samples;
    report.sampled_free = free_count;
    report.sampled_violations = violation_count;

    // factored tier premise: every one-directional arc stays inside a named
    // quadruple, so only the three 4-element patterns matter
    std::vector<char> named(static_cast<size_t>(n), 0);
    for (const auto* g : {&cc.gadget_k, &cc.copy.middle, &cc.gadget_l})
        for (VertexId v : {g->x, g->xf, g->xt, g->w}) named[static_cast<size_t>(v)] = 1;
    report.factored_premise = true;
    for (const auto& [u, w] : cc.graph.arcs())
        if (!cc.graph.has_arc(w, u) && !(named[static_cast<size_t>(u)] && named[static_cast<size_t>(w)])) {
            report.factored_premise = false;
            break;
        }
    if (report.factored_premise) {
        std::array<std::array<VertexId, 4>, 3> base = {
            detail::polarity_pattern(cc.gadget_k, true),
            detail::polarity_pattern(cc.copy.middle, true),
            detail::polarity_pattern(cc.gadget_l, true)};
        std::array<std::array<int, 4>, 3> idx = {{{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}}};
        std::array<std::array<VertexId, 4>, 3> patterns;
        auto apply = [&](int g) {
            for (int i = 0; i < 4; ++i)
                patterns[static_cast<size_t>(g)][static_cast<size_t>(i)] =
                    base[static_cast<size_t>(g)][static_cast<size_t>(idx[static_cast<size_t>(g)][static_cast<size_t>(i)])];
        };
        std::sort(idx[0].begin(), idx[0].end());
        do {
            std::sort(idx[1].begin(), idx[1].end());
            do {
                std::sort(idx[2].begin(), idx[2].end());
                do {
                    apply(0);
                    apply(1);
                    apply(2);
                    ++report.factored_patterns;
                    LinearOrder ord = detail::complex_order(cc, patterns);
                    UndirectedGraph b = backedge_graph(cc.graph, ord);
                    if (has_clique_of_size(b, t + 1)) continue;
                    ++report.factored_free;
                    if (!biconditional_holds(b)) ++report.factored_violations;
                } while (std::next_permutation(idx[2].begin(), idx[2].end()));
            } while (std::next_permutation(idx[1].begin(), idx[1].end()));
        } while (std::next_permutation(idx[0].begin(), idx[0].end()));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Artifact files: digraph file plus a labels sidecar. The sidecar starts with
// `t <value>` and carries one `l <vertexId> <role...>` line per vertex;
// vertex, variable and clause numbers are 1-indexed in the file.

namespace detail {

inline const char* role_token(RoleKind k) {
    switch (k) {
        case RoleKind::X: return "x";
        case RoleKind::XF: return "xF";
        case RoleKind::XT: return "xT";
        case RoleKind::W: return "w";
        case RoleKind::APrime: return "Ap";
        case RoleKind::AF: return "AF";
        case RoleKind::AT: return "AT";
        case RoleKind::A1: return "A1";
        case RoleKind::A2: return "A2";
        case RoleKind::A3: return "A3";
        case RoleKind::A4: return "A4";
        case RoleKind::YA: return "yA";
        case RoleKind::YB: return "yB";
    }
    return "?";
}

inline bool role_from_token(const std::string& tok, RoleKind& out) {
    static const std::pair<const char*, RoleKind> table[] = {
        {"x", RoleKind::X},   {"xF", RoleKind::XF},    {"xT", RoleKind::XT}, {"w", RoleKind::W},
        {"Ap", RoleKind::APrime}, {"AF", RoleKind::AF}, {"AT", RoleKind::AT}, {"A1", RoleKind::A1},
        {"A2", RoleKind::A2}, {"A3", RoleKind::A3},    {"A4", RoleKind::A4}, {"yA", RoleKind::YA},
        {"yB", RoleKind::YB},
    };
    for (const auto& [name, kind] : table)
        if (tok == name) {
            out = kind;
            return true;
        }
    return false;
}

}  // namespace detail

inline void write_labels(std::ostream& out, const ReductionArtifact& art) {
    out << "t " << art.t << '\n';
    for (size_t v = 0; v < art.roles.size(); ++v) {
        const VertexRole& r = art.roles[v];
        out << "l " << v + 1 << ' ' << detail::role_token(r.kind) << ' ' << r.var + 1 << ' '
            << r.clause + 1;
        if (r.clause2 >= 0) out << ' ' << r.clause2 + 1;
        if (r.member >= 0) out << ' ' << r.member + 1;
        out << '\n';
    }
}

inline ReductionArtifact read_artifact(std::istream& graph_in, std::istream& labels_in) {
    ReductionArtifact art;
    art.graph = read_digraph(graph_in);
    art.roles.assign(static_cast<size_t>(art.graph.n()), VertexRole{});
    std::vector<char> have(static_cast<size_t>(art.graph.n()), 0);

    std::string line;
    std::vector<std::string> tok;
    int lineno = 0;
    bool have_t = false;
    while (std::getline(labels_in, line)) {
        ++lineno;
        if (!detail::tokenize(line, tok)) continue;
        if (tok[0] == "t") {
            if (tok.size() != 2) throw ParseError(lineno, "expected `t <value>`");
            long long t = detail::parse_int(tok[1], lineno);
            if (t < 1) throw ParseError(lineno, "threshold must be positive");
            art.t = static_cast<int>(t);
            have_t = true;
        } else if (tok[0] == "l") {
            if (tok.size() < 5) throw ParseError(lineno, "expected `l <vertex> <kind> <owner...>`");
            int v = detail::parse_vertex(tok[1], art.graph.n(), lineno);
            if (have[static_cast<size_t>(v)]) throw ParseError(lineno, "duplicate role for vertex");
            VertexRole role;
            if (!detail::role_from_token(tok[2], role.kind))
                throw ParseError(lineno, "unknown role kind '" + tok[2] + "'");
            std::vector<long long> nums;
            for (size_t i = 3; i < tok.size(); ++i) nums.push_back(detail::parse_int(tok[static_cast<size_t>(i)], lineno));
            for (long long x : nums)
                if (x < 1) throw ParseError(lineno, "role owner indices are 1-based");
            bool named = !is_clique_member(role.kind);
            bool ring = role.kind == RoleKind::A1 || role.kind == RoleKind::A2 ||
                        role.kind == RoleKind::A3 || role.kind == RoleKind::A4;
            bool y_vertex = role.kind == RoleKind::YA || role.kind == RoleKind::YB;
            size_t expect_min = y_vertex ? 2 : named ? 2 : ring ? 4 : 3;
            size_t expect_max = y_vertex ? 2 : named ? 3 : ring ? 4 : 4;
            if (nums.size() < expect_min || nums.size() > expect_max)
                throw ParseError(lineno, "wrong owner arity for role '" + tok[2] + "'");
            role.var = static_cast<int>(nums[0] - 1);
            role.clause = static_cast<int>(nums[1] - 1);
            if (named) {
                if (nums.size() == 3) role.clause2 = static_cast<int>(nums[2] - 1);
            } else if (ring) {
                role.clause2 = static_cast<int>(nums[2] - 1);
                role.member = static_cast<int>(nums[3] - 1);
            } else {
                if (nums.size() == 4) {
                    role.clause2 = static_cast<int>(nums[2] - 1);
                    role.member = static_cast<int>(nums[3] - 1);
                } else {
                    role.member = static_cast<int>(nums[2] - 1);
                }
            }
            art.roles[static_cast<size_t>(v)] = role;
            have[static_cast<size_t>(v)] = 1;
        } else {
            throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
        }
    }
    if (!have_t) throw ParseError(lineno, "missing `t <value>` header");
    for (size_t v = 0; v < have.size(); ++v)
        if (!have[v]) throw ParseError(lineno, "vertex " + std::to_string(v + 1) + " has no role");
    for (const VertexRole& r : art.roles)
        if (r.kind != RoleKind::YA && r.kind != RoleKind::YB)
            art.x_count = std::max(art.x_count, r.var + 1);
    return art;
}

}  // namespace diomega
