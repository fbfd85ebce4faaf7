#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "diomega/reduction.hpp"
#include "diomega/solver.hpp"

using namespace diomega;

namespace {

// nu = (F,F) turns clauses 1-4 into a jointly unsatisfiable demand on y1, y2.
FormulaInstance yes_instance() {
    return parse_formula(
        "p e2l3cnf 2 3 7\n"
        "1 3 4 0\n"
        "2 -3 4 0\n"
        "1 3 -4 0\n"
        "2 -3 -4 0\n"
        "3 4 5 0\n"
        "-3 4 5 0\n"
        "3 -4 5 0\n");
}

// mu = all-true satisfies every clause whatever nu is.
FormulaInstance no_instance() {
    return parse_formula(
        "p e2l3cnf 2 7 7\n"
        "1 2 3 0\n"
        "1 2 4 0\n"
        "1 2 5 0\n"
        "1 2 6 0\n"
        "1 2 7 0\n"
        "1 2 8 0\n"
        "1 2 9 0\n");
}

int count_x_occurrences(const FormulaInstance& f) {
    int count = 0;
    for (const Clause& c : f.clauses)
        for (const Literal& lit : c.lits)
            if (lit.level == VarLevel::X) ++count;
    return count;
}

int count_y_occurrences(const FormulaInstance& f) {
    int count = 0;
    for (const Clause& c : f.clauses)
        for (const Literal& lit : c.lits)
            if (lit.level == VarLevel::Y) ++count;
    return count;
}

long long expected_vertices(const FormulaInstance& f) {
    const long long t = 2 * f.clause_count() - 1;
    std::vector<long long> occ(static_cast<size_t>(f.x_count), 0);
    for (const Clause& c : f.clauses)
        for (const Literal& lit : c.lits)
            if (lit.level == VarLevel::X) ++occ[static_cast<size_t>(lit.index)];
    long long total = 3 * t * count_x_occurrences(f);
    for (long long k : occ) total += (7 * t - 12) * (k * (k - 1) / 2);
    total += 2 * count_y_occurrences(f);
    return total;
}

}  // namespace

TEST_CASE("binary gadget shape") {
    BinaryGadget g3 = build_binary_gadget(3);
    CHECK(g3.graph.n() == 9);
    CHECK(g3.refs.a_prime.size() == 1);
    CHECK(g3.refs.a_f.size() == 2);
    CHECK(g3.refs.a_t.size() == 2);

    BinaryGadget g13 = build_binary_gadget(13);
    CHECK(g13.graph.n() == 39);
    // the A_F block is a complete digraph
    DirectedGraph af = induced_subgraph(g13.graph, g13.refs.a_f);
    CHECK(af.m() == af.n() * (af.n() - 1));

    CHECK_THROWS_AS(build_binary_gadget(2), std::invalid_argument);
}

TEST_CASE("copy complex shape") {
    CopyComplex c13 = build_copy_complex(13);
    CHECK(c13.graph.n() - 2 * 39 == 7 * 13 - 12);  // 79 new vertices
    CopyComplex c4 = build_copy_complex(4);
    CHECK(c4.graph.n() - 2 * 12 == 7 * 4 - 12);  // 16 new vertices

    // no arcs between the two outer gadgets
    std::set<VertexId> in_k, in_l;
    for (int v = 0; v < 12; ++v) in_k.insert(v);       // first binary gadget's vertices
    for (int v = 12; v < 24; ++v) in_l.insert(v);      // second one
    for (const auto& [u, w] : c4.graph.arcs()) {
        bool split = (in_k.count(u) && in_l.count(w)) || (in_l.count(u) && in_k.count(w));
        CHECK_FALSE(split);
    }

    CHECK_THROWS_AS(build_copy_complex(3), std::invalid_argument);
}

TEST_CASE("clique obligations") {
    BinaryGadget g = build_binary_gadget(5);
    std::vector<VertexId> af_set = g.refs.a_f;
    af_set.push_back(g.refs.xf);
    af_set.push_back(g.refs.w);
    OrderConstraint w_first;
    w_first.precede = {{g.refs.w, g.refs.xf}};
    CHECK(check_clique_obligation(g.graph, af_set, w_first));
    CHECK_FALSE(check_clique_obligation(g.graph, af_set, {}));  // unforced single arc

    std::vector<VertexId> mid = g.refs.a_prime;
    mid.push_back(g.refs.xf);
    mid.push_back(g.refs.x);
    mid.push_back(g.refs.xt);
    OrderConstraint between;
    between.precede = {{g.refs.xf, g.refs.x}, {g.refs.x, g.refs.xt}};
    CHECK(check_clique_obligation(g.graph, mid, between));

    std::vector<VertexId> no_arc = {g.refs.x, g.refs.w};  // no arc between x and w
    CHECK_FALSE(check_clique_obligation(g.graph, no_arc, w_first));

    OrderConstraint cyclic;
    cyclic.precede = {{g.refs.x, g.refs.w}, {g.refs.w, g.refs.x}};
    CHECK_THROWS_AS(check_clique_obligation(g.graph, af_set, cyclic), std::invalid_argument);
}

TEST_CASE("claim 1 sampled and the exhaustive guard") {
    CHECK_THROWS_AS(verify_claim1_exhaustive(4), std::invalid_argument);
    Claim1Report r = verify_claim1_sampled(4, 20000, 9);
    CHECK(r.violations == 0);
    CHECK(r.free_orders > 0);
    CHECK(r.free_with_f > 0);
    CHECK(r.free_with_t > 0);
}

TEST_CASE("claim 2 tiers at t=4") {
    Claim2Report r = verify_claim2(4, 20000, 9);
    for (const auto& ob : r.obligations) {
        INFO(ob.name);
        CHECK(ob.holds);
    }
    CHECK(r.obligations.size() == 13);
    CHECK(r.witness_true_free);
    CHECK(r.witness_false_free);
    CHECK(r.sampled_violations == 0);
    CHECK(r.factored_premise);
    CHECK(r.factored_patterns == 24 * 24 * 24);
    CHECK(r.factored_violations == 0);
    CHECK(r.factored_free > 0);
    CHECK(r.passed());
}

TEST_CASE("compile rejects short or malformed input") {
    FormulaInstance f = parse_formula("p e2l3cnf 2 1 1\n1 2 3 0\n");
    CHECK_THROWS_AS(compile(f), std::invalid_argument);  // c <= 6
}

TEST_CASE("compiled size matches the closed form") {
    // 21 distinct X variables, each occurring once: 21 binary gadgets only
    std::ostringstream text;
    text << "p e2l3cnf 21 0 7\n";
    for (int k = 0; k < 7; ++k) text << 3 * k + 1 << ' ' << 3 * k + 2 << ' ' << 3 * k + 3 << " 0\n";
    FormulaInstance f21 = parse_formula(text.str());
    ReductionArtifact flat = compile(f21);
    CHECK(flat.graph.n() == 39 * 21);
    CHECK(flat.graph.n() == expected_vertices(f21));
    CHECK(flat.t == 13);

    ReductionArtifact art = compile(yes_instance());
    CHECK(art.graph.n() == expected_vertices(yes_instance()));

    ReductionArtifact no = compile(no_instance());
    CHECK(no.graph.n() == expected_vertices(no_instance()));
}

TEST_CASE("internal vertices stay inside their gadget") {
    ReductionArtifact art = compile(yes_instance());
    const auto& roles = art.roles;
    auto neighbors = [&](VertexId v) {
        Bitset all = art.graph.out(v);
        all |= art.graph.in(v);
        return all.to_vector();
    };
    for (int v = 0; v < art.graph.n(); ++v) {
        const VertexRole& r = roles[static_cast<size_t>(v)];
        switch (r.kind) {
            case RoleKind::W:
            case RoleKind::APrime:
            case RoleKind::AF:
            case RoleKind::AT:
                for (VertexId u : neighbors(v)) {
                    const VertexRole& s = roles[static_cast<size_t>(u)];
                    CHECK(s.var == r.var);
                    CHECK(s.clause == r.clause);
                    CHECK(s.clause2 == r.clause2);
                }
                break;
            case RoleKind::A1:
            case RoleKind::A2:
            case RoleKind::A3:
            case RoleKind::A4:
                for (VertexId u : neighbors(v)) {
                    const VertexRole& s = roles[static_cast<size_t>(u)];
                    CHECK(s.var == r.var);
                    bool same_ring = s.kind == r.kind && s.clause == r.clause && s.clause2 == r.clause2;
                    bool named = s.kind == RoleKind::X || s.kind == RoleKind::XF || s.kind == RoleKind::XT;
                    CHECK((same_ring || named));
                }
                break;
            case RoleKind::YA:
            case RoleKind::YB:
                for (VertexId u : neighbors(v)) {
                    RoleKind k = roles[static_cast<size_t>(u)].kind;
                    bool group_vertex = k == RoleKind::YA || k == RoleKind::YB || k == RoleKind::X ||
                                        k == RoleKind::XF || k == RoleKind::XT;
                    CHECK(group_vertex);
                }
                break;
            default:
                break;
        }
    }
}

TEST_CASE("witness order sets the red backedges") {
    ReductionArtifact art = compile(yes_instance());
    for (Valuation nu : {Valuation{false, false}, Valuation{true, false}, Valuation{true, true}}) {
        LinearOrder ord = witness_order(art, nu);
        UndirectedGraph b = backedge_graph(art.graph, ord);
        auto blocks = 0;
        for (int v = 0; v < art.graph.n(); ++v) {
            const VertexRole& r = art.roles[static_cast<size_t>(v)];
            if (r.kind != RoleKind::X) continue;
            ++blocks;
            // find this gadget's xF and xT
            VertexId xf = -1, xt = -1;
            for (int u = 0; u < art.graph.n(); ++u) {
                const VertexRole& s = art.roles[static_cast<size_t>(u)];
                if (s.var == r.var && s.clause == r.clause && s.clause2 == r.clause2) {
                    if (s.kind == RoleKind::XF) xf = u;
                    if (s.kind == RoleKind::XT) xt = u;
                }
            }
            REQUIRE(xf >= 0);
            REQUIRE(xt >= 0);
            bool value = nu[static_cast<size_t>(r.var)];
            CHECK(b.has_edge(v, xt) == value);
            CHECK(b.has_edge(v, xf) == !value);
        }
        CHECK(blocks > 0);
    }
}

TEST_CASE("round trip through a K-free order") {
    FormulaInstance f = yes_instance();
    Sigma2Result sig = eval_sigma2(f);
    REQUIRE(sig.yes);
    ReductionArtifact art = compile(f);
    Valuation nu = *sig.witness;

    LinearOrder ord = witness_order(art, nu);
    CHECK(max_clique(backedge_graph(art.graph, ord)).size <= art.t);
    CHECK(extract_valuation(art, ord) == nu);

    // extraction does not depend on the canonical segments: the clause
    // vertices carry only antiparallel arcs, so moving them from the back to
    // the front leaves the backedge graph unchanged
    std::vector<VertexId> scrambled;
    for (VertexId v : ord.sequence()) {
        RoleKind k = art.roles[static_cast<size_t>(v)].kind;
        if (k == RoleKind::YA || k == RoleKind::YB) scrambled.push_back(v);
    }
    for (VertexId v : ord.sequence()) {
        RoleKind k = art.roles[static_cast<size_t>(v)].kind;
        if (k != RoleKind::YA && k != RoleKind::YB) scrambled.push_back(v);
    }
    LinearOrder variant((std::vector<VertexId>(scrambled)));
    CHECK_FALSE(has_clique_of_size(backedge_graph(art.graph, variant), art.t + 1));
    Valuation back = extract_valuation(art, variant);
    CHECK(back == nu);
    // the extracted valuation genuinely refutes every mu
    Valuation mu(static_cast<size_t>(f.y_count), false);
    bool some_mu = false;
    for (std::uint32_t m = 0; m < (std::uint32_t(1) << f.y_count) && !some_mu; ++m) {
        for (int i = 0; i < f.y_count; ++i) mu[static_cast<size_t>(i)] = (m >> i) & 1;
        some_mu = eval_all_clauses(f, back, mu);
    }
    CHECK_FALSE(some_mu);

    // a valuation that does not kill the formula leaves a 2c-clique
    Valuation bad = {true, true};
    LinearOrder bad_ord = witness_order(art, bad);
    CHECK(has_clique_of_size(backedge_graph(art.graph, bad_ord), art.t + 1));
    CHECK_THROWS_AS(extract_valuation(art, bad_ord), std::invalid_argument);
}

TEST_CASE("soundness clique on a refuted instance") {
    FormulaInstance f = no_instance();
    REQUIRE_FALSE(eval_sigma2(f).yes);
    ReductionArtifact art = compile(f);
    const int c = f.clause_count();

    for (Valuation nu : {Valuation{false, false}, Valuation{false, true}, Valuation{true, true}}) {
        // find a mu that satisfies everything together with nu
        Valuation mu(static_cast<size_t>(f.y_count), true);
        REQUIRE(eval_all_clauses(f, nu, mu));
        LinearOrder ord = witness_order(art, nu);
        std::vector<VertexId> clique = build_soundness_clique(art, nu, mu, ord);
        CHECK(static_cast<int>(clique.size()) == 2 * c);
        UndirectedGraph b = backedge_graph(art.graph, ord);
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j)
                CHECK(b.has_edge(clique[i], clique[j]));
    }

    // (nu, mu) failing a clause is rejected
    Valuation mu_bad(static_cast<size_t>(f.y_count), false);
    LinearOrder ord = witness_order(art, Valuation{false, false});
    CHECK_THROWS_AS(build_soundness_clique(art, {false, false}, mu_bad, ord), std::invalid_argument);
}

TEST_CASE("labels round trip") {
    ReductionArtifact art = compile(yes_instance());
    std::ostringstream graph_text, labels_text;
    write_digraph(graph_text, art.graph);
    write_labels(labels_text, art);

    std::istringstream gi(graph_text.str()), li(labels_text.str());
    ReductionArtifact back = read_artifact(gi, li);
    CHECK(back.t == art.t);
    CHECK(back.roles == art.roles);
    CHECK(back.graph.n() == art.graph.n());
    CHECK(back.graph.m() == art.graph.m());
    CHECK_FALSE(back.has_groups());

    // loaded artifacts still build witness orders and extract valuations
    Valuation nu = {false, false};
    LinearOrder ord = witness_order(back, nu);
    CHECK(extract_valuation(back, ord) == nu);

    std::istringstream gi2(graph_text.str());
    std::istringstream truncated("t 13\n");
    CHECK_THROWS_AS(read_artifact(gi2, truncated), ParseError);
}
