#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "diomega/io.hpp"
#include "helpers.hpp"

using namespace diomega;

TEST_CASE("digraph text round trip") {
    Rng rng(21);
    for (int iter = 0; iter < 20; ++iter) {
        int n = static_cast<int>(rng.next_below(10));
        DirectedGraph g = testutil::random_digraph(n, 0.4, rng);
        std::ostringstream out;
        write_digraph(out, g);
        std::istringstream in(out.str());
        DirectedGraph back = read_digraph(in);
        CHECK(back.n() == g.n());
        auto a = g.arcs();
        auto b = back.arcs();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("digraph parsing") {
    std::istringstream ok("c comment\np dgf 3 2\na 1 2\nc mid comment\na 3 1\n");
    DirectedGraph g = read_digraph(ok);
    CHECK(g.n() == 3);
    CHECK(g.has_arc(0, 1));
    CHECK(g.has_arc(2, 0));

    auto fails = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_digraph(in);
            return -1;
        } catch (const ParseError& e) {
            return e.line();
        }
    };
    CHECK(fails("a 1 2\n") == 1);                    // arc before header
    CHECK(fails("p dgf 2 1\na 1 3\n") == 2);         // out of range
    CHECK(fails("p dgf 2 1\na 1 1\n") == 2);         // loop
    CHECK(fails("p dgf 2 2\na 1 2\na 1 2\n") == 3);  // duplicate
    CHECK(fails("p dgf 2 2\na 1 2\n") >= 0);         // count mismatch
    CHECK(fails("p edge 2 1\n") == 1);               // wrong format keyword
}

TEST_CASE("undirected text round trip and errors") {
    std::istringstream ok("p edge 4 2\ne 1 2\ne 3 4\n");
    UndirectedGraph g = read_undirected(ok);
    CHECK(g.n() == 4);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 3));

    std::ostringstream out;
    write_undirected(out, g);
    std::istringstream in(out.str());
    UndirectedGraph back = read_undirected(in);
    CHECK(back.m() == g.m());
    CHECK(back.has_edge(0, 1));

    std::istringstream dup("p edge 2 2\ne 1 2\ne 2 1\n");
    CHECK_THROWS_AS(read_undirected(dup), ParseError);
}

TEST_CASE("order file round trip") {
    LinearOrder ord({2, 0, 1, 3});
    std::ostringstream out;
    write_order(out, ord);
    CHECK(out.str() == "o 3 1 2 4\n");
    std::istringstream in(out.str());
    CHECK(read_order(in) == ord);

    std::istringstream bad("o 1 1 2\n");
    CHECK_THROWS_AS(read_order(bad), ParseError);
    std::istringstream empty("c nothing\n");
    CHECK_THROWS_AS(read_order(empty), ParseError);
}
