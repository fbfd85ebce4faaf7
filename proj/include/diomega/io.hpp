#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "diomega/graph.hpp"

namespace diomega {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

// Splits into whitespace tokens; comment lines start with 'c'.
inline bool tokenize(const std::string& line, std::vector<std::string>& out) {
    out.clear();
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    if (out.empty()) return false;
    return out[0] != "c";
}

inline long long parse_int(const std::string& tok, int line) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    return v;
}

inline int parse_vertex(const std::string& tok, int n, int line) {
    long long v = parse_int(tok, line);
    if (v < 1 || v > n) throw ParseError(line, "vertex id out of range: " + tok);
    return static_cast<int>(v - 1);  // files are 1-indexed
}

}  // namespace detail

/// Digraph text format: header `p dgf <n> <m>`, one `a <u> <v>` line per arc,
/// `c` comment lines anywhere. Vertices are 1-indexed in the file.
inline DirectedGraph read_digraph(std::istream& in) {
    std::string line;
    std::vector<std::string> tok;
    int lineno = 0, declared_arcs = -1, got = 0;
    DirectedGraph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::tokenize(line, tok)) continue;
        if (tok[0] == "p") {
            if (declared_arcs >= 0) throw ParseError(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "dgf") throw ParseError(lineno, "expected `p dgf <n> <m>`");
            long long n = detail::parse_int(tok[2], lineno), m = detail::parse_int(tok[3], lineno);
            if (n < 0 || m < 0) throw ParseError(lineno, "negative header counts");
            g = DirectedGraph(static_cast<int>(n));
            declared_arcs = static_cast<int>(m);
        } else if (tok[0] == "a") {
            if (declared_arcs < 0) throw ParseError(lineno, "arc before header");
            if (tok.size() != 3) throw ParseError(lineno, "expected `a <u> <v>`");
            int u = detail::parse_vertex(tok[1], g.n(), lineno);
            int w = detail::parse_vertex(tok[2], g.n(), lineno);
            if (u == w) throw ParseError(lineno, "loop arc");
            if (!g.add_arc(u, w)) throw ParseError(lineno, "duplicate arc");
            ++got;
        } else {
            throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
        }
    }
    if (declared_arcs < 0) throw ParseError(lineno, "missing header");
    if (got != declared_arcs) throw ParseError(lineno, "arc count mismatch: header says " +
                                                           std::to_string(declared_arcs) + ", found " +
                                                           std::to_string(got));
    return g;
}

inline void write_digraph(std::ostream& out, const DirectedGraph& g) {
    out << "p dgf " << g.n() << ' ' << g.m() << '\n';
    auto arcs = g.arcs();
    std::sort(arcs.begin(), arcs.end());
    for (const auto& [u, w] : arcs) out << "a " << u + 1 << ' ' << w + 1 << '\n';
}

/// DIMACS-style undirected format: `p edge <n> <m>` and `e <u> <v>` lines.
inline UndirectedGraph read_undirected(std::istream& in) {
    std::string line;
    std::vector<std::string> tok;
    int lineno = 0, declared = -1, got = 0;
    UndirectedGraph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::tokenize(line, tok)) continue;
        if (tok[0] == "p") {
            if (declared >= 0) throw ParseError(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "edge") throw ParseError(lineno, "expected `p edge <n> <m>`");
            long long n = detail::parse_int(tok[2], lineno), m = detail::parse_int(tok[3], lineno);
            if (n < 0 || m < 0) throw ParseError(lineno, "negative header counts");
            g = UndirectedGraph(static_cast<int>(n));
            declared = static_cast<int>(m);
        } else if (tok[0] == "e") {
            if (declared < 0) throw ParseError(lineno, "edge before header");
            if (tok.size() != 3) throw ParseError(lineno, "expected `e <u> <v>`");
            int u = detail::parse_vertex(tok[1], g.n(), lineno);
            int w = detail::parse_vertex(tok[2], g.n(), lineno);
            if (u == w) throw ParseError(lineno, "loop edge");
            if (!g.add_edge(u, w)) throw ParseError(lineno, "duplicate edge");
            ++got;
        } else {
            throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
        }
    }
    if (declared < 0) throw ParseError(lineno, "missing header");
    if (got != declared) throw ParseError(lineno, "edge count mismatch");
    return g;
}

inline void write_undirected(std::ostream& out, const UndirectedGraph& g) {
    out << "p edge " << g.n() << ' ' << g.m() << '\n';
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (const auto& [u, w] : edges) out << "e " << u + 1 << ' ' << w + 1 << '\n';
}

/// Order file: single `o <v1> ... <vn>` line, vertices from smallest to
/// largest rank, 1-indexed. n is taken from the line itself.
inline LinearOrder read_order(std::istream& in) {
    std::string line;
    std::vector<std::string> tok;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::tokenize(line, tok)) continue;
        if (tok[0] != "o") throw ParseError(lineno, "expected `o <v1> ... <vn>`");
        std::vector<VertexId> seq;
        seq.reserve(tok.size() - 1);
        const int n = static_cast<int>(tok.size()) - 1;
        for (size_t i = 1; i < tok.size(); ++i) seq.push_back(detail::parse_vertex(tok[i], n, lineno));
        try {
            return LinearOrder(std::move(seq));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    throw ParseError(lineno, "missing order line");
}

inline void write_order(std::ostream& out, const LinearOrder& ord) {
    out << 'o';
    for (VertexId v : ord.sequence()) out << ' ' << v + 1;
    out << '\n';
}

}  // namespace diomega
