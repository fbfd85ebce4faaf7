#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "diomega/io.hpp"

namespace diomega {

enum class VarLevel { X, Y };

struct Literal {
    VarLevel level = VarLevel::X;
    int index = 0;  // within its level
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

struct Clause {
    std::array<Literal, 3> lits;
};

/// Two-level 3-CNF instance: existential variables x_1..x_a, universal-side
/// variables y_1..y_b, clauses of three literals over three distinct
/// variables.
struct FormulaInstance {
    int x_count = 0;
    int y_count = 0;
    std::vector<Clause> clauses;

    int clause_count() const { return static_cast<int>(clauses.size()); }
};

using Valuation = std::vector<bool>;  // one bit per variable of one level

inline bool eval_literal(const Literal& lit, const Valuation& nu, const Valuation& mu) {
    bool v = lit.level == VarLevel::X ? nu.at(static_cast<size_t>(lit.index))
                                      : mu.at(static_cast<size_t>(lit.index));
    return lit.negated ? !v : v;
}

inline bool eval_clause(const Clause& clause, const Valuation& nu, const Valuation& mu) {
    for (const Literal& lit : clause.lits)
        if (eval_literal(lit, nu, mu)) return true;
    return false;
}

inline bool eval_all_clauses(const FormulaInstance& f, const Valuation& nu, const Valuation& mu) {
    for (const Clause& c : f.clauses)
        if (!eval_clause(c, nu, mu)) return false;
    return true;
}

struct Sigma2Result {
    bool yes = false;
    std::optional<Valuation> witness;  // lexicographically first nu on yes
};

namespace detail {

// Odometer over valuations in lexicographic order, false < true, with the
// first variable most significant.
inline bool next_valuation(Valuation& v) {
    for (size_t i = v.size(); i-- > 0;) {
        if (!v[i]) {
            v[i] = true;
            return true;
        }
        v[i] = false;
    }
    return false;
}

}  // namespace detail

/// Decides "exists nu such that no mu satisfies every clause" by full
/// enumeration. Guarded to 26 variables total.
inline Sigma2Result eval_sigma2(const FormulaInstance& f) {
    if (f.x_count < 0 || f.y_count < 0) throw std::invalid_argument("negative variable count");
    if (f.x_count + f.y_count > 26)
        throw std::invalid_argument("eval_sigma2 limited to 26 variables total");
    if (f.clauses.empty()) return {};  // the empty conjunction holds for every mu

    Valuation nu(static_cast<size_t>(f.x_count), false);
    while (true) {
        Valuation mu(static_cast<size_t>(f.y_count), false);
        bool some_mu_satisfies = false;
        while (true) {
            if (eval_all_clauses(f, nu, mu)) {
                some_mu_satisfies = true;
                break;
            }
            if (!detail::next_valuation(mu)) break;
        }
        if (!some_mu_satisfies) return {true, nu};
        if (!detail::next_valuation(nu)) break;
    }
    return {};
}

/// Formula text format: header `p e2l3cnf <a> <b> <c>`, then exactly c lines
/// of three nonzero signed ints terminated by 0. Variables 1..a are X,
/// a+1..a+b are Y. `c` comment lines are ignored.
inline FormulaInstance parse_formula(std::istream& in) {
    std::string line;
    std::vector<std::string> tok;
    int lineno = 0;
    bool got_header = false;
    int declared_clauses = 0;
    FormulaInstance f;
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::tokenize(line, tok)) continue;
        if (!got_header) {
            if (tok.size() != 5 || tok[0] != "p" || tok[1] != "e2l3cnf")
                throw ParseError(lineno, "expected `p e2l3cnf <a> <b> <c>`");
            long long a = detail::parse_int(tok[2], lineno);
            long long b = detail::parse_int(tok[3], lineno);
            long long c = detail::parse_int(tok[4], lineno);
            if (a < 0 || b < 0 || c < 0) throw ParseError(lineno, "negative header counts");
            f.x_count = static_cast<int>(a);
            f.y_count = static_cast<int>(b);
            declared_clauses = static_cast<int>(c);
            got_header = true;
            continue;
        }
        if (tok.size() != 4 || tok[3] != "0")
            throw ParseError(lineno, "expected three literals terminated by 0");
        Clause clause;
        for (int i = 0; i < 3; ++i) {
            long long raw = detail::parse_int(tok[static_cast<size_t>(i)], lineno);
            if (raw == 0) throw ParseError(lineno, "literal must be nonzero");
            long long v = raw < 0 ? -raw : raw;
            if (v > f.x_count + f.y_count) throw ParseError(lineno, "variable out of range: " + tok[static_cast<size_t>(i)]);
            Literal lit;
            lit.negated = raw < 0;
            if (v <= f.x_count) {
                lit.level = VarLevel::X;
                lit.index = static_cast<int>(v - 1);
            } else {
                lit.level = VarLevel::Y;
                lit.index = static_cast<int>(v - f.x_count - 1);
            }
            clause.lits[static_cast<size_t>(i)] = lit;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (clause.lits[static_cast<size_t>(i)].level == clause.lits[static_cast<size_t>(j)].level &&
                    clause.lits[static_cast<size_t>(i)].index == clause.lits[static_cast<size_t>(j)].index)
                    throw ParseError(lineno, "clause repeats a variable");
        f.clauses.push_back(clause);
    }
    if (!got_header) throw ParseError(lineno, "missing header");
    if (f.clause_count() != declared_clauses)
        throw ParseError(lineno, "clause count mismatch: header says " + std::to_string(declared_clauses) +
                                     ", found " + std::to_string(f.clause_count()));
    return f;
}

inline FormulaInstance parse_formula(const std::string& text) {
    std::istringstream in(text);
    return parse_formula(in);
}

}  // namespace diomega
