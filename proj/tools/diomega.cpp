// Command-line front end: exact/heuristic directed clique number, the
// formula-to-graph compiler, artifact verification, gadget claim checks,
// random-tournament experiments, and CNF export.
//
// Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 verification
// violation.

#include <cctype>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diomega/experiment.hpp"
#include "diomega/formula.hpp"
#include "diomega/io.hpp"
#include "diomega/reduction.hpp"
#include "diomega/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;
constexpr int kExitViolation = 3;

diomega::DirectedGraph load_digraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return diomega::read_digraph(in);
}

diomega::FormulaInstance load_formula(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return diomega::parse_formula(in);
}

diomega::LinearOrder load_order(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return diomega::read_order(in);
}

void save_order(const std::string& path, const diomega::LinearOrder& ord) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    diomega::write_order(out, ord);
}

diomega::Valuation parse_bits(const std::string& bits) {
    diomega::Valuation v;
    v.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("valuation must be a 0/1 string");
        v.push_back(ch == '1');
    }
    return v;
}

std::string bits_of(const diomega::Valuation& v) {
    std::string s;
    s.reserve(v.size());
    for (bool b : v) s.push_back(b ? '1' : '0');
    return s;
}

struct BudgetFlags {
    std::uint64_t nodes = 0;   // 0 = unlimited
    double seconds = 0.0;      // 0 = unlimited

    diomega::SearchBudget to_budget() const {
        diomega::SearchBudget b;
        if (nodes > 0) b.node_limit = nodes;
        if (seconds > 0) b.time_limit_seconds = seconds;
        return b;
    }
};

// Flat key=value config: each key is an option name of the active
// subcommand. Merged into argv before parsing; keys already present on the
// command line are skipped, so flags win on conflict.
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    std::set<std::string> given;
    for (const std::string& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) trimmed += ch;
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = "--" + trimmed.substr(0, eq);
        if (given.count(key)) continue;
        args.push_back("--" + trimmed);  // --key=value, flags included
    }
    return args;
}

void add_budget_flags(CLI::App* cmd, BudgetFlags& flags) {
    cmd->add_option("--budget-nodes", flags.nodes, "Node limit for the exact search (0 = unlimited)");
    cmd->add_option("--budget-seconds", flags.seconds, "Time limit in seconds (0 = unlimited)");
}

int cmd_diomega(const std::string& graph_path, const std::string& method, int t_flag,
                const BudgetFlags& budget, const std::string& order_out) {
    diomega::DirectedGraph g = load_digraph(graph_path);
    diomega::SearchBudget budget_v = budget.to_budget();

    if (t_flag >= 0) {
        if (method == "heuristic")
            throw std::invalid_argument("--heuristic cannot answer a decision; use --exact or --brute");
        if (method == "brute") {
            diomega::DiomegaResult r = diomega::diomega_brute(g);
            std::cout << (r.value <= t_flag ? "Yes" : "No") << '\n';
            if (!order_out.empty() && r.value <= t_flag) save_order(order_out, r.witness);
            return kExitOk;
        }
        diomega::DecideResult r = diomega::diomega_decide(g, t_flag, budget_v);
        if (r.status == diomega::SolveStatus::BudgetExhausted) {
            std::cout << "Unknown\n";
            return kExitBudget;
        }
        std::cout << (r.yes ? "Yes" : "No") << '\n';
        if (r.yes && !order_out.empty()) save_order(order_out, *r.witness);
        return kExitOk;
    }

    if (method == "heuristic") {
        diomega::HeuristicResult r = diomega::heuristic_order(g);
        std::cout << r.value << '\n';
        std::cerr << "upper bound only\n";
        if (!order_out.empty()) save_order(order_out, r.order);
        return kExitOk;
    }
    diomega::DiomegaResult r =
        method == "brute" ? diomega::diomega_brute(g) : diomega::diomega_exact(g, budget_v);
    if (r.status == diomega::SolveStatus::BudgetExhausted) {
        std::cout << "bounds " << r.lower << ' ' << r.upper << '\n';
        std::cerr << "budget exhausted after " << r.nodes << " nodes\n";
        if (!order_out.empty()) save_order(order_out, r.witness);
        return kExitBudget;
    }
    std::cout << r.value << '\n';
    if (!order_out.empty()) save_order(order_out, r.witness);
    return kExitOk;
}

int cmd_reduce(const std::string& formula_path, const std::string& prefix, bool pad) {
    diomega::FormulaInstance f = load_formula(formula_path);
    if (pad && f.clause_count() > 0) {
        // duplicating existing clauses preserves the decision; extension
        // beyond the compiler's strict c > 6 contract
        int src = 0;
        while (f.clause_count() <= 6) {
            f.clauses.push_back(f.clauses[static_cast<size_t>(src)]);
            src = (src + 1) % f.clause_count();
        }
    }
    diomega::ReductionArtifact art = diomega::compile(f);
    {
        std::ofstream out(prefix + ".dgf");
        if (!out) throw std::invalid_argument("cannot write '" + prefix + ".dgf'");
        diomega::write_digraph(out, art.graph);
    }
    {
        std::ofstream out(prefix + ".labels");
        if (!out) throw std::invalid_argument("cannot write '" + prefix + ".labels'");
        diomega::write_labels(out, art);
    }
    std::cout << "vertices " << art.graph.n() << " arcs " << art.graph.m() << " t " << art.t << '\n';
    return kExitOk;
}

int cmd_verify(const std::string& graph_path, const std::string& labels_path,
               const std::string& order_path, const std::string& nu_bits,
               const std::string& order_out) {
    std::ifstream gin(graph_path);
    if (!gin) throw std::invalid_argument("cannot open '" + graph_path + "'");
    std::ifstream lin(labels_path);
    if (!lin) throw std::invalid_argument("cannot open '" + labels_path + "'");
    diomega::ReductionArtifact art = diomega::read_artifact(gin, lin);
    const int two_c = art.t + 1;
    std::cout << "t " << art.t << '\n';

    if (!nu_bits.empty()) {
        diomega::Valuation nu = parse_bits(nu_bits);
        diomega::LinearOrder ord = diomega::witness_order(art, nu);
        if (!order_out.empty()) save_order(order_out, ord);
        diomega::CliqueResult r = diomega::max_clique(diomega::backedge_graph(art.graph, ord));
        std::cout << "max-backedge-clique " << r.size << '\n';
        if (r.size <= art.t) {
            std::cout << "K2c-free yes\n";
            return kExitOk;
        }
        std::cout << "K2c-free no\nclique";
        for (diomega::VertexId v : r.witness) std::cout << ' ' << v + 1;
        std::cout << '\n';
        return kExitViolation;
    }

    diomega::LinearOrder ord = load_order(order_path);
    if (ord.n() != art.graph.n())
        throw std::invalid_argument("order has " + std::to_string(ord.n()) + " vertices, graph has " +
                                    std::to_string(art.graph.n()));
    auto clique = diomega::find_clique_of_size(diomega::backedge_graph(art.graph, ord), two_c);
    if (clique) {
        std::cout << "K2c-free no\nclique";
        for (diomega::VertexId v : *clique) std::cout << ' ' << v + 1;
        std::cout << '\n';
        return kExitViolation;
    }
    std::cout << "K2c-free yes\n";
    diomega::Valuation nu = diomega::extract_valuation(art, ord);
    std::cout << "nu " << bits_of(nu) << '\n';
    return kExitOk;
}

int cmd_gadget_check(int claim, int t, std::uint64_t samples, std::uint64_t seed, bool exhaustive,
                     int threads) {
    if (claim == 1) {
        diomega::Claim1Report r = (exhaustive || t == 3)
                                      ? diomega::verify_claim1_exhaustive(t)
                                      : diomega::verify_claim1_sampled(t, samples, seed, threads);
        std::cout << "claim 1 t=" << r.t << (r.exhaustive ? " exhaustive" : " sampled") << '\n';
        std::cout << "orders " << r.orders_checked << " free " << r.free_orders << " f-edge "
                  << r.free_with_f << " t-edge " << r.free_with_t << '\n';
        std::cout << "violations " << r.violations << '\n';
        std::cout << (r.passed() ? "PASS" : "FAIL") << '\n';
        return r.passed() ? kExitOk : kExitViolation;
    }
    diomega::Claim2Report r = diomega::verify_claim2(t, samples, seed, threads);
    std::cout << "claim 2 t=" << r.t << '\n';
    bool obligations_ok = true;
    for (const auto& ob : r.obligations) {
        std::cout << "obligation " << (ob.holds ? "pass" : "FAIL") << ": " << ob.name << '\n';
        obligations_ok = obligations_ok && ob.holds;
    }
    std::cout << "witness-orders free: true-polarity " << (r.witness_true_free ? "yes" : "NO")
              << ", false-polarity " << (r.witness_false_free ? "yes" : "NO") << '\n';
    std::cout << "sampled " << r.sampled << " free " << r.sampled_free << " violations "
              << r.sampled_violations << '\n';
    std::cout << "factored premise " << (r.factored_premise ? "holds" : "FAILS") << ", patterns "
              << r.factored_patterns << " free " << r.factored_free << " violations "
              << r.factored_violations << '\n';
    std::cout << (r.passed() ? "PASS" : "FAIL") << '\n';
    return r.passed() ? kExitOk : kExitViolation;
}

int cmd_experiment(int n_min, int n_max, int seeds, const std::string& out_path,
                   const std::string& method, std::uint64_t seed, const BudgetFlags& budget,
                   int threads) {
    auto records = diomega::run_experiment(n_min, n_max, seeds, seed, method, budget.to_budget(),
                                           threads);
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    diomega::write_experiment_csv(out, records);
    diomega::print_experiment_summary(std::cout, records);
    return kExitOk;
}

int cmd_eval(const std::string& formula_path) {
    diomega::Sigma2Result r = diomega::eval_sigma2(load_formula(formula_path));
    if (r.yes) {
        std::cout << "Yes\nnu " << bits_of(*r.witness) << '\n';
    } else {
        std::cout << "No\n";
    }
    return kExitOk;
}

int cmd_encode(const std::string& graph_path, int t, const std::string& out_path,
               std::uint64_t max_subsets) {
    diomega::DirectedGraph g = load_digraph(graph_path);
    std::string cnf = diomega::emit_cnf_decision(g, t, max_subsets);
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << cnf;
    // header line: p cnf <vars> <clauses>
    std::istringstream in(cnf);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("p cnf", 0) == 0) {
            std::istringstream hs(line);
            std::string p, cnf_tok;
            long long vars = 0, clauses = 0;
            hs >> p >> cnf_tok >> vars >> clauses;
            std::cout << "vars " << vars << " clauses " << clauses << '\n';
            break;
        }
    return kExitOk;
}

// The real handling happens in merge_config before parsing; this only makes
// --config show up in --help.
void add_config_note(CLI::App* cmd) {
    static std::string dummy;
    cmd->add_option("--config", dummy, "Flat key=value file with this subcommand's options");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed clique number toolkit"};
    app.require_subcommand(1);

    int threads = diomega::default_thread_count();

    // diomega
    auto* sub_dio = app.add_subcommand("diomega", "Compute or decide the directed clique number");
    std::string dio_graph, dio_order_out;
    std::string dio_method = "exact";
    int dio_t = -1;
    BudgetFlags dio_budget;
    sub_dio->add_option("graph", dio_graph, "Digraph file")->required();
    bool dio_exact = false, dio_brute = false, dio_heuristic = false;
    sub_dio->add_flag("--exact", dio_exact, "Exact search (default)");
    sub_dio->add_flag("--brute", dio_brute, "Permutation oracle (n <= 9)");
    sub_dio->add_flag("--heuristic", dio_heuristic, "Upper bound from heuristic orders");
    sub_dio->add_option("--t", dio_t, "Decide directed clique number <= t instead of computing it");
    sub_dio->add_option("--order-out", dio_order_out, "Write the witness order to this file");
    sub_dio->add_option("--threads", threads, "Worker cap")->envname("DIOMEGA_THREADS");
    add_budget_flags(sub_dio, dio_budget);
    add_config_note(sub_dio);

    // reduce
    auto* sub_reduce = app.add_subcommand("reduce", "Compile a formula into a digraph artifact");
    std::string red_formula, red_prefix;
    bool red_pad = false;
    sub_reduce->add_option("formula", red_formula, "Formula file (p e2l3cnf)")->required();
    sub_reduce->add_option("prefix", red_prefix, "Output prefix for .dgf and .labels")->required();
    sub_reduce->add_flag("--pad", red_pad, "Duplicate clauses up to 7 when the formula has fewer");
    add_config_note(sub_reduce);

    // verify
    auto* sub_verify = app.add_subcommand("verify", "Check an order or valuation against an artifact");
    std::string ver_graph, ver_labels, ver_order, ver_nu, ver_order_out;
    sub_verify->add_option("--graph", ver_graph, "Artifact digraph file")->required();
    sub_verify->add_option("--labels", ver_labels, "Artifact labels file")->required();
    auto* opt_order = sub_verify->add_option("--order", ver_order, "Order file to check");
    auto* opt_nu = sub_verify->add_option("--nu", ver_nu, "Valuation bits for the witness order");
    opt_order->excludes(opt_nu);
    sub_verify->add_option("--order-out", ver_order_out, "Write the constructed witness order");
    add_config_note(sub_verify);

    // gadget-check
    auto* sub_gadget = app.add_subcommand("gadget-check", "Mechanical gadget claim verification");
    int gc_claim = 1, gc_t = -1;
    std::uint64_t gc_samples = 100000, gc_seed = 1;
    bool gc_exhaustive = false;
    sub_gadget->add_option("--claim", gc_claim, "1 or 2")->required()->check(CLI::Range(1, 2));
    sub_gadget->add_option("--t", gc_t, "Gadget threshold (default 3 for claim 1, 4 for claim 2)");
    sub_gadget->add_option("--samples", gc_samples, "Sampled-tier order count");
    sub_gadget->add_option("--seed", gc_seed, "Sampling seed");
    sub_gadget->add_flag("--exhaustive", gc_exhaustive, "Force exhaustive enumeration (claim 1, t = 3)");
    sub_gadget->add_option("--threads", threads, "Worker cap")->envname("DIOMEGA_THREADS");
    add_config_note(sub_gadget);

    // experiment
    auto* sub_exp = app.add_subcommand("experiment", "Random-tournament sweep to CSV");
    int exp_nmin = 4, exp_nmax = 10, exp_seeds = 20;
    std::string exp_out, exp_method = "exact";
    std::uint64_t exp_seed = 1;
    BudgetFlags exp_budget;
    sub_exp->add_option("--n-min", exp_nmin, "Smallest tournament size");
    sub_exp->add_option("--n-max", exp_nmax, "Largest tournament size (exact search is practical to ~12)");
    sub_exp->add_option("--seeds", exp_seeds, "Tournaments per size");
    sub_exp->add_option("--out", exp_out, "CSV output path")->required();
    sub_exp->add_option("--method", exp_method, "exact | brute | heuristic");
    sub_exp->add_option("--seed", exp_seed, "Base seed");
    sub_exp->add_option("--threads", threads, "Worker cap")->envname("DIOMEGA_THREADS");
    add_budget_flags(sub_exp, exp_budget);
    add_config_note(sub_exp);

    // eval
    auto* sub_eval = app.add_subcommand("eval", "Evaluate a formula by enumeration");
    std::string eval_formula;
    sub_eval->add_option("formula", eval_formula, "Formula file")->required();
    add_config_note(sub_eval);

    // encode
    auto* sub_encode = app.add_subcommand("encode", "Emit the decision problem as DIMACS CNF");
    std::string enc_graph, enc_out;
    int enc_t = 0;
    std::uint64_t enc_max_subsets = 4000000;
    sub_encode->add_option("graph", enc_graph, "Digraph file")->required();
    sub_encode->add_option("--t", enc_t, "Threshold")->required();
    sub_encode->add_option("--out", enc_out, "CNF output path")->required();
    sub_encode->add_option("--max-subsets", enc_max_subsets, "Guard on C(n, t+1)");
    add_config_note(sub_encode);

    std::vector<std::string> args;
    try {
        args = merge_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));  // CLI11 consumes args back to front
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*sub_dio) {
            if (static_cast<int>(dio_exact) + static_cast<int>(dio_brute) +
                    static_cast<int>(dio_heuristic) >
                1)
                throw std::invalid_argument("pick one of --exact, --brute, --heuristic");
            if (dio_brute) dio_method = "brute";
            if (dio_heuristic) dio_method = "heuristic";
            return cmd_diomega(dio_graph, dio_method, dio_t, dio_budget, dio_order_out);
        }
        if (*sub_reduce) return cmd_reduce(red_formula, red_prefix, red_pad);
        if (*sub_verify) {
            if (ver_order.empty() == ver_nu.empty())
                throw std::invalid_argument("pass exactly one of --order or --nu");
            return cmd_verify(ver_graph, ver_labels, ver_order, ver_nu, ver_order_out);
        }
        if (*sub_gadget) {
            if (gc_t < 0) gc_t = gc_claim == 1 ? 3 : 4;
            return cmd_gadget_check(gc_claim, gc_t, gc_samples, gc_seed, gc_exhaustive, threads);
        }
        if (*sub_exp)
            return cmd_experiment(exp_nmin, exp_nmax, exp_seeds, exp_out, exp_method, exp_seed,
                                  exp_budget, threads);
        if (*sub_eval) return cmd_eval(eval_formula);
        if (*sub_encode) return cmd_encode(enc_graph, enc_t, enc_out, enc_max_subsets);
    } catch (const diomega::VerificationError& e) {
        std::cerr << "verification violation: " << e.what() << '\n';
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
