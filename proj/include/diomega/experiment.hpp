#pragma once

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "diomega/parallel.hpp"
#include "diomega/solver.hpp"

namespace diomega {

struct ExperimentRecord {
    int n = 0;
    std::uint64_t seed = 0;
    std::string method;  // exact | brute | heuristic
    int diomega = 0;     // upper bound only for heuristic records
    int lower = 0;
    int upper = 0;
    double runtime_ms = 0.0;
};

/// Tournament seed for one sweep cell; all randomness flows from base_seed.
inline std::uint64_t experiment_seed(std::uint64_t base_seed, int n, int series) {
    return mix64(mix64(base_seed) ^ mix64(static_cast<std::uint64_t>(n) << 32 |
                                          static_cast<std::uint64_t>(series)));
}

inline std::vector<ExperimentRecord> run_experiment(int n_min, int n_max, int seeds,
                                                    std::uint64_t base_seed,
                                                    const std::string& method,
                                                    const SearchBudget& budget = {},
                                                    int threads = 1) {
    if (n_min < 0 || n_max < n_min || seeds < 1) throw std::invalid_argument("bad sweep range");
    if (method != "exact" && method != "brute" && method != "heuristic")
        throw std::invalid_argument("unknown method '" + method + "'");
    const int span = n_max - n_min + 1;
    std::vector<ExperimentRecord> records(static_cast<size_t>(span) * static_cast<size_t>(seeds));
    parallel_for(records.size(), threads, [&](std::uint64_t idx) {
        int n = n_min + static_cast<int>(idx) / seeds;
        int series = static_cast<int>(idx) % seeds;
        std::uint64_t seed = experiment_seed(base_seed, n, series);
        DirectedGraph t = make_random_tournament(n, seed);
        ExperimentRecord rec;
        rec.n = n;
        rec.seed = seed;
        rec.method = method;
        auto start = std::chrono::steady_clock::now();
        if (method == "exact") {
            DiomegaResult r = diomega_exact(t, budget);
            rec.diomega = r.value;
            rec.lower = r.lower;
            rec.upper = r.upper;
        } else if (method == "brute") {
            DiomegaResult r = diomega_brute(t);
            rec.diomega = r.value;
            rec.lower = r.lower;
            rec.upper = r.upper;
        } else {
            HeuristicResult r = heuristic_order(t);
            rec.diomega = r.value;
            rec.lower = n > 0 ? 1 : 0;
            rec.upper = r.value;
        }
        rec.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        records[idx] = std::move(rec);
    });
    return records;
}

inline void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << "n,seed,method,diomega,lower,upper,runtime_ms\n";
    for (const auto& r : records) {
        out << r.n << ',' << r.seed << ',' << r.method << ',' << r.diomega << ',' << r.lower << ','
            << r.upper << ',' << std::fixed << std::setprecision(3) << r.runtime_ms << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

/// Per-n means next to the sqrt(2n) bound column.
inline void print_experiment_summary(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    std::map<int, std::pair<double, int>> by_n;  // n -> (sum, count)
    for (const auto& r : records) {
        by_n[r.n].first += r.diomega;
        by_n[r.n].second += 1;
    }
    out << "  n  mean  sqrt(2n)\n";
    for (const auto& [n, acc] : by_n) {
        double mean = acc.first / acc.second;
        out << std::setw(3) << n << "  " << std::fixed << std::setprecision(2) << mean << "  "
            << std::setprecision(2) << std::sqrt(2.0 * n) << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

}  // namespace diomega
