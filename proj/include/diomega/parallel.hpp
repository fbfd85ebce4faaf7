#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace diomega {

inline int default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(index) for index in [0, count). Work items must be independent and
/// derive any randomness from their index, so the result set is identical for
/// every thread count.
template <class Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        while (true) {
            std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = threads - 1;
    pool.reserve(static_cast<size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace diomega
