#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace diomega {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Splittable counter-based generator. Every consumer derives its own stream
/// from a root seed plus salts, so results do not depend on scheduling or on
/// the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x6a09e667f3bcc909ull)) {}

    static Rng derive(std::uint64_t seed, std::uint64_t salt_a, std::uint64_t salt_b = 0) {
        return Rng(mix64(seed) ^ mix64(salt_a ^ (salt_b * 0x9e3779b97f4a7c15ull)));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    bool next_bool() { return next() >> 63; }

    /// Uniform draw from [0, bound). Unbiased via 128-bit multiply rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        while (true) {
            std::uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (0 - bound) % bound) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace diomega
