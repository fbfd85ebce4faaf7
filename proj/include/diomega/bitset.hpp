#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace diomega {

/// Fixed-capacity bitset sized at construction. Used for vertex sets and
/// adjacency rows; the search kernels run on whole-word operations.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int bits) : bits_(bits), words_(static_cast<size_t>((bits + 63) / 64), 0) {}

    int capacity() const { return bits_; }

    void set(int i) { words_[static_cast<size_t>(i >> 6)] |= word(1) << (i & 63); }
    void reset(int i) { words_[static_cast<size_t>(i >> 6)] &= ~(word(1) << (i & 63)); }
    bool test(int i) const { return (words_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
    void clear() { std::fill(words_.begin(), words_.end(), word(0)); }

    bool empty() const {
        for (word w : words_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (word w : words_) c += std::popcount(w);
        return c;
    }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    int and_count(const Bitset& o) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    /// True when every bit of o is also set here.
    bool contains_all(const Bitset& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (o.words_[i] & ~words_[i]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& and_not(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    /// Lowest set bit, -1 when empty.
    int first() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            word w = words_[i];
            while (w) {
                f(static_cast<int>(i * 64) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    bool operator==(const Bitset&) const = default;

private:
    using word = std::uint64_t;
    int bits_ = 0;
    std::vector<word> words_;
};

}  // namespace diomega
