#pragma once

// Set representations used throughout the library.
//
// Vertex sets are single 64-bit masks (instances are capped at 64 vertices).
// Element sets grow as the packing algorithm adds parallel copies, so they use
// a small dynamic bitset with value semantics and a canonical encoding that
// doubles as a hash key.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace arbpack {

using VertexMask = std::uint64_t;

inline constexpr std::size_t kMaxVertices = 64;

constexpr VertexMask vertex_bit(std::size_t v) { return VertexMask{1} << v; }

constexpr VertexMask full_mask(std::size_t n) {
    return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

constexpr bool contains(VertexMask set, std::size_t v) { return (set >> v) & 1U; }

inline int popcount(VertexMask m) { return std::popcount(m); }

// Indices of the set bits, ascending.
inline std::vector<std::size_t> members(VertexMask m) {
    std::vector<std::size_t> out;
    while (m != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

class ElementSet {
public:
    ElementSet() = default;

    ElementSet(std::initializer_list<std::size_t> items) {
        for (auto i : items) insert(i);
    }

    static ElementSet from_indices(const std::vector<std::size_t>& items) {
        ElementSet s;
        for (auto i : items) s.insert(i);
        return s;
    }

    // All of {0, ..., n-1}.
    static ElementSet range(std::size_t n) {
        ElementSet s;
        s.words_.assign((n + 63) / 64, ~std::uint64_t{0});
        if (n % 64 != 0) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
        s.trim();
        return s;
    }

    void insert(std::size_t i) {
        if (i / 64 >= words_.size()) words_.resize(i / 64 + 1, 0);
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    void erase(std::size_t i) {
        if (i / 64 < words_.size()) {
            words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
            trim();
        }
    }

    bool contains(std::size_t i) const {
        return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1U);
    }

    bool empty() const { return words_.empty(); }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // One past the largest member, 0 for the empty set.
    std::size_t bound() const {
        if (words_.empty()) return 0;
        return (words_.size() - 1) * 64 + 64 - static_cast<std::size_t>(std::countl_zero(words_.back()));
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    ElementSet& operator|=(const ElementSet& o) {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    ElementSet& operator&=(const ElementSet& o) {
        words_.resize(std::min(words_.size(), o.words_.size()));
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        trim();
        return *this;
    }

    ElementSet& operator-=(const ElementSet& o) {
        for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i) words_[i] &= ~o.words_[i];
        trim();
        return *this;
    }

    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
    friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

    bool is_subset_of(const ElementSet& o) const { return (*this - o).empty(); }

    friend bool operator==(const ElementSet&, const ElementSet&) = default;

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    // Trailing zero words are dropped so that equal sets compare equal.
    void trim() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace arbpack
