#pragma once

// Matroids given by rank oracles.
//
// A Matroid is a cheap value: it shares an immutable base oracle (one of six
// concrete families) and carries a thin derivation layer on top. Parallel
// extensions rewrite each copy back to its original element and truncations
// clamp the result, so a rank query on a derived matroid is always a single
// memoized query on the base oracle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "arbpack/bitset.hpp"
#include "arbpack/error.hpp"

namespace arbpack {

enum class MatroidKind { free, uniform, partition, graphic, linear, explicit_bases };

inline const char* to_string(MatroidKind k) {
    switch (k) {
        case MatroidKind::free: return "free";
        case MatroidKind::uniform: return "uniform";
        case MatroidKind::partition: return "partition";
        case MatroidKind::graphic: return "graphic";
        case MatroidKind::linear: return "linear";
        case MatroidKind::explicit_bases: return "explicit";
    }
    return "?";
}

struct PartitionBlock {
    std::vector<std::size_t> elements;
    int cap = 0;
};

struct Derivation {
    enum class Kind { parallel, truncation };
    Kind kind = Kind::parallel;
    std::size_t original = 0;  // parallel: element copied
    std::size_t copy = 0;      // parallel: index of the new element
    int bound = 0;             // truncation: rank bound
};

namespace detail {

struct FreeData {};
struct UniformData {
    int rank = 0;
};
struct PartitionData {
    std::vector<std::size_t> block_of;
    std::vector<int> caps;
};
struct GraphicData {
    // Endpoints in a reference graph with `num_vertices` vertices; u == v is a loop.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t num_vertices = 0;
    std::vector<std::string> vertex_labels;
};
struct LinearData {
    std::int64_t prime = 2;
    std::vector<std::vector<std::int64_t>> columns;  // reduced into [0, prime)
};
struct ExplicitData {
    std::vector<ElementSet> bases;
    bool validated_exchange = false;
};

using KindData = std::variant<FreeData, UniformData, PartitionData, GraphicData, LinearData, ExplicitData>;

inline int linear_rank(const LinearData& d, const std::vector<std::size_t>& cols) {
    if (cols.empty()) return 0;
    const std::size_t rows = d.columns[cols.front()].size();
    const auto p = d.prime;
    std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m[i][j] = d.columns[cols[j]][i];

    auto inverse = [p](std::int64_t a) {
        // Fermat: a^(p-2) mod p.
        std::int64_t result = 1, base = a % p, e = p - 2;
        while (e > 0) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    };

    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols.size() && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[row]);
        const auto inv = inverse(m[row][col]);
        for (std::size_t j = col; j < cols.size(); ++j) m[row][j] = m[row][j] * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            const auto factor = m[i][col];
            for (std::size_t j = col; j < cols.size(); ++j) m[i][j] = ((m[i][j] - factor * m[row][j]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline int graphic_rank(const GraphicData& d, const std::vector<std::size_t>& items) {
    std::vector<std::size_t> parent(d.num_vertices);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int rank = 0;
    for (auto e : items) {
        auto a = find(d.edges[e].first), b = find(d.edges[e].second);
        if (a != b) {
            parent[a] = b;
            ++rank;
        }
    }
    return rank;
}

class BaseOracle {
public:
    BaseOracle(std::size_t size, KindData data) : size_(size), data_(std::move(data)) {}

    std::size_t size() const { return size_; }
    const KindData& data() const { return data_; }

    MatroidKind kind() const { return static_cast<MatroidKind>(data_.index()); }

    int rank(const ElementSet& q) const {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(q); it != cache_.end()) return it->second;
        }
        const int r = compute(q);
        std::lock_guard lock(mutex_);
        cache_.emplace(q, r);
        return r;
    }

private:
    int compute(const ElementSet& q) const {
        const auto items = q.indices();
        return std::visit(
            [&](const auto& d) -> int {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, FreeData>) {
                    return static_cast<int>(items.size());
                } else if constexpr (std::is_same_v<T, UniformData>) {
                    return std::min(static_cast<int>(items.size()), d.rank);
                } else if constexpr (std::is_same_v<T, PartitionData>) {
                    std::vector<int> used(d.caps.size(), 0);
                    for (auto e : items) ++used[d.block_of[e]];
                    int r = 0;
                    for (std::size_t b = 0; b < used.size(); ++b) r += std::min(used[b], d.caps[b]);
                    return r;
                } else if constexpr (std::is_same_v<T, GraphicData>) {
                    return graphic_rank(d, items);
                } else if constexpr (std::is_same_v<T, LinearData>) {
                    return linear_rank(d, items);
                } else {
                    int best = 0;
                    for (const auto& b : d.bases) best = std::max(best, static_cast<int>((q & b).size()));
                    return best;
                }
            },
            data_);
    }

    std::size_t size_;
    KindData data_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<ElementSet, int, ElementSetHash> cache_;
};

}  // namespace detail

class Matroid {
public:
    Matroid() : Matroid(make({}, detail::FreeData{})) {}

    static Matroid free(std::vector<std::string> names) { return make(std::move(names), detail::FreeData{}); }

    static Matroid uniform(std::vector<std::string> names, int rank) {
        if (rank < 0) throw DomainError("uniform matroid rank must be non-negative");
        return make(std::move(names), detail::UniformData{rank});
    }

    // Every element must lie in exactly one block.
    static Matroid partition(std::vector<std::string> names, const std::vector<PartitionBlock>& blocks) {
        detail::PartitionData d;
        d.block_of.assign(names.size(), blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].cap < 0) throw DomainError("partition block cap must be non-negative");
            d.caps.push_back(blocks[b].cap);
            for (auto e : blocks[b].elements) {
                if (e >= names.size()) throw DomainError("partition block references unknown element");
                if (d.block_of[e] != blocks.size()) throw DomainError("element " + names[e] + " appears in two blocks");
                d.block_of[e] = b;
            }
        }
        for (std::size_t e = 0; e < names.size(); ++e)
            if (d.block_of[e] == blocks.size()) throw DomainError("element " + names[e] + " is in no block");
        return make(std::move(names), std::move(d));
    }

    // edges[i] are the endpoints of element i in a reference graph.
    static Matroid graphic(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& edges) {
        if (edges.size() != names.size()) throw DomainError("graphic matroid needs exactly one edge per element");
        detail::GraphicData d;
        std::map<std::string, std::size_t> index;
        auto id = [&](const std::string& label) {
            auto [it, inserted] = index.emplace(label, d.vertex_labels.size());
            if (inserted) d.vertex_labels.push_back(label);
            return it->second;
        };
        for (const auto& [u, v] : edges) {
            const auto a = id(u);
            const auto b = id(v);
            d.edges.emplace_back(a, b);
        }
        d.num_vertices = d.vertex_labels.size();
        return make(std::move(names), std::move(d));
    }

    static Matroid linear(std::vector<std::string> names, std::int64_t prime,
                          const std::vector<std::vector<std::int64_t>>& columns) {
        if (prime < 2 || prime > (std::int64_t{1} << 31)) throw DomainError("linear matroid prime must be in [2, 2^31]");
        for (std::int64_t f = 2; f * f <= prime; ++f)
            if (prime % f == 0) throw DomainError("linear matroid modulus " + std::to_string(prime) + " is not prime");
        if (columns.size() != names.size()) throw DomainError("linear matroid needs exactly one column per element");
        detail::LinearData d;
        d.prime = prime;
        for (const auto& c : columns) {
            if (!columns.empty() && c.size() != columns.front().size())
                throw DomainError("linear matroid columns must have equal length");
            std::vector<std::int64_t> reduced;
            for (auto x : c) reduced.push_back(((x % prime) + prime) % prime);
            d.columns.push_back(std::move(reduced));
        }
        return make(std::move(names), std::move(d));
    }

    // Base-exchange validation is exponential in the number of bases; it only
    // runs when asked for.
    static Matroid explicit_bases(std::vector<std::string> names, const std::vector<ElementSet>& bases,
                                  bool validate_exchange = false) {
        if (bases.empty()) throw DomainError("explicit matroid needs at least one base");
        for (const auto& b : bases) {
            if (b.bound() > names.size()) throw DomainError("explicit base references unknown element");
            if (b.size() != bases.front().size()) throw DomainError("explicit bases must all have the same size");
        }
        if (validate_exchange) check_exchange(bases);
        detail::ExplicitData d;
        d.bases = bases;
        d.validated_exchange = validate_exchange;
        return make(std::move(names), std::move(d));
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t e) const { return names_.at(e); }
    MatroidKind kind() const { return base_->kind(); }
    const detail::KindData& base_data() const { return base_->data(); }
    std::size_t base_size() const { return base_->size(); }
    const std::vector<Derivation>& derivations() const { return derivations_; }

    std::optional<std::size_t> find(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    ElementSet ground() const { return ElementSet::range(size()); }

    int rank(const ElementSet& q) const {
        if (q.bound() > size()) throw DomainError("rank query contains an element outside the ground set");
        ElementSet mapped;
        q.for_each([&](std::size_t e) { mapped.insert(resolve_[e]); });
        const int r = base_->rank(mapped);
        return cap_ ? std::min(r, *cap_) : r;
    }

    int rank() const { return rank(ground()); }

    bool is_independent(const ElementSet& q) const { return rank(q) == static_cast<int>(q.size()); }

    bool is_base(const ElementSet& q) const {
        const int r = rank(q);
        return r == static_cast<int>(q.size()) && r == rank();
    }

    ElementSet span(const ElementSet& q) const {
        const int rq = rank(q);
        ElementSet out = q;
        for (std::size_t e = 0; e < size(); ++e) {
            if (q.contains(e)) continue;
            ElementSet with = q;
            with.insert(e);
            if (rank(with) == rq) out.insert(e);
        }
        return out;
    }

    // Adds a copy of `s` parallel to it. Returns the new matroid and the index of
    // the copy (always the old ground size).
    std::pair<Matroid, std::size_t> extend_parallel(std::size_t s) const {
        if (s >= size()) throw DomainError("extend_parallel: element outside the ground set");
        if (rank(ElementSet{s}) != 1) throw InvalidExtension("cannot add a parallel copy of loop " + names_[s]);
        Matroid out = *this;
        const std::size_t copy = size();
        std::string label = names_[s] + "'";
        while (find(label)) label += "'";
        out.names_.push_back(std::move(label));
        out.resolve_.push_back(resolve_[s]);
        out.derivations_.push_back({Derivation::Kind::parallel, s, copy, 0});
        return {std::move(out), copy};
    }

    Matroid truncate(int b) const {
        if (b < 0) throw DomainError("truncation bound must be non-negative");
        Matroid out = *this;
        out.cap_ = cap_ ? std::min(*cap_, b) : b;
        out.derivations_.push_back({Derivation::Kind::truncation, 0, 0, b});
        return out;
    }

private:
    static Matroid make(std::vector<std::string> names, detail::KindData data) {
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names[i] == names[j]) throw DomainError("duplicate ground element " + names[i]);
        Matroid m(std::make_shared<const detail::BaseOracle>(names.size(), std::move(data)));
        m.names_ = std::move(names);
        m.resolve_.resize(m.names_.size());
        std::iota(m.resolve_.begin(), m.resolve_.end(), std::size_t{0});
        return m;
    }

    explicit Matroid(std::shared_ptr<const detail::BaseOracle> base) : base_(std::move(base)) {}

    static void check_exchange(const std::vector<ElementSet>& bases) {
        auto listed = [&](const ElementSet& s) { return std::find(bases.begin(), bases.end(), s) != bases.end(); };
        for (const auto& b1 : bases) {
            for (const auto& b2 : bases) {
                for (auto x : (b1 - b2).indices()) {
                    bool found = false;
                    for (auto y : (b2 - b1).indices()) {
                        ElementSet swapped = b1;
                        swapped.erase(x);
                        swapped.insert(y);
                        if (listed(swapped)) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) throw DomainError("explicit bases violate the base-exchange axiom");
                }
            }
        }
    }

    std::shared_ptr<const detail::BaseOracle> base_;
    std::vector<std::string> names_;
    std::vector<std::size_t> resolve_;
    std::optional<int> cap_;
    std::vector<Derivation> derivations_;
};

}  // namespace arbpack
