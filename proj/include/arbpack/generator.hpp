#pragma once

// Seeded random instances.
//
// Randomness comes from std::mt19937_64 (fully specified by the C++ standard)
// seeded with the user seed. Bounded draws use rejection sampling on the raw
// 64-bit outputs: with L = 2^64 - (2^64 mod n), draw x until x < L and return
// x mod n. The distributions of the standard library are deliberately avoided
// since their output differs between implementations.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "arbpack/error.hpp"
#include "arbpack/graph.hpp"
#include "arbpack/io.hpp"
#include "arbpack/matroid.hpp"

namespace arbpack {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw DomainError("Rng::below(0)");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % n;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        // Fisher-Yates from the back.
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

struct GenParams {
    std::size_t n = 4;  // vertices
    std::size_t m = 6;  // arcs or edges
    std::size_t t = 2;  // root elements
    MatroidKind kind = MatroidKind::free;
    int rank = -1;  // uniform / linear / explicit; -1 picks max(1, t - 1)
    bool feasible = false;
    bool undirected = false;
};

inline constexpr std::size_t kMaxGenLinks = 4096;

inline MatroidKind parse_matroid_kind(const std::string& s) {
    for (auto k : {MatroidKind::free, MatroidKind::uniform, MatroidKind::partition, MatroidKind::graphic,
                   MatroidKind::linear, MatroidKind::explicit_bases})
        if (s == to_string(k)) return k;
    throw DomainError("unknown matroid kind '" + s + "'");
}

namespace detail {

inline Matroid random_matroid(const GenParams& p, Rng& rng) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.t; ++i) names.push_back("s" + std::to_string(i + 1));
    const int r = p.rank >= 0 ? p.rank : std::max(1, static_cast<int>(p.t) - 1);
    switch (p.kind) {
        case MatroidKind::free: return Matroid::free(names);
        case MatroidKind::uniform: return Matroid::uniform(names, r);
        case MatroidKind::partition: {
            const std::size_t nb = std::max<std::size_t>(1, (p.t + 1) / 2);
            std::vector<PartitionBlock> blocks(nb);
            for (std::size_t i = 0; i < p.t; ++i) blocks[rng.below(nb)].elements.push_back(i);
            for (auto& b : blocks) b.cap = b.elements.empty() ? 0 : 1 + static_cast<int>(rng.below(b.elements.size()));
            return Matroid::partition(names, blocks);
        }
        case MatroidKind::graphic: {
            const std::size_t labels = std::max<std::size_t>(2, p.t);
            std::vector<std::pair<std::string, std::string>> edges;
            for (std::size_t i = 0; i < p.t; ++i) {
                const auto u = rng.below(labels);
                auto v = rng.below(labels - 1);
                if (v >= u) ++v;
                edges.emplace_back("g" + std::to_string(u), "g" + std::to_string(v));
            }
            return Matroid::graphic(names, edges);
        }
        case MatroidKind::linear: {
            const std::size_t dim = static_cast<std::size_t>(std::max(1, r));
            std::vector<std::vector<std::int64_t>> cols;
            for (std::size_t i = 0; i < p.t; ++i) {
                std::vector<std::int64_t> c(dim, 0);
                while (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; }))
                    for (auto& x : c) x = static_cast<std::int64_t>(rng.below(3));
                cols.push_back(std::move(c));
            }
            return Matroid::linear(names, 3, cols);
        }
        case MatroidKind::explicit_bases: {
            // Bases of the uniform matroid of rank min(r, t), listed explicitly.
            const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(r), p.t);
            std::vector<ElementSet> bases;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.t); ++mask) {
                if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
                ElementSet b;
                for (std::size_t i = 0; i < p.t; ++i)
                    if ((mask >> i) & 1U) b.insert(i);
                bases.push_back(b);
            }
            return Matroid::explicit_bases(names, bases);
        }
    }
    throw DomainError("unknown matroid kind");
}

}  // namespace detail

// With `feasible`, a packing is built first (each vertex extends its own roots
// to a random base, each tree attaches its vertices in random order) and noise
// links are added on top, so the instance is feasible by construction.
inline InstanceFile generate_instance(std::uint64_t seed, const GenParams& p) {
    if (p.n == 0 || p.n > kMaxVertices) throw SizeLimitError("gen: n must be in [1, 64]");
    if (p.t > kMaxVertices) throw SizeLimitError("gen: t must be at most 64");
    if (p.m > kMaxGenLinks) throw SizeLimitError("gen: m must be at most 4096");
    if (p.kind == MatroidKind::explicit_bases && p.t > 16) throw SizeLimitError("gen: explicit matroids need t <= 16");
    if (p.n < 2 && p.m > 0) throw DomainError("gen: links need at least two vertices");

    Rng rng(seed);
    const Matroid m = detail::random_matroid(p, rng);

    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < p.n; ++i) vertices.push_back("v" + std::to_string(i + 1));

    std::vector<std::size_t> placement(p.t);
    std::vector<ElementSet> at(p.n);
    for (std::size_t e = 0; e < p.t; ++e) {
        if (!p.feasible) {
            placement[e] = rng.below(p.n);
        } else {
            std::vector<std::size_t> order(p.n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            rng.shuffle(order);
            bool placed = false;
            for (auto v : order) {
                ElementSet trial = at[v];
                trial.insert(e);
                if (m.is_independent(trial)) {
                    placement[e] = v;
                    placed = true;
                    break;
                }
            }
            if (!placed) throw DomainError("gen: cannot place root " + m.name(e) + " independently");
        }
        at[placement[e]].insert(e);
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (p.feasible) {
        // Trees through each vertex: its own roots extended to a random base.
        std::vector<std::vector<std::size_t>> tree_vertices(p.t);
        for (std::size_t v = 0; v < p.n; ++v) {
            ElementSet base = at[v];
            std::vector<std::size_t> order(p.t);
            std::iota(order.begin(), order.end(), std::size_t{0});
            rng.shuffle(order);
            for (auto e : order) {
                if (base.contains(e)) continue;
                ElementSet trial = base;
                trial.insert(e);
                if (m.is_independent(trial)) base = trial;
            }
            for (auto e : base.indices())
                if (placement[e] != v) tree_vertices[e].push_back(v);
        }
        for (std::size_t e = 0; e < p.t; ++e) {
            auto& rest = tree_vertices[e];
            rng.shuffle(rest);
            std::vector<std::size_t> in_tree{placement[e]};
            for (auto v : rest) {
                pairs.emplace_back(in_tree[rng.below(in_tree.size())], v);
                in_tree.push_back(v);
            }
        }
        if (pairs.size() > p.m)
            throw DomainError("gen: a feasible instance needs at least " + std::to_string(pairs.size()) + " links");
    }
    while (pairs.size() < p.m) {
        const auto u = rng.below(p.n);
        auto v = rng.below(p.n - 1);
        if (v >= u) ++v;
        pairs.emplace_back(u, v);
    }
    rng.shuffle(pairs);

    std::vector<Link> links;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [u, v] = pairs[i];
        if (p.undirected && rng.below(2) == 1) std::swap(u, v);
        links.push_back({(p.undirected ? "e" : "a") + std::to_string(i + 1), u, v});
    }

    InstanceFile f;
    if (p.undirected) {
        f.instance = RootedGraph(vertices, std::move(links), std::move(placement), m);
    } else {
        f.instance = RootedDigraph(vertices, std::move(links), std::move(placement), m);
    }
    return f;
}

}  // namespace arbpack
