#pragma once

// Instance builders and independent reference checks shared by the test
// binaries. The reference checks deliberately avoid the library's SFM and
// partition machinery: they enumerate definitions directly.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arbpack/arbpack.hpp"

namespace testing_support {

using namespace arbpack;

struct ArcSpec {
    std::string id, tail, head;
};

struct RootSpec {
    std::string element, vertex;
};

template <class Instance>
Instance build(const std::vector<std::string>& vertices, const std::vector<ArcSpec>& arcs,
               const std::vector<RootSpec>& roots, const Matroid& m) {
    auto index = [&](const std::string& v) {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v) return i;
        throw DomainError("test builder: unknown vertex " + v);
    };
    std::vector<Link> links;
    for (const auto& a : arcs) links.push_back({a.id, index(a.tail), index(a.head)});
    std::vector<std::size_t> placement(m.size());
    for (const auto& r : roots) placement.at(*m.find(r.element)) = index(r.vertex);
    return Instance(vertices, std::move(links), std::move(placement), m);
}

inline RootedDigraph digraph(const std::vector<std::string>& vertices, const std::vector<ArcSpec>& arcs,
                             const std::vector<RootSpec>& roots, const Matroid& m) {
    return build<RootedDigraph>(vertices, arcs, roots, m);
}

inline RootedGraph graph(const std::vector<std::string>& vertices, const std::vector<ArcSpec>& edges,
                         const std::vector<RootSpec>& roots, const Matroid& m) {
    return build<RootedGraph>(vertices, edges, roots, m);
}

inline std::vector<std::string> element_names(std::size_t t) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < t; ++i) names.push_back("s" + std::to_string(i + 1));
    return names;
}

inline ElementSet elements(std::initializer_list<std::size_t> xs) { return ElementSet(xs); }

inline ElementSet from_mask(std::uint64_t mask) {
    ElementSet s;
    for (std::size_t i = 0; i < 64; ++i)
        if ((mask >> i) & 1U) s.insert(i);
    return s;
}

// Reference rank: largest independent subset of q, by enumeration.
inline int reference_rank(const std::function<bool(std::uint64_t)>& independent, std::uint64_t q) {
    int best = 0;
    for (std::uint64_t s = q;; s = (s - 1) & q) {
        if (independent(s)) best = std::max(best, std::popcount(s));
        if (s == 0) break;
    }
    return best;
}

// Counts arcs entering x by scanning arcs, without the library helper.
inline int entering(const RootedDigraph& d, std::uint64_t x) {
    int c = 0;
    for (const auto& a : d.links())
        if (((x >> a.head) & 1U) && !((x >> a.tail) & 1U)) ++c;
    return c;
}

// Definition of M-connectivity by direct enumeration of every nonempty set.
inline bool reference_m_connected(const RootedDigraph& d) {
    const int k = d.matroid().rank();
    const std::uint64_t full = (std::uint64_t{1} << d.num_vertices()) - 1;
    for (std::uint64_t x = 1; x <= full; ++x) {
        ElementSet sx;
        for (std::size_t e = 0; e < d.num_elements(); ++e)
            if ((x >> d.placement()[e]) & 1U) sx.insert(e);
        if (entering(d, x) < k - d.matroid().rank(sx)) return false;
    }
    return true;
}

template <class Instance>
bool reference_independent_placement(const Instance& inst) {
    for (std::size_t v = 0; v < inst.num_vertices(); ++v) {
        ElementSet sv;
        for (std::size_t e = 0; e < inst.num_elements(); ++e)
            if (inst.placement()[e] == v) sv.insert(e);
        if (inst.matroid().rank(sv) != static_cast<int>(sv.size())) return false;
    }
    return true;
}

// Partitions generated by recursive insertion (each vertex joins an existing
// block or opens a new one), independent of the restricted-growth iterator.
inline void reference_partitions(std::size_t n, const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
    std::vector<std::uint64_t> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == n) {
            visit(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b] |= std::uint64_t{1} << v;
            rec(v + 1);
            blocks[b] &= ~(std::uint64_t{1} << v);
        }
        blocks.push_back(std::uint64_t{1} << v);
        rec(v + 1);
        blocks.pop_back();
    };
    rec(0);
}

inline bool reference_partition_connected(const RootedGraph& g) {
    const int k = g.matroid().rank();
    bool ok = true;
    reference_partitions(g.num_vertices(), [&](const std::vector<std::uint64_t>& blocks) {
        int crossing = 0;
        for (const auto& e : g.links()) {
            std::size_t bt = 0, bh = 0;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                if ((blocks[b] >> e.tail) & 1U) bt = b;
                if ((blocks[b] >> e.head) & 1U) bh = b;
            }
            if (bt != bh) ++crossing;
        }
        int need = k * static_cast<int>(blocks.size());
        for (auto b : blocks) {
            ElementSet sx;
            for (std::size_t e = 0; e < g.num_elements(); ++e)
                if ((b >> g.placement()[e]) & 1U) sx.insert(e);
            need -= g.matroid().rank(sx);
        }
        if (crossing < need) ok = false;
    });
    return ok;
}

// Does some orientation of g make it M-connected? Checked by the direct
// definition on each of the 2^|E| orientations.
inline bool reference_orientable(const RootedGraph& g) {
    const std::size_t m = g.num_links();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<bool> rev(m);
        for (std::size_t i = 0; i < m; ++i) rev[i] = (mask >> i) & 1U;
        if (reference_m_connected(orient(g, rev))) return true;
    }
    return false;
}

// Packing validity from the definition: distinct arcs, one tree per element
// rooted at its placement, every tree an arborescence (directed) or a tree
// (undirected), and a base of root elements at every vertex.
template <class Instance>
bool reference_packing_valid(const Instance& inst, const Packing& p) {
    constexpr bool directed = Instance::directed;
    if (p.trees.size() != inst.num_elements()) return false;
    std::set<std::string> used;
    std::vector<bool> seen(inst.num_elements(), false);
    std::vector<std::uint64_t> spans(p.trees.size(), 0);
    for (std::size_t ti = 0; ti < p.trees.size(); ++ti) {
        const auto& t = p.trees[ti];
        if (t.element >= inst.num_elements() || seen[t.element]) return false;
        seen[t.element] = true;
        const std::size_t root = inst.placement()[t.element];
        if (t.root != root) return false;
        std::vector<Link> arcs;
        for (const auto& id : t.links) {
            if (!used.insert(id).second) return false;
            auto i = inst.link_index(id);
            if (!i) return false;
            arcs.push_back(inst.link(*i));
        }
        std::uint64_t reached = std::uint64_t{1} << root;
        // Grow from the root; every arc must be consumed exactly when it first
        // reaches a new vertex.
        std::vector<bool> consumed(arcs.size(), false);
        for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t i = 0; i < arcs.size(); ++i) {
                if (consumed[i]) continue;
                const bool t_in = (reached >> arcs[i].tail) & 1U, h_in = (reached >> arcs[i].head) & 1U;
                if (t_in && !h_in) {
                    reached |= std::uint64_t{1} << arcs[i].head;
                } else if (!directed && h_in && !t_in) {
                    reached |= std::uint64_t{1} << arcs[i].tail;
                } else {
                    continue;
                }
                consumed[i] = true;
                grew = true;
            }
        }
        for (bool c : consumed)
            if (!c) return false;
        spans[ti] = reached;
    }
    for (std::size_t v = 0; v < inst.num_vertices(); ++v) {
        ElementSet through;
        for (std::size_t ti = 0; ti < p.trees.size(); ++ti)
            if ((spans[ti] >> v) & 1U) through.insert(p.trees[ti].element);
        const int r = inst.matroid().rank(through);
        if (r != static_cast<int>(through.size()) || r != inst.matroid().rank()) return false;
    }
    return true;
}

}  // namespace testing_support
