#pragma once

// The undirected side: M-connected orientations, rooted-tree packings obtained
// by packing an orientation and forgetting directions, and the edge
// decomposition that follows when |E| + |S| = k|V|.

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arbpack/connectivity.hpp"
#include "arbpack/packing.hpp"

namespace arbpack {

inline constexpr std::size_t kDefaultMaxOrientationExponent = 20;
inline constexpr std::size_t kMaxEdgeConditionEdges = 16;

struct OrientationOptions {
    SfmOptions sfm;
    std::size_t max_partition_vertices = kDefaultMaxPartitionVertices;
    std::size_t max_orientation_exponent = kDefaultMaxOrientationExponent;
    bool use_heuristic = true;
};

struct Orientation {
    // reversed[i] == false orients edge i from its first listed endpoint to its second.
    std::vector<bool> reversed;
    bool used_fallback = false;
    std::size_t path_reversals = 0;
};

using OrientationOutcome = std::variant<Orientation, Certificate>;

inline RootedDigraph orient(const RootedGraph& g, const std::vector<bool>& reversed) {
    if (reversed.size() != g.num_links()) throw DomainError("orientation must assign every edge exactly once");
    std::vector<Link> arcs;
    arcs.reserve(g.num_links());
    for (std::size_t i = 0; i < g.num_links(); ++i) {
        const auto& e = g.link(i);
        arcs.push_back(reversed[i] ? Link{e.id, e.head, e.tail} : e);
    }
    return RootedDigraph(g.vertices(), std::move(arcs), g.placement(), g.matroid());
}

namespace detail {

// Arc indices of a shortest s -> t path (BFS, arcs scanned in index order).
inline std::optional<std::vector<std::size_t>> shortest_path(const RootedDigraph& d, std::size_t s, std::size_t t) {
    std::vector<std::size_t> via(d.num_vertices(), d.num_links());
    VertexMask seen = vertex_bit(s);
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
        const auto w = queue.front();
        queue.pop_front();
        if (w == t) break;
        for (std::size_t i = 0; i < d.num_links(); ++i) {
            const auto& a = d.link(i);
            if (a.tail != w || contains(seen, a.head)) continue;
            seen |= vertex_bit(a.head);
            via[a.head] = i;
            queue.push_back(a.head);
        }
    }
    if (!contains(seen, t)) return std::nullopt;
    std::vector<std::size_t> path;
    for (auto w = t; w != s; w = d.link(via[w]).tail) path.push_back(via[w]);
    return path;
}

}  // namespace detail

// Repeatedly fixes the canonical deficient set X by reversing a path from some
// s in X to some t outside X, accepting only pairs where every set containing t
// but not s has deficiency >= 1 (so nothing it hits drops below zero). Returns
// nullopt when no such pair exists.
inline std::optional<Orientation> heuristic_orientation(const RootedGraph& g, const OrientationOptions& options = {}) {
    Orientation o{std::vector<bool>(g.num_links(), false)};
    const std::size_t limit = 4 * (g.num_links() + 1) * (g.num_vertices() + 1);
    for (std::size_t iter = 0; iter <= limit; ++iter) {
        const auto d = orient(g, o.reversed);
        const auto cert = check_m_connected(d, options.sfm);
        if (cert.ok()) return o;
        const VertexMask x = cert.set;
        bool moved = false;
        for (auto s : members(x)) {
            for (auto t : members(d.all_vertices() & ~x)) {
                auto path = detail::shortest_path(d, s, t);
                if (!path) continue;
                const auto guard = minimize(deficiency_objective(d, SetFamily::containing_excluding(t, s)), options.sfm);
                if (guard.value < 1) continue;
                for (auto i : *path) o.reversed[i] = !o.reversed[i];
                ++o.path_reversals;
                moved = true;
                break;
            }
            if (moved) break;
        }
        if (!moved) return std::nullopt;
    }
    return std::nullopt;
}

// First M-connected orientation in increasing reversal-mask order.
inline std::optional<Orientation> exhaustive_orientation(const RootedGraph& g, const OrientationOptions& options = {}) {
    const std::size_t m = g.num_links();
    if (m > options.max_orientation_exponent || m >= 63)
        throw SizeLimitError("exhaustive orientation search limited to 2^" +
                             std::to_string(options.max_orientation_exponent) + " orientations");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Orientation o{std::vector<bool>(m)};
        for (std::size_t i = 0; i < m; ++i) o.reversed[i] = (mask >> i) & 1U;
        if (check_m_connected(orient(g, o.reversed), options.sfm).ok()) {
            o.used_fallback = true;
            return o;
        }
    }
    return std::nullopt;
}

// An orientation whose digraph is M-connected, or the partition certificate
// showing that none exists.
inline OrientationOutcome orient_m_connected(const RootedGraph& g, const OrientationOptions& options = {}) {
    if (auto c = check_partition_connected(g, options.max_partition_vertices); !c.ok()) return c;
    std::optional<Orientation> o;
    if (options.use_heuristic) o = heuristic_orientation(g, options);
    if (!o) o = exhaustive_orientation(g, options);
    if (!o) throw TheoremViolation("partition-connected graph has no M-connected orientation");
    if (!check_m_connected(orient(g, o->reversed), options.sfm).ok())
        throw TheoremViolation("returned orientation is not M-connected");
    return *o;
}

// Packs an M-connected orientation and drops the directions.
inline PackingOutcome pack_undirected(const RootedGraph& g, const OrientationOptions& options = {},
                                      std::ostream* trace = nullptr) {
    if (auto c = check_independent_placement(g); !c.ok()) return c;
    auto oriented = orient_m_connected(g, options);
    if (auto* c = std::get_if<Certificate>(&oriented)) return *c;
    const auto d = orient(g, std::get<Orientation>(oriented).reversed);
    auto outcome = find_packing(d, {options.sfm, trace});
    if (auto* c = std::get_if<Certificate>(&outcome))
        throw TheoremViolation(std::string("M-connected orientation rejected by the packer: ") + to_string(c->kind));
    auto& p = std::get<Packing>(outcome);
    if (auto v = verify_tree_packing(g, p); !v.ok())
        throw TheoremViolation(std::string("undirected packing failed verification: ") + to_string(v.reason));
    return p;
}

// Packing whose trees cover every edge. Requires |E| + |S| = k|V|.
inline PackingOutcome decompose_edges(const RootedGraph& g, const OrientationOptions& options = {}) {
    const long k = g.matroid().rank();
    const long lhs = static_cast<long>(g.num_links() + g.num_elements());
    const long rhs = k * static_cast<long>(g.num_vertices());
    if (lhs != rhs)
        throw IdentityViolation("|E| + |S| = " + std::to_string(lhs) + " but k|V| = " + std::to_string(rhs));
    auto outcome = pack_undirected(g, options);
    if (auto* p = std::get_if<Packing>(&outcome); p && p->num_links() != g.num_links())
        throw TheoremViolation("decomposition does not cover every edge");
    return outcome;
}

// Diagnostic: the first edge subset F (as a mask over edge indices, increasing
// order) with |F| + |S_V(F)| > k|V(F)| - k + r(S_V(F)), or nullopt.
inline std::optional<std::uint64_t> edge_set_condition_violation(const RootedGraph& g) {
    const std::size_t m = g.num_links();
    if (m > kMaxEdgeConditionEdges) throw SizeLimitError("edge-set condition check limited to 16 edges");
    const int k = g.matroid().rank();
    for (std::uint64_t f = 1; f < (std::uint64_t{1} << m); ++f) {
        VertexMask touched = 0;
        int size = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!((f >> i) & 1U)) continue;
            ++size;
            touched |= vertex_bit(g.link(i).tail) | vertex_bit(g.link(i).head);
        }
        const auto s = g.elements_in(touched);
        if (size + static_cast<int>(s.size()) > k * popcount(touched) - k + g.matroid().rank(s)) return f;
    }
    return std::nullopt;
}

}  // namespace arbpack
