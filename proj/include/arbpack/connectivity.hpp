#pragma once

// Feasibility conditions and the structural predicates of the packing proof.
//
//   independent placement   r(S_v) = |S_v| for every vertex v
//   M-connected             rho(X) >= r(S) - r(S_X) for every nonempty X
//   M-partition-connected   e_G(P) >= r(S)|P| - sum_{X in P} r(S_X)
//
// Negative answers are Certificates: small witnesses that can be re-checked by
// direct evaluation (see certificate_holds).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arbpack/bitset.hpp"
#include "arbpack/graph.hpp"
#include "arbpack/sfm.hpp"

namespace arbpack {

struct Certificate {
    enum class Kind { ok, dependent_vertex, violated_set, violated_partition };

    Kind kind = Kind::ok;
    std::size_t vertex = 0;             // dependent_vertex
    VertexMask set = 0;                 // violated_set
    std::vector<VertexMask> partition;  // violated_partition
    // Left side minus right side of the violated inequality (negative), or
    // r(S_v) - |S_v| for a dependent vertex.
    int deficiency = 0;

    bool ok() const { return kind == Kind::ok; }

    static Certificate satisfied() { return {}; }
    static Certificate dependent(std::size_t v, int deficiency) { return {Kind::dependent_vertex, v, 0, {}, deficiency}; }
    static Certificate violated(VertexMask x, int deficiency) { return {Kind::violated_set, 0, x, {}, deficiency}; }
    static Certificate violated(std::vector<VertexMask> p, int deficiency) {
        return {Kind::violated_partition, 0, 0, std::move(p), deficiency};
    }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline const char* to_string(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::ok: return "ok";
        case Certificate::Kind::dependent_vertex: return "dependent-vertex";
        case Certificate::Kind::violated_set: return "violated-set";
        case Certificate::Kind::violated_partition: return "violated-partition";
    }
    return "?";
}

template <class O>
Certificate check_independent_placement(const RootedInstance<O>& inst) {
    for (std::size_t v = 0; v < inst.num_vertices(); ++v) {
        const auto& sv = inst.elements_at(v);
        const int r = inst.matroid().rank(sv);
        if (r < static_cast<int>(sv.size())) return Certificate::dependent(v, r - static_cast<int>(sv.size()));
    }
    return Certificate::satisfied();
}

// f(X) = rho(X) + r(S_X) - r(S); submodular, f(V) = 0.
inline SubmodularObjective<int> deficiency_objective(const RootedDigraph& d,
                                                     SetFamily family = SetFamily::nonempty()) {
    const int k = d.matroid().rank();
    return {d.num_vertices(),
            [&d, k](VertexMask x) { return in_degree_or_zero(d, x) + d.rank_in(x) - k; }, family};
}

inline Certificate check_m_connected(const RootedDigraph& d, const SfmOptions& options = {}) {
    if (d.num_vertices() == 0) return Certificate::satisfied();
    const auto r = minimize(deficiency_objective(d), options);
    if (r.value < 0) return Certificate::violated(r.minimizer, r.value);
    return Certificate::satisfied();
}

// e_G(P) - (r(S)|P| - sum r(S_X)).
inline int partition_deficiency(const RootedGraph& g, const Partition& p) {
    int required = g.matroid().rank() * static_cast<int>(p.size());
    for (auto block : p.blocks()) required -= g.rank_in(block);
    return cross_edges(g, p) - required;
}

// Reports the partition with the most negative deficiency (first in
// restricted-growth order on ties).
inline Certificate check_partition_connected(const RootedGraph& g,
                                             std::size_t max_vertices = kDefaultMaxPartitionVertices) {
    const int k = g.matroid().rank();
    const std::size_t n = g.num_vertices();
    std::vector<std::size_t> label(n);
    std::optional<Certificate> worst;
    for_each_partition(
        n,
        [&](const std::vector<VertexMask>& blocks) {
            for (std::size_t b = 0; b < blocks.size(); ++b)
                for (auto v : members(blocks[b])) label[v] = b;
            int crossing = 0;
            for (const auto& e : g.links()) crossing += label[e.tail] != label[e.head] ? 1 : 0;
            int required = k * static_cast<int>(blocks.size());
            for (auto block : blocks) required -= g.rank_in(block);
            const int deficiency = crossing - required;
            if (deficiency < 0 && (!worst || deficiency < worst->deficiency))
                worst = Certificate::violated(blocks, deficiency);
            return true;
        },
        max_vertices);
    return worst ? *worst : Certificate::satisfied();
}

// Y dominates X when S_X is contained in Span(S_Y).
template <class O>
bool dominates(const RootedInstance<O>& inst, VertexMask y, VertexMask x) {
    const auto& m = inst.matroid();
    return inst.elements_in(x).is_subset_of(m.span(inst.elements_in(y)));
}

struct ArcClass {
    bool good = true;
    ElementSet witness;  // S_u \ Span(S_v), nonempty exactly when bad
};

// Arc uv is good when v dominates u.
inline ArcClass classify_arc(const RootedDigraph& d, std::size_t arc) {
    if (arc >= d.num_links()) throw DomainError("classify_arc: unknown arc");
    const auto& a = d.link(arc);
    const auto witness = d.elements_at(a.tail) - d.matroid().span(d.elements_at(a.head));
    return {witness.empty(), witness};
}

// Equality in the M-connectivity inequality. Meaningful on M-connected instances.
inline bool is_tight(const RootedDigraph& d, VertexMask x) {
    if (x == 0) throw DomainError("is_tight: empty set");
    return in_degree(d, x) == d.matroid().rank() - d.rank_in(x);
}

// Re-validates a certificate by direct evaluation of its defining inequality.
inline bool certificate_holds(const RootedDigraph& d, const Certificate& c) {
    switch (c.kind) {
        case Certificate::Kind::ok: return true;
        case Certificate::Kind::dependent_vertex: {
            if (c.vertex >= d.num_vertices()) return false;
            const auto& sv = d.elements_at(c.vertex);
            const int r = d.matroid().rank(sv);
            return r < static_cast<int>(sv.size()) && r - static_cast<int>(sv.size()) == c.deficiency;
        }
        case Certificate::Kind::violated_set: {
            if (c.set == 0 || (c.set & ~d.all_vertices()) != 0) return false;
            const int f = in_degree(d, c.set) + d.rank_in(c.set) - d.matroid().rank();
            return f < 0 && f == c.deficiency;
        }
        case Certificate::Kind::violated_partition: return false;
    }
    return false;
}

inline bool certificate_holds(const RootedGraph& g, const Certificate& c) {
    switch (c.kind) {
        case Certificate::Kind::ok: return true;
        case Certificate::Kind::dependent_vertex: {
            if (c.vertex >= g.num_vertices()) return false;
            const auto& sv = g.elements_at(c.vertex);
            const int r = g.matroid().rank(sv);
            return r < static_cast<int>(sv.size()) && r - static_cast<int>(sv.size()) == c.deficiency;
        }
        case Certificate::Kind::violated_partition: {
            try {
                const int def = partition_deficiency(g, Partition(g.num_vertices(), c.partition));
                return def < 0 && def == c.deficiency;
            } catch (const DomainError&) {
                return false;
            }
        }
        case Certificate::Kind::violated_set: return false;
    }
    return false;
}

}  // namespace arbpack
