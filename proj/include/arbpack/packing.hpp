#pragma once

// Matroid-based packings of arborescences.
//
// find_packing follows the constructive sufficiency argument: while some bad
// arc uv exists, pick one with a witness s in S_u \ Span(S_v) whose reduction
// (delete uv, add a parallel copy s' of s at v) keeps the instance M-connected.
// Once every arc is good, each root on its own is already a packing. The
// reductions are then undone in reverse, each one gluing the trees of s and s'
// together with uv.

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "arbpack/connectivity.hpp"
#include "arbpack/graph.hpp"

namespace arbpack {

struct Tree {
    std::size_t element = 0;          // root element (index into the matroid ground set)
    std::size_t root = 0;             // root vertex, always placement[element]
    std::vector<std::string> links;   // arc or edge ids
    VertexMask vertices = 0;          // root plus every endpoint of `links`

    friend bool operator==(const Tree&, const Tree&) = default;
};

// One tree per root element, ordered by element index.
struct Packing {
    std::vector<Tree> trees;

    std::size_t num_links() const {
        std::size_t n = 0;
        for (const auto& t : trees) n += t.links.size();
        return n;
    }

    friend bool operator==(const Packing&, const Packing&) = default;
};

struct ReductionStep {
    std::size_t arc = 0;  // index into the instance the step was taken on
    std::string arc_id;
    std::size_t tail = 0;
    std::size_t head = 0;
    std::size_t element = 0;  // s
    std::size_t copy = 0;     // s', placed at head
};

struct PackingOptions {
    SfmOptions sfm;
    std::ostream* trace = nullptr;
};

using PackingOutcome = std::variant<Packing, Certificate>;

struct VerifyResult {
    enum class Reason {
        ok,
        unknown_element,
        duplicate_tree,
        missing_tree,
        wrong_root,
        unknown_link,
        duplicate_link,
        not_arborescence,
        not_tree,
        not_a_base
    };

    Reason reason = Reason::ok;
    std::size_t tree = 0;    // offending tree position
    std::size_t vertex = 0;  // not_a_base
    std::string link;        // unknown_link / duplicate_link

    bool ok() const { return reason == Reason::ok; }
};

inline const char* to_string(VerifyResult::Reason r) {
    using R = VerifyResult::Reason;
    switch (r) {
        case R::ok: return "ok";
        case R::unknown_element: return "unknown-element";
        case R::duplicate_tree: return "duplicate-tree";
        case R::missing_tree: return "missing-tree";
        case R::wrong_root: return "wrong-root";
        case R::unknown_link: return "unknown-arc";
        case R::duplicate_link: return "duplicate-arc";
        case R::not_arborescence: return "not-arborescence";
        case R::not_tree: return "not-a-tree";
        case R::not_a_base: return "not-a-base";
    }
    return "?";
}

namespace detail {

// Shared by the directed and undirected verifiers: tree bookkeeping, link
// disjointness, then the per-vertex base condition. `shape_ok` checks one tree.
template <class O, class ShapeCheck>
VerifyResult verify_common(const RootedInstance<O>& inst, const Packing& p, VerifyResult::Reason shape_failure,
                           ShapeCheck&& shape_ok) {
    using R = VerifyResult::Reason;
    std::vector<bool> seen_element(inst.num_elements(), false);
    std::vector<bool> used(inst.num_links(), false);
    std::vector<VertexMask> covered(p.trees.size(), 0);
    for (std::size_t ti = 0; ti < p.trees.size(); ++ti) {
        const auto& t = p.trees[ti];
        if (t.element >= inst.num_elements()) return {R::unknown_element, ti, 0, {}};
        if (seen_element[t.element]) return {R::duplicate_tree, ti, 0, {}};
        seen_element[t.element] = true;
        if (t.root != inst.placement()[t.element]) return {R::wrong_root, ti, 0, {}};
        std::vector<std::size_t> idx;
        VertexMask vs = vertex_bit(t.root);
        for (const auto& id : t.links) {
            auto i = inst.link_index(id);
            if (!i) return {R::unknown_link, ti, 0, id};
            if (used[*i]) return {R::duplicate_link, ti, 0, id};
            used[*i] = true;
            idx.push_back(*i);
            vs |= vertex_bit(inst.link(*i).tail) | vertex_bit(inst.link(*i).head);
        }
        if (!shape_ok(std::span<const std::size_t>(idx), t.root)) return {shape_failure, ti, 0, {}};
        covered[ti] = vs;
    }
    for (std::size_t e = 0; e < inst.num_elements(); ++e)
        if (!seen_element[e]) return {R::missing_tree, e, 0, {}};
    for (std::size_t v = 0; v < inst.num_vertices(); ++v) {
        ElementSet through;
        for (std::size_t ti = 0; ti < p.trees.size(); ++ti)
            if (contains(covered[ti], v)) through.insert(p.trees[ti].element);
        if (!inst.matroid().is_base(through)) return {R::not_a_base, 0, v, {}};
    }
    return {};
}

}  // namespace detail

// Checks the three defining properties: links used at most once, each entry an
// arborescence rooted at its element's vertex, and the root elements of the
// trees through every vertex forming a base.
inline VerifyResult verify_packing(const RootedDigraph& d, const Packing& p) {
    return detail::verify_common(d, p, VerifyResult::Reason::not_arborescence,
                                 [&](std::span<const std::size_t> arcs, std::size_t root) {
                                     return is_arborescence(d, arcs, root);
                                 });
}

// Undirected counterpart: edge-disjoint trees containing their roots.
inline VerifyResult verify_tree_packing(const RootedGraph& g, const Packing& p) {
    return detail::verify_common(g, p, VerifyResult::Reason::not_tree,
                                 [&](std::span<const std::size_t> edges, std::size_t root) {
                                     return is_rooted_tree(g, edges, root);
                                 });
}

// Deletes arc `arc` and places a new element parallel to `element` at its head.
inline std::pair<RootedDigraph, ReductionStep> reduce(const RootedDigraph& d, std::size_t arc, std::size_t element) {
    const auto& a = d.link(arc);
    auto [m, copy] = d.matroid().extend_parallel(element);
    auto placement = d.placement();
    placement.push_back(a.head);
    ReductionStep step{arc, a.id, a.tail, a.head, element, copy};
    auto reduced = d.without_link(arc).with_roots(std::move(placement), std::move(m));
    return {std::move(reduced), std::move(step)};
}

// The first bad arc (instance order) with a witness (ground order) whose
// reduction stays M-connected, or nullopt when every arc is good.
inline std::optional<ReductionStep> find_reduction(const RootedDigraph& d, const PackingOptions& options = {}) {
    bool any_bad = false;
    for (std::size_t i = 0; i < d.num_links(); ++i) {
        const auto cls = classify_arc(d, i);
        if (cls.good) continue;
        any_bad = true;
        for (auto s : cls.witness.indices()) {
            auto [reduced, step] = reduce(d, i, s);
            if (check_m_connected(reduced, options.sfm).ok()) return step;
        }
    }
    if (any_bad) throw TheoremViolation("bad arcs exist but no reduction keeps the instance M-connected");
    return std::nullopt;
}

// Each root element alone; valid once every arc is good.
inline Packing base_case_packing(const RootedDigraph& d) {
    for (std::size_t i = 0; i < d.num_links(); ++i)
        if (!classify_arc(d, i).good) throw ContractError("base_case_packing: arc " + d.link(i).id + " is bad");
    Packing p;
    for (std::size_t e = 0; e < d.num_elements(); ++e) p.trees.push_back({e, d.placement()[e], {}, vertex_bit(d.placement()[e])});
    return p;
}

// Undoes one reduction: the trees of s and s' become T u T' + uv, rooted at s.
inline Packing lift_packing(const Packing& reduced, const ReductionStep& step) {
    auto find_tree = [&](std::size_t element) {
        auto it = std::find_if(reduced.trees.begin(), reduced.trees.end(),
                               [&](const Tree& t) { return t.element == element; });
        if (it == reduced.trees.end()) throw ContractError("lift_packing: no tree for element");
        return it;
    };
    const auto t = find_tree(step.element);
    const auto t_copy = find_tree(step.copy);
    if ((t->vertices & t_copy->vertices) != 0) throw ContractError("lift_packing: trees of s and s' share a vertex");
    if (!contains(t->vertices, step.tail)) throw ContractError("lift_packing: arc tail outside the tree of s");
    if (t_copy->root != step.head) throw ContractError("lift_packing: arc head is not the root of the tree of s'");

    Packing out;
    for (const auto& tree : reduced.trees) {
        if (tree.element == step.copy) continue;
        if (tree.element != step.element) {
            out.trees.push_back(tree);
            continue;
        }
        Tree merged = tree;
        merged.links.insert(merged.links.end(), t_copy->links.begin(), t_copy->links.end());
        merged.links.push_back(step.arc_id);
        merged.vertices |= t_copy->vertices;
        out.trees.push_back(std::move(merged));
    }
    return out;
}

struct PackingRun {
    Packing packing;
    std::vector<ReductionStep> steps;
};

// Reduces to the base case, then lifts back. Preconditions are checked by the
// caller; every intermediate failure is a tripwire.
inline PackingRun run_reductions(const RootedDigraph& d, const PackingOptions& options = {}) {
    PackingRun run;
    RootedDigraph cur = d;
    while (auto step = find_reduction(cur, options)) {
        auto next = reduce(cur, step->arc, step->element).first;
        if (options.trace) {
            *options.trace << "reduce " << step->arc_id << " (" << cur.vertex_name(step->tail) << "->"
                           << cur.vertex_name(step->head) << ") s=" << cur.matroid().name(step->element)
                           << " s'=" << next.matroid().name(step->copy) << "\n";
        }
        cur = std::move(next);
        run.steps.push_back(*step);
    }
    run.packing = base_case_packing(cur);
    for (auto it = run.steps.rbegin(); it != run.steps.rend(); ++it) run.packing = lift_packing(run.packing, *it);
    return run;
}

inline PackingOutcome find_packing(const RootedDigraph& d, const PackingOptions& options = {}) {
    if (auto c = check_independent_placement(d); !c.ok()) return c;
    if (auto c = check_m_connected(d, options.sfm); !c.ok()) return c;
    auto run = run_reductions(d, options);
    if (auto v = verify_packing(d, run.packing); !v.ok())
        throw TheoremViolation(std::string("constructed packing failed verification: ") + to_string(v.reason));
    return std::move(run.packing);
}

inline constexpr std::size_t kMaxBruteArcs = 10;
inline constexpr std::size_t kMaxBruteElements = 4;

// Exhaustive ground truth: assigns every arc to one tree or to none and calls
// `visit` with each assignment that verifies. `visit` returns false to stop.
inline void for_each_brute_force_packing(const RootedDigraph& d, const std::function<bool(const Packing&)>& visit) {
    const std::size_t m = d.num_links(), t = d.num_elements();
    if (m > kMaxBruteArcs || t > kMaxBruteElements)
        throw SizeLimitError("brute-force packing limited to 10 arcs and 4 root elements");
    std::vector<std::size_t> owner(m, t);  // t means unused
    std::vector<VertexMask> has_parent(t, 0);
    bool stop = false;
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (stop) return;
        if (i == m) {
            Packing p;
            for (std::size_t e = 0; e < t; ++e) p.trees.push_back({e, d.placement()[e], {}, vertex_bit(d.placement()[e])});
            for (std::size_t a = 0; a < m; ++a) {
                if (owner[a] == t) continue;
                auto& tree = p.trees[owner[a]];
                tree.links.push_back(d.link(a).id);
                tree.vertices |= vertex_bit(d.link(a).tail) | vertex_bit(d.link(a).head);
            }
            if (verify_packing(d, p).ok() && !visit(p)) stop = true;
            return;
        }
        assign(i + 1);
        const auto head = d.link(i).head;
        for (std::size_t e = 0; e < t && !stop; ++e) {
            // An arborescence never has two arcs into one vertex or any arc into its root.
            if (contains(has_parent[e], head) || head == d.placement()[e]) continue;
            owner[i] = e;
            has_parent[e] |= vertex_bit(head);
            assign(i + 1);
            has_parent[e] &= ~vertex_bit(head);
            owner[i] = t;
        }
    };
    assign(0);
}

inline std::optional<Packing> brute_force_packing(const RootedDigraph& d) {
    std::optional<Packing> found;
    for_each_brute_force_packing(d, [&](const Packing& p) {
        found = p;
        return false;
    });
    return found;
}

// Constant lower bound b on the rank covered at every vertex, solved on the
// truncation of M to rank b. The packing refers to the truncated instance.
inline RootedDigraph truncated_instance(const RootedDigraph& d, int b) {
    if (b < 0) throw DomainError("bound must be non-negative");
    if (b > d.matroid().rank())
        throw InfeasibleBound("bound " + std::to_string(b) + " exceeds the matroid rank " +
                              std::to_string(d.matroid().rank()));
    return d.with_roots(d.placement(), d.matroid().truncate(b));
}

inline PackingOutcome pack_with_bound(const RootedDigraph& d, int b, const PackingOptions& options = {}) {
    return find_packing(truncated_instance(d, b), options);
}

}  // namespace arbpack
