#pragma once

// Rooted digraph and graph instances plus the counting and reachability
// primitives everything else is built from.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "arbpack/bitset.hpp"
#include "arbpack/error.hpp"
#include "arbpack/matroid.hpp"

namespace arbpack {

struct Directed {};
struct Undirected {};

// An arc tail -> head, or an undirected edge with endpoints {tail, head}.
struct Link {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;

    friend bool operator==(const Link&, const Link&) = default;
};

// A (di)graph with roots: vertices, identified links (parallels allowed), and a
// placement of the matroid's ground elements at vertices. Element i of the
// matroid sits at vertex placement()[i]; the ground set is exactly the set of
// root elements.
template <class Orientation>
class RootedInstance {
public:
    static constexpr bool directed = std::is_same_v<Orientation, Directed>;

    RootedInstance() = default;

    RootedInstance(std::vector<std::string> vertices, std::vector<Link> links, std::vector<std::size_t> placement,
                   Matroid matroid)
        : vertices_(std::move(vertices)),
          links_(std::move(links)),
          placement_(std::move(placement)),
          matroid_(std::move(matroid)) {
        if (vertices_.size() > kMaxVertices)
            throw SizeLimitError("instances are limited to " + std::to_string(kMaxVertices) + " vertices");
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!vertex_index_.emplace(vertices_[i], i).second) throw DomainError("duplicate vertex id " + vertices_[i]);
        }
        for (std::size_t i = 0; i < links_.size(); ++i) {
            const auto& l = links_[i];
            if (!link_index_.emplace(l.id, i).second) throw DomainError("duplicate link id " + l.id);
            if (l.tail >= vertices_.size() || l.head >= vertices_.size())
                throw DomainError("link " + l.id + " has an undeclared endpoint");
            if (l.tail == l.head) throw DomainError("link " + l.id + " is a self-loop");
        }
        if (placement_.size() != matroid_.size())
            throw DomainError("placement must assign exactly the matroid's ground elements");
        elements_at_.assign(vertices_.size(), ElementSet{});
        for (std::size_t e = 0; e < placement_.size(); ++e) {
            if (placement_[e] >= vertices_.size()) throw DomainError("root " + matroid_.name(e) + " placed at unknown vertex");
            elements_at_[placement_[e]].insert(e);
        }
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_links() const { return links_.size(); }
    std::size_t num_elements() const { return placement_.size(); }
    VertexMask all_vertices() const { return full_mask(vertices_.size()); }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
    const std::vector<Link>& links() const { return links_; }
    const Link& link(std::size_t i) const { return links_.at(i); }
    const std::vector<std::size_t>& placement() const { return placement_; }
    const Matroid& matroid() const { return matroid_; }

    std::optional<std::size_t> vertex_index(const std::string& name) const {
        if (auto it = vertex_index_.find(name); it != vertex_index_.end()) return it->second;
        return std::nullopt;
    }

    std::optional<std::size_t> link_index(const std::string& id) const {
        if (auto it = link_index_.find(id); it != link_index_.end()) return it->second;
        return std::nullopt;
    }

    // S_v
    const ElementSet& elements_at(std::size_t v) const { return elements_at_.at(v); }

    // S_X = placement^{-1}(X)
    ElementSet elements_in(VertexMask x) const {
        ElementSet out;
        for (auto v : members(x)) out |= elements_at_[v];
        return out;
    }

    int rank_in(VertexMask x) const { return matroid_.rank(elements_in(x)); }

    // Same vertices and roots, links replaced.
    RootedInstance with_links(std::vector<Link> links) const {
        return RootedInstance(vertices_, std::move(links), placement_, matroid_);
    }

    RootedInstance without_link(std::size_t i) const {
        auto links = links_;
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(i));
        return with_links(std::move(links));
    }

    RootedInstance with_roots(std::vector<std::size_t> placement, Matroid matroid) const {
        return RootedInstance(vertices_, links_, std::move(placement), std::move(matroid));
    }

    friend bool operator==(const RootedInstance& a, const RootedInstance& b) {
        return a.vertices_ == b.vertices_ && a.links_ == b.links_ && a.placement_ == b.placement_ &&
               a.matroid_.names() == b.matroid_.names() && a.matroid_.kind() == b.matroid_.kind();
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Link> links_;
    std::vector<std::size_t> placement_;
    Matroid matroid_;
    std::unordered_map<std::string, std::size_t> vertex_index_;
    std::unordered_map<std::string, std::size_t> link_index_;
    std::vector<ElementSet> elements_at_;
};

using RootedDigraph = RootedInstance<Directed>;
using RootedGraph = RootedInstance<Undirected>;

inline bool enters(const Link& a, VertexMask x) { return contains(x, a.head) && !contains(x, a.tail); }

// rho_D(X): number of arcs entering X, parallels counted. Empty X is rejected.
inline int in_degree(const RootedDigraph& d, VertexMask x) {
    if (x == 0) throw DomainError("in_degree of the empty set");
    if ((x & ~d.all_vertices()) != 0) throw DomainError("in_degree: set contains unknown vertices");
    int count = 0;
    for (const auto& a : d.links()) count += enters(a, x) ? 1 : 0;
    return count;
}

// Same count with the empty set allowed (rho(empty) = 0); used inside set-function
// objectives where the empty set is a legal argument.
inline int in_degree_or_zero(const RootedDigraph& d, VertexMask x) { return x == 0 ? 0 : in_degree(d, x); }

// Vertices u of X with a u -> v path inside D[X] using only arcs accepted by
// `keep`. v is always included.
inline VertexMask reachable_within(const RootedDigraph& d, std::size_t v, VertexMask x,
                                   const std::function<bool(std::size_t)>& keep = {}) {
    if (!contains(x, v)) throw DomainError("reachable_within: target vertex outside the set");
    VertexMask seen = vertex_bit(v);
    std::vector<std::size_t> stack{v};
    while (!stack.empty()) {
        const auto w = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < d.num_links(); ++i) {
            const auto& a = d.link(i);
            if (a.head != w || !contains(x, a.tail) || contains(seen, a.tail)) continue;
            if (keep && !keep(i)) continue;
            seen |= vertex_bit(a.tail);
            stack.push_back(a.tail);
        }
    }
    return seen;
}

// True iff the arcs (indices into d.links()) form an arborescence rooted at
// `root`: root has in-degree 0, every other touched vertex in-degree 1, and all
// touched vertices are reachable from root. The empty arc set is the trivial
// arborescence on {root}.
inline bool is_arborescence(const RootedDigraph& d, std::span<const std::size_t> arcs, std::size_t root) {
    if (root >= d.num_vertices()) throw DomainError("is_arborescence: unknown root vertex");
    std::vector<int> indeg(d.num_vertices(), 0);
    VertexMask touched = vertex_bit(root);
    for (auto i : arcs) {
        if (i >= d.num_links()) throw DomainError("is_arborescence: unknown arc");
        const auto& a = d.link(i);
        ++indeg[a.head];
        touched |= vertex_bit(a.tail) | vertex_bit(a.head);
    }
    if (indeg[root] != 0) return false;
    for (auto v : members(touched))
        if (v != root && indeg[v] != 1) return false;
    VertexMask reached = vertex_bit(root);
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto i : arcs) {
            const auto& a = d.link(i);
            if (contains(reached, a.tail) && !contains(reached, a.head)) {
                reached |= vertex_bit(a.head);
                grew = true;
            }
        }
    }
    return reached == touched;
}

inline bool is_arborescence(const RootedDigraph& d, const std::vector<std::string>& arc_ids, std::size_t root) {
    std::vector<std::size_t> arcs;
    for (const auto& id : arc_ids) {
        auto i = d.link_index(id);
        if (!i) throw DomainError("is_arborescence: unknown arc id " + id);
        arcs.push_back(*i);
    }
    return is_arborescence(d, std::span<const std::size_t>(arcs), root);
}

// True iff the edges form a tree (connected, acyclic) containing `root`.
inline bool is_rooted_tree(const RootedGraph& g, std::span<const std::size_t> edges, std::size_t root) {
    if (root >= g.num_vertices()) throw DomainError("is_rooted_tree: unknown root vertex");
    VertexMask touched = vertex_bit(root);
    for (auto i : edges) {
        if (i >= g.num_links()) throw DomainError("is_rooted_tree: unknown edge");
        touched |= vertex_bit(g.link(i).tail) | vertex_bit(g.link(i).head);
    }
    if (static_cast<std::size_t>(popcount(touched)) != edges.size() + 1) return false;
    VertexMask reached = vertex_bit(root);
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto i : edges) {
            const auto& e = g.link(i);
            const bool t = contains(reached, e.tail), h = contains(reached, e.head);
            if (t != h) {
                reached |= vertex_bit(e.tail) | vertex_bit(e.head);
                grew = true;
            }
        }
    }
    return reached == touched;
}

// A partition of the vertex set into nonempty blocks.
class Partition {
public:
    Partition(std::size_t num_vertices, std::vector<VertexMask> blocks) : blocks_(std::move(blocks)) {
        VertexMask seen = 0;
        for (auto b : blocks_) {
            if (b == 0) throw DomainError("partition blocks must be nonempty");
            if ((b & seen) != 0) throw DomainError("partition blocks must be disjoint");
            seen |= b;
        }
        if (seen != full_mask(num_vertices)) throw DomainError("partition blocks must cover every vertex");
    }

    const std::vector<VertexMask>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<VertexMask> blocks_;
};

// e_G(P): edges whose endpoints lie in different blocks, parallels counted.
inline int cross_edges(const RootedGraph& g, const Partition& p) {
    std::vector<std::size_t> block_of(g.num_vertices(), p.size());
    for (std::size_t b = 0; b < p.size(); ++b)
        for (auto v : members(p.blocks()[b])) {
            if (v >= g.num_vertices()) throw DomainError("partition contains unknown vertices");
            block_of[v] = b;
        }
    if (std::find(block_of.begin(), block_of.end(), p.size()) != block_of.end())
        throw DomainError("partition does not cover the vertex set");
    int count = 0;
    for (const auto& e : g.links()) count += block_of[e.tail] != block_of[e.head] ? 1 : 0;
    return count;
}

inline constexpr std::size_t kDefaultMaxPartitionVertices = 12;

// Visits every partition of {0..n-1} in restricted-growth-string order
// (lexicographic on the label sequence). The visitor receives the block masks
// and may return false to stop early.
template <class Visitor>
void for_each_partition(std::size_t n, Visitor&& visit, std::size_t cap = kDefaultMaxPartitionVertices) {
    if (n > cap) throw SizeLimitError("partition enumeration limited to " + std::to_string(cap) + " vertices");
    if (n == 0) {
        visit(std::vector<VertexMask>{});
        return;
    }
    std::vector<std::size_t> label(n, 0), prefix_max(n, 0);
    std::vector<VertexMask> blocks;
    while (true) {
        blocks.assign(prefix_max[n - 1] + 1, 0);
        for (std::size_t i = 0; i < n; ++i) blocks[label[i]] |= vertex_bit(i);
        if (!visit(blocks)) return;
        // Advance to the next restricted growth string.
        std::size_t i = n - 1;
        while (i > 0 && label[i] == prefix_max[i - 1] + 1) --i;
        if (i == 0) return;
        ++label[i];
        prefix_max[i] = std::max(prefix_max[i - 1], label[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            label[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

}  // namespace arbpack
