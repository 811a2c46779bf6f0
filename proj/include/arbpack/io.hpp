#pragma once

// JSON instance files, packings, certificates and orientations.
//
// Instance file (keys outside this list are rejected):
//   {
//     "version":  "arbpack/1",
//     "vertices": ["a", "b", ...],
//     "arcs":     [{"id": "a1", "tail": "a", "head": "b"}, ...]   // directed, or
//     "edges":    [{"id": "e1", "ends": ["a", "b"]}, ...]         // undirected
//     "roots":    [{"element": "s1", "vertex": "a"}, ...],
//     "matroid":  {"type": "free" | "uniform" | "partition" | "graphic" | "linear" | "explicit", ...},
//     "costs":    {"a1": 3, "a2": "5/2"},                         // optional
//     "bound":    1                                                // optional
//   }
//
// The ground set of the matroid is the list of root elements, in file order.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "arbpack/connectivity.hpp"
#include "arbpack/error.hpp"
#include "arbpack/graph.hpp"
#include "arbpack/matroid.hpp"
#include "arbpack/orientation.hpp"
#include "arbpack/packing.hpp"
#include "arbpack/polytope.hpp"
#include "arbpack/rational.hpp"

namespace arbpack {

using json = nlohmann::json;

inline constexpr const char* kInstanceVersion = "arbpack/1";

struct InstanceFile {
    std::variant<RootedDigraph, RootedGraph> instance;
    std::map<std::string, Rational> costs;
    std::optional<int> bound;

    bool directed() const { return std::holds_alternative<RootedDigraph>(instance); }
};

namespace detail {

inline void require_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError(path, "unknown field '" + it.key() + "'");
    }
}

inline const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path, std::string("missing field '") + key + "'");
    return *it;
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

inline long long as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<long long>();
}

inline const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    return j;
}

// Reference-graph endpoints may be written as strings or integers.
inline std::string as_label(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError(path, "expected a vertex label (string or integer)");
}

inline Matroid parse_matroid(const json& j, const std::vector<std::string>& names) {
    const std::string path = "matroid";
    if (!j.is_object()) throw ParseError(path, "expected an object");
    const auto type = as_string(field(j, path, "type"), path + ".type");
    auto element = [&](const json& e, const std::string& p) {
        const auto name = as_string(e, p);
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw ParseError(p, "unknown root element '" + name + "'");
    };
    try {
        if (type == "free") {
            require_keys(j, path, {"type"});
            return Matroid::free(names);
        }
        if (type == "uniform") {
            require_keys(j, path, {"type", "rank"});
            return Matroid::uniform(names, static_cast<int>(as_integer(field(j, path, "rank"), path + ".rank")));
        }
        if (type == "partition") {
            require_keys(j, path, {"type", "blocks"});
            std::vector<PartitionBlock> blocks;
            const auto& arr = as_array(field(j, path, "blocks"), path + ".blocks");
            for (std::size_t b = 0; b < arr.size(); ++b) {
                const auto bp = path + ".blocks[" + std::to_string(b) + "]";
                require_keys(arr[b], bp, {"elements", "cap"});
                PartitionBlock block;
                block.cap = static_cast<int>(as_integer(field(arr[b], bp, "cap"), bp + ".cap"));
                const auto& els = as_array(field(arr[b], bp, "elements"), bp + ".elements");
                for (std::size_t i = 0; i < els.size(); ++i)
                    block.elements.push_back(element(els[i], bp + ".elements[" + std::to_string(i) + "]"));
                blocks.push_back(std::move(block));
            }
            return Matroid::partition(names, blocks);
        }
        if (type == "graphic") {
            require_keys(j, path, {"type", "edges"});
            const auto& edges = field(j, path, "edges");
            std::vector<std::pair<std::string, std::string>> ends(names.size());
            std::vector<bool> given(names.size(), false);
            auto endpoints = [&](const json& e, const std::string& p) {
                if (!e.is_array() || e.size() != 2) throw ParseError(p, "expected a pair of endpoints");
                return std::pair{as_label(e[0], p + "[0]"), as_label(e[1], p + "[1]")};
            };
            if (edges.is_array()) {
                if (edges.size() != names.size())
                    throw ParseError(path + ".edges", "needs one edge per root element, in root order");
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    ends[i] = endpoints(edges[i], path + ".edges[" + std::to_string(i) + "]");
                    given[i] = true;
                }
            } else if (edges.is_object()) {
                for (auto it = edges.begin(); it != edges.end(); ++it) {
                    const auto p = path + ".edges." + it.key();
                    const auto i = element(json(it.key()), p);
                    ends[i] = endpoints(it.value(), p);
                    given[i] = true;
                }
            } else {
                throw ParseError(path + ".edges", "expected an array or an object");
            }
            for (std::size_t i = 0; i < names.size(); ++i)
                if (!given[i]) throw ParseError(path + ".edges", "no edge for element '" + names[i] + "'");
            return Matroid::graphic(names, ends);
        }
        if (type == "linear") {
            require_keys(j, path, {"type", "prime", "columns"});
            const auto prime = as_integer(field(j, path, "prime"), path + ".prime");
            const auto& cols = field(j, path, "columns");
            if (!cols.is_object()) throw ParseError(path + ".columns", "expected an object keyed by element");
            std::vector<std::vector<std::int64_t>> columns(names.size());
            std::vector<bool> given(names.size(), false);
            for (auto it = cols.begin(); it != cols.end(); ++it) {
                const auto p = path + ".columns." + it.key();
                const auto i = element(json(it.key()), p);
                for (std::size_t r = 0; r < as_array(it.value(), p).size(); ++r)
                    columns[i].push_back(as_integer(it.value()[r], p + "[" + std::to_string(r) + "]"));
                given[i] = true;
            }
            for (std::size_t i = 0; i < names.size(); ++i)
                if (!given[i]) throw ParseError(path + ".columns", "no column for element '" + names[i] + "'");
            return Matroid::linear(names, prime, columns);
        }
        if (type == "explicit") {
            require_keys(j, path, {"type", "bases", "validate_exchange"});
            std::vector<ElementSet> bases;
            const auto& arr = as_array(field(j, path, "bases"), path + ".bases");
            for (std::size_t b = 0; b < arr.size(); ++b) {
                const auto bp = path + ".bases[" + std::to_string(b) + "]";
                ElementSet base;
                for (std::size_t i = 0; i < as_array(arr[b], bp).size(); ++i)
                    base.insert(element(arr[b][i], bp + "[" + std::to_string(i) + "]"));
                bases.push_back(std::move(base));
            }
            bool validate = false;
            if (auto it = j.find("validate_exchange"); it != j.end()) {
                if (!it->is_boolean()) throw ParseError(path + ".validate_exchange", "expected a boolean");
                validate = it->get<bool>();
            }
            return Matroid::explicit_bases(names, bases, validate);
        }
    } catch (const DomainError& e) {
        throw ParseError(path, e.what());
    }
    throw ParseError(path + ".type", "unknown matroid type '" + type + "'");
}

inline json matroid_json(const Matroid& m) {
    if (!m.derivations().empty()) throw DomainError("derived matroids cannot be written to an instance file");
    json j;
    j["type"] = to_string(m.kind());
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, detail::UniformData>) {
                j["rank"] = d.rank;
            } else if constexpr (std::is_same_v<T, detail::PartitionData>) {
                json blocks = json::array();
                for (std::size_t b = 0; b < d.caps.size(); ++b) {
                    json els = json::array();
                    for (std::size_t e = 0; e < d.block_of.size(); ++e)
                        if (d.block_of[e] == b) els.push_back(m.name(e));
                    blocks.push_back({{"cap", d.caps[b]}, {"elements", els}});
                }
                j["blocks"] = blocks;
            } else if constexpr (std::is_same_v<T, detail::GraphicData>) {
                json edges = json::array();
                for (const auto& [u, v] : d.edges) edges.push_back({d.vertex_labels[u], d.vertex_labels[v]});
                j["edges"] = edges;
            } else if constexpr (std::is_same_v<T, detail::LinearData>) {
                j["prime"] = d.prime;
                json cols = json::object();
                for (std::size_t e = 0; e < d.columns.size(); ++e) cols[m.name(e)] = d.columns[e];
                j["columns"] = cols;
            } else if constexpr (std::is_same_v<T, detail::ExplicitData>) {
                json bases = json::array();
                for (const auto& b : d.bases) {
                    json names = json::array();
                    for (auto e : b.indices()) names.push_back(m.name(e));
                    bases.push_back(names);
                }
                j["bases"] = bases;
                if (d.validated_exchange) j["validate_exchange"] = true;
            }
        },
        m.base_data());
    return j;
}

}  // namespace detail

inline InstanceFile parse_instance(const json& j) {
    using namespace detail;
    require_keys(j, "", {"version", "vertices", "arcs", "edges", "roots", "matroid", "costs", "bound"});
    if (as_string(field(j, "", "version"), "version") != kInstanceVersion)
        throw ParseError("version", std::string("unsupported version, expected '") + kInstanceVersion + "'");

    std::vector<std::string> vertices;
    std::map<std::string, std::size_t> vindex;
    const auto& vs = as_array(field(j, "", "vertices"), "vertices");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto p = "vertices[" + std::to_string(i) + "]";
        auto name = as_string(vs[i], p);
        if (!vindex.emplace(name, i).second) throw ParseError(p, "duplicate vertex id '" + name + "'");
        vertices.push_back(std::move(name));
    }
    auto vertex = [&](const json& v, const std::string& p) {
        const auto name = as_string(v, p);
        auto it = vindex.find(name);
        if (it == vindex.end()) throw ParseError(p, "unknown vertex '" + name + "'");
        return it->second;
    };

    const bool has_arcs = j.contains("arcs"), has_edges = j.contains("edges");
    if (has_arcs == has_edges) throw ParseError("", "exactly one of 'arcs' and 'edges' must be present");

    std::vector<Link> links;
    std::map<std::string, std::size_t> lindex;
    const char* key = has_arcs ? "arcs" : "edges";
    const auto& ls = as_array(j.at(key), key);
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const auto p = std::string(key) + "[" + std::to_string(i) + "]";
        Link l;
        if (has_arcs) {
            require_keys(ls[i], p, {"id", "tail", "head"});
            l.tail = vertex(field(ls[i], p, "tail"), p + ".tail");
            l.head = vertex(field(ls[i], p, "head"), p + ".head");
        } else {
            require_keys(ls[i], p, {"id", "ends"});
            const auto& ends = field(ls[i], p, "ends");
            if (!ends.is_array() || ends.size() != 2) throw ParseError(p + ".ends", "expected two endpoints");
            l.tail = vertex(ends[0], p + ".ends[0]");
            l.head = vertex(ends[1], p + ".ends[1]");
        }
        l.id = as_string(field(ls[i], p, "id"), p + ".id");
        if (!lindex.emplace(l.id, i).second) throw ParseError(p + ".id", "duplicate id '" + l.id + "'");
        if (l.tail == l.head) throw ParseError(p, "self-loop '" + l.id + "'");
        links.push_back(std::move(l));
    }

    std::vector<std::string> elements;
    std::vector<std::size_t> placement;
    const auto& rs = as_array(field(j, "", "roots"), "roots");
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto p = "roots[" + std::to_string(i) + "]";
        require_keys(rs[i], p, {"element", "vertex"});
        auto name = as_string(field(rs[i], p, "element"), p + ".element");
        if (std::find(elements.begin(), elements.end(), name) != elements.end())
            throw ParseError(p + ".element", "duplicate root element '" + name + "'");
        elements.push_back(std::move(name));
        placement.push_back(vertex(field(rs[i], p, "vertex"), p + ".vertex"));
    }

    Matroid m = parse_matroid(field(j, "", "matroid"), elements);

    InstanceFile file;
    try {
        if (has_arcs) {
            file.instance = RootedDigraph(vertices, std::move(links), std::move(placement), std::move(m));
        } else {
            file.instance = RootedGraph(vertices, std::move(links), std::move(placement), std::move(m));
        }
    } catch (const DomainError& e) {
        throw ParseError("", e.what());
    }

    if (auto it = j.find("costs"); it != j.end()) {
        if (!it->is_object()) throw ParseError("costs", "expected an object keyed by link id");
        for (auto c = it->begin(); c != it->end(); ++c) {
            const auto p = "costs." + c.key();
            if (!lindex.count(c.key())) throw ParseError(p, "unknown link id");
            try {
                if (c.value().is_number_integer()) {
                    file.costs[c.key()] = to_rational(c.value().get<long long>());
                } else if (c.value().is_string()) {
                    file.costs[c.key()] = parse_rational(c.value().get<std::string>());
                } else {
                    throw ParseError(p, "expected an integer or a rational string");
                }
            } catch (const DomainError& e) {
                throw ParseError(p, e.what());
            }
        }
    }
    if (auto it = j.find("bound"); it != j.end()) {
        const auto b = detail::as_integer(*it, "bound");
        if (b < 0) throw ParseError("bound", "must be non-negative");
        file.bound = static_cast<int>(b);
    }
    return file;
}

inline InstanceFile parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_instance(j);
}

template <class O>
json instance_json(const RootedInstance<O>& inst, const std::map<std::string, Rational>& costs = {},
                   std::optional<int> bound = std::nullopt) {
    json j;
    j["version"] = kInstanceVersion;
    j["vertices"] = inst.vertices();
    json links = json::array();
    for (const auto& l : inst.links()) {
        if constexpr (RootedInstance<O>::directed) {
            links.push_back({{"id", l.id}, {"tail", inst.vertex_name(l.tail)}, {"head", inst.vertex_name(l.head)}});
        } else {
            links.push_back({{"id", l.id}, {"ends", {inst.vertex_name(l.tail), inst.vertex_name(l.head)}}});
        }
    }
    j[RootedInstance<O>::directed ? "arcs" : "edges"] = links;
    json roots = json::array();
    for (std::size_t e = 0; e < inst.num_elements(); ++e)
        roots.push_back({{"element", inst.matroid().name(e)}, {"vertex", inst.vertex_name(inst.placement()[e])}});
    j["roots"] = roots;
    j["matroid"] = detail::matroid_json(inst.matroid());
    if (!costs.empty()) {
        json c = json::object();
        for (const auto& [id, q] : costs) {
            if (is_integer(q) && q.get_num().fits_slong_p()) {
                c[id] = q.get_num().get_si();
            } else {
                c[id] = to_string(q);
            }
        }
        j["costs"] = c;
    }
    if (bound) j["bound"] = *bound;
    return j;
}

inline json instance_json(const InstanceFile& f) {
    return std::visit([&](const auto& inst) { return instance_json(inst, f.costs, f.bound); }, f.instance);
}

// Arc-indexed costs; links without an entry cost 0.
template <class O>
RationalVector cost_vector(const RootedInstance<O>& inst, const std::map<std::string, Rational>& costs) {
    RationalVector c(inst.num_links(), 0);
    for (const auto& [id, q] : costs) {
        auto i = inst.link_index(id);
        if (!i) throw DomainError("cost for unknown link " + id);
        c[*i] = q;
    }
    return c;
}

template <class O>
json certificate_json(const RootedInstance<O>& inst, const Certificate& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["deficiency"] = c.deficiency;
    auto names = [&](VertexMask m) {
        json arr = json::array();
        for (auto v : members(m)) arr.push_back(inst.vertex_name(v));
        return arr;
    };
    switch (c.kind) {
        case Certificate::Kind::ok: j["witness"] = nullptr; break;
        case Certificate::Kind::dependent_vertex: j["witness"] = inst.vertex_name(c.vertex); break;
        case Certificate::Kind::violated_set: j["witness"] = names(c.set); break;
        case Certificate::Kind::violated_partition: {
            json blocks = json::array();
            for (auto b : c.partition) blocks.push_back(names(b));
            j["witness"] = blocks;
            break;
        }
    }
    return j;
}

template <class O>
json packing_json(const RootedInstance<O>& inst, const Packing& p) {
    json trees = json::array();
    for (const auto& t : p.trees) {
        trees.push_back({{"root_element", inst.matroid().name(t.element)},
                         {"root_vertex", inst.vertex_name(t.root)},
                         {RootedInstance<O>::directed ? "arcs" : "edges", t.links}});
    }
    return {{"trees", trees}};
}

// Accepts a bare packing or a result file whose payload is one.
template <class O>
Packing parse_packing(const RootedInstance<O>& inst, const json& j) {
    using namespace detail;
    const json* body = &j;
    if (j.is_object() && j.contains("payload")) {
        if (j.value("status", "") != "packing") throw ParseError("status", "result file does not hold a packing");
        body = &j.at("payload");
    }
    require_keys(*body, "", {"trees"});
    const char* key = RootedInstance<O>::directed ? "arcs" : "edges";
    Packing p;
    const auto& trees = as_array(field(*body, "", "trees"), "trees");
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const auto path = "trees[" + std::to_string(i) + "]";
        require_keys(trees[i], path, {"root_element", "root_vertex", key});
        Tree t;
        const auto element = as_string(field(trees[i], path, "root_element"), path + ".root_element");
        auto e = inst.matroid().find(element);
        if (!e) throw ParseError(path + ".root_element", "unknown root element '" + element + "'");
        t.element = *e;
        const auto vertex = as_string(field(trees[i], path, "root_vertex"), path + ".root_vertex");
        auto v = inst.vertex_index(vertex);
        if (!v) throw ParseError(path + ".root_vertex", "unknown vertex '" + vertex + "'");
        t.root = *v;
        t.vertices = vertex_bit(t.root);
        const auto& ls = as_array(field(trees[i], path, key), path + "." + key);
        for (std::size_t k = 0; k < ls.size(); ++k) {
            auto id = as_string(ls[k], path + "." + key + "[" + std::to_string(k) + "]");
            if (auto li = inst.link_index(id)) t.vertices |= vertex_bit(inst.link(*li).tail) | vertex_bit(inst.link(*li).head);
            t.links.push_back(std::move(id));
        }
        p.trees.push_back(std::move(t));
    }
    return p;
}

inline json orientation_json(const RootedGraph& g, const Orientation& o) {
    json edges = json::object();
    for (std::size_t i = 0; i < g.num_links(); ++i) {
        const auto& e = g.link(i);
        const auto tail = o.reversed[i] ? e.head : e.tail;
        const auto head = o.reversed[i] ? e.tail : e.head;
        edges[e.id] = {g.vertex_name(tail), g.vertex_name(head)};
    }
    return {{"edges", edges}};
}

template <class O>
json verify_json(const RootedInstance<O>& inst, const VerifyResult& v) {
    json j{{"reason", to_string(v.reason)}};
    switch (v.reason) {
        case VerifyResult::Reason::ok: break;
        case VerifyResult::Reason::not_a_base: j["vertex"] = inst.vertex_name(v.vertex); break;
        case VerifyResult::Reason::unknown_link:
        case VerifyResult::Reason::duplicate_link:
            j["tree"] = v.tree;
            j["arc"] = v.link;
            break;
        case VerifyResult::Reason::missing_tree: j["element"] = inst.matroid().name(v.tree); break;
        default: j["tree"] = v.tree; break;
    }
    return j;
}

}  // namespace arbpack
