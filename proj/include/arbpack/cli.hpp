#pragma once

// Command dispatch for the `arbpack` tool. Kept in a header so tests can drive
// it without spawning processes.
//
// Every command except `gen` prints one result document:
//   {"status": ..., "payload": ..., "provenance": {...}}
// and exits with a code determined by the status alone:
//   0  ok, packing, orientation
//   2  certificate, failure      (a certified negative answer)
//   1  error                     (usage, parse, size limits)

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arbpack/connectivity.hpp"
#include "arbpack/generator.hpp"
#include "arbpack/io.hpp"
#include "arbpack/orientation.hpp"
#include "arbpack/packing.hpp"
#include "arbpack/polytope.hpp"

namespace arbpack::cli {

inline int exit_code(const std::string& status) {
    if (status == "ok" || status == "packing" || status == "orientation") return 0;
    if (status == "certificate" || status == "failure") return 2;
    return 1;
}

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path);
    if (!f) throw ParseError(path, "cannot open file");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct Settings {
    std::string engine = "auto";
    std::size_t max_sfm_ground = kDefaultMaxBruteGround;
    std::size_t max_partitions = kDefaultMaxPartitionVertices;
    std::size_t max_orientations = kDefaultMaxOrientationExponent;
    bool trace = false;
    bool lp_trace = false;

    SfmOptions sfm() const {
        SfmOptions o;
        if (engine == "brute") o.engine = SfmEngine::brute;
        else if (engine == "mnp" || engine == "min-norm-point") o.engine = SfmEngine::min_norm_point;
        else if (engine == "auto") o.engine = SfmEngine::automatic;
        else throw DomainError("unknown engine '" + engine + "'");
        o.max_brute_ground = max_sfm_ground;
        return o;
    }

    OrientationOptions orientation() const {
        OrientationOptions o;
        o.sfm = sfm();
        o.max_partition_vertices = max_partitions;
        o.max_orientation_exponent = max_orientations;
        return o;
    }
};

template <class O>
json outcome_payload(const RootedInstance<O>& inst, const PackingOutcome& outcome, std::string& status) {
    if (const auto* p = std::get_if<Packing>(&outcome)) {
        status = "packing";
        return packing_json(inst, *p);
    }
    status = "certificate";
    return certificate_json(inst, std::get<Certificate>(outcome));
}

inline const RootedDigraph& directed(const InstanceFile& f, const std::string& cmd) {
    if (!f.directed()) throw DomainError(cmd + " needs a directed instance (\"arcs\")");
    return std::get<RootedDigraph>(f.instance);
}

inline const RootedGraph& undirected(const InstanceFile& f, const std::string& cmd) {
    if (f.directed()) throw DomainError(cmd + " needs an undirected instance (\"edges\")");
    return std::get<RootedGraph>(f.instance);
}

}  // namespace detail

// argv[0] is the program name.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err,
                       std::istream& in = std::cin) {
    CLI::App app{"Matroid-based packings of arborescences and rooted trees", "arbpack"};
    app.require_subcommand(1);
    detail::Settings settings;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--engine", settings.engine, "SFM engine: auto, brute, mnp")->capture_default_str();
        sub->add_option("--max-sfm-ground", settings.max_sfm_ground, "Largest ground set for the brute SFM engine")
            ->capture_default_str();
        sub->add_option("--max-partitions", settings.max_partitions, "Largest vertex count for partition enumeration")
            ->capture_default_str();
        sub->add_option("--max-orientations", settings.max_orientations,
                        "Exponent cap for exhaustive orientation search")
            ->capture_default_str();
        sub->add_flag("--trace", settings.trace, "Print reduction steps to stderr");
    };

    std::string instance_path, packing_path;
    int bound = -1;
    std::uint64_t seed = 1;
    GenParams gen;
    std::string gen_kind = "free";

    const std::vector<std::pair<std::string, std::string>> instance_commands = {
        {"check", "Check the feasibility conditions"},
        {"pack", "Construct a packing of arborescences"},
        {"pack-undirected", "Construct a packing of rooted trees"},
        {"orient", "Find an M-connected orientation"},
        {"decompose", "Decompose the edge set into a packing of rooted trees"},
        {"mincost", "Construct a minimum-cost packing of arborescences"},
        {"pack-bounded", "Packing covering rank >= b at every vertex (matroid truncated to b)"},
    };
    for (const auto& [name, help] : instance_commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("instance", instance_path, "Instance file, '-' for stdin")->required();
        add_common(sub);
        if (name == "mincost") sub->add_flag("--lp-trace", settings.lp_trace, "Print cutting-plane rounds to stderr");
        if (name == "pack-bounded") sub->add_option("--bound,-b", bound, "Rank bound (defaults to the file's \"bound\")");
    }
    auto* verify = app.add_subcommand("verify", "Verify a packing against an instance");
    verify->add_option("instance", instance_path, "Instance file")->required();
    verify->add_option("packing", packing_path, "Packing or result file")->required();
    add_common(verify);

    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
    gen_cmd->add_option("--seed", seed, "PRNG seed (mt19937_64)")->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Vertices")->capture_default_str();
    gen_cmd->add_option("--m", gen.m, "Arcs or edges")->capture_default_str();
    gen_cmd->add_option("--t", gen.t, "Root elements")->capture_default_str();
    gen_cmd->add_option("--kind", gen_kind, "free, uniform, partition, graphic, linear, explicit")
        ->capture_default_str();
    gen_cmd->add_option("--rank", gen.rank, "Rank for uniform/linear/explicit (default max(1, t-1))");
    gen_cmd->add_flag("--feasible", gen.feasible, "Plant a packing so the instance is feasible");
    gen_cmd->add_flag("--undirected", gen.undirected, "Emit edges instead of arcs");

    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();

    json provenance{{"command", cmd}};
    std::string status = "error";
    json payload;
    try {
        if (cmd == "gen") {
            gen.kind = parse_matroid_kind(gen_kind);
            out << instance_json(generate_instance(seed, gen)).dump(2) << "\n";
            return 0;
        }
        const auto sfm = settings.sfm();
        provenance["engine"] = to_string(sfm.engine);
        std::ostream* trace = settings.trace ? &err : nullptr;
        const auto file = parse_instance(detail::read_source(instance_path, in));

        if (cmd == "check") {
            Certificate c = std::visit([](const auto& inst) { return check_independent_placement(inst); }, file.instance);
            if (c.ok()) {
                if (file.directed()) {
                    c = check_m_connected(std::get<RootedDigraph>(file.instance), sfm);
                } else {
                    c = check_partition_connected(std::get<RootedGraph>(file.instance), settings.max_partitions);
                }
            }
            status = c.ok() ? "ok" : "certificate";
            if (!c.ok())
                payload = std::visit([&](const auto& inst) { return certificate_json(inst, c); }, file.instance);
        } else if (cmd == "pack") {
            const auto& d = detail::directed(file, cmd);
            payload = detail::outcome_payload(d, find_packing(d, {sfm, trace}), status);
        } else if (cmd == "pack-undirected") {
            const auto& g = detail::undirected(file, cmd);
            payload = detail::outcome_payload(g, pack_undirected(g, settings.orientation(), trace), status);
        } else if (cmd == "orient") {
            const auto& g = detail::undirected(file, cmd);
            const auto outcome = orient_m_connected(g, settings.orientation());
            if (const auto* o = std::get_if<Orientation>(&outcome)) {
                status = "orientation";
                payload = orientation_json(g, *o);
                provenance["orientation_fallback"] = o->used_fallback;
                provenance["path_reversals"] = o->path_reversals;
            } else {
                status = "certificate";
                payload = certificate_json(g, std::get<Certificate>(outcome));
            }
        } else if (cmd == "decompose") {
            const auto& g = detail::undirected(file, cmd);
            payload = detail::outcome_payload(g, decompose_edges(g, settings.orientation()), status);
        } else if (cmd == "mincost") {
            const auto& d = detail::directed(file, cmd);
            MinCostOptions opts{sfm, settings.lp_trace ? &err : nullptr, trace};
            const auto outcome = min_cost_packing(d, cost_vector(d, file.costs), opts);
            if (const auto* r = std::get_if<MinCostResult>(&outcome)) {
                status = "packing";
                payload = packing_json(d, r->packing);
                payload["cost"] = is_integer(r->cost) && r->cost.get_num().fits_slong_p()
                                      ? json(r->cost.get_num().get_si())
                                      : json(to_string(r->cost));
                provenance["lp_rounds"] = r->rounds;
                provenance["cuts"] = r->cuts;
            } else {
                status = "certificate";
                payload = certificate_json(d, std::get<Certificate>(outcome));
            }
        } else if (cmd == "pack-bounded") {
            const auto& d = detail::directed(file, cmd);
            if (bound < 0) {
                if (!file.bound) throw DomainError("pack-bounded needs --bound or a \"bound\" field");
                bound = *file.bound;
            }
            provenance["bound"] = bound;
            const auto truncated = truncated_instance(d, bound);
            payload = detail::outcome_payload(truncated, find_packing(truncated, {sfm, trace}), status);
        } else if (cmd == "verify") {
            const auto text = detail::read_source(packing_path, in);
            json pj;
            try {
                pj = json::parse(text);
            } catch (const json::parse_error& e) {
                throw ParseError(packing_path, std::string("invalid JSON: ") + e.what());
            }
            const auto v = std::visit(
                [&](const auto& inst) {
                    const auto p = parse_packing(inst, pj);
                    VerifyResult r;
                    if constexpr (std::decay_t<decltype(inst)>::directed) {
                        r = verify_packing(inst, p);
                    } else {
                        r = verify_tree_packing(inst, p);
                    }
                    return std::pair{r, verify_json(inst, r)};
                },
                file.instance);
            status = v.first.ok() ? "ok" : "failure";
            if (!v.first.ok()) payload = v.second;
        }
    } catch (const Error& e) {
        status = "error";
        payload = {{"message", e.what()}};
    } catch (const std::exception& e) {
        status = "error";
        payload = {{"message", std::string("internal: ") + e.what()}};
    }

    json result{{"status", status}, {"provenance", provenance}};
    result["payload"] = payload;
    out << result.dump(2) << "\n";
    if (status == "error") err << "arbpack " << cmd << ": " << payload["message"].get<std::string>() << "\n";
    return exit_code(status);
}

}  // namespace arbpack::cli
