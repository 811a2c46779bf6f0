#pragma once

// The packing polytope of a digraph with roots:
//
//   0 <= x(a) <= 1                       for every arc a
//   x(arcs entering X) >= k - r(S_X)     for every nonempty X
//   x(A) = k|V| - |S|
//
// Separation minimizes the submodular function x(in(X)) + r(S_X) - k. The
// minimum-cost packing runs a cutting-plane loop over exact LPs; the final
// relaxation optimum is a vertex of the polytope and therefore 0/1.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "arbpack/connectivity.hpp"
#include "arbpack/lp.hpp"
#include "arbpack/packing.hpp"
#include "arbpack/rational.hpp"

namespace arbpack {

// Arc-indexed exact vector.
using RationalVector = std::vector<Rational>;

struct PolytopeConstraint {
    enum class Kind { box_lower, box_upper, cut, mass };
    Kind kind = Kind::cut;
    std::size_t arc = 0;  // box constraints
    VertexMask set = 0;   // cut
    int rhs = 0;

    friend bool operator==(const PolytopeConstraint&, const PolytopeConstraint&) = default;
};

inline const char* to_string(PolytopeConstraint::Kind k) {
    switch (k) {
        case PolytopeConstraint::Kind::box_lower: return "box-lower";
        case PolytopeConstraint::Kind::box_upper: return "box-upper";
        case PolytopeConstraint::Kind::cut: return "cut";
        case PolytopeConstraint::Kind::mass: return "mass-equality";
    }
    return "?";
}

inline int mass_rhs(const RootedDigraph& d) {
    return d.matroid().rank() * static_cast<int>(d.num_vertices()) - static_cast<int>(d.num_elements());
}

inline PolytopeConstraint cut_constraint(const RootedDigraph& d, VertexMask x) {
    if (x == 0) throw DomainError("cut constraint on the empty set");
    return {PolytopeConstraint::Kind::cut, 0, x, d.matroid().rank() - d.rank_in(x)};
}

inline Rational entering_weight(const RootedDigraph& d, const RationalVector& x, VertexMask set) {
    Rational s = 0;
    for (std::size_t i = 0; i < d.num_links(); ++i)
        if (enters(d.link(i), set)) s += x[i];
    return s;
}

// Box violations first (arc order), then the mass equality, then the cut found
// by minimizing x(in(X)) + r(S_X) - k over nonempty X.
inline std::optional<PolytopeConstraint> separate(const RootedDigraph& d, const RationalVector& x,
                                                  const SfmOptions& sfm = {}) {
    if (x.size() != d.num_links()) throw DomainError("separate: vector must be defined on every arc");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0) return PolytopeConstraint{PolytopeConstraint::Kind::box_lower, i, 0, 0};
        if (x[i] > 1) return PolytopeConstraint{PolytopeConstraint::Kind::box_upper, i, 0, 1};
    }
    Rational total = 0;
    for (const auto& v : x) total += v;
    if (total != mass_rhs(d)) return PolytopeConstraint{PolytopeConstraint::Kind::mass, 0, 0, mass_rhs(d)};
    if (d.num_vertices() == 0) return std::nullopt;
    const int k = d.matroid().rank();
    SubmodularObjective<Rational> obj{
        d.num_vertices(),
        [&](VertexMask set) -> Rational { return entering_weight(d, x, set) + Rational(d.rank_in(set) - k); },
        SetFamily::nonempty()};
    const auto r = minimize(obj, sfm);
    if (r.value < 0) return cut_constraint(d, r.minimizer);
    return std::nullopt;
}

inline LinearConstraint to_linear(const RootedDigraph& d, const PolytopeConstraint& c) {
    LinearConstraint row;
    row.coeffs.assign(d.num_links(), 0);
    row.rhs = c.rhs;
    switch (c.kind) {
        case PolytopeConstraint::Kind::box_lower:
            row.coeffs.at(c.arc) = 1;
            row.sense = LinearConstraint::Sense::ge;
            break;
        case PolytopeConstraint::Kind::box_upper:
            row.coeffs.at(c.arc) = 1;
            row.sense = LinearConstraint::Sense::le;
            break;
        case PolytopeConstraint::Kind::cut:
            for (std::size_t i = 0; i < d.num_links(); ++i)
                if (enters(d.link(i), c.set)) row.coeffs[i] = 1;
            row.sense = LinearConstraint::Sense::ge;
            break;
        case PolytopeConstraint::Kind::mass:
            std::fill(row.coeffs.begin(), row.coeffs.end(), Rational(1));
            row.sense = LinearConstraint::Sense::eq;
            break;
    }
    return row;
}

// Minimizes costs . x subject to the given polytope constraints.
inline LpResult solve_lp(const RootedDigraph& d, const RationalVector& costs,
                         const std::vector<PolytopeConstraint>& constraints) {
    LinearProgram lp{d.num_links(), costs, {}};
    for (const auto& c : constraints) lp.rows.push_back(to_linear(d, c));
    return solve_lp(lp);
}

inline std::vector<PolytopeConstraint> box_constraints(const RootedDigraph& d) {
    std::vector<PolytopeConstraint> out;
    for (std::size_t i = 0; i < d.num_links(); ++i) {
        out.push_back({PolytopeConstraint::Kind::box_lower, i, 0, 0});
        out.push_back({PolytopeConstraint::Kind::box_upper, i, 0, 1});
    }
    return out;
}

struct MinCostOptions {
    SfmOptions sfm;
    std::ostream* lp_trace = nullptr;
    std::ostream* trace = nullptr;
};

struct MinCostResult {
    Packing packing;
    Rational cost = 0;
    RationalVector x;
    std::size_t rounds = 0;
    std::size_t cuts = 0;
};

using MinCostOutcome = std::variant<MinCostResult, Certificate>;

inline MinCostOutcome min_cost_packing(const RootedDigraph& d, const RationalVector& costs,
                                       const MinCostOptions& options = {}) {
    if (costs.size() != d.num_links()) throw DomainError("min_cost_packing: one cost per arc required");
    if (auto c = check_independent_placement(d); !c.ok()) return c;
    if (auto c = check_m_connected(d, options.sfm); !c.ok()) return c;

    auto pool = box_constraints(d);
    pool.push_back({PolytopeConstraint::Kind::mass, 0, 0, mass_rhs(d)});
    const std::size_t cap = (d.num_vertices() >= 31 ? std::size_t{1} << 62 : std::size_t{1} << (2 * d.num_vertices()));

    MinCostResult result;
    while (true) {
        ++result.rounds;
        const auto lp = solve_lp(d, costs, pool);
        if (lp.status != LpResult::Status::optimal)
            throw TheoremViolation(std::string("relaxation of a feasible instance is ") + to_string(lp.status));
        if (options.lp_trace)
            *options.lp_trace << "round " << result.rounds << ": " << pool.size() << " constraints, objective "
                              << to_string(lp.value) << ", " << lp.pivots << " pivots\n";
        auto violated = separate(d, lp.x, options.sfm);
        if (!violated) {
            result.x = lp.x;
            result.cost = lp.value;
            break;
        }
        if (std::find(pool.begin(), pool.end(), *violated) != pool.end())
            throw TheoremViolation("separation returned a constraint already in the pool");
        if (options.lp_trace)
            *options.lp_trace << "  add " << to_string(violated->kind) << " rhs " << violated->rhs << "\n";
        pool.push_back(*violated);
        ++result.cuts;
        if (result.cuts > cap) throw SizeLimitError("cutting-plane loop exceeded 4^|V| cuts");
    }

    std::vector<Link> chosen;
    for (std::size_t i = 0; i < d.num_links(); ++i) {
        if (result.x[i] == 1) {
            chosen.push_back(d.link(i));
        } else if (result.x[i] != 0) {
            throw IntegralityViolation("cutting-plane optimum is fractional on arc " + d.link(i).id + ": " +
                                       to_string(result.x[i]));
        }
    }
    const auto sub = d.with_links(chosen);
    auto outcome = find_packing(sub, {options.sfm, options.trace});
    auto* p = std::get_if<Packing>(&outcome);
    if (!p) throw TheoremViolation("0/1 point of the polytope does not support a packing");
    if (p->num_links() != chosen.size()) throw TheoremViolation("packing does not use every selected arc");
    if (auto v = verify_packing(d, *p); !v.ok())
        throw TheoremViolation(std::string("min-cost packing failed verification: ") + to_string(v.reason));
    result.packing = std::move(*p);
    return result;
}

}  // namespace arbpack
