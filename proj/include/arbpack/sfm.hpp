#pragma once

// Submodular function minimization over vertex sets.
//
// Two engines:
//   * brute          exhaustive enumeration, the reference (ground <= 24 by default)
//   * min_norm_point Fujishige-Wolfe minimum-norm-point over the base polytope,
//                    exact rational arithmetic throughout
//
// Constrained families (contains v, excludes u, nonempty) are handled by fixing
// elements in or out and minimizing the induced function on the remaining free
// elements. Among all minimizers the result is the one with the numerically
// smallest vertex mask; both engines return exactly that set.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arbpack/bitset.hpp"
#include "arbpack/error.hpp"
#include "arbpack/rational.hpp"

namespace arbpack {

enum class SfmEngine { automatic, brute, min_norm_point };

inline const char* to_string(SfmEngine e) {
    switch (e) {
        case SfmEngine::automatic: return "auto";
        case SfmEngine::brute: return "brute";
        case SfmEngine::min_norm_point: return "min-norm-point";
    }
    return "?";
}

struct SetFamily {
    enum class Kind { all, nonempty, contains, contains_excludes };
    Kind kind = Kind::nonempty;
    std::size_t in = 0;   // contains / contains_excludes
    std::size_t out = 0;  // contains_excludes

    static SetFamily all() { return {Kind::all}; }
    static SetFamily nonempty() { return {Kind::nonempty}; }
    static SetFamily containing(std::size_t v) { return {Kind::contains, v}; }
    static SetFamily containing_excluding(std::size_t v, std::size_t u) { return {Kind::contains_excludes, v, u}; }
};

template <class Value>
struct SubmodularObjective {
    std::size_t ground = 0;  // elements 0..ground-1
    std::function<Value(VertexMask)> evaluate;
    SetFamily family = SetFamily::nonempty();
};

template <class Value>
struct SfmResult {
    VertexMask minimizer = 0;
    Value value{};
};

inline constexpr std::size_t kDefaultMaxBruteGround = 24;

struct SfmOptions {
    SfmEngine engine = SfmEngine::automatic;
    std::size_t max_brute_ground = kDefaultMaxBruteGround;
    // Spot-check submodularity on random triples before minimizing.
    bool validate = false;
};

namespace detail {

// Fixed-in / fixed-out description of a constrained family.
struct Constraint {
    VertexMask in = 0;
    VertexMask out = 0;
    bool nonempty = false;
};

template <class Value>
std::optional<SfmResult<Value>> brute_min(const std::function<Value(VertexMask)>& f, VertexMask ground,
                                          const Constraint& c) {
    const VertexMask free = ground & ~c.in & ~c.out;
    std::optional<SfmResult<Value>> best;
    VertexMask sub = 0;
    // Subsets of `free` in increasing numeric order; X = in | sub increases with sub.
    while (true) {
        const VertexMask x = c.in | sub;
        if (!(c.nonempty && x == 0)) {
            Value v = f(x);
            if (!best || v < best->value) best = SfmResult<Value>{x, std::move(v)};
        }
        if (sub == free) break;
        sub = (sub - free) & free;
    }
    return best;
}

// Minimum of x^T x over the affine hull of `points`: returns the affine
// coefficients (summing to 1). Points are affinely independent in Wolfe's
// algorithm, so the KKT system is nonsingular.
inline std::vector<Rational> affine_minimizer(const std::vector<std::vector<Rational>>& points) {
    const std::size_t k = points.size();
    const std::size_t dim = k + 1;
    std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            Rational dot = 0;
            for (std::size_t t = 0; t < points[i].size(); ++t) dot += points[i][t] * points[j][t];
            m[i][j] = dot;
        }
        m[i][k] = 1;
        m[k][i] = 1;
    }
    m[k][dim] = 1;
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t pivot = col;
        while (pivot < dim && m[pivot][col] == 0) ++pivot;
        if (pivot == dim) throw TheoremViolation("min-norm-point: affinely dependent corral");
        std::swap(m[pivot], m[col]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational factor = m[r][col] / m[col][col];
            for (std::size_t j = col; j <= dim; ++j) m[r][j] -= factor * m[col][j];
        }
    }
    std::vector<Rational> alpha(k);
    for (std::size_t i = 0; i < k; ++i) alpha[i] = m[i][dim] / m[i][i];
    return alpha;
}

// Fujishige-Wolfe on g(Y) = f(in | Y) - f(in) for Y over `free` (g(empty) = 0).
// Returns a minimizer of g over all subsets of free, including the empty set.
template <class Value>
SfmResult<Value> min_norm_point_min(const std::function<Value(VertexMask)>& f, VertexMask in, VertexMask free) {
    const auto items = members(free);
    const std::size_t n = items.size();
    const Rational base = to_rational(f(in));
    if (n == 0) return {in, f(in)};

    auto greedy = [&](const std::vector<std::size_t>& order) {
        std::vector<Rational> q(n);
        VertexMask prefix = in;
        Rational prev = base;
        for (auto i : order) {
            prefix |= vertex_bit(items[i]);
            Rational cur = to_rational(f(prefix));
            q[i] = cur - prev;
            prev = std::move(cur);
        }
        return q;
    };
    auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    auto ascending = [&](const std::vector<Rational>& x) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        return order;
    };

    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    std::vector<std::vector<Rational>> corral{greedy(identity)};
    std::vector<Rational> lambda{Rational(1)};
    std::vector<Rational> x = corral.front();

    while (true) {
        const auto q = greedy(ascending(x));
        if (dot(x, x) <= dot(x, q)) break;
        if (std::find(corral.begin(), corral.end(), q) != corral.end())
            throw TheoremViolation("min-norm-point: linear oracle returned a corral point");
        corral.push_back(q);
        lambda.push_back(0);
        while (true) {
            const auto alpha = affine_minimizer(corral);
            if (std::all_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a > 0; })) {
                lambda = alpha;
                break;
            }
            std::optional<Rational> theta;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (alpha[i] > 0) continue;
                Rational t = lambda[i] / (lambda[i] - alpha[i]);
                if (!theta || t < *theta) theta = t;
            }
            for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = *theta * alpha[i] + (1 - *theta) * lambda[i];
            std::vector<std::vector<Rational>> kept;
            std::vector<Rational> kept_lambda;
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                if (lambda[i] > 0) {
                    kept.push_back(std::move(corral[i]));
                    kept_lambda.push_back(lambda[i]);
                }
            }
            corral = std::move(kept);
            lambda = std::move(kept_lambda);
        }
        x.assign(n, Rational(0));
        for (std::size_t i = 0; i < corral.size(); ++i)
            for (std::size_t t = 0; t < n; ++t) x[t] += lambda[i] * corral[i][t];
    }

    // The sublevel sets of the minimum-norm point contain a minimizer.
    SfmResult<Value> best{in, f(in)};
    VertexMask prefix = in;
    for (auto i : ascending(x)) {
        prefix |= vertex_bit(items[i]);
        Value v = f(prefix);
        if (v < best.value) best = {prefix, std::move(v)};
    }
    return best;
}

template <class Value>
std::optional<SfmResult<Value>> mnp_constrained_min(const std::function<Value(VertexMask)>& f, VertexMask ground,
                                                    const Constraint& c) {
    const VertexMask free = ground & ~c.in & ~c.out;
    if (!c.nonempty || c.in != 0) {
        if (c.nonempty && c.in == 0 && free == 0) return std::nullopt;
        return min_norm_point_min(f, c.in, free);
    }
    // Nonempty with nothing forced: split on the smallest member.
    std::optional<SfmResult<Value>> best;
    VertexMask earlier = 0;
    for (auto i : members(free)) {
        auto r = min_norm_point_min(f, vertex_bit(i), free & ~earlier & ~vertex_bit(i));
        if (!best || r.value < best->value) best = std::move(r);
        earlier |= vertex_bit(i);
    }
    return best;
}

template <class Value>
void validate_submodular(const std::function<Value(VertexMask)>& f, VertexMask ground) {
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 64; ++trial) {
        const VertexMask x = rng() & ground, y = rng() & ground;
        if (f(x) + f(y) < f(x & y) + f(x | y))
            throw ContractError("objective is not submodular (random triple check failed)");
    }
}

}  // namespace detail

template <class Value>
SfmResult<Value> minimize(const SubmodularObjective<Value>& obj, const SfmOptions& options = {}) {
    const std::size_t n = obj.ground;
    if (n == 0) throw DomainError("sfm: empty ground set");
    if (n > kMaxVertices) throw SizeLimitError("sfm: ground set larger than 64");
    const VertexMask ground = full_mask(n);

    detail::Constraint c;
    switch (obj.family.kind) {
        case SetFamily::Kind::all: break;
        case SetFamily::Kind::nonempty: c.nonempty = true; break;
        case SetFamily::Kind::contains:
            if (obj.family.in >= n) throw DomainError("sfm: fixed element outside the ground set");
            c.in = vertex_bit(obj.family.in);
            break;
        case SetFamily::Kind::contains_excludes:
            if (obj.family.in >= n || obj.family.out >= n) throw DomainError("sfm: fixed element outside the ground set");
            if (obj.family.in == obj.family.out) throw DomainError("sfm: contains/excludes the same element");
            c.in = vertex_bit(obj.family.in);
            c.out = vertex_bit(obj.family.out);
            break;
    }

    if (options.validate) detail::validate_submodular(obj.evaluate, ground);

    SfmEngine engine = options.engine;
    if (engine == SfmEngine::automatic)
        engine = n <= options.max_brute_ground ? SfmEngine::brute : SfmEngine::min_norm_point;

    if (engine == SfmEngine::brute) {
        if (n > options.max_brute_ground)
            throw SizeLimitError("sfm: brute engine limited to " + std::to_string(options.max_brute_ground) +
                                 " ground elements");
        auto r = detail::brute_min(obj.evaluate, ground, c);
        if (!r) throw DomainError("sfm: constrained family is empty");
        return *r;
    }

    auto best = detail::mnp_constrained_min(obj.evaluate, ground, c);
    if (!best) throw DomainError("sfm: constrained family is empty");
    const Value target = best->value;

    // Canonical minimizer: decide bits from the most significant down, excluding
    // each one whenever a minimizer survives without it.
    for (std::size_t b = n; b-- > 0;) {
        const VertexMask bit = vertex_bit(b);
        if ((c.in | c.out) & bit) continue;
        detail::Constraint trial = c;
        trial.out |= bit;
        auto r = detail::mnp_constrained_min(obj.evaluate, ground, trial);
        if (r && !(target < r->value)) {
            c = trial;
        } else {
            c.in |= bit;
        }
    }
    return {c.in, obj.evaluate(c.in)};
}

}  // namespace arbpack
