#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's rule.
// Variables are implicitly non-negative. Intended for the small relaxations of
// the cutting-plane loop; there is no pricing cleverness and no tolerance.

#include <cstddef>
#include <optional>
#include <vector>

#include "arbpack/rational.hpp"

namespace arbpack {

struct LinearConstraint {
    enum class Sense { le, ge, eq };
    std::vector<Rational> coeffs;
    Sense sense = Sense::ge;
    Rational rhs = 0;
};

struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Rational> cost;  // minimized
    std::vector<LinearConstraint> rows;
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    std::vector<Rational> x;
    Rational value = 0;
    std::size_t pivots = 0;
};

inline const char* to_string(LpResult::Status s) {
    switch (s) {
        case LpResult::Status::optimal: return "optimal";
        case LpResult::Status::infeasible: return "infeasible";
        case LpResult::Status::unbounded: return "unbounded";
    }
    return "?";
}

namespace detail {

class Tableau {
public:
    std::vector<std::vector<Rational>> rows;  // last column is the right-hand side
    std::vector<std::size_t> basis;
    std::size_t pivots = 0;

    std::size_t width() const { return rows.empty() ? 0 : rows.front().size() - 1; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = rows[r][c];
        for (auto& v : rows[r]) v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
        }
        basis[r] = c;
        ++pivots;
    }

    // Minimizes cost over columns marked usable. Returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& usable) {
        const std::size_t w = width();
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < w && !entering; ++j) {
                if (!usable[j]) continue;
                Rational rc = cost[j];
                for (std::size_t i = 0; i < rows.size(); ++i) rc -= cost[basis[i]] * rows[i][j];
                if (rc < 0) entering = j;
            }
            if (!entering) return true;
            std::optional<std::size_t> leaving;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][*entering] <= 0) continue;
                Rational ratio = rows[i][w] / rows[i][*entering];
                if (!leaving || ratio < best || (ratio == best && basis[i] < basis[*leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering);
        }
    }
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    std::size_t num_slack = 0, num_art = 0;
    for (const auto& r : lp.rows) {
        if (r.sense != LinearConstraint::Sense::eq) ++num_slack;
    }
    // Normalized rows: rhs >= 0.
    struct Row {
        std::vector<Rational> a;
        LinearConstraint::Sense sense;
        Rational b;
    };
    std::vector<Row> rows;
    for (const auto& r : lp.rows) {
        Row row{r.coeffs, r.sense, r.rhs};
        row.a.resize(n, 0);
        if (row.b < 0) {
            for (auto& v : row.a) v = -v;
            row.b = -row.b;
            if (row.sense == LinearConstraint::Sense::le) row.sense = LinearConstraint::Sense::ge;
            else if (row.sense == LinearConstraint::Sense::ge) row.sense = LinearConstraint::Sense::le;
        }
        if (row.sense != LinearConstraint::Sense::le) ++num_art;
        rows.push_back(std::move(row));
    }

    const std::size_t w = n + num_slack + num_art;
    detail::Tableau t;
    t.rows.assign(rows.size(), std::vector<Rational>(w + 1, 0));
    t.basis.assign(rows.size(), 0);
    std::size_t slack = n, art = n + num_slack;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = rows[i].a[j];
        t.rows[i][w] = rows[i].b;
        switch (rows[i].sense) {
            case LinearConstraint::Sense::le:
                t.rows[i][slack] = 1;
                t.basis[i] = slack++;
                break;
            case LinearConstraint::Sense::ge:
                t.rows[i][slack++] = -1;
                t.rows[i][art] = 1;
                t.basis[i] = art++;
                break;
            case LinearConstraint::Sense::eq:
                t.rows[i][art] = 1;
                t.basis[i] = art++;
                break;
        }
    }

    LpResult result;
    const std::size_t first_art = n + num_slack;
    if (num_art > 0) {
        std::vector<Rational> phase1(w, 0);
        for (std::size_t j = first_art; j < w; ++j) phase1[j] = 1;
        t.optimize(phase1, std::vector<bool>(w, true));
        Rational infeasibility = 0;
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            if (t.basis[i] >= first_art) infeasibility += t.rows[i][w];
        if (infeasibility > 0) {
            result.status = LpResult::Status::infeasible;
            result.pivots = t.pivots;
            return result;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < t.rows.size();) {
            if (t.basis[i] < first_art) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < first_art && !col; ++j)
                if (t.rows[i][j] != 0) col = j;
            if (col) {
                t.pivot(i, *col);
                ++i;
            } else {
                t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::vector<Rational> cost(w, 0);
    for (std::size_t j = 0; j < n && j < lp.cost.size(); ++j) cost[j] = lp.cost[j];
    std::vector<bool> usable(w, true);
    for (std::size_t j = first_art; j < w; ++j) usable[j] = false;
    const bool bounded = t.optimize(cost, usable);
    result.pivots = t.pivots;
    if (!bounded) {
        result.status = LpResult::Status::unbounded;
        return result;
    }
    result.status = LpResult::Status::optimal;
    result.x.assign(n, 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) result.x[t.basis[i]] = t.rows[i][w];
    for (std::size_t j = 0; j < n; ++j) result.value += cost[j] * result.x[j];
    return result;
}

}  // namespace arbpack
