#include "fillnorm/fill.hpp"

#include <algorithm>
#include <chrono>
#include <queue>

#include "fillnorm/errors.hpp"

namespace fillnorm {

FillingInstance make_filling_instance(const Chain& target) {
    if (!is_cycle(target)) throw ValidationError("filling target is not a cycle");
    return {target.window, target, target.dim + 1};
}

namespace {

// Variable bounds imposed by branching, per fill cell.
struct Bounds {
    std::map<int, std::int64_t> lower;  // w_f >= lo
    std::map<int, std::int64_t> upper;  // w_f <= hi
};

struct ModelCells {
    std::vector<int> fill_cells;          // unclipped (n+1)-cells, window indices
    std::map<int, int> fill_pos;          // window index -> position
    std::vector<int> rows;                // n-cell indices kept as constraints
    bool trivially_infeasible = false;    // target supported off every fill column
};

ModelCells build_cells(const FillingInstance& inst) {
    ModelCells mc;
    const auto& w = *inst.window;
    if (inst.fill_dim <= w.top_dim()) {
        for (std::size_t j = 0; j < w.cells(inst.fill_dim).size(); ++j)
            if (!w.cell_has_clipped_boundary(inst.fill_dim, static_cast<int>(j))) {
                mc.fill_pos[static_cast<int>(j)] = static_cast<int>(mc.fill_cells.size());
                mc.fill_cells.push_back(static_cast<int>(j));
            }
    }
    // keep rows touched by some fill column or by the target
    std::set<int> touched;
    for (const auto& [i, _] : inst.target.coeffs) touched.insert(i);
    if (inst.fill_dim <= w.top_dim()) {
        const auto& m = w.boundary_matrix(inst.fill_dim);
        for (int j : mc.fill_cells)
            for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, j); it; ++it)
                touched.insert(static_cast<int>(it.row()));
    }
    mc.rows.assign(touched.begin(), touched.end());
    if (mc.fill_cells.empty() && !inst.target.is_zero()) mc.trivially_infeasible = true;
    return mc;
}

LpResult solve_node(const FillingInstance& inst, const ModelCells& mc, const Bounds& bounds) {
    const auto& w = *inst.window;
    const int F = static_cast<int>(mc.fill_cells.size());
    const int S = static_cast<int>(bounds.lower.size() + bounds.upper.size());
    const int R = static_cast<int>(mc.rows.size());
    std::map<int, int> row_pos;
    for (int i = 0; i < R; ++i) row_pos[mc.rows[i]] = i;

    RatMatrix A(R + S, 2 * F + S);
    A.setZero();
    RatVector b(R + S);
    b.setZero();
    RatVector c(2 * F + S);
    c.setZero();
    for (int f = 0; f < 2 * F; ++f) c(f) = 1;

    if (F > 0) {
        const auto& m = w.boundary_matrix(inst.fill_dim);
        for (int f = 0; f < F; ++f)
            for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, mc.fill_cells[f]); it;
                 ++it) {
                int r = row_pos.at(static_cast<int>(it.row()));
                A(r, f) = it.value();
                A(r, F + f) = -it.value();
            }
    }
    for (const auto& [i, v] : inst.target.coeffs) b(row_pos.at(i)) = v;

    int srow = R, scol = 2 * F;
    for (const auto& [cell, hi] : bounds.upper) {
        int f = mc.fill_pos.at(cell);
        A(srow, f) = 1;
        A(srow, F + f) = -1;
        A(srow, scol) = 1;
        b(srow) = hi;
        ++srow;
        ++scol;
    }
    for (const auto& [cell, lo] : bounds.lower) {
        int f = mc.fill_pos.at(cell);
        A(srow, f) = 1;
        A(srow, F + f) = -1;
        A(srow, scol) = -1;
        b(srow) = lo;
        ++srow;
        ++scol;
    }
    return solve_lp({std::move(A), std::move(b), std::move(c)});
}

// Net coefficients w = u - v from an LP solution, with the complementarity
// check the variable-splitting argument relies on.
std::map<int, Rational> net_coefficients(const ModelCells& mc, const RatVector& x) {
    const int F = static_cast<int>(mc.fill_cells.size());
    std::map<int, Rational> net;
    for (int f = 0; f < F; ++f) {
        if (x(f) != 0 && x(F + f) != 0)
            throw Error(Error::Category::Internal,
                        "simultaneously positive split variables at an LP optimum");
        Rational w = x(f) - x(F + f);
        if (w != 0) net[mc.fill_cells[f]] = w;
    }
    return net;
}

std::int64_t ceil_to_i64(const Rational& r) {
    boost::multiprecision::cpp_int q =
        boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    if (Rational(q) < r) ++q;
    return q.convert_to<std::int64_t>();
}

// Whether the target lies in the integer column lattice of the boundary
// matrix, by column echelon reduction over Z and forward substitution. The LP
// relaxation cannot see this (e.g. an odd multiple of a loop with only even
// boundaries above it is rationally fillable but not integrally).
bool integer_feasible(const FillingInstance& inst, const ModelCells& mc) {
    using Int = boost::multiprecision::cpp_int;
    const auto& w = *inst.window;
    const int R = static_cast<int>(mc.rows.size());
    const int F = static_cast<int>(mc.fill_cells.size());
    std::map<int, int> row_pos;
    for (int i = 0; i < R; ++i) row_pos[mc.rows[i]] = i;

    std::vector<std::vector<Int>> A(R, std::vector<Int>(F, 0));
    if (F > 0) {
        const auto& m = w.boundary_matrix(inst.fill_dim);
        for (int f = 0; f < F; ++f)
            for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, mc.fill_cells[f]); it;
                 ++it)
                A[row_pos.at(static_cast<int>(it.row()))][f] = it.value();
    }
    std::vector<Int> resid(R, 0);
    for (const auto& [i, v] : inst.target.coeffs) resid[row_pos.at(i)] = v;

    auto col_axpy = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < R; ++r) A[r][dst] -= q * A[r][src];
    };

    int lead = 0;
    std::vector<std::pair<int, int>> pivots;
    for (int row = 0; row < R && lead < F; ++row) {
        for (;;) {
            int p = -1;
            for (int j = lead; j < F; ++j)
                if (A[row][j] != 0 &&
                    (p < 0 || boost::multiprecision::abs(A[row][j]) <
                                  boost::multiprecision::abs(A[row][p])))
                    p = j;
            if (p < 0) break;
            if (p != lead)
                for (int r = 0; r < R; ++r) std::swap(A[r][p], A[r][lead]);
            bool leftovers = false;
            for (int j = lead + 1; j < F; ++j) {
                if (A[row][j] == 0) continue;
                col_axpy(j, lead, A[row][j] / A[row][lead]);
                leftovers = leftovers || A[row][j] != 0;
            }
            if (!leftovers) break;
        }
        if (A[row][lead] != 0) pivots.push_back({row, lead++});
    }

    for (const auto& [prow, pcol] : pivots) {
        if (resid[prow] % A[prow][pcol] != 0) return false;
        Int q = resid[prow] / A[prow][pcol];
        if (q != 0)
            for (int r = 0; r < R; ++r) resid[r] -= q * A[r][pcol];
    }
    for (const auto& t : resid)
        if (t != 0) return false;
    return true;
}

bool is_integral(const std::map<int, Rational>& net) {
    for (const auto& [_, v] : net)
        if (boost::multiprecision::denominator(v) != 1) return false;
    return true;
}

}  // namespace

LpRelaxation lp_relaxation(const FillingInstance& inst) {
    ModelCells mc = build_cells(inst);
    LpRelaxation out;
    if (inst.target.is_zero()) {
        out.status = LpStatus::Optimal;
        out.value = 0;
        return out;
    }
    if (mc.trivially_infeasible) return out;
    LpResult lp = solve_node(inst, mc, {});
    out.status = lp.status;
    if (lp.status == LpStatus::Optimal) {
        out.value = lp.value;
        out.witness = net_coefficients(mc, lp.x);
    }
    return out;
}

FillingCertificate fill_norm(const FillingInstance& inst, std::int64_t node_budget) {
    auto t0 = std::chrono::steady_clock::now();
    FillingCertificate cert;
    cert.radius = inst.window->radius();
    auto finish = [&](FillingCertificate c) {
        c.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        return c;
    };

    if (inst.target.is_zero()) {
        cert.value = 0;
        cert.witness = Chain{inst.window, inst.fill_dim, {}};
        return finish(cert);
    }
    ModelCells mc = build_cells(inst);
    if (mc.trivially_infeasible) {
        cert.status = FillStatus::InfeasibleInWindow;
        return finish(cert);
    }

    struct Node {
        Rational bound;
        std::int64_t id;
        Bounds bounds;
        std::map<int, Rational> relax;  // fractional witness at this node
        bool operator>(const Node& o) const {
            return bound > o.bound || (bound == o.bound && id > o.id);
        }
    };

    LpResult root = solve_node(inst, mc, {});
    if (root.status != LpStatus::Optimal) {
        cert.status = FillStatus::InfeasibleInWindow;
        return finish(cert);
    }
    cert.lp_bound = root.value;
    if (!integer_feasible(inst, mc)) {
        cert.status = FillStatus::InfeasibleInWindow;
        return finish(cert);
    }

    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> queue;
    std::int64_t next_id = 0;
    queue.push({root.value, next_id++, {}, net_coefficients(mc, root.x)});

    std::optional<std::int64_t> incumbent;
    std::optional<Chain> incumbent_witness;

    while (!queue.empty()) {
        Node node = queue.top();
        queue.pop();
        cert.node_count++;
        if (cert.node_count > node_budget)
            throw ResourceLimitError(
                "fill solver node budget exhausted; best bound " +
                cert.lp_bound.str() +
                (incumbent ? ", incumbent " + std::to_string(*incumbent) : ", no incumbent"));

        // integer objective: prune on the rounded-up bound
        if (incumbent && ceil_to_i64(node.bound) >= *incumbent) continue;

        if (is_integral(node.relax)) {
            std::map<int, std::int64_t> coeffs;
            std::int64_t norm = 0;
            for (const auto& [cell, v] : node.relax) {
                auto n = boost::multiprecision::numerator(v).convert_to<std::int64_t>();
                coeffs[cell] = n;
                norm += std::abs(n);
            }
            if (!incumbent || norm < *incumbent) {
                incumbent = norm;
                incumbent_witness = Chain{inst.window, inst.fill_dim, std::move(coeffs)};
            }
            continue;
        }

        // most-fractional coordinate, ties by cell index
        int branch_cell = -1;
        Rational best_frac = 0;
        Rational floor_val = 0;
        for (const auto& [cell, v] : node.relax) {
            const auto& num = boost::multiprecision::numerator(v);
            const auto& den = boost::multiprecision::denominator(v);
            if (den == 1) continue;
            boost::multiprecision::cpp_int fl = num / den;
            if (num < 0 && fl * den != num) --fl;
            Rational frac = v - Rational(fl);
            Rational dist = frac <= Rational(1, 2) ? frac : Rational(1) - frac;
            if (branch_cell < 0 || dist > best_frac) {
                branch_cell = cell;
                best_frac = dist;
                floor_val = Rational(fl);
            }
        }
        if (branch_cell < 0)
            throw Error(Error::Category::Internal, "no fractional coordinate to branch on");
        auto fl = boost::multiprecision::numerator(floor_val).convert_to<std::int64_t>();

        for (int side = 0; side < 2; ++side) {
            Bounds child = node.bounds;
            if (side == 0)
                child.upper[branch_cell] = fl;
            else
                child.lower[branch_cell] = fl + 1;
            LpResult lp = solve_node(inst, mc, child);
            if (lp.status != LpStatus::Optimal) continue;
            if (incumbent && ceil_to_i64(lp.value) >= *incumbent) continue;
            queue.push({lp.value, next_id++, std::move(child), net_coefficients(mc, lp.x)});
        }
    }

    if (!incumbent) {
        cert.status = FillStatus::InfeasibleInWindow;
        return finish(cert);
    }
    cert.value = incumbent;
    cert.witness = incumbent_witness;
    // re-check the witness independently of the solver path
    Chain bd = boundary(*incumbent_witness);
    if (!(bd == inst.target) || l1_norm(*incumbent_witness) != *incumbent)
        throw Error(Error::Category::Internal, "fill witness failed re-verification");
    return finish(cert);
}

std::vector<FillingCertificate> escalate_until_stable(
    const SpecPtr& spec, int dim, const std::vector<ChainLiteralTerm>& target_literal,
    int r0, int r_max, std::int64_t node_budget) {
    if (r0 < 0 || r_max < r0) throw ValidationError("bad escalation radii");
    std::vector<FillingCertificate> out;
    for (int r = r0; r <= r_max; ++r) {
        FillingCertificate c;
        try {
            auto w = ComplexWindow::instantiate(spec, r);
            Chain target = chain_from_literal(w, dim, target_literal);
            c = fill_norm(make_filling_instance(target), node_budget);
        } catch (const WindowTooSmallError&) {
            // the cycle or its boundary does not fit yet; widen and retry
            if (r == r_max && out.empty()) throw;
            continue;
        }
        if (!out.empty() && out.back().feasible() && c.feasible() &&
            *c.value > *out.back().value)
            throw Error(Error::Category::Internal, "filling value increased with radius");
        bool stable = !out.empty() && out.back().feasible() && c.feasible() &&
                      *out.back().value == *c.value;
        out.push_back(std::move(c));
        if (stable) {
            out.back().status = FillStatus::Stabilized;
            return out;
        }
    }
    return out;
}

}  // namespace fillnorm
