#include "fillnorm/simplex.hpp"

#include <vector>

#include "fillnorm/errors.hpp"

namespace fillnorm {

namespace {

// Full-tableau simplex core. T is m x (n+1) with the right-hand side in the
// last column; basis columns are kept as identity. Returns false when the
// problem is unbounded in the given costs.
class Tableau {
public:
    Tableau(RatMatrix T, std::vector<int> basis) : T_(std::move(T)), basis_(std::move(basis)) {}

    int rows() const { return static_cast<int>(T_.rows()); }
    int cols() const { return static_cast<int>(T_.cols()) - 1; }
    const std::vector<int>& basis() const { return basis_; }
    Rational rhs(int i) const { return T_(i, cols()); }
    Rational entry(int i, int j) const { return T_(i, j); }

    void pivot(int row, int col) {
        Rational p = T_(row, col);
        T_.row(row) /= p;
        for (int i = 0; i < rows(); ++i) {
            if (i == row) continue;
            Rational f = T_(i, col);
            if (f != 0) T_.row(i) -= f * T_.row(row);
        }
        basis_[row] = col;
    }

    // Minimize costs[x] over the current feasible tableau, Bland's rule.
    // Columns at or beyond `eligible` never enter the basis (used to fence
    // off phase-1 artificials in phase 2).
    bool optimize(const RatVector& costs, int eligible = -1) {
        if (eligible < 0) eligible = cols();
        for (;;) {
            // reduced costs z_j = c_j - c_B' T_.col(j)
            int enter = -1;
            for (int j = 0; j < eligible; ++j) {
                Rational z = costs(j);
                for (int i = 0; i < rows(); ++i) {
                    if (costs(basis_[i]) != 0) z -= costs(basis_[i]) * T_(i, j);
                }
                if (z < 0) {
                    enter = j;
                    break;  // Bland: lowest eligible index
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < rows(); ++i) {
                if (T_(i, enter) <= 0) continue;
                Rational ratio = rhs(i) / T_(i, enter);
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
    }

    Rational objective(const RatVector& costs) const {
        Rational v = 0;
        for (int i = 0; i < rows(); ++i) v += costs(basis_[i]) * rhs(i);
        return v;
    }

    void drop_rows(const std::vector<int>& keep) {
        RatMatrix nt(keep.size(), T_.cols());
        std::vector<int> nb;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            nt.row(i) = T_.row(keep[i]);
            nb.push_back(basis_[keep[i]]);
        }
        T_ = std::move(nt);
        basis_ = std::move(nb);
    }

private:
    RatMatrix T_;
    std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    const int m = static_cast<int>(p.A.rows());
    const int n = static_cast<int>(p.A.cols());
    if (p.b.size() != m || p.c.size() != n)
        throw ValidationError("LP dimensions are inconsistent");

    // phase 1: artificial variables form the starting basis
    RatMatrix T(m, n + m + 1);
    T.setZero();
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        Rational s = p.b(i) < 0 ? Rational(-1) : Rational(1);
        for (int j = 0; j < n; ++j) T(i, j) = s * p.A(i, j);
        T(i, n + i) = 1;
        T(i, n + m) = s * p.b(i);
        basis[i] = n + i;
    }
    Tableau tab(std::move(T), std::move(basis));

    RatVector phase1(n + m);
    phase1.setZero();
    for (int j = n; j < n + m; ++j) phase1(j) = 1;
    if (!tab.optimize(phase1)) throw Error(Error::Category::Internal, "phase 1 unbounded");
    if (tab.objective(phase1) != 0) return {LpStatus::Infeasible, 0, {}};

    // drive remaining artificials out of the basis; redundant rows get dropped
    std::vector<int> keep;
    for (int i = 0; i < tab.rows(); ++i) {
        if (tab.basis()[i] < n) {
            keep.push_back(i);
            continue;
        }
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (tab.entry(i, j) != 0) {
                col = j;
                break;
            }
        if (col >= 0) {
            tab.pivot(i, col);
            keep.push_back(i);
        }
    }
    if (keep.size() != static_cast<std::size_t>(tab.rows())) tab.drop_rows(keep);

    RatVector phase2(n + m);
    phase2.setZero();
    for (int j = 0; j < n; ++j) phase2(j) = p.c(j);
    if (!tab.optimize(phase2, n)) return {LpStatus::Unbounded, 0, {}};

    LpResult out;
    out.status = LpStatus::Optimal;
    out.value = tab.objective(phase2);
    out.x = RatVector(n);
    out.x.setZero();
    for (int i = 0; i < tab.rows(); ++i)
        if (tab.basis()[i] < n) out.x(tab.basis()[i]) = tab.rhs(i);
    return out;
}

}  // namespace fillnorm
