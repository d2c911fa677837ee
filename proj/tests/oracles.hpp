#pragma once

// Independent oracles used to cross-check solver results. These deliberately
// avoid the library's solver code paths: the matrix model multiplies unipotent
// matrices, and the searches below are plain depth-first enumerations over
// integer coefficient vectors. The only pruning is arithmetic (a facet whose
// incident cells are all decided must balance; an l1 deficit must be coverable
// by the remaining budget) — no LP, no branch ordering heuristics.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fillnorm/chain.hpp"

namespace oracles {

// Heisenberg elements as upper-unitriangular integer matrices, stored as the
// triple (a, b, c) for [[1, a, c], [0, 1, b], [0, 0, 1]].
struct Triple {
    std::int64_t a = 0, b = 0, c = 0;
    bool operator==(const Triple& o) const = default;
};

inline Triple mul(const Triple& l, const Triple& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c + l.a * r.b};
}

// letters in the x,X,y,Y,z,Z alphabet of the builtin heisenberg3 presentation
inline Triple letter_triple(fillnorm::Letter l) {
    static const Triple table[6] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                    {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    return table[l];
}

inline Triple word_triple(const fillnorm::Word& w) {
    Triple t;
    for (fillnorm::Letter l : w) t = mul(t, letter_triple(l));
    return t;
}

namespace detail {

// Per-cell boundary rows over (dim-1)-cell indices, for the unclipped cells
// of one dimension of a window.
struct BoundaryRows {
    std::vector<int> cols;                                       // cell indices
    std::vector<std::vector<std::pair<int, std::int64_t>>> rows;  // facet, coef
};

inline BoundaryRows boundary_rows(const fillnorm::WindowPtr& w, int dim) {
    using namespace fillnorm;
    BoundaryRows out;
    if (dim > w->top_dim()) return out;
    for (std::size_t j = 0; j < w->cells(dim).size(); ++j) {
        if (w->cell_has_clipped_boundary(dim, static_cast<int>(j))) continue;
        std::map<int, std::int64_t> unit;
        unit[static_cast<int>(j)] = 1;
        Chain b = boundary(make_chain(w, dim, unit));
        out.cols.push_back(static_cast<int>(j));
        out.rows.push_back({b.coeffs.begin(), b.coeffs.end()});
    }
    return out;
}

}  // namespace detail

// All nonzero cycles of l1 norm <= k supported on unclipped cells, up to
// translation, by recursive coefficient assignment. A facet is checked for
// balance as soon as its last incident cell is decided, which prunes the raw
// search without changing the solution set.
// canon_w, when given, must be a window of the same complex at radius >= that
// of w; classes are then canonicalized there, which keeps the search space of
// the small window while still anchoring classes whose anchored translate
// needs the larger ball.
inline std::set<std::vector<std::pair<int, std::int64_t>>> brute_force_cycles(
    const fillnorm::WindowPtr& w, int dim, int k,
    const fillnorm::WindowPtr& canon_w = nullptr) {
    using namespace fillnorm;
    const WindowPtr& cw = canon_w ? canon_w : w;
    auto rows = detail::boundary_rows(w, dim);
    const std::size_t ncols = rows.cols.size();

    std::map<int, std::size_t> last_touch;  // facet -> last column touching it
    for (std::size_t i = 0; i < ncols; ++i)
        for (const auto& [f, _] : rows.rows[i]) last_touch[f] = i;
    std::vector<std::vector<int>> closes(ncols);
    for (const auto& [f, i] : last_touch) closes[i].push_back(f);

    std::map<int, std::int64_t> residual;
    std::vector<std::int64_t> coeff(ncols, 0);
    std::set<std::vector<std::pair<int, std::int64_t>>> out;

    auto emit = [&]() {
        std::map<int, std::int64_t> coeffs;
        for (std::size_t i = 0; i < ncols; ++i)
            if (coeff[i] != 0) coeffs[rows.cols[i]] = coeff[i];
        if (coeffs.empty()) return;
        Chain c = make_chain(w, dim, coeffs);
        if (!is_cycle(c)) std::abort();  // closure checks guarantee this
        try {
            if (cw != w) c = chain_from_literal(cw, dim, chain_to_literal(c));
            Chain canon = canonical_translate(c);
            out.insert({canon.coeffs.begin(), canon.coeffs.end()});
        } catch (const fillnorm::WindowTooSmallError&) {
            // no translate of this class fits anchored; such classes are
            // outside window-level enumeration semantics entirely
        }
    };

    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i,
                                                             std::int64_t budget) {
        if (i == ncols) {
            emit();
            return;
        }
        auto apply = [&](std::int64_t v) {
            for (const auto& [f, cf] : rows.rows[i]) residual[f] += v * cf;
        };
        auto closed = [&]() {
            for (int f : closes[i])
                if (residual[f] != 0) return false;
            return true;
        };
        for (std::int64_t v = -budget; v <= budget; ++v) {
            coeff[i] = v;
            apply(v);
            if (closed()) rec(i + 1, budget - std::abs(v));
            apply(-v);
        }
        coeff[i] = 0;
    };
    rec(0, k);
    return out;
}

// Least l1 norm of a filling, by iterative deepening over the total budget.
// Within one budget the search repeatedly picks the first facet with nonzero
// residual and branches over the undecided cells incident to it. Returns
// nullopt when no filling of norm <= cap exists among window-supported chains.
inline std::optional<std::int64_t> brute_force_fill(const fillnorm::Chain& target,
                                                    std::int64_t cap) {
    using namespace fillnorm;
    const auto& w = target.window;
    auto rows = detail::boundary_rows(w, target.dim + 1);
    const std::size_t ncols = rows.cols.size();

    std::map<int, std::vector<std::size_t>> touching;  // facet -> incident columns
    std::int64_t max_row_norm = 0;
    for (std::size_t i = 0; i < ncols; ++i) {
        std::int64_t n = 0;
        for (const auto& [f, cf] : rows.rows[i]) {
            touching[f].push_back(i);
            n += std::abs(cf);
        }
        max_row_norm = std::max(max_row_norm, n);
    }

    std::map<int, std::int64_t> residual;
    std::int64_t residual_l1 = 0;
    auto bump = [&](int f, std::int64_t d) {
        auto& r = residual[f];
        residual_l1 -= std::abs(r);
        r += d;
        residual_l1 += std::abs(r);
        if (r == 0) residual.erase(f);
    };
    for (const auto& [f, c] : target.coeffs) bump(f, c);

    std::vector<char> used(ncols, 0);
    std::function<bool(std::int64_t)> rec = [&](std::int64_t budget) -> bool {
        if (residual_l1 == 0) return true;
        if (max_row_norm == 0) return false;
        // a cell changes the residual's l1 norm by at most its boundary norm
        if ((residual_l1 + max_row_norm - 1) / max_row_norm > budget) return false;
        int facet = residual.begin()->first;
        auto it = touching.find(facet);
        if (it == touching.end()) return false;  // nothing can balance this facet
        for (std::size_t j : it->second) {
            if (used[j]) continue;
            used[j] = 1;
            for (std::int64_t v = 1; v <= budget; ++v)
                for (std::int64_t s : {v, -v}) {
                    for (const auto& [f, cf] : rows.rows[j]) bump(f, s * cf);
                    bool ok = rec(budget - v);
                    for (const auto& [f, cf] : rows.rows[j]) bump(f, -s * cf);
                    if (ok) {
                        used[j] = 0;
                        return true;
                    }
                }
            used[j] = 0;
        }
        return false;
    };

    for (std::int64_t budget = 0; budget <= cap; ++budget)
        if (rec(budget)) return budget;
    return std::nullopt;
}

}  // namespace oracles
