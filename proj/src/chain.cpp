#include "fillnorm/chain.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

#include "fillnorm/errors.hpp"

namespace fillnorm {

Chain make_chain(WindowPtr w, int dim, std::map<int, std::int64_t> coeffs) {
    Chain c{std::move(w), dim, std::move(coeffs)};
    for (auto it = c.coeffs.begin(); it != c.coeffs.end();) {
        if (it->first < 0 || static_cast<std::size_t>(it->first) >= c.window->cells(dim).size())
            throw ValidationError("chain cell index out of range");
        if (it->second == 0)
            it = c.coeffs.erase(it);
        else
            ++it;
    }
    return c;
}

std::int64_t l1_norm(const Chain& c) {
    std::int64_t n = 0;
    for (const auto& [_, v] : c.coeffs) n += std::abs(v);
    return n;
}

Chain add(const Chain& a, const Chain& b) {
    if (a.window != b.window || a.dim != b.dim)
        throw ValidationError("chain addition across windows or dimensions");
    Chain out = a;
    for (const auto& [i, v] : b.coeffs) {
        auto it = out.coeffs.find(i);
        if (it == out.coeffs.end()) {
            out.coeffs.emplace(i, v);
        } else if ((it->second += v) == 0) {
            out.coeffs.erase(it);
        }
    }
    return out;
}

Chain scale(const Chain& a, std::int64_t n) {
    Chain out{a.window, a.dim, {}};
    if (n == 0) return out;
    for (const auto& [i, v] : a.coeffs) out.coeffs.emplace(i, v * n);
    return out;
}

Chain negate(const Chain& a) { return scale(a, -1); }

Chain boundary(const Chain& c) {
    const auto& w = *c.window;
    Chain out{c.window, c.dim - 1, {}};
    if (c.dim < 1) {
        if (!c.coeffs.empty())
            throw ValidationError("boundary of a 0-chain is undefined");
        return out;
    }
    const auto& m = w.boundary_matrix(c.dim);
    for (const auto& [j, v] : c.coeffs) {
        if (w.cell_has_clipped_boundary(c.dim, j))
            throw WindowTooSmallError("boundary clipped at cell " + w.cell_label(c.dim, j));
        for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, j); it; ++it) {
            auto& slot = out.coeffs[static_cast<int>(it.row())];
            slot += it.value() * v;
            if (slot == 0) out.coeffs.erase(static_cast<int>(it.row()));
        }
    }
    return out;
}

bool is_cycle(const Chain& c) { return boundary(c).is_zero(); }

Chain translate(const Chain& c, const GroupElement& h) {
    const auto& w = *c.window;
    const auto& grp = *w.spec()->group();
    Chain out{c.window, c.dim, {}};
    for (const auto& [i, v] : c.coeffs) {
        const auto& cell = w.cells(c.dim)[i];
        GroupElement moved = grp.multiply(h, w.ball()[cell.elem]);
        int e = w.element_index(moved);
        if (e < 0)
            throw WindowTooSmallError("translate leaves window at cell " +
                                      w.cell_label(c.dim, i));
        out.coeffs[w.cell_index(c.dim, cell.orbit, e)] = v;
    }
    return out;
}

Chain canonical_translate(const Chain& c) {
    if (c.is_zero()) throw ValidationError("cannot anchor the zero chain");
    const auto& w = *c.window;
    const auto& grp = *w.spec()->group();

    // The representative must depend only on the translation class, so try
    // anchoring each support element at the identity and keep the least
    // resulting coefficient vector. Candidates the window cannot hold are
    // skipped; the candidate set itself is class-invariant.
    std::set<int> elems;
    for (const auto& [i, _] : c.coeffs) elems.insert(w.cells(c.dim)[i].elem);

    const Chain* best = nullptr;
    std::vector<Chain> candidates;
    candidates.reserve(elems.size());
    for (int e : elems) {
        try {
            candidates.push_back(w.ball()[e].is_identity()
                                     ? c
                                     : translate(c, grp.inverse(w.ball()[e])));
        } catch (const WindowTooSmallError&) {
            continue;
        }
        const Chain& cand = candidates.back();
        if (!best || cand.coeffs < best->coeffs) best = &cand;
    }
    if (!best)
        throw WindowTooSmallError("no translate of the chain is anchored in the window");
    return *best;
}

namespace {

struct EdgeInfo {
    int cell;
    int tail;  // vertex cell index, -1 for loops
    int head;
};

// Decode dim-1 cells into tail/head vertex pairs; loops have no entries.
// Throws if an edge's boundary is not of the standard shape.
std::vector<EdgeInfo> decode_edges(const ComplexWindow& w, const std::vector<int>& edge_cells) {
    std::vector<EdgeInfo> out;
    const auto& m = w.boundary_matrix(1);
    for (int j : edge_cells) {
        EdgeInfo e{j, -1, -1};
        for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, j); it; ++it) {
            if (it.value() == 1 && e.head < 0)
                e.head = static_cast<int>(it.row());
            else if (it.value() == -1 && e.tail < 0)
                e.tail = static_cast<int>(it.row());
            else
                throw ValidationError("edge " + w.cell_label(1, j) +
                                      " does not have a +1/-1 vertex pair boundary");
        }
        if ((e.head < 0) != (e.tail < 0))
            throw ValidationError("edge " + w.cell_label(1, j) + " has a one-sided boundary");
        out.push_back(e);
    }
    return out;
}

std::vector<Chain> enumerate_exhaustive(const WindowPtr& w, int dim, int k,
                                        const CycleEnumOptions& opts) {
    std::vector<Chain> out;
    const auto& cells = w->cells(dim);
    std::vector<int> allowed;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!w->cell_has_clipped_boundary(dim, static_cast<int>(i)))
            allowed.push_back(static_cast<int>(i));
    if (allowed.empty()) return out;

    const auto& m = w->boundary_matrix(dim);
    const int rows = static_cast<int>(w->cells(dim - 1).size());

    // rows to finalize after each allowed column is decided
    std::vector<int> last_pos(rows, -1);
    int max_col_nnz = 1;
    for (std::size_t p = 0; p < allowed.size(); ++p) {
        int nnz = 0;
        for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, allowed[p]); it; ++it) {
            last_pos[it.row()] = static_cast<int>(p);
            ++nnz;
        }
        max_col_nnz = std::max(max_col_nnz, nnz);
    }
    std::vector<std::vector<int>> finalize_at(allowed.size());
    for (int r = 0; r < rows; ++r)
        if (last_pos[r] >= 0) finalize_at[last_pos[r]].push_back(r);

    std::vector<std::int64_t> residual(rows, 0);
    std::int64_t open_sum = 0;  // sum of |residual| over not-yet-finalized rows
    std::map<int, std::int64_t> current;
    std::size_t nodes = 0;

    std::function<void(std::size_t, int)> dfs = [&](std::size_t pos, int budget) {
        if (++nodes > opts.max_nodes)
            throw ResourceLimitError("cycle enumeration node cap exceeded");
        if (pos == allowed.size()) {
            if (current.empty()) return;
            // canonical anchoring: identity (ball index 0) must appear...
            int least = -1;
            for (const auto& [i, _] : current) {
                int e = cells[i].elem;
                if (least < 0 || e < least) least = e;
            }
            if (least != 0) return;
            // ...and the chain must be its class's canonical representative,
            // so each translation class is emitted exactly once
            Chain found{w, dim, current};
            if (!(canonical_translate(found).coeffs == current)) return;
            if (out.size() >= opts.max_results)
                throw ResourceLimitError("cycle enumeration result cap exceeded");
            out.push_back(std::move(found));
            return;
        }
        int col = allowed[pos];
        // remaining coefficient mass must be able to close all open rows
        for (std::int64_t c = -budget; c <= budget; ++c) {
            std::int64_t touched = 0;
            if (c != 0) {
                for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, col); it; ++it) {
                    auto& r = residual[it.row()];
                    if (last_pos[it.row()] >= static_cast<int>(pos)) {
                        open_sum -= std::abs(r);
                        r += it.value() * c;
                        open_sum += std::abs(r);
                    } else {
                        r += it.value() * c;
                    }
                }
                current[col] = c;
                touched = std::abs(c);
            }
            bool ok = true;
            for (int r : finalize_at[pos])
                if (residual[r] != 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                std::int64_t rem = budget - touched;
                std::int64_t open_after = open_sum;
                for (int r : finalize_at[pos]) open_after -= std::abs(residual[r]);
                if ((open_after + max_col_nnz - 1) / max_col_nnz <= rem) {
                    // temporarily drop finalized rows from the open sum
                    std::int64_t saved = open_sum;
                    open_sum = open_after;
                    dfs(pos + 1, static_cast<int>(rem));
                    open_sum = saved;
                }
            }
            if (c != 0) {
                for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, col); it; ++it) {
                    auto& r = residual[it.row()];
                    if (last_pos[it.row()] >= static_cast<int>(pos)) {
                        open_sum -= std::abs(r);
                        r -= it.value() * c;
                        open_sum += std::abs(r);
                    } else {
                        r -= it.value() * c;
                    }
                }
                current.erase(col);
            }
        }
    };
    dfs(0, k);
    return out;
}

std::vector<Chain> enumerate_circuits(const WindowPtr& w, int k, const CycleEnumOptions& opts) {
    std::vector<int> edge_cells;
    for (std::size_t i = 0; i < w->cells(1).size(); ++i)
        if (!w->cell_has_clipped_boundary(1, static_cast<int>(i)))
            edge_cells.push_back(static_cast<int>(i));
    auto edges = decode_edges(*w, edge_cells);

    const int nverts = static_cast<int>(w->cells(0).size());
    std::vector<std::vector<std::pair<int, int>>> adj(nverts);  // vertex -> (edge idx, dir)
    std::vector<Chain> loops_found;
    std::set<std::map<int, std::int64_t>> results;

    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].tail < 0) {
            // loop edge: a length-1 simple circuit when anchored at identity
            if (w->cells(1)[edges[e].cell].elem == 0 && k >= 1) {
                std::map<int, std::int64_t> unit;
                unit[edges[e].cell] = 1;
                results.insert(unit);
                unit[edges[e].cell] = -1;
                results.insert(unit);
            }
            continue;
        }
        adj[edges[e].tail].push_back({static_cast<int>(e), +1});
        adj[edges[e].head].push_back({static_cast<int>(e), -1});
    }

    // distances for pruning: BFS in the 1-skeleton
    std::vector<std::vector<int>> dist;
    {
        dist.assign(nverts, std::vector<int>(nverts, -1));
        for (int s = 0; s < nverts; ++s) {
            std::vector<int> q{s};
            dist[s][s] = 0;
            for (std::size_t h = 0; h < q.size(); ++h) {
                int v = q[h];
                for (auto [e, dir] : adj[v]) {
                    int u = dir > 0 ? edges[e].head : edges[e].tail;
                    if (dist[s][u] < 0) {
                        dist[s][u] = dist[s][v] + 1;
                        q.push_back(u);
                    }
                }
            }
        }
    }

    std::size_t nodes = 0;
    std::vector<char> on_path(nverts, 0);
    std::map<int, std::int64_t> current;
    std::function<void(int, int, int)> dfs = [&](int start, int v, int remaining) {
        if (++nodes > opts.max_nodes)
            throw ResourceLimitError("circuit enumeration node cap exceeded");
        for (auto [e, dir] : adj[v]) {
            int u = dir > 0 ? edges[e].head : edges[e].tail;
            if (current.count(edges[e].cell)) continue;
            if (u == start && !current.empty()) {
                current[edges[e].cell] = dir;
                Chain z{w, 1, current};
                Chain anchored = canonical_translate(z);
                if (results.size() >= opts.max_results)
                    throw ResourceLimitError("circuit enumeration result cap exceeded");
                results.insert(anchored.coeffs);
                current.erase(edges[e].cell);
                continue;
            }
            if (u <= start || on_path[u]) continue;
            if (remaining - 1 < 1 || dist[u][start] > remaining - 1) continue;
            current[edges[e].cell] = dir;
            on_path[u] = 1;
            dfs(start, u, remaining - 1);
            on_path[u] = 0;
            current.erase(edges[e].cell);
        }
    };
    for (int s = 0; s < nverts; ++s) {
        if (adj[s].empty()) continue;
        on_path[s] = 1;
        dfs(s, s, k);
        on_path[s] = 0;
    }
    std::vector<Chain> out;
    for (const auto& coeffs : results) out.push_back(Chain{w, 1, coeffs});
    return out;
}

}  // namespace

std::vector<Chain> enumerate_cycles(const WindowPtr& w, int dim, int k,
                                    const CycleEnumOptions& opts) {
    if (k < 1) throw ValidationError("cycle norm bound must be at least 1");
    if (opts.mode == CycleEnumMode::Circuits) {
        if (dim != 1) throw ValidationError("circuits mode requires dimension 1");
        return enumerate_circuits(w, k, opts);
    }
    if (dim < 1 || dim > w->top_dim()) {
        if (dim > w->top_dim()) return {};
        throw ValidationError("cycle enumeration needs dimension >= 1");
    }
    return enumerate_exhaustive(w, dim, k, opts);
}

CircuitDecomposition circuit_decompose(const Chain& z) {
    if (z.dim != 1) throw ValidationError("circuit decomposition is for 1-chains");
    if (!is_cycle(z)) throw ValidationError("circuit decomposition needs a cycle");
    CircuitDecomposition out;
    if (z.is_zero()) return out;

    const auto& w = *z.window;
    std::vector<int> support;
    for (const auto& [i, _] : z.coeffs) support.push_back(i);
    auto edges = decode_edges(w, support);
    std::map<int, const EdgeInfo*> info;
    for (const auto& e : edges) info[e.cell] = &e;

    std::map<int, std::int64_t> rem = z.coeffs;

    // loop edges split into unit parts immediately
    for (auto& [cell, c] : rem) {
        if (info[cell]->tail >= 0) continue;
        std::int64_t sgn = c > 0 ? 1 : -1;
        for (std::int64_t i = 0; i < std::abs(c); ++i) {
            out.parts.push_back(Chain{z.window, 1, {{cell, sgn}}});
            out.total_length += 1;
        }
        c = 0;
    }

    auto next_edge_from = [&](int v) -> std::pair<int, int> {
        // lowest-index nonzero edge leaving v in its sign direction
        for (const auto& [cell, c] : rem) {
            if (c == 0) continue;
            const auto* e = info[cell];
            if (c > 0 && e->tail == v) return {cell, +1};
            if (c < 0 && e->head == v) return {cell, -1};
        }
        return {-1, 0};
    };

    for (;;) {
        // least-index remaining edge starts the walk
        int start_cell = -1;
        for (const auto& [cell, c] : rem)
            if (c != 0) {
                start_cell = cell;
                break;
            }
        if (start_cell < 0) break;
        const auto* e0 = info[start_cell];
        int v = rem[start_cell] > 0 ? e0->tail : e0->head;

        std::vector<std::pair<int, int>> path;  // (edge cell, dir)
        std::vector<int> path_verts{v};
        std::map<int, int> vert_pos{{v, 0}};
        int cur = v;
        for (;;) {
            auto [cell, dir] = next_edge_from(cur);
            if (cell < 0)
                throw SpecConsistencyError("circuit walk stuck; input was not a cycle");
            const auto* e = info[cell];
            int nxt = dir > 0 ? e->head : e->tail;
            path.push_back({cell, dir});
            auto it = vert_pos.find(nxt);
            if (it != vert_pos.end()) {
                // extract the loop from the first occurrence of nxt
                int from = it->second;
                std::map<int, std::int64_t> part;
                for (std::size_t p = from; p < path.size(); ++p) {
                    part[path[p].first] += path[p].second;
                    rem[path[p].first] -= path[p].second;
                }
                Chain pc{z.window, 1, {}};
                for (const auto& [i, c] : part)
                    if (c != 0) pc.coeffs[i] = c;
                out.parts.push_back(pc);
                out.total_length += static_cast<std::int64_t>(path.size() - from);
                break;
            }
            vert_pos[nxt] = static_cast<int>(path_verts.size());
            path_verts.push_back(nxt);
            cur = nxt;
        }
    }
    return out;
}

Chain chain_from_literal(const WindowPtr& w, int dim,
                         const std::vector<ChainLiteralTerm>& terms) {
    const auto& grp = *w->spec()->group();
    std::map<int, std::int64_t> coeffs;
    for (const auto& t : terms) {
        int orbit = w->spec()->orbit_index(t.orbit);
        if (w->spec()->orbits()[orbit].dim != dim)
            throw ValidationError("literal term orbit '" + t.orbit + "' has wrong dimension");
        GroupElement g = grp.reduce(grp.parse_word(t.word));
        int e = w->element_index(g);
        if (e < 0)
            throw WindowTooSmallError("literal term element outside window: " + t.word);
        int idx = w->cell_index(dim, orbit, e);
        coeffs[idx] += t.coef;
    }
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second == 0 ? coeffs.erase(it) : std::next(it);
    return Chain{w, dim, std::move(coeffs)};
}

std::vector<ChainLiteralTerm> chain_to_literal(const Chain& c) {
    std::vector<ChainLiteralTerm> out;
    const auto& w = *c.window;
    for (const auto& [i, v] : c.coeffs) {
        const auto& cell = w.cells(c.dim)[i];
        out.push_back({v, w.spec()->orbits()[cell.orbit].id,
                       w.spec()->group()->word_to_string(w.ball()[cell.elem].normal_form)});
    }
    return out;
}

}  // namespace fillnorm
