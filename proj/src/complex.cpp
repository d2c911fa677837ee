#include "fillnorm/complex.hpp"

#include <algorithm>
#include <set>

#include "fillnorm/errors.hpp"

namespace fillnorm {

ComplexSpec::ComplexSpec(std::string name, GroupPtr group, std::vector<CellOrbit> orbits)
    : name_(std::move(name)), group_(std::move(group)), orbits_(std::move(orbits)) {
    validate();
}

void ComplexSpec::validate() {
    if (!group_) throw ValidationError("complex '" + name_ + "' has no group");
    if (orbits_.empty()) throw ValidationError("complex '" + name_ + "' has no orbits");
    top_dim_ = 0;
    for (const auto& o : orbits_) {
        if (o.dim < 0) throw ValidationError("negative orbit dimension");
        top_dim_ = std::max(top_dim_, o.dim);
    }
    by_dim_.assign(top_dim_ + 1, {});
    for (std::size_t i = 0; i < orbits_.size(); ++i) {
        if (!index_.emplace(orbits_[i].id, static_cast<int>(i)).second)
            throw ValidationError("duplicate orbit id '" + orbits_[i].id + "'");
        by_dim_[orbits_[i].dim].push_back(static_cast<int>(i));
    }
    for (int d = 0; d <= top_dim_; ++d)
        if (by_dim_[d].empty())
            throw ValidationError("complex '" + name_ + "' has no orbits in dimension " +
                                  std::to_string(d));
    for (auto& o : orbits_) {
        if (o.dim == 0 && !o.boundary.empty())
            throw ValidationError("0-orbit '" + o.id + "' has a boundary");
        // reduce term elements and combine coincident terms
        std::map<std::pair<Word, std::string>, std::int64_t> combined;
        for (const auto& t : o.boundary) {
            auto it = index_.find(t.target);
            if (it == index_.end())
                throw ValidationError("orbit '" + o.id + "' references unknown orbit '" +
                                      t.target + "'");
            if (orbits_[it->second].dim != o.dim - 1)
                throw ValidationError("orbit '" + o.id + "' boundary term '" + t.target +
                                      "' is not one dimension down");
            Word nf = group_->reduce(t.element).normal_form;
            combined[{nf, t.target}] += t.coef;
        }
        o.boundary.clear();
        for (const auto& [key, c] : combined)
            if (c != 0) o.boundary.push_back({c, key.first, key.second});
    }
}

const std::vector<int>& ComplexSpec::orbits_of_dim(int d) const {
    static const std::vector<int> empty;
    if (d < 0 || d > top_dim_) return empty;
    return by_dim_[d];
}

int ComplexSpec::orbit_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("unknown orbit id '" + id + "'");
    return it->second;
}

SpecPtr build_presentation_complex(const GroupPtr& p) {
    std::vector<CellOrbit> orbits;
    orbits.push_back({"v", 0, {}});
    for (const auto& g : p->generators()) {
        // edge from g0 to g0*x: boundary x.v - v
        Letter l = static_cast<Letter>(2 * (&g - p->generators().data()));
        orbits.push_back({"e_" + g.name, 1, {{1, Word{l}, "v"}, {-1, Word{}, "v"}}});
    }
    int ri = 0;
    for (const auto& rel : p->relators()) {
        if (rel.empty()) throw ValidationError("empty relator in '" + p->name() + "'");
        CellOrbit o;
        o.id = "r" + std::to_string(++ri);
        o.dim = 2;
        Word prefix;
        for (Letter l : rel) {
            const std::string edge = "e_" + p->generators()[letter_generator(l)].name;
            if (!letter_is_inverse(l)) {
                o.boundary.push_back({1, p->reduce(prefix).normal_form, edge});
                prefix.push_back(l);
            } else {
                // the edge traversed backwards sits at the prefix including
                // this letter
                prefix.push_back(l);
                o.boundary.push_back({-1, p->reduce(prefix).normal_form, edge});
            }
        }
        orbits.push_back(std::move(o));
    }
    return std::make_shared<ComplexSpec>(p->name() + "-presentation-complex", p,
                                         std::move(orbits));
}

SpecPtr eilenberg_trick(const SpecPtr& spec, int n) {
    if (n < 1) throw ValidationError("eilenberg trick needs dimension >= 1");
    if (n > spec->top_dim())
        throw ValidationError("eilenberg trick dimension exceeds complex top dimension");
    std::vector<CellOrbit> orbits = spec->orbits();
    int tag = 0;
    auto fresh = [&](const std::string& base) {
        std::set<std::string> ids;
        for (const auto& o : orbits) ids.insert(o.id);
        std::string id;
        do {
            id = base + std::to_string(tag++);
        } while (ids.count(id));
        return id;
    };
    std::string sphere = fresh("sphere");
    std::string cap = fresh("cap");
    orbits.push_back({sphere, n, {}});
    orbits.push_back({cap, n + 1, {{1, Word{}, sphere}}});
    return std::make_shared<ComplexSpec>(spec->name() + "+wedge", spec->group(),
                                         std::move(orbits));
}

std::shared_ptr<const ComplexWindow> ComplexWindow::instantiate(const SpecPtr& spec, int radius,
                                                                std::size_t ball_cap) {
    if (radius < 0) throw ValidationError("window radius must be non-negative");
    auto w = std::shared_ptr<ComplexWindow>(new ComplexWindow());
    w->spec_ = spec;
    w->radius_ = radius;
    w->ball_ = spec->group()->ball(radius, ball_cap);
    for (std::size_t i = 0; i < w->ball_.size(); ++i)
        w->elem_index_[w->ball_[i].normal_form] = static_cast<int>(i);

    const int top = spec->top_dim();
    w->cells_.assign(top + 1, {});
    w->cell_index_.assign(top + 1, {});
    w->bnd_.assign(top + 1, {});
    w->clipped_flag_.assign(top + 1, {});

    for (int d = 0; d <= top; ++d) {
        std::vector<int> orbit_ids = spec->orbits_of_dim(d);
        std::sort(orbit_ids.begin(), orbit_ids.end(), [&](int a, int b) {
            return spec->orbits()[a].id < spec->orbits()[b].id;
        });
        for (int oi : orbit_ids)
            for (std::size_t e = 0; e < w->ball_.size(); ++e) {
                int idx = static_cast<int>(w->cells_[d].size());
                w->cells_[d].push_back({oi, static_cast<int>(e)});
                w->cell_index_[d][{oi, static_cast<int>(e)}] = idx;
            }
        w->clipped_flag_[d].assign(w->cells_[d].size(), false);
    }

    const auto& grp = *spec->group();
    for (int d = 1; d <= top; ++d) {
        std::vector<Eigen::Triplet<std::int64_t>> trips;
        for (std::size_t j = 0; j < w->cells_[d].size(); ++j) {
            const auto& cell = w->cells_[d][j];
            const auto& orbit = spec->orbits()[cell.orbit];
            const GroupElement& g = w->ball_[cell.elem];
            for (const auto& term : orbit.boundary) {
                GroupElement target = grp.reduce(concat(g.normal_form, term.element));
                auto it = w->elem_index_.find(target.normal_form);
                if (it == w->elem_index_.end()) {
                    w->clipped_flag_[d][j] = true;
                    w->clipped_.push_back({d, static_cast<int>(j), term.coef,
                                           target.normal_form, term.target});
                    continue;
                }
                int row = w->cell_index_[d - 1].at(
                    {spec->orbit_index(term.target), it->second});
                trips.emplace_back(row, static_cast<int>(j), term.coef);
            }
        }
        Eigen::SparseMatrix<std::int64_t> m(static_cast<int>(w->cells_[d - 1].size()),
                                            static_cast<int>(w->cells_[d].size()));
        m.setFromTriplets(trips.begin(), trips.end());
        m.prune([](int, int, std::int64_t v) { return v != 0; });
        w->bnd_[d] = std::move(m);
    }
    w->verify_dd_zero();
    w->dd_certified_ = true;
    return w;
}

void ComplexWindow::verify_dd_zero() const {
    for (int d = 2; d <= top_dim(); ++d) {
        const auto& outer = bnd_[d];
        const auto& inner = bnd_[d - 1];
        for (int j = 0; j < outer.cols(); ++j) {
            if (clipped_flag_[d][j]) continue;
            bool usable = true;
            for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(outer, j); it; ++it)
                if (clipped_flag_[d - 1][it.row()]) {
                    usable = false;
                    break;
                }
            if (!usable) continue;
            std::map<int, std::int64_t> acc;
            for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(outer, j); it; ++it)
                for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it2(inner,
                                                                          static_cast<int>(it.row()));
                     it2; ++it2)
                    acc[static_cast<int>(it2.row())] += it.value() * it2.value();
            for (const auto& [row, v] : acc)
                if (v != 0)
                    throw SpecConsistencyError(
                        "boundary does not square to zero in complex '" + spec_->name() +
                        "' at " + cell_label(d, j));
        }
    }
}

int ComplexWindow::element_index(const GroupElement& g) const {
    auto it = elem_index_.find(g.normal_form);
    return it == elem_index_.end() ? -1 : it->second;
}

int ComplexWindow::cell_index(int dim, int orbit, int elem) const {
    if (dim < 0 || dim > top_dim()) return -1;
    auto it = cell_index_[dim].find({orbit, elem});
    return it == cell_index_[dim].end() ? -1 : it->second;
}

std::string ComplexWindow::cell_label(int dim, int cell) const {
    const auto& c = cells_[dim][cell];
    std::string word = spec_->group()->word_to_string(ball_[c.elem].normal_form);
    if (word.empty()) word = "1";
    return spec_->orbits()[c.orbit].id + "@" + word;
}

}  // namespace fillnorm
