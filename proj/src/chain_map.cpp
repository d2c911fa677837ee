#include "fillnorm/chain_map.hpp"

#include <algorithm>

#include "fillnorm/errors.hpp"

namespace fillnorm {

GroupElement MapSpec::push_element(const GroupElement& g) const {
    const auto& sg = *source->group();
    const auto& tg = *target->group();
    Word image;
    for (Letter l : g.normal_form) {
        const auto& gen = sg.generators()[letter_generator(l)];
        auto it = word_map.find(gen.name);
        if (it == word_map.end())
            throw ValidationError("map '" + label + "' lacks an image for generator '" +
                                  gen.name + "'");
        Word w = tg.parse_word(it->second);
        if (letter_is_inverse(l)) w = inverse_word(w);
        image.insert(image.end(), w.begin(), w.end());
    }
    return tg.reduce(image);
}

MapSpec make_identity_map(const SpecPtr& spec) {
    MapSpec m;
    m.label = "identity";
    m.source = spec;
    m.target = spec;
    for (const auto& g : spec->group()->generators()) m.word_map[g.name] = g.name;
    for (const auto& o : spec->orbits()) m.images[o.id] = {{1, Word{}, o.id}};
    return m;
}

OperatorBound operator_bound(const MapSpec& m, int dim) {
    OperatorBound out;
    out.map_label = m.label;
    out.dim = dim;
    const auto& tg = *m.target->group();
    for (const auto& o : m.source->orbits()) {
        if (o.dim != dim) continue;
        std::int64_t norm = 0;
        auto it = m.images.find(o.id);
        if (it != m.images.end()) {
            std::map<std::pair<Word, std::string>, std::int64_t> combined;
            for (const auto& t : it->second)
                combined[{tg.reduce(t.element).normal_form, t.target}] += t.coef;
            for (const auto& [_, c] : combined) norm += std::abs(c);
        }
        if (norm >= out.constant) {
            if (norm > out.constant || out.witness_orbit.empty()) out.witness_orbit = o.id;
            out.constant = norm;
        }
    }
    return out;
}

WindowChainMap::WindowChainMap(MapSpec spec, WindowPtr source, WindowPtr target)
    : spec_(std::move(spec)), source_(std::move(source)), target_(std::move(target)) {
    if (spec_.source != source_->spec() || spec_.target != target_->spec())
        throw ValidationError("window chain map: spec/window mismatch for '" + spec_.label +
                              "'");
    const auto& tg = *target_->spec()->group();
    const int top = source_->top_dim();
    mats_.assign(top + 1, {});
    clipped_.assign(top + 1, {});
    for (int d = 0; d <= top; ++d) {
        const auto& cells = source_->cells(d);
        clipped_[d].assign(cells.size(), false);
        std::vector<Eigen::Triplet<std::int64_t>> trips;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const auto& orbit = source_->spec()->orbits()[cells[j].orbit];
            auto it = spec_.images.find(orbit.id);
            if (it == spec_.images.end()) continue;  // maps to zero
            GroupElement moved = spec_.push_element(source_->ball()[cells[j].elem]);
            for (const auto& term : it->second) {
                GroupElement at = tg.multiply(moved, tg.reduce(term.element));
                int e = target_->element_index(at);
                int row = e < 0 ? -1
                                : target_->cell_index(
                                      d, target_->spec()->orbit_index(term.target), e);
                if (row < 0) {
                    clipped_[d][j] = true;
                    continue;
                }
                trips.emplace_back(row, static_cast<int>(j), term.coef);
            }
        }
        Eigen::SparseMatrix<std::int64_t> mat(
            static_cast<int>(target_->cells(d).size()), static_cast<int>(cells.size()));
        mat.setFromTriplets(trips.begin(), trips.end());
        mat.prune([](int, int, std::int64_t v) { return v != 0; });
        mats_[d] = std::move(mat);
    }
}

Chain WindowChainMap::apply(const Chain& c) const {
    if (c.window != source_)
        throw ValidationError("chain map applied to a chain from another window");
    Chain out{target_, c.dim, {}};
    if (c.dim > source_->top_dim()) {
        if (!c.is_zero()) throw ValidationError("chain dimension above source top dimension");
        return out;
    }
    const auto& m = mats_[c.dim];
    for (const auto& [j, v] : c.coeffs) {
        if (clipped_[c.dim][j])
            throw WindowTooSmallError("map image clipped at cell " +
                                      source_->cell_label(c.dim, j));
        for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(m, j); it; ++it) {
            auto& slot = out.coeffs[static_cast<int>(it.row())];
            slot += it.value() * v;
            if (slot == 0) out.coeffs.erase(static_cast<int>(it.row()));
        }
    }
    return out;
}

void WindowChainMap::validate_commuting() const {
    const int top = std::min(source_->top_dim(), target_->top_dim());
    for (int d = 1; d <= top; ++d) {
        for (std::size_t j = 0; j < source_->cells(d).size(); ++j) {
            if (clipped_[d][j] || source_->cell_has_clipped_boundary(d, static_cast<int>(j)))
                continue;
            Chain cell{source_, d, {{static_cast<int>(j), 1}}};
            Chain db = boundary(cell);
            bool usable = true;
            for (const auto& [i, _] : db.coeffs)
                if (clipped_[d - 1][i]) {
                    usable = false;
                    break;
                }
            if (!usable) continue;
            Chain image = apply(cell);
            for (const auto& [i, _] : image.coeffs)
                if (target_->cell_has_clipped_boundary(d, i)) {
                    usable = false;
                    break;
                }
            if (!usable) continue;
            Chain lhs = boundary(image);
            Chain rhs = apply(db);
            if (!(lhs == rhs))
                throw ValidationError("map '" + spec_.label +
                                      "' does not commute with boundaries at " +
                                      source_->cell_label(d, static_cast<int>(j)));
        }
    }
}

}  // namespace fillnorm
