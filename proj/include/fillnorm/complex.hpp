#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fillnorm/group.hpp"

namespace fillnorm {

// One formal term of a ZG-chain boundary: coef * (element . target_orbit).
struct BoundaryTerm {
    std::int64_t coef;
    Word element;      // reduced word in the acting group
    std::string target;  // id of an orbit one dimension down
};

struct CellOrbit {
    std::string id;
    int dim = 0;
    std::vector<BoundaryTerm> boundary;
};

// Orbit cells per dimension with ZG-chain boundary words: the algebraic
// stand-in for the equivariant skeleton of a K(G,1). The acting group is a
// presentation, or the trivial presentation (no generators).
class ComplexSpec {
public:
    ComplexSpec(std::string name, GroupPtr group, std::vector<CellOrbit> orbits);

    const std::string& name() const { return name_; }
    const GroupPtr& group() const { return group_; }
    const std::vector<CellOrbit>& orbits() const { return orbits_; }
    int top_dim() const { return top_dim_; }

    // Orbit indices of a given dimension, in declaration order.
    const std::vector<int>& orbits_of_dim(int d) const;
    int orbit_index(const std::string& id) const;

private:
    void validate();

    std::string name_;
    GroupPtr group_;
    std::vector<CellOrbit> orbits_;
    int top_dim_ = 0;
    std::vector<std::vector<int>> by_dim_;
    std::map<std::string, int> index_;
};

using SpecPtr = std::shared_ptr<const ComplexSpec>;

// Standard 2-complex of a presentation: one vertex orbit, one edge orbit per
// generator, one 2-cell orbit per relator whose boundary lists a +/-1 term at
// each letter position (prefix-translate convention).
SpecPtr build_presentation_complex(const GroupPtr& p);

// Wedge an n-sphere and cap it: adds an n-orbit with zero boundary and an
// (n+1)-orbit whose boundary is that sphere at the identity. Frees up the
// n-cycle module by a ZG summand per window anchor.
SpecPtr eilenberg_trick(const SpecPtr& spec, int n);

struct WindowCell {
    int orbit;  // index into spec.orbits()
    int elem;   // index into window ball
};

// A boundary term whose target fell outside the window. Never silently
// dropped: cells with clipped boundary poison any chain operation that
// touches them.
struct ClippedTerm {
    int dim;
    int cell;  // cell index within its dimension
    std::int64_t coef;
    Word target_element;
    std::string target_orbit;
};

// Finite instantiation of the universal cover inside a word-metric ball.
// Immutable after construction.
class ComplexWindow {
public:
    static std::shared_ptr<const ComplexWindow> instantiate(const SpecPtr& spec, int radius,
                                                            std::size_t ball_cap = 200000);

    const SpecPtr& spec() const { return spec_; }
    int radius() const { return radius_; }
    int top_dim() const { return spec_->top_dim(); }

    const std::vector<GroupElement>& ball() const { return ball_; }
    int element_index(const GroupElement& g) const;  // -1 if absent

    // Cells of a dimension; empty for dimensions the spec does not populate.
    const std::vector<WindowCell>& cells(int dim) const {
        static const std::vector<WindowCell> none;
        return (dim < 0 || dim > top_dim()) ? none : cells_[dim];
    }
    // cell index within dimension, or -1 when the pair is outside the window
    int cell_index(int dim, int orbit, int elem) const;

    // Sparse integer boundary matrix from dim-d cells to dim-(d-1) cells.
    // Columns of cells with clipped terms hold only the in-window part.
    const Eigen::SparseMatrix<std::int64_t>& boundary_matrix(int d) const { return bnd_[d]; }

    bool cell_has_clipped_boundary(int dim, int cell) const { return clipped_flag_[dim][cell]; }
    const std::vector<ClippedTerm>& clipped_ledger() const { return clipped_; }

    // True once the d(d(cell)) = 0 check passed on every column whose two-step
    // boundary lies fully in-window.
    bool dd_zero_certified() const { return dd_certified_; }

    std::string cell_label(int dim, int cell) const;

private:
    ComplexWindow() = default;
    void verify_dd_zero() const;

    SpecPtr spec_;
    int radius_ = 0;
    std::vector<GroupElement> ball_;
    std::map<Word, int> elem_index_;
    std::vector<std::vector<WindowCell>> cells_;
    std::vector<std::map<std::pair<int, int>, int>> cell_index_;
    std::vector<Eigen::SparseMatrix<std::int64_t>> bnd_;
    std::vector<std::vector<bool>> clipped_flag_;
    std::vector<ClippedTerm> clipped_;
    bool dd_certified_ = false;
};

using WindowPtr = std::shared_ptr<const ComplexWindow>;

}  // namespace fillnorm
