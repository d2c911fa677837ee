#pragma once

#include <map>
#include <string>
#include <vector>

#include "fillnorm/chain.hpp"

namespace fillnorm {

// Orbit-level description of an equivariant chain map between two complex
// specs, possibly over different groups related by a homomorphism given on
// generators. Maps are user-supplied data; the commuting-square property is
// validated, never synthesized.
struct MapSpec {
    std::string label;
    SpecPtr source;
    SpecPtr target;
    // source generator name -> word over the target generators
    std::map<std::string, std::string> word_map;
    // source orbit id -> image terms; orbits absent from the table map to 0
    std::map<std::string, std::vector<BoundaryTerm>> images;

    // Push a source group element through the generator homomorphism.
    GroupElement push_element(const GroupElement& g) const;
};

MapSpec make_identity_map(const SpecPtr& spec);

struct OperatorBound {
    std::string map_label;
    int dim = 0;
    std::int64_t constant = 0;   // max over source basis orbits of ||phi(orbit)||_1
    std::string witness_orbit;   // orbit attaining the max
};

// The Lemma-style bound: C = max over same-dimension basis orbits of the l1
// norm of the image (after combining coincident terms).
OperatorBound operator_bound(const MapSpec& m, int dim);

// A map instantiated on a pair of windows as per-dimension sparse integer
// matrices. Image terms that fall outside the target window are recorded;
// applying the map to a chain touching such a cell raises window-too-small.
class WindowChainMap {
public:
    WindowChainMap(MapSpec spec, WindowPtr source, WindowPtr target);

    const MapSpec& map_spec() const { return spec_; }
    const WindowPtr& source() const { return source_; }
    const WindowPtr& target() const { return target_; }

    Chain apply(const Chain& c) const;

    // Checks the commuting square on every source cell whose own
    // boundary, image, and image-of-boundary are fully in-window. Throws
    // ValidationError on the first violation.
    void validate_commuting() const;

private:
    MapSpec spec_;
    WindowPtr source_;
    WindowPtr target_;
    std::vector<Eigen::SparseMatrix<std::int64_t>> mats_;
    std::vector<std::vector<bool>> clipped_;
};

}  // namespace fillnorm
