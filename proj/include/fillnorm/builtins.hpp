#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fillnorm/chain_map.hpp"

namespace fillnorm {
namespace builtins {

struct CatalogEntry {
    std::string name;
    std::string kind;  // "presentation" | "complex" | "map"
    int top_dim = -1;  // complexes only
    std::string summary;
};

const std::vector<CatalogEntry>& catalog();

// Built-in presentations: z1, z2, z3, free2, heisenberg3, z2-redundant,
// trivial, gersten-group(k). Parameterized names take the form "name(k)".
GroupPtr group(const std::string& name);

// Built-in complex specs: z2-torus, z3-cubes, free2, heisenberg3,
// z2-redundant, gersten(k) with k >= 2.
SpecPtr complex(const std::string& name);

// A pair of comparison maps between two complexes sharing endpoint specs:
//   z2-std-red      z2-torus <-> z2-redundant
//   gersten(k)-doubling   gersten(k) <-> itself, coefficients doubled both ways
//   identity:<complex>    a complex with itself
struct MapPair {
    MapSpec forward;
    MapSpec backward;
};
MapPair map_pair(const std::string& name);

// A subcomplex embedding with its optional retraction, sharing specs:
//   z2-into-z3      coordinate-plane torus inside the cube complex
//   free2-into-z2   wedge of two circles onto the torus 1-skeleton
struct Embedding {
    MapSpec embedding;
    std::optional<MapSpec> retraction;
};
Embedding embedding(const std::string& name);

}  // namespace builtins
}  // namespace fillnorm
