#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fillnorm/complex.hpp"

namespace fillnorm {

// Sparse integer chain on a window. Zero coefficients are never stored.
struct Chain {
    WindowPtr window;
    int dim = 0;
    std::map<int, std::int64_t> coeffs;  // cell index -> nonzero coefficient

    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const Chain& o) const { return dim == o.dim && coeffs == o.coeffs; }
};

Chain make_chain(WindowPtr w, int dim, std::map<int, std::int64_t> coeffs);

std::int64_t l1_norm(const Chain& c);

Chain add(const Chain& a, const Chain& b);
Chain scale(const Chain& a, std::int64_t n);
Chain negate(const Chain& a);

// Boundary via the window's sparse matrix. Throws WindowTooSmallError when a
// support cell has clipped boundary terms: such a boundary is undefined, not
// approximated.
Chain boundary(const Chain& c);

bool is_cycle(const Chain& c);

// Left-translate the whole chain by h. Throws WindowTooSmallError if any
// translated cell leaves the window.
Chain translate(const Chain& c, const GroupElement& h);

// h.c where h moves the shortlex-least group element of the support to the
// identity. Idempotent and l1-preserving.
Chain canonical_translate(const Chain& c);

enum class CycleEnumMode { Exhaustive, Circuits };

struct CycleEnumOptions {
    CycleEnumMode mode = CycleEnumMode::Exhaustive;
    std::size_t max_results = 2000000;
    std::size_t max_nodes = 500000000;  // DFS node guard
};

// Exhaustive: all canonical-translate representatives of nonzero n-cycles
// with l1 <= k supported on cells with unclipped boundary. Circuits: all
// identity-anchored simple edge circuit chains of length <= k (dim must
// be 1), both orientations.
std::vector<Chain> enumerate_cycles(const WindowPtr& w, int dim, int k,
                                    const CycleEnumOptions& opts = {});

struct CircuitDecomposition {
    std::vector<Chain> parts;
    std::int64_t total_length = 0;
};

// Greedy extraction of simple closed walks along nonzero edges, following
// coefficient signs; ties break by cell index. Parts sum to the input and
// part lengths sum to its l1 norm.
CircuitDecomposition circuit_decompose(const Chain& z);

// Test-fixture literal: list of (coef, orbit id, element word) triples.
struct ChainLiteralTerm {
    std::int64_t coef;
    std::string orbit;
    std::string word;
};

Chain chain_from_literal(const WindowPtr& w, int dim,
                         const std::vector<ChainLiteralTerm>& terms);
std::vector<ChainLiteralTerm> chain_to_literal(const Chain& c);

}  // namespace fillnorm
