#pragma once

#include <optional>

#include "fillnorm/chain.hpp"
#include "fillnorm/simplex.hpp"

namespace fillnorm {

// A minimum-l1 filling problem: find an (n+1)-chain in the window whose
// boundary is the given n-cycle.
struct FillingInstance {
    WindowPtr window;
    Chain target;      // a cycle of dimension fill_dim - 1
    int fill_dim = 0;  // dimension of the sought chain
};

FillingInstance make_filling_instance(const Chain& target);

enum class FillStatus { WindowExactUpperBound, Stabilized, InfeasibleInWindow };

struct FillingCertificate {
    std::optional<std::int64_t> value;  // empty when infeasible in the window
    std::optional<Chain> witness;       // boundary(witness) == target when present
    Rational lp_bound = 0;
    FillStatus status = FillStatus::WindowExactUpperBound;
    int radius = 0;
    std::int64_t node_count = 0;
    std::int64_t elapsed_ms = 0;

    bool feasible() const { return value.has_value(); }
};

struct LpRelaxation {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::map<int, Rational> witness;  // fill-cell index -> fractional coefficient
};

// Exact rational optimum of  min sum(u+v)  s.t.  d(u - v) = target, u,v >= 0,
// over fill cells with unclipped boundary.
LpRelaxation lp_relaxation(const FillingInstance& inst);

// Integer optimum by branch and bound on the relaxation: most-fractional
// branching, best-bound node order, exact arithmetic throughout. The returned
// value is certified minimal among window-supported fillings by search
// exhaustion. Throws ResourceLimitError past the node budget.
FillingCertificate fill_norm(const FillingInstance& inst, std::int64_t node_budget = 200000);

// Runs fill_norm on windows of radius r0, r0+1, ... until two consecutive
// radii agree (status Stabilized on the last certificate) or r_max is
// reached. Values are non-increasing in the radius; each is a valid upper
// bound for the true filling norm.
std::vector<FillingCertificate> escalate_until_stable(
    const SpecPtr& spec, int dim, const std::vector<ChainLiteralTerm>& target_literal,
    int r0, int r_max, std::int64_t node_budget = 200000);

}  // namespace fillnorm
