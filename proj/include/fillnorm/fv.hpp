#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fillnorm/chain_map.hpp"
#include "fillnorm/fill.hpp"

namespace fillnorm {

// How large a window to enumerate cycles in, and how far the per-cycle fill
// solves may escalate.
struct RadiusPolicy {
    int enum_radius = 4;
    int fill_r_max = 5;
};

struct FvRow {
    int k = 0;
    std::int64_t value = 0;
    std::vector<ChainLiteralTerm> witness;  // a cycle attaining the max
    CycleEnumMode mode = CycleEnumMode::Exhaustive;
    // "exact" for exhaustive enumeration (within the window), "lower-bound"
    // for circuits mode or when some fill stayed infeasible in the window
    std::string status;
    int fill_radius = 0;  // largest radius any contributing fill used
    std::int64_t elapsed_ms = 0;
};

struct FVTable {
    std::string complex_label;
    int dim = 0;  // n: the cycle dimension
    int enum_radius = 0;
    std::vector<FvRow> rows;

    std::optional<std::int64_t> value_at(int k) const;
    bool row_exact(int k) const;
};

FVTable fv_table(const SpecPtr& spec, int n, int k_max, CycleEnumMode mode,
                 const RadiusPolicy& policy = {}, std::int64_t node_budget = 200000,
                 const CycleEnumOptions& enum_opts = {});

struct EquivalenceSample {
    std::vector<ChainLiteralTerm> cycle;
    std::int64_t norm_a = 0;
    std::int64_t norm_b = 0;
};

// Window-level two-sided filling-norm comparison between two complexes for
// the same group, with the constants predicted by operator bounds of the
// lifted maps one dimension up.
struct EquivalenceReport {
    std::string label_a, label_b;
    OperatorBound bound_ab, bound_ba;  // constants in dimension n+1
    std::vector<EquivalenceSample> samples;
    int skipped = 0;  // sampled cycles not fillable on either side in-window
    bool all_within = true;
};

EquivalenceReport check_norm_equivalence(const MapSpec& map_ab, const MapSpec& map_ba, int n,
                                         int sample_count, int k_sample, std::uint64_t seed,
                                         const RadiusPolicy& policy = {},
                                         std::int64_t node_budget = 200000);

struct DehnRow {
    int k = 0;
    std::int64_t fv = 0;
    std::int64_t circuit_max = 0;  // D(k): max filling norm over circuits of length <= k
    bool holds = false;            // fv <= k * D(k)
};

struct DehnReport {
    std::string complex_label;
    std::vector<DehnRow> rows;
    bool all_hold = true;
};

DehnReport dehn_consistency(const SpecPtr& spec, int k_max, const RadiusPolicy& policy = {},
                            std::int64_t node_budget = 200000);

struct FitResult {
    std::optional<int> constant;   // least C in 1..cap, or empty
    std::vector<int> skipped_k;    // rows where g(Ck+C) fell beyond the table
};

// Least integer C <= cap with f(k) <= C*g(Ck+C) + Ck + C on all usable rows,
// by direct scan. Rows where g is not tabulated at Ck+C are skipped and
// recorded; a C with no usable rows at all is never accepted.
FitResult linear_equiv_fit(const std::vector<std::pair<int, std::int64_t>>& f_rows,
                           const std::vector<std::pair<int, std::int64_t>>& g_rows, int c_cap);

struct SubgroupCheckReport {
    std::string embedding_label;
    FVTable h_table;
    FVTable g_table;
    FitResult fit;
    bool all_rows_exact = true;  // false degrades verdicts to "consistent with bound"
    // optional retraction validation
    std::optional<OperatorBound> retraction_bound;
    bool retraction_ok = true;
};

SubgroupCheckReport subgroup_inequality_check(
    const MapSpec& embedding, int n, int k_max, int c_cap, const RadiusPolicy& h_policy,
    const RadiusPolicy& g_policy, int g_k_max, std::int64_t node_budget = 200000,
    const std::optional<MapSpec>& retraction = std::nullopt, int retraction_samples = 200,
    std::uint64_t seed = 1);

}  // namespace fillnorm
