#include "fillnorm/fv.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "fillnorm/errors.hpp"

namespace fillnorm {

namespace {

int literal_radius(const SpecPtr& spec, const std::vector<ChainLiteralTerm>& lit) {
    const auto& g = *spec->group();
    int r = 0;
    for (const auto& t : lit)
        r = std::max(r, static_cast<int>(g.reduce(g.parse_word(t.word)).normal_form.size()));
    return r;
}

FillingCertificate fill_cycle(const SpecPtr& spec, int dim,
                              const std::vector<ChainLiteralTerm>& lit, int r_max,
                              std::int64_t node_budget) {
    int r0 = std::min(std::max(1, literal_radius(spec, lit)), r_max);
    auto seq = escalate_until_stable(spec, dim, lit, r0, r_max, node_budget);
    return seq.back();
}

std::string literal_key(const std::vector<ChainLiteralTerm>& lit) {
    std::ostringstream os;
    for (const auto& t : lit) os << t.coef << '|' << t.orbit << '|' << t.word << ';';
    return os.str();
}

// How much farther a word-map can stretch the window radius.
int map_stretch(const MapSpec& m) {
    int s = 1;
    const auto& tg = *m.target->group();
    for (const auto& [_, w] : m.word_map)
        s = std::max(s, static_cast<int>(tg.parse_word(w).size()));
    return s;
}

}  // namespace

std::optional<std::int64_t> FVTable::value_at(int k) const {
    for (const auto& r : rows)
        if (r.k == k) return r.value;
    return std::nullopt;
}

bool FVTable::row_exact(int k) const {
    for (const auto& r : rows)
        if (r.k == k) return r.status == "exact";
    return false;
}

FVTable fv_table(const SpecPtr& spec, int n, int k_max, CycleEnumMode mode,
                 const RadiusPolicy& policy, std::int64_t node_budget,
                 const CycleEnumOptions& enum_opts) {
    if (k_max < 1) throw ValidationError("fv table needs k_max >= 1");
    FVTable table;
    table.complex_label = spec->name();
    table.dim = n;
    table.enum_radius = policy.enum_radius;

    auto window = ComplexWindow::instantiate(spec, policy.enum_radius);
    CycleEnumOptions opts = enum_opts;
    opts.mode = mode;
    std::vector<Chain> cycles = enumerate_cycles(window, n, k_max, opts);

    struct Entry {
        std::int64_t norm;
        std::vector<ChainLiteralTerm> literal;
        FillingCertificate cert;
    };
    std::vector<Entry> entries;
    std::map<std::string, FillingCertificate> cache;
    for (const auto& z : cycles) {
        Entry e;
        e.norm = l1_norm(z);
        e.literal = chain_to_literal(z);
        auto key = literal_key(e.literal);
        auto it = cache.find(key);
        if (it == cache.end()) {
            e.cert = fill_cycle(spec, n, e.literal, policy.fill_r_max, node_budget);
            cache.emplace(key, e.cert);
        } else {
            e.cert = it->second;
        }
        entries.push_back(std::move(e));
    }

    for (int k = 1; k <= k_max; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        FvRow row;
        row.k = k;
        row.mode = mode;
        bool complete = true;
        for (const auto& e : entries) {
            if (e.norm > k) continue;
            if (!e.cert.feasible()) {
                complete = false;
                continue;
            }
            row.fill_radius = std::max(row.fill_radius, e.cert.radius);
            if (*e.cert.value > row.value) {
                row.value = *e.cert.value;
                row.witness = e.literal;
            }
        }
        row.status = (mode == CycleEnumMode::Exhaustive && complete) ? "exact" : "lower-bound";
        row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        table.rows.push_back(std::move(row));
    }
    return table;
}

EquivalenceReport check_norm_equivalence(const MapSpec& map_ab, const MapSpec& map_ba, int n,
                                         int sample_count, int k_sample, std::uint64_t seed,
                                         const RadiusPolicy& policy,
                                         std::int64_t node_budget) {
    if (map_ab.source != map_ba.target || map_ab.target != map_ba.source)
        throw ValidationError("norm equivalence maps are not a matching pair");
    const SpecPtr& spec_a = map_ab.source;
    const SpecPtr& spec_b = map_ab.target;

    EquivalenceReport report;
    report.label_a = spec_a->name();
    report.label_b = spec_b->name();
    report.bound_ab = operator_bound(map_ab, n + 1);
    report.bound_ba = operator_bound(map_ba, n + 1);

    int ra = policy.enum_radius;
    int rb = std::max(ra * map_stretch(map_ab), policy.enum_radius);
    auto wa = ComplexWindow::instantiate(spec_a, ra);
    auto wb = ComplexWindow::instantiate(spec_b, rb);
    WindowChainMap fwd(map_ab, wa, wb);
    fwd.validate_commuting();
    WindowChainMap bwd(map_ba, wb, wa);
    bwd.validate_commuting();

    std::vector<Chain> cycles = enumerate_cycles(wa, n, k_sample);
    std::mt19937_64 rng(seed);
    std::shuffle(cycles.begin(), cycles.end(), rng);
    if (static_cast<int>(cycles.size()) > sample_count) cycles.resize(sample_count);

    for (const auto& z : cycles) {
        Chain tz = fwd.apply(z);
        if (!is_cycle(tz))
            throw ValidationError("transport produced a non-cycle under map '" +
                                  map_ab.label + "'");

        EquivalenceSample s;
        s.cycle = chain_to_literal(z);
        auto ca = fill_cycle(spec_a, n, s.cycle, policy.fill_r_max, node_budget);
        auto cb = fill_cycle(spec_b, n, chain_to_literal(tz),
                             policy.fill_r_max * map_stretch(map_ab), node_budget);
        if (!ca.feasible() || !cb.feasible()) {
            // not a boundary in the window on one side; nothing to compare
            ++report.skipped;
            continue;
        }
        // mutual inverse up to boundary, validated per fillable sample
        Chain back = bwd.apply(tz);
        Chain diff = add(z, negate(back));
        if (!diff.is_zero()) {
            auto c = fill_norm(make_filling_instance(diff), node_budget);
            if (!c.feasible())
                throw ValidationError("maps '" + map_ab.label + "'/'" + map_ba.label +
                                      "' are not mutually inverse up to boundaries");
        }
        s.norm_a = *ca.value;
        s.norm_b = *cb.value;
        if (s.norm_b > report.bound_ab.constant * s.norm_a ||
            s.norm_a > report.bound_ba.constant * s.norm_b)
            report.all_within = false;
        report.samples.push_back(std::move(s));
    }
    return report;
}

DehnReport dehn_consistency(const SpecPtr& spec, int k_max, const RadiusPolicy& policy,
                            std::int64_t node_budget) {
    DehnReport report;
    report.complex_label = spec->name();
    FVTable fv = fv_table(spec, 1, k_max, CycleEnumMode::Exhaustive, policy, node_budget);

    auto window = ComplexWindow::instantiate(spec, policy.enum_radius);
    CycleEnumOptions copts;
    copts.mode = CycleEnumMode::Circuits;
    std::vector<Chain> circuits = enumerate_cycles(window, 1, k_max, copts);

    // D(k): max filling norm over simple circuits of length <= k
    std::vector<std::int64_t> d(k_max + 1, 0);
    for (const auto& c : circuits) {
        std::int64_t len = l1_norm(c);
        if (len > k_max) continue;
        auto cert = fill_cycle(spec, 1, chain_to_literal(c), policy.fill_r_max, node_budget);
        if (!cert.feasible()) throw WindowTooSmallError("circuit not fillable in window");
        d[len] = std::max(d[len], *cert.value);
    }
    for (int k = 1; k <= k_max; ++k) d[k] = std::max(d[k], d[k - 1]);

    for (const auto& row : fv.rows) {
        if (row.status != "exact") continue;
        DehnRow r{row.k, row.value, d[row.k], row.value <= row.k * d[row.k]};
        if (!r.holds) report.all_hold = false;
        report.rows.push_back(r);
    }
    return report;
}

FitResult linear_equiv_fit(const std::vector<std::pair<int, std::int64_t>>& f_rows,
                           const std::vector<std::pair<int, std::int64_t>>& g_rows,
                           int c_cap) {
    if (f_rows.empty()) throw ValidationError("linear equivalence fit: no rows for f");
    std::map<int, std::int64_t> g;
    for (const auto& [k, v] : g_rows) g[k] = v;
    if (g.empty()) throw ValidationError("linear equivalence fit: no rows for g");

    for (int c = 1; c <= c_cap; ++c) {
        bool ok = true;
        bool any_usable = false;
        std::vector<int> skipped;
        for (const auto& [k, fv] : f_rows) {
            auto it = g.find(c * k + c);
            if (it == g.end()) {
                skipped.push_back(k);
                continue;
            }
            any_usable = true;
            if (fv > c * it->second + static_cast<std::int64_t>(c) * k + c) {
                ok = false;
                break;
            }
        }
        if (ok && any_usable) return {c, std::move(skipped)};
    }
    return {std::nullopt, {}};
}

SubgroupCheckReport subgroup_inequality_check(
    const MapSpec& embedding, int n, int k_max, int c_cap, const RadiusPolicy& h_policy,
    const RadiusPolicy& g_policy, int g_k_max, std::int64_t node_budget,
    const std::optional<MapSpec>& retraction, int retraction_samples, std::uint64_t seed) {
    const SpecPtr& h_spec = embedding.source;
    const SpecPtr& g_spec = embedding.target;

    // validate the embedding on a window pair: commuting squares imply that
    // cycles are carried to cycles
    auto wh = ComplexWindow::instantiate(h_spec, h_policy.enum_radius);
    auto wg = ComplexWindow::instantiate(
        g_spec, std::max(g_policy.enum_radius, h_policy.enum_radius * map_stretch(embedding)));
    WindowChainMap emb(embedding, wh, wg);
    emb.validate_commuting();

    SubgroupCheckReport report;
    report.embedding_label = embedding.label;
    report.h_table = fv_table(h_spec, n, k_max, CycleEnumMode::Exhaustive, h_policy,
                              node_budget);
    report.g_table = fv_table(g_spec, n, g_k_max, CycleEnumMode::Exhaustive, g_policy,
                              node_budget);

    std::vector<std::pair<int, std::int64_t>> f_rows, g_rows;
    for (const auto& r : report.h_table.rows) {
        if (r.status == "exact")
            f_rows.push_back({r.k, r.value});
        else
            report.all_rows_exact = false;
    }
    for (const auto& r : report.g_table.rows) {
        if (r.status == "exact")
            g_rows.push_back({r.k, r.value});
        else
            report.all_rows_exact = false;
    }
    report.fit = linear_equiv_fit(f_rows, g_rows, c_cap);

    if (retraction) {
        report.retraction_bound = operator_bound(*retraction, n);
        WindowChainMap rho(*retraction, wg, wh);
        rho.validate_commuting();
        std::mt19937_64 rng(seed);
        const auto& cells = wg->cells(n);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(cells.size()) - 1);
        std::uniform_int_distribution<int> coef(-3, 3);
        for (int s = 0; s < retraction_samples; ++s) {
            std::map<int, std::int64_t> coeffs;
            int terms = 1 + static_cast<int>(rng() % 5);
            for (int t = 0; t < terms; ++t) {
                int c = coef(rng);
                if (c != 0) coeffs[pick(rng)] += c;
            }
            Chain x = make_chain(wg, n, std::move(coeffs));
            Chain rx;
            try {
                rx = rho.apply(x);
            } catch (const WindowTooSmallError&) {
                continue;
            }
            if (l1_norm(rx) > report.retraction_bound->constant * l1_norm(x))
                report.retraction_ok = false;
        }
    }
    return report;
}

}  // namespace fillnorm
