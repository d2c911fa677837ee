// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails. Expected values are verified
// against independent oracles (tests/oracles.hpp) wherever a solver result is
// involved, and against hand-derived constants otherwise.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fillnorm/builtins.hpp"
#include "fillnorm/fv.hpp"
#include "fillnorm/jobs.hpp"
#include "oracles.hpp"

using namespace fillnorm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string coord_word(int a, int b) {
    std::string s;
    for (int i = 0; i < a; ++i) s += "x ";
    for (int i = 0; i > a; --i) s += "X ";
    for (int i = 0; i < b; ++i) s += "y ";
    for (int i = 0; i > b; --i) s += "Y ";
    return s;
}

// boundary of the k x k square with lower-left corner at (a0, b0)
std::vector<ChainLiteralTerm> square_literal(int k, int a0, int b0) {
    std::vector<ChainLiteralTerm> terms;
    for (int i = 0; i < k; ++i) {
        terms.push_back({1, "e_x", coord_word(a0 + i, b0)});
        terms.push_back({1, "e_y", coord_word(a0 + k, b0 + i)});
        terms.push_back({-1, "e_x", coord_word(a0 + i, b0 + k)});
        terms.push_back({-1, "e_y", coord_word(a0, b0 + i)});
    }
    return terms;
}

Chain class_chain(const WindowPtr& w, int dim,
                  const std::vector<std::pair<int, std::int64_t>>& cls) {
    std::map<int, std::int64_t> coeffs(cls.begin(), cls.end());
    return make_chain(w, dim, coeffs);
}

struct Runner {
    bool all_ok = true;
    void check(const std::string& name, const std::function<bool()>& body) {
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const std::exception& e) {
            note = e.what();
        }
        std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
};

}  // namespace

// ---- individual criteria -------------------------------------------------

static bool non_regular_example() {
    auto t0 = Clock::now();
    for (int k : {2, 3}) {
        auto spec = builtins::complex("gersten(" + std::to_string(k) + ")");
        auto w = ComplexWindow::instantiate(spec, 0);
        Chain two = chain_from_literal(w, 1, {{2, "e", ""}});
        Chain twok = chain_from_literal(w, 1, {{2 * k, "e", ""}});
        auto c2 = fill_norm(make_filling_instance(two));
        auto c2k = fill_norm(make_filling_instance(twok));
        if (!c2.value || *c2.value != 1) return false;
        if (!c2k.value || *c2k.value != 1) return false;
        if (!c2.witness || !(boundary(*c2.witness) == two)) return false;
        if (!c2k.witness || !(boundary(*c2k.witness) == twok)) return false;
        if (*c2k.value == k * *c2.value) return false;  // regularity must fail
    }
    return seconds_since(t0) < 1.0;
}

static bool square_filling_values() {
    auto t0 = Clock::now();
    struct Case {
        int k, radius, a0, b0;
    } cases[] = {{1, 2, 0, 0}, {2, 3, -1, -1}, {3, 4, -1, -1}};
    for (const auto& c : cases) {
        auto w = ComplexWindow::instantiate(builtins::complex("z2-torus"), c.radius);
        Chain z = chain_from_literal(w, 1, square_literal(c.k, c.a0, c.b0));
        auto cert = fill_norm(make_filling_instance(z));
        if (!cert.value || *cert.value != c.k * c.k) return false;
        if (!(boundary(*cert.witness) == z)) return false;
        auto oracle = oracles::brute_force_fill(z, c.k * c.k);
        if (!oracle || *oracle != c.k * c.k) return false;
    }
    return seconds_since(t0) < 60.0;
}

static bool fv_tables_vs_oracle() {
    auto t0 = Clock::now();

    // Z^2, 1-cycles: solver table over a radius-4 window
    auto z2 = builtins::complex("z2-torus");
    auto table2 = fv_table(z2, 1, 8, CycleEnumMode::Exhaustive, {4, 5});
    const std::pair<int, std::int64_t> expect2[] = {{3, 0}, {4, 1}, {8, 4}};
    for (auto [k, v] : expect2)
        if (!table2.row_exact(k) || *table2.value_at(k) != v) return false;

    // oracle: raw enumeration over a radius-2 window (every class relevant to
    // k <= 8 fits there up to translation), raw fills over a radius-4 window
    auto w2 = ComplexWindow::instantiate(z2, 2);
    auto w4 = ComplexWindow::instantiate(z2, 4);
    std::vector<std::int64_t> omax2(9, 0);
    // enumerate in the small window, canonicalize in the large one: the 2x2
    // square is supported in the radius-2 ball but only anchors at radius 3
    for (const auto& cls : oracles::brute_force_cycles(w2, 1, 8, w4)) {
        Chain z = class_chain(w4, 1, cls);
        auto fill = oracles::brute_force_fill(z, 6);
        if (!fill) return false;
        std::int64_t norm = l1_norm(z);
        for (std::size_t k = norm; k < omax2.size(); ++k)
            omax2[k] = std::max(omax2[k], *fill);
    }
    for (auto [k, v] : expect2)
        if (omax2[k] != v) return false;

    // Z^3, 2-cycles
    auto z3 = builtins::complex("z3-cubes");
    auto table3 = fv_table(z3, 2, 6, CycleEnumMode::Exhaustive, {2, 3});
    const std::pair<int, std::int64_t> expect3[] = {{5, 0}, {6, 1}};
    for (auto [k, v] : expect3)
        if (!table3.row_exact(k) || *table3.value_at(k) != v) return false;

    auto v2 = ComplexWindow::instantiate(z3, 2);
    auto v3 = ComplexWindow::instantiate(z3, 3);
    std::vector<std::int64_t> omax3(7, 0);
    for (const auto& cls : oracles::brute_force_cycles(v2, 2, 6, v3)) {
        Chain z = class_chain(v3, 2, cls);
        auto fill = oracles::brute_force_fill(z, 3);
        if (!fill) return false;
        std::int64_t norm = l1_norm(z);
        for (std::size_t k = norm; k < omax3.size(); ++k)
            omax3[k] = std::max(omax3[k], *fill);
    }
    for (auto [k, v] : expect3)
        if (omax3[k] != v) return false;

    return seconds_since(t0) < 600.0;
}

static bool norm_axioms_and_equivariance() {
    const char* names[] = {"z2-torus", "z3-cubes", "free2", "heisenberg3"};
    int cases = 0;
    for (const char* name : names) {
        auto spec = builtins::complex(name);
        int radius = std::string(name) == "z3-cubes" ? 2 : 3;
        auto w = ComplexWindow::instantiate(spec, radius);
        auto g = w->spec()->group();
        std::vector<std::string> gens;
        for (const auto& gen : g->generators()) gens.push_back(gen.name);
        std::mt19937_64 rng(std::hash<std::string>{}(name));
        const auto& edges = w->cells(1);
        std::uniform_int_distribution<int> cell(0, static_cast<int>(edges.size()) - 1);
        std::uniform_int_distribution<int> coef(-3, 3);
        std::uniform_int_distribution<int> nsup(1, 4);

        auto random_chain = [&]() {
            std::map<int, std::int64_t> coeffs;
            int support = nsup(rng);
            for (int i = 0; i < support; ++i) {
                int v = coef(rng);
                if (v != 0) coeffs[cell(rng)] += v;
            }
            return make_chain(w, 1, coeffs);
        };

        int done = 0, attempts = 0;
        while (done < 250 && attempts < 20000) {
            ++attempts;
            Chain a = random_chain(), b = random_chain();
            if (l1_norm(a) < 0 || l1_norm(b) < 0) return false;
            if ((l1_norm(a) == 0) != a.is_zero()) return false;
            if (l1_norm(add(a, b)) > l1_norm(a) + l1_norm(b)) return false;
            std::int64_t m = coef(rng);
            if (l1_norm(scale(a, m)) != std::abs(m) * l1_norm(a)) return false;
            // translation invariance of the chain norm
            try {
                std::string gen = gens[rng() % gens.size()];
                Chain ta = translate(a, g->reduce(g->parse_word(gen)));
                if (l1_norm(ta) != l1_norm(a)) return false;
            } catch (const WindowTooSmallError&) {
                continue;  // translate fell off the window; try another case
            }
            ++done;
            ++cases;
        }
        if (done < 250) return false;
    }
    if (cases < 1000) return false;

    // translation invariance of the filling norm on Z^2 cycles
    auto w = ComplexWindow::instantiate(builtins::complex("z2-torus"), 3);
    auto g = w->spec()->group();
    int compared = 0;
    for (const auto& z : enumerate_cycles(w, 1, 8)) {
        for (const char* gen : {"x", "y", "X", "Y"}) {
            try {
                Chain tz = translate(z, g->reduce(g->parse_word(gen)));
                auto a = fill_norm(make_filling_instance(z));
                auto b = fill_norm(make_filling_instance(tz));
                if (!a.value || !b.value) continue;
                if (*a.value != *b.value) return false;
                ++compared;
            } catch (const WindowTooSmallError&) {
            }
        }
    }
    return compared >= 20;
}

static bool boundary_squares_to_zero() {
    for (const char* name : {"z2-torus", "z3-cubes", "free2", "heisenberg3", "z2-redundant",
                             "gersten(2)", "gersten(3)"}) {
        auto spec = builtins::complex(name);
        for (int r = 0; r <= 3; ++r)
            if (!ComplexWindow::instantiate(spec, r)->dd_zero_certified()) return false;
    }

    // 1000 random chains of dimension >= 2 with dd applied literally
    struct Source {
        const char* name;
        int dim, radius;
    } sources[] = {{"z2-torus", 2, 3}, {"z3-cubes", 2, 3}, {"z3-cubes", 3, 3},
                   {"heisenberg3", 2, 3}, {"z2-redundant", 2, 3}};
    int cases = 0;
    for (const auto& s : sources) {
        auto w = ComplexWindow::instantiate(builtins::complex(s.name), s.radius);
        const auto& cells = w->cells(s.dim);
        if (cells.empty()) return false;
        std::mt19937_64 rng(s.dim * 1000 + std::hash<std::string>{}(s.name));
        std::uniform_int_distribution<int> cell(0, static_cast<int>(cells.size()) - 1);
        std::uniform_int_distribution<int> coef(-4, 4);
        int done = 0, attempts = 0;
        while (done < 200 && attempts < 50000) {
            ++attempts;
            std::map<int, std::int64_t> coeffs;
            for (int i = 0; i < 3; ++i) {
                int v = coef(rng);
                if (v != 0) coeffs[cell(rng)] += v;
            }
            try {
                Chain c = make_chain(w, s.dim, coeffs);
                if (!boundary(boundary(c)).is_zero()) return false;
                ++done;
                ++cases;
            } catch (const WindowTooSmallError&) {
            }
        }
        if (done < 200) return false;
    }
    return cases >= 1000;
}

static bool operator_bounds_on_shipped_maps() {
    std::vector<MapSpec> maps;
    for (const char* pair : {"z2-std-red", "gersten(2)-doubling", "identity:z2-torus"}) {
        auto p = builtins::map_pair(pair);
        maps.push_back(p.forward);
        maps.push_back(p.backward);
    }
    for (const char* emb : {"z2-into-z3", "free2-into-z2"}) {
        auto e = builtins::embedding(emb);
        maps.push_back(e.embedding);
        if (e.retraction) maps.push_back(*e.retraction);
    }

    for (const auto& m : maps) {
        int dim = 1;
        auto bound = operator_bound(m, dim);
        int stretch = 1;
        for (const auto& [_, img] : m.word_map)
            stretch = std::max(stretch, static_cast<int>(std::count(img.begin(), img.end(), ' ') + 1));
        int sr = m.source->group()->generators().empty() ? 0 : 2;
        auto ws = ComplexWindow::instantiate(m.source, sr);
        auto wt = ComplexWindow::instantiate(m.target, sr * stretch + 1);
        WindowChainMap wm(m, ws, wt);
        wm.validate_commuting();

        const auto& cells = ws->cells(dim);
        std::mt19937_64 rng(std::hash<std::string>{}(m.label));
        std::uniform_int_distribution<int> cell(0, static_cast<int>(cells.size()) - 1);
        std::uniform_int_distribution<int> coef(-3, 3);
        int done = 0, attempts = 0;
        while (done < 500 && attempts < 100000) {
            ++attempts;
            std::map<int, std::int64_t> coeffs;
            for (int i = 0; i < 3; ++i) {
                int v = coef(rng);
                if (v != 0) coeffs[cell(rng)] += v;
            }
            Chain c = make_chain(ws, dim, coeffs);
            try {
                Chain image = wm.apply(c);
                if (l1_norm(image) > bound.constant * l1_norm(c)) return false;
                ++done;
            } catch (const WindowTooSmallError&) {
            }
        }
        if (done < 500) return false;
    }
    return true;
}

static bool two_sided_norm_comparison() {
    auto pair = builtins::map_pair("z2-std-red");
    auto rep = check_norm_equivalence(pair.forward, pair.backward, 1, 80, 8, 5, {4, 5});
    if (!rep.all_within) return false;
    if (static_cast<int>(rep.samples.size()) < 50) return false;
    for (const auto& s : rep.samples) {
        if (s.norm_b > rep.bound_ab.constant * s.norm_a) return false;
        if (s.norm_a > rep.bound_ba.constant * s.norm_b) return false;
    }
    return true;
}

static bool circuit_bound_consistency() {
    auto rep = dehn_consistency(builtins::complex("z2-torus"), 8, {4, 5});
    if (!rep.all_hold || rep.rows.size() != 8) return false;
    for (const auto& r : rep.rows)
        if (r.fv > r.k * r.circuit_max && r.fv != 0) return false;
    return true;
}

static bool subgroup_inequality_fit() {
    auto emb = builtins::embedding("z2-into-z3");
    auto rep = subgroup_inequality_check(emb.embedding, 1, 8, 10, {4, 5}, {2, 3}, 9, 200000,
                                         emb.retraction, 100, 3);
    if (!rep.fit.constant || *rep.fit.constant > 10) return false;
    if (!rep.all_rows_exact) return false;
    if (!rep.fit.skipped_k.empty()) return false;
    if (!rep.retraction_ok) return false;
    // re-verify the fit inequality directly from the tables
    int c = *rep.fit.constant;
    for (const auto& row : rep.h_table.rows) {
        auto g = rep.g_table.value_at(c * row.k + c);
        if (!g) return false;
        if (row.value > c * *g + c * row.k + c) return false;
    }
    return true;
}

static bool solver_soundness_vs_oracle() {
    auto w = ComplexWindow::instantiate(builtins::complex("z2-torus"), 2);
    auto cycles = enumerate_cycles(w, 1, 8);
    if (cycles.empty()) return false;
    for (const auto& z : cycles) {
        auto inst = make_filling_instance(z);
        auto cert = fill_norm(inst);
        if (cert.value) {
            if (cert.lp_bound > Rational(*cert.value)) return false;
            if (!cert.witness || !(boundary(*cert.witness) == z)) return false;
            if (l1_norm(*cert.witness) != *cert.value) return false;
            auto oracle = oracles::brute_force_fill(z, *cert.value);
            if (!oracle || *oracle != *cert.value) return false;
        } else {
            if (oracles::brute_force_fill(z, 6)) return false;
        }
    }
    return true;
}

static bool deterministic_reports() {
    auto run_pair = [](jobs::JobSpec job, const char* tag) {
        fs::path base = fs::temp_directory_path() / "fillnorm-acceptance";
        std::pair<jobs::JobResult, jobs::JobResult> out{{}, {}};
        for (int i = 0; i < 2; ++i) {
            fs::path d = base / (std::string(tag) + std::to_string(i));
            fs::remove_all(d);
            fs::create_directories(d);
            job.out_dir = d.string();
            (i == 0 ? out.first : out.second) = jobs::run_job(job);
        }
        return out;
    };

    jobs::JobSpec fv;
    fv.task = "fv";
    fv.complex_ref = "z2-torus";
    fv.dim = 1;
    fv.max_k = 4;
    fv.radius = 3;
    fv.format = "csv";
    auto [f1, f2] = run_pair(fv, "fv");
    if (f2.from_cache) return false;  // distinct cache dirs: a genuine recomputation
    if (f1.csv != f2.csv) return false;
    if (f1.report.dump() != f2.report.dump()) return false;

    jobs::JobSpec eq;
    eq.task = "equivalence";
    eq.map_ref = "z2-std-red";
    eq.dim = 1;
    eq.max_k = 4;
    eq.radius = 3;
    eq.samples = 15;
    eq.seed = 9;
    auto [e1, e2] = run_pair(eq, "eq");
    return e1.report.dump() == e2.report.dump();
}

int main() {
    Runner r;
    r.check("non-regular filling example (gersten 2 and 3)", non_regular_example);
    r.check("square boundary filling values k=1..3 vs oracle", square_filling_values);
    r.check("filling volume tables vs exhaustive oracle", fv_tables_vs_oracle);
    r.check("norm axioms and equivariance on 1000+ randomized cases",
            norm_axioms_and_equivariance);
    r.check("boundary squared is zero on windows and 1000 random chains",
            boundary_squares_to_zero);
    r.check("operator bounds hold on 500 random chains per shipped map",
            operator_bounds_on_shipped_maps);
    r.check("two-sided norm comparison on 50+ sampled cycles", two_sided_norm_comparison);
    r.check("table values within k times the circuit bound", circuit_bound_consistency);
    r.check("subgroup inequality fit with constant at most 10", subgroup_inequality_fit);
    r.check("solver soundness and agreement with the oracle", solver_soundness_vs_oracle);
    r.check("byte-identical reports on repeated runs", deterministic_reports);
    return r.all_ok ? 0 : 1;
}
