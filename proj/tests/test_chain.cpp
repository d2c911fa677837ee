#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fillnorm/builtins.hpp"
#include "oracles.hpp"

using namespace fillnorm;

namespace {

WindowPtr torus_window(int r) {
    return ComplexWindow::instantiate(builtins::complex("z2-torus"), r);
}

// the unit square boundary anchored at the identity
Chain unit_square(const WindowPtr& w) {
    return chain_from_literal(w, 1,
                              {{1, "e_x", ""},
                               {1, "e_y", "x"},
                               {-1, "e_x", "y"},
                               {-1, "e_y", ""}});
}

}  // namespace

TEST_CASE("chain arithmetic and the l1 norm") {
    auto w = torus_window(2);
    Chain a = chain_from_literal(w, 1, {{2, "e_x", ""}, {-1, "e_y", "x"}});
    CHECK(l1_norm(a) == 3);
    Chain b = negate(a);
    CHECK(add(a, b).is_zero());
    CHECK(l1_norm(scale(a, -3)) == 9);
    CHECK(scale(a, 0).is_zero());
}

TEST_CASE("the unit square boundary is a cycle") {
    auto w = torus_window(2);
    Chain z = unit_square(w);
    CHECK(l1_norm(z) == 4);
    CHECK(is_cycle(z));
    Chain not_cycle = chain_from_literal(w, 1, {{1, "e_x", ""}});
    CHECK(!is_cycle(not_cycle));
}

TEST_CASE("boundary refuses clipped cells instead of approximating") {
    auto w = torus_window(1);
    // e_x at y has its far endpoint outside the radius-1 ball
    Chain c = chain_from_literal(w, 1, {{1, "e_x", "y"}});
    CHECK_THROWS_AS(boundary(c), WindowTooSmallError);
}

TEST_CASE("translation preserves norms and boundaries") {
    auto w = torus_window(3);
    Chain z = unit_square(w);
    auto g = w->spec()->group();
    GroupElement h = g->reduce(g->parse_word("x"));
    Chain tz = translate(z, h);
    CHECK(l1_norm(tz) == l1_norm(z));
    CHECK(is_cycle(tz));
    CHECK(!(tz == z));
    CHECK(canonical_translate(tz) == canonical_translate(z));
    // canonical translation is idempotent
    CHECK(canonical_translate(canonical_translate(tz)) == canonical_translate(tz));
}

TEST_CASE("exhaustive cycle enumeration matches brute force on a small window") {
    auto w = torus_window(2);
    for (int k = 2; k <= 4; ++k) {
        auto cycles = enumerate_cycles(w, 1, k);
        auto expect = oracles::brute_force_cycles(w, 1, k);
        std::set<std::vector<std::pair<int, std::int64_t>>> got;
        for (const auto& c : cycles) {
            CHECK(is_cycle(c));
            CHECK(l1_norm(c) <= k);
            got.insert({c.coeffs.begin(), c.coeffs.end()});
        }
        CHECK(got.size() == cycles.size());  // no duplicates
        CHECK(got == expect);
    }
}

TEST_CASE("no nonzero 1-cycles exist in a tree") {
    auto w = ComplexWindow::instantiate(builtins::complex("free2"), 3);
    CHECK(enumerate_cycles(w, 1, 6).empty());
}

TEST_CASE("circuit enumeration finds the squares and both orientations") {
    auto w = torus_window(2);
    CycleEnumOptions opts;
    opts.mode = CycleEnumMode::Circuits;
    auto circuits = enumerate_cycles(w, 1, 4, opts);
    CHECK(!circuits.empty());
    std::set<std::vector<std::pair<int, std::int64_t>>> square_classes;
    for (const auto& c : circuits) {
        CHECK(is_cycle(c));
        CHECK(l1_norm(c) <= 4);
        if (l1_norm(c) == 4) {
            Chain canon = canonical_translate(c);
            square_classes.insert({canon.coeffs.begin(), canon.coeffs.end()});
        }
        // simple circuits: all coefficients are units
        for (const auto& [_, v] : c.coeffs) CHECK(std::abs(v) == 1);
    }
    // one square class, two orientations
    CHECK(square_classes.size() == 2);
}

TEST_CASE("loop edges appear as length-one circuits") {
    auto w = ComplexWindow::instantiate(builtins::complex("gersten(2)"), 0);
    CycleEnumOptions opts;
    opts.mode = CycleEnumMode::Circuits;
    auto circuits = enumerate_cycles(w, 1, 3, opts);
    REQUIRE(circuits.size() == 2);
    CHECK(l1_norm(circuits[0]) == 1);
    CHECK(l1_norm(circuits[1]) == 1);
}

TEST_CASE("circuit decomposition partitions a cycle by length") {
    auto w = torus_window(3);
    // two disjoint unit squares
    Chain z = add(unit_square(w), chain_from_literal(w, 1,
                                                     {{1, "e_x", "X X"},
                                                      {1, "e_y", "X"},
                                                      {-1, "e_x", "X X y"},
                                                      {-1, "e_y", "X X"}}));
    auto dec = circuit_decompose(z);
    CHECK(dec.total_length == l1_norm(z));
    CHECK(dec.parts.size() == 2);
    Chain sum{w, 1, {}};
    std::int64_t lengths = 0;
    for (const auto& p : dec.parts) {
        CHECK(is_cycle(p));
        lengths += l1_norm(p);
        sum = add(sum, p);
    }
    CHECK(lengths == l1_norm(z));
    CHECK(sum == z);
}

TEST_CASE("decomposing a doubled square yields two unit circuits") {
    auto w = torus_window(2);
    Chain z = scale(unit_square(w), 2);
    auto dec = circuit_decompose(z);
    CHECK(dec.parts.size() == 2);
    for (const auto& p : dec.parts) CHECK(l1_norm(p) == 4);
}

TEST_CASE("chain literals round trip") {
    auto w = torus_window(2);
    Chain z = unit_square(w);
    Chain back = chain_from_literal(w, 1, chain_to_literal(z));
    CHECK(back == z);
}

TEST_CASE("random cycles from enumeration are equivariantly translatable") {
    auto w = torus_window(3);
    auto g = w->spec()->group();
    auto cycles = enumerate_cycles(w, 1, 4);
    std::mt19937_64 rng(3);
    for (const auto& z : cycles) {
        GroupElement h = g->reduce(g->parse_word(rng() % 2 ? "x" : "y"));
        try {
            Chain tz = translate(z, h);
            CHECK(l1_norm(tz) == l1_norm(z));
            CHECK(is_cycle(tz));
        } catch (const WindowTooSmallError&) {
            // translate fell off the window: acceptable, never silent
        }
    }
}
