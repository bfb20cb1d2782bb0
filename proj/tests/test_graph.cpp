#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "isinglab/graph.hpp"

using namespace isinglab;

TEST_CASE("energy of a single edge") {
    WeightedGraph g = WeightedGraph::with_field(2, {{0, 1, 1.0}}, 1.0, 0.0);
    CHECK(energy(g, {1, 1}) == doctest::Approx(-1.0));
    CHECK(energy(g, {1, -1}) == doctest::Approx(1.0));
    CHECK(energy(g, {-1, -1}) == doctest::Approx(-1.0));
}

TEST_CASE("energy with an explicit field") {
    WeightedGraph g = WeightedGraph::with_field(2, {{0, 1, 2.0}}, 0.7, 0.5);
    // -J s0 s1 - h (s0 + s1)
    CHECK(energy(g, {1, 1}) == doctest::Approx(-3.0));
    CHECK(energy(g, {-1, -1}) == doctest::Approx(-1.0));
    CHECK(energy(g, {1, -1}) == doctest::Approx(2.0));
}

TEST_CASE("ghost encoding reproduces the field energy") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + (int)(rng() % 3);
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.push_back({i, j, u(rng)});
        WeightedGraph gf = WeightedGraph::with_field(n, edges, u(rng), u(rng));
        WeightedGraph gg = ghost_augment(gf);
        REQUIRE(gg.has_ghost());
        SpinConfig sigma(n);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (int v = 0; v < n; ++v) sigma[v] = (mask >> v) & 1u ? -1 : 1;
            CHECK(energy(gf, sigma) == doctest::Approx(energy(gg, sigma)).epsilon(1e-12));
        }
    }
}

TEST_CASE("spin flip symmetry at zero field") {
    WeightedGraph g = WeightedGraph::with_field(3, {{0, 1, 0.4}, {1, 2, 1.3}}, 0.9, 0.0);
    SpinConfig a = {1, -1, 1}, b = {-1, 1, -1};
    CHECK(energy(g, a) == doctest::Approx(energy(g, b)));
}

TEST_CASE("edge canonicalization") {
    WeightedGraph g = WeightedGraph::with_field(
        3, {{1, 0, 0.5}, {0, 1, 0.25}, {1, 2, 0.0}}, 1.0, 0.0);
    REQUIRE(g.num_edges() == 1);  // duplicates merged, zero coupling dropped
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
    CHECK(g.edges()[0].J == doctest::Approx(0.75));
    CHECK_THROWS_AS(WeightedGraph::with_field(2, {{0, 0, 1.0}}, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::with_field(2, {{0, 1, -1.0}}, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::with_field(2, {{0, 3, 1.0}}, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("vertex set helpers") {
    CHECK(vs_parse("0,2") == 0b101u);
    CHECK(vs_parse("") == 0u);
    CHECK(vs_size(0b1011u) == 3);
    CHECK(vs_contains(0b100u, 2));
    CHECK_FALSE(vs_contains(0b100u, 1));
}

TEST_CASE("JSON round trip") {
    std::string text = R"({"vertices":3,"edges":[[0,1,1.0],[1,2,0.5]],"beta":0.7,"h":0.0})";
    WeightedGraph g = WeightedGraph::from_json_string(text);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.beta() == doctest::Approx(0.7));
    WeightedGraph g2 = WeightedGraph::from_json_string(g.to_json_string());
    CHECK(g2.to_json_string() == g.to_json_string());
}

TEST_CASE("JSON with a field yields the ghost form") {
    std::string text = R"({"vertices":2,"edges":[[0,1,1.0]],"beta":0.5,"h":0.3})";
    WeightedGraph g = WeightedGraph::from_json_string(text);
    CHECK(g.has_ghost());
    CHECK(g.num_edges() == 3);  // the edge plus two ghost couplings
    WeightedGraph g2 = WeightedGraph::from_json_string(g.to_json_string());
    CHECK(g2.to_json_string() == g.to_json_string());
}

TEST_CASE("JSON parse errors raise invalid_argument") {
    CHECK_THROWS_AS(WeightedGraph::from_json_string("{nope"), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::from_json_file("/no/such/file.json"),
                    std::invalid_argument);
}

TEST_CASE("generators") {
    CHECK(make_path(4, 1.0).num_edges() == 3);
    CHECK(make_cycle(4, 1.0).num_edges() == 4);
    // the 2-cycle collapses to a single doubled bond
    WeightedGraph c2 = make_cycle(2, 1.0);
    REQUIRE(c2.num_edges() == 1);
    CHECK(c2.edges()[0].J == doctest::Approx(2.0));
    CHECK(make_complete(4, 1.0).num_edges() == 6);
    CHECK(make_grid(3, 3, 1.0).num_edges() == 12);
    // 2x3 torus: three doubled horizontal bonds plus six vertical bonds
    WeightedGraph t = make_torus(2, 3, 1.0);
    CHECK(t.num_edges() == 9);
    int doubled = 0;
    for (const auto& e : t.edges())
        if (e.J == doctest::Approx(2.0)) ++doubled;
    CHECK(doubled == 3);
    CHECK(make_generator("grid:2x3", 0.5, 0.0).num_vertices() == 6);
    CHECK(make_generator("path:5", 0.5, 0.0).num_edges() == 4);
    CHECK_THROWS_AS(make_generator("blob:3", 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_generator("grid:3", 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("connectivity") {
    CHECK(make_path(4, 1.0).connected());
    CHECK_FALSE(WeightedGraph::with_field(3, {{0, 1, 1.0}}, 1.0, 0.0).connected());
    // the ghost reconnects everything when a field is present
    CHECK(ghost_augment(WeightedGraph::with_field(3, {{0, 1, 1.0}}, 1.0, 0.2)).connected());
}

TEST_CASE("induced subgraph") {
    WeightedGraph g = make_path(4, 0.8, 1.0, 0.3);  // ghost form
    REQUIRE(g.has_ghost());
    WeightedGraph sub = g.induced(0b0011u, /*keep_field=*/true);
    CHECK(sub.num_vertices() == 2);
    CHECK(sub.has_ghost());
    CHECK(sub.num_edges() == 3);  // 0-1 plus two ghost couplings
    WeightedGraph nofield = g.induced(0b0011u, /*keep_field=*/false);
    CHECK_FALSE(nofield.has_ghost());
    CHECK(nofield.num_edges() == 1);
}
