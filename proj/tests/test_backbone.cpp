#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isinglab/currents.hpp"
#include "isinglab/samplers.hpp"

using namespace isinglab;

TEST_CASE("peeling a path current into one walk") {
    WeightedGraph g = make_path(3, 0.5);
    Current n{{1, 1}};
    auto d = backbone_peel(g, n, 0b101u);
    REQUIRE(d.backbone_walks.size() == 1);
    CHECK(d.backbone_walks[0].vertices == std::vector<int>{0, 1, 2});
    CHECK(d.loops.empty());
    CHECK(backbone_reconstruct(g, d).counts == n.counts);
}

TEST_CASE("a sourceless triangle current is one loop") {
    WeightedGraph g = make_cycle(3, 0.5);
    Current n{{1, 1, 1}};
    REQUIRE(sources(g, n) == 0u);
    auto d = backbone_peel(g, n, 0u);
    CHECK(d.backbone_walks.empty());
    REQUIRE(d.loops.size() == 1);
    CHECK(d.loops[0].vertices.front() == d.loops[0].vertices.back());
    CHECK(d.loops[0].vertices.size() == 4);
    CHECK(backbone_reconstruct(g, d).counts == n.counts);
}

TEST_CASE("walk endpoints partition the source set") {
    WeightedGraph g = make_complete(4, 0.5);
    Current n{{1, 1, 1, 0, 0, 1}};  // edges (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    VertexSet A = sources(g, n);
    REQUIRE(A == 0b0011u);
    auto d = backbone_peel(g, n, A);
    std::vector<int> endpoints;
    for (const auto& w : d.backbone_walks) {
        CHECK_FALSE(w.closed());
        endpoints.push_back(w.vertices.front());
        endpoints.push_back(w.vertices.back());
    }
    std::sort(endpoints.begin(), endpoints.end());
    std::vector<int> expected;
    for (int v = 0; v < 4; ++v)
        if (vs_contains(A, v)) expected.push_back(v);
    CHECK(endpoints == expected);
}

TEST_CASE("wrong source set is rejected") {
    WeightedGraph g = make_path(3, 0.5);
    CHECK_THROWS_AS(backbone_peel(g, {{1, 1}}, 0b011u), std::domain_error);
}

TEST_CASE("ghost endpoints absorb odd sources") {
    WeightedGraph g = make_path(2, 0.5, 1.0, 0.7).ghost_form();
    // edge order: (0,1), (0,ghost), (1,ghost)
    Current n{{1, 0, 1}};
    VertexSet A = sources(g, n);
    REQUIRE(A == 0b01u);
    auto d = backbone_peel(g, n, A);
    REQUIRE(d.backbone_walks.size() == 1);
    CHECK(d.backbone_walks[0].vertices.front() == 0);
    CHECK(d.backbone_walks[0].vertices.back() == g.ghost_index());
    CHECK(backbone_reconstruct(g, d).counts == n.counts);
}

TEST_CASE("random round trips on the grid") {
    WeightedGraph g = make_grid(3, 3, 0.5);
    auto rng = make_rng(42, 0);
    std::uniform_int_distribution<int> count(0, 5);
    for (int trial = 0; trial < 500; ++trial) {
        Current n;
        n.counts.resize(g.num_edges());
        for (auto& c : n.counts) c = count(rng);
        auto d = backbone_peel(g, n, sources(g, n));
        CHECK(backbone_reconstruct(g, d).counts == n.counts);
    }
}

TEST_CASE("vertex order changes the starting walk deterministically") {
    WeightedGraph g = make_path(3, 0.5);
    Current n{{1, 1}};
    std::vector<int> reversed = {2, 1, 0};  // rank per vertex
    auto d = backbone_peel(g, n, 0b101u, reversed);
    REQUIRE(d.backbone_walks.size() == 1);
    CHECK(d.backbone_walks[0].vertices == std::vector<int>{2, 1, 0});
}
