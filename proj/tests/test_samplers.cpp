#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isinglab/exact.hpp"
#include "isinglab/samplers.hpp"

using namespace isinglab;

TEST_CASE("rng streams are reproducible and distinct") {
    auto a = make_rng(123, 0), b = make_rng(123, 0), c = make_rng(123, 1);
    bool same = true, differ = false;
    for (int i = 0; i < 16; ++i) {
        auto x = a();
        same = same && x == b();
        differ = differ || x != c();
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("cycle space dimension") {
    CHECK(cycle_basis(make_path(4, 0.5)).size() == 0);
    CHECK(cycle_basis(make_cycle(3, 0.5)).size() == 1);
    CHECK(cycle_basis(make_grid(2, 2, 0.5)).size() == 1);
    CHECK(cycle_basis(make_complete(4, 0.5)).size() == 3);
    // ghost couplings close extra cycles: n + ghost edges over n + 1 vertices
    CHECK(cycle_basis(make_path(3, 0.5, 1.0, 0.2).ghost_form()).size() == 2);
    for (EdgeSet cyc : cycle_basis(make_grid(3, 3, 0.5)))
        CHECK(edge_boundary(make_grid(3, 3, 0.5), cyc) == 0u);
}

TEST_CASE("initial parity sets have the requested boundary") {
    WeightedGraph g = make_grid(3, 3, 0.5);
    for (VertexSet A : {0u, 0b000000011u, 0b100000001u, 0b000110110u})
        CHECK(edge_boundary(g, initial_parity_set(g, A)) == A);
    CHECK_THROWS_AS(initial_parity_set(g, 0b1u), EmptySupport);
    WeightedGraph ghost = make_grid(3, 3, 0.5, 1.0, 0.2).ghost_form();
    CHECK(edge_boundary(ghost, initial_parity_set(ghost, 0b1u)) == 0b1u);
}

TEST_CASE("glauber spins stay valid and respect frozen sites") {
    WeightedGraph g = make_grid(3, 3, 0.5);
    SpinConfig sigma(9, 1);
    std::vector<char> frozen(9, 0);
    frozen[0] = 1;
    auto rng = make_rng(5, 0);
    for (int i = 0; i < 2000; ++i) glauber_step(g, sigma, rng, frozen);
    CHECK(sigma[0] == 1);
    for (int s : sigma) CHECK(std::abs(s) == 1);
    SpinConfig wrong(4, 1);
    CHECK_THROWS_AS(glauber_step(g, wrong, rng), std::domain_error);
}

TEST_CASE("worm chain conserves its sources") {
    WeightedGraph g = make_complete(4, 0.6, 1.0, 0.3).ghost_form();
    WormChain chain(g, 0b0101u, 9, 0);
    for (int i = 0; i < 2000; ++i) {
        chain.step();
        REQUIRE(sources(chain.graph(), chain.current()) == chain.declared_sources());
    }
}

TEST_CASE("worm chain is deterministic per seed") {
    WeightedGraph g = make_complete(3, 0.7);
    WormChain a(g, 0, 77, 0), b(g, 0, 77, 0), c(g, 0, 78, 0);
    bool same = true, differ = false;
    for (int i = 0; i < 500; ++i) {
        a.step();
        b.step();
        c.step();
        same = same && a.current().counts == b.current().counts;
        differ = differ || a.current().counts != c.current().counts;
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("even-subgraph chain stays in its parity class") {
    WeightedGraph g = make_grid(2, 2, 0.5, 1.0, 0.4).ghost_form();
    EvenSubgraphChain chain(g, 0b1001u, 3, 0);
    for (int i = 0; i < 2000; ++i) {
        chain.step();
        REQUIRE(edge_boundary(g, chain.state()) == 0b1001u);
    }
}

TEST_CASE("sprinkles only add edges") {
    WeightedGraph g = make_complete(4, 0.8);
    auto rng = make_rng(1, 0);
    for (int i = 0; i < 200; ++i) {
        EdgeSet E = (EdgeSet)(rng() & ((1u << g.num_edges()) - 1));
        EdgeSet T = sprinkle_ht_to_current(E, g, rng);
        EdgeSet F = sprinkle_current_to_fk(T, g, rng);
        CHECK((E & ~T) == 0u);
        CHECK((T & ~F) == 0u);
    }
}

TEST_CASE("batch-means estimator") {
    CHECK_THROWS_AS(estimate([] {}, [] { return 1.0; }, 10), std::domain_error);
    auto r = estimate([] {}, [] { return 2.5; }, 640, 0);
    CHECK(r.mean == doctest::Approx(2.5));
    CHECK(r.std_error == doctest::Approx(0.0));
    CHECK(r.samples == 640);
    // iid uniform noise: the mean lands near 0.5 with a sane error bar
    auto rng = make_rng(21, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = 0.0;
    auto r2 = estimate([&] { x = u(rng); }, [&] { return x; }, 32000, 100);
    CHECK(std::abs(r2.mean - 0.5) < 5.0 * r2.std_error + 1e-3);
    CHECK(r2.std_error > 0.0);
}
