#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "isinglab/exact.hpp"

using namespace isinglab;

TEST_CASE("z_spin on a single edge") {
    WeightedGraph g = make_path(2, 1.0);
    // two aligned configurations at e^1, two anti-aligned at e^-1
    CHECK(z_spin(g, 0) == doctest::Approx(2.0 * std::exp(1.0) + 2.0 * std::exp(-1.0)));
    CHECK(z_spin(g, 0b01u) == doctest::Approx(0.0));
    CHECK(corr_spin(g, 0b11u) == doctest::Approx(std::tanh(1.0)));
}

TEST_CASE("high-temperature sum on the triangle") {
    double beta = 0.5;
    WeightedGraph g = make_complete(3, beta);
    double t = std::tanh(beta);
    CHECK(ht_sum(g, 0) == doctest::Approx(1.0 + t * t * t).epsilon(1e-12));
    // the two-point numerator: the direct edge plus the two-step detour
    CHECK(ht_sum(g, 0b011u) == doctest::Approx(t + t * t).epsilon(1e-12));
}

TEST_CASE("partition identities across expansions") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        double beta = u(rng), h = (trial % 2) ? u(rng) : 0.0;
        WeightedGraph g = make_complete(3, beta, 1.0, h);
        auto w = ExpansionWeights::of(g.ghost_form());
        double n2 = std::ldexp(1.0, g.num_vertices());
        CHECK(z_spin(g, 0) ==
              doctest::Approx(w.c0 * n2 * ht_sum(g, 0)).epsilon(1e-12));
        CHECK(z_spin(g, 0) == doctest::Approx(n2 * current_sum(g, 0)).epsilon(1e-12));
        CHECK(lt_partition(g) == doctest::Approx(z_spin(g, 0)).epsilon(1e-12));
    }
}

TEST_CASE("current sum in closed form on one edge") {
    double beta = 0.8;
    WeightedGraph g = make_path(2, beta);
    // sum over even counts is cosh, over odd counts sinh
    CHECK(current_sum(g, 0) == doctest::Approx(std::cosh(beta)).epsilon(1e-12));
    CHECK(current_sum(g, 0b11u) == doctest::Approx(std::sinh(beta)).epsilon(1e-12));
}

TEST_CASE("random-cluster correlation on one edge equals tanh") {
    for (double beta : {0.2, 0.7, 1.3})
        CHECK(fk_corr(make_path(2, beta), 0b11u) ==
              doctest::Approx(std::tanh(beta)).epsilon(1e-12));
}

TEST_CASE("contour partition on one edge and one ghost site") {
    double beta = 1.0;
    CHECK(lt_partition(make_path(2, beta)) ==
          doctest::Approx(2.0 * std::exp(beta) + 2.0 * std::exp(-beta)).epsilon(1e-12));
    double h = 0.6;
    WeightedGraph site = make_path(1, beta, 1.0, h);
    CHECK(lt_partition(site) == doctest::Approx(2.0 * std::cosh(beta * h)).epsilon(1e-12));
    // the two-to-one contour map needs a connected graph
    CHECK_THROWS_AS(lt_partition(WeightedGraph::with_field(2, {}, 1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("edge boundary and F_A membership") {
    WeightedGraph g = make_complete(3, 0.5);  // edges (0,1), (0,2), (1,2)
    CHECK(edge_boundary(g, 0b001u) == 0b011u);
    CHECK(edge_boundary(g, 0b011u) == 0b110u);
    CHECK(edge_boundary(g, 0b111u) == 0u);
    CHECK(in_F_A(g, 0b001u, 0b011u));       // one component holding both of A
    CHECK_FALSE(in_F_A(g, 0u, 0b011u));     // A split across two singletons
    CHECK(in_F_A(g, 0u, 0u));
    CHECK_FALSE(in_F_A(g, 0u, 0b001u));     // odd A without a ghost: empty family
    CHECK(component_count(g, 0u) == 3);
    CHECK(component_count(g, 0b001u) == 2);
    CHECK(all_connected(g, 0b011u, 0b111u));
    CHECK_FALSE(all_connected(g, 0b001u, 0b111u));
    CHECK(sets_connected(g, 0b001u, 0b001u, 0b010u));
    CHECK_FALSE(sets_connected(g, 0u, 0b001u, 0b010u));
}

TEST_CASE("phi_S on the path") {
    double beta = 0.6;
    WeightedGraph g = make_path(3, beta);
    // S = {0,1}: the inner boundary is {1}, so phi = <s_0 s_1>_S = tanh
    CHECK(phi_S(g, 0b011u, 0) == doctest::Approx(std::tanh(beta)).epsilon(1e-12));
    CHECK_THROWS_AS(phi_S(g, 0b110u, 0), std::domain_error);
}

TEST_CASE("finite-volume two-point bound is tight on the path") {
    double beta = 0.45;
    WeightedGraph g = make_path(4, beta);
    auto r = simon_lieb_check(g, 0b0011u, 0, 3);
    double t = std::tanh(beta);
    CHECK(r.lhs == doctest::Approx(t * t * t).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(t * t * t).epsilon(1e-10));
    CHECK(r.holds);
    CHECK_THROWS_AS(simon_lieb_check(g, 0b0011u, 2, 3), std::domain_error);
    CHECK_THROWS_AS(simon_lieb_check(g, 0b0011u, 0, 1), std::domain_error);
}

TEST_CASE("temperature derivative on one edge") {
    double beta = 0.35, J = 1.0;
    WeightedGraph g = make_path(2, beta);
    auto d = beta_derivative_check(g, 0b11u);
    double t = std::tanh(beta * J);
    CHECK(d.analytic == doctest::Approx(J * (1.0 - t * t)).epsilon(1e-12));
    CHECK(d.analytic == doctest::Approx(d.numeric).epsilon(1e-8));
}

TEST_CASE("enumeration caps raise CapExceeded") {
    CHECK_THROWS_AS(z_spin(WeightedGraph::with_field(21, {}, 1.0, 0.0), 0),
                    CapExceeded);
    CHECK_THROWS_AS(ht_sum(make_complete(8, 0.5), 0), CapExceeded);  // 28 edges
}

TEST_CASE("source sets outside Lambda are rejected") {
    WeightedGraph g = make_path(2, 0.5);
    CHECK_THROWS_AS(z_spin(g, 0b100u), std::domain_error);
}
