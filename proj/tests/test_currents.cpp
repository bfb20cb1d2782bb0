#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isinglab/currents.hpp"

using namespace isinglab;

TEST_CASE("sources and weight of a current") {
    WeightedGraph g = make_complete(3, 0.5);  // edges (0,1), (0,2), (1,2)
    CHECK(sources(g, {{1, 0, 0}}) == 0b011u);
    CHECK(sources(g, {{1, 1, 0}}) == 0b110u);
    CHECK(sources(g, {{2, 0, 0}}) == 0u);
    CHECK(sources(g, {{1, 1, 1}}) == 0u);
    CHECK_THROWS_AS(sources(g, {{1, 0}}), std::domain_error);
    CHECK_THROWS_AS(sources(g, {{1, -1, 0}}), std::domain_error);
    double bj = 0.5;
    CHECK(current_weight(g, {{3, 0, 1}}) ==
          doctest::Approx(bj * bj * bj / 6.0 * bj).epsilon(1e-12));
}

TEST_CASE("ghost edges never contribute sources") {
    WeightedGraph g = make_path(2, 0.5, 1.0, 0.3).ghost_form();
    REQUIRE(g.num_edges() == 3);
    // edge order: (0,1), (0,ghost), (1,ghost)
    CHECK(sources(g, {{0, 1, 0}}) == 0b01u);
    CHECK(sources(g, {{1, 1, 0}}) == 0b10u);
}

TEST_CASE("trace law on a single edge") {
    double beta = 0.9;
    WeightedGraph g = make_path(2, beta);
    auto law = trace_law_exact(g, 0);
    CHECK(law.prob_trace(0u) == doctest::Approx(1.0 / std::cosh(beta)).epsilon(1e-12));
    CHECK(law.prob_trace(1u) ==
          doctest::Approx(1.0 - 1.0 / std::cosh(beta)).epsilon(1e-12));
    CHECK(law.edge_marginal(0) ==
          doctest::Approx(1.0 - 1.0 / std::cosh(beta)).epsilon(1e-12));
    CHECK(law.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    auto law2 = trace_law_exact(g, 0b11u);
    CHECK(law2.prob_trace(1u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace law matches a truncated sum over currents") {
    // direct oracle: enumerate all currents up to a per-edge count cap and
    // histogram their traces by w(n)
    for (double beta : {0.3, 0.7}) {
        WeightedGraph g = make_complete(3, beta);
        const int m = g.num_edges(), cap = 18;
        std::vector<double> mass(1u << m, 0.0);
        double total = 0.0;
        std::vector<int> counts(m, 0);
        while (true) {
            Current n{counts};
            if (sources(g, n) == 0u) {
                double w = current_weight(g, n);
                mass[n.trace()] += w;
                total += w;
            }
            int i = 0;
            while (i < m && counts[i] == cap) counts[i++] = 0;
            if (i == m) break;
            ++counts[i];
        }
        auto dist = trace_law_exact(g, 0).full_distribution();
        for (EdgeSet T = 0; T < (1u << m); ++T)
            CHECK(mass[T] / total == doctest::Approx(dist[T]).epsilon(1e-10));
    }
}

TEST_CASE("trace law with an empty support") {
    CHECK_THROWS_AS(trace_law_exact(make_path(2, 0.5), 0b01u), EmptySupport);
}

TEST_CASE("squared correlation via two currents") {
    double beta = 0.55;
    WeightedGraph g = make_path(2, beta);
    auto r = squared_corr_identity(g, 0b11u);
    double t = std::tanh(beta);
    CHECK(r.lhs == doctest::Approx(t * t).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(t * t).epsilon(1e-10));
}

TEST_CASE("second-inequality gap via duplicated currents") {
    WeightedGraph g = make_path(3, 0.6);
    auto r = griffiths2_gap(g, 0b011u, 0b110u);
    CHECK(r.ratio_gap == doctest::Approx(r.current_gap).epsilon(1e-10));
    CHECK(r.ratio_gap >= -1e-12);
}

TEST_CASE("source switching for trace functionals") {
    WeightedGraph g = make_complete(3, 0.5, 1.0, 0.4);
    auto r = switching_verify(g, 0b011u, 0b110u,
                              [](EdgeSet T) { return (double)vs_size(T); });
    CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-10));
    auto r1 = switching_verify(g, 0b011u, 0b011u, [](EdgeSet) { return 1.0; });
    CHECK(r1.lhs == doctest::Approx(r1.rhs).epsilon(1e-10));
}

TEST_CASE("four-point function via two currents") {
    WeightedGraph g = make_complete(4, 0.4);
    auto r = ursell4(g, 0, 1, 2, 3);
    CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-10));
    CHECK(r.rhs <= 1e-12);
}

TEST_CASE("connectivity scan produces probabilities") {
    WeightedGraph g = make_path(3, 1.0);
    auto rows = question2_scan(g, 0b001u, 0b100u, {0.2, 0.5, 0.8});
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.prob >= 0.0);
        CHECK(row.prob <= 1.0);
    }
    CHECK(rows[0].beta == doctest::Approx(0.2));
}
