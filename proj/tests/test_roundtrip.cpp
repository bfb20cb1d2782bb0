#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "isinglab/suites.hpp"

using namespace isinglab;

TEST_CASE("graph corpus size") {
    // connected labeled graphs: 1 + 1 + 4 + 38 on 1..4 vertices
    auto plain = corpus_graphs(4, 0.5, 0.0);
    CHECK(plain.size() == 44);
    for (const auto& g : plain) CHECK(g.connected());
    auto ghost = corpus_graphs(4, 0.5, 0.3);
    CHECK(ghost.size() == 44);
    for (const auto& g : ghost) CHECK(g.has_ghost());
}

TEST_CASE("table emission column order") {
    std::vector<TableRow> rows = {{0.5, 0.0, "corr", 0.25, 0.0, "enumeration"}};
    std::string csv = emit_table(rows);
    CHECK(csv.rfind("beta,h,observable,value,stderr,method\n", 0) == 0);
    CHECK(csv.find("corr") != std::string::npos);
    CHECK_THROWS_AS(emit_table({}), std::domain_error);
}

TEST_CASE("chi-square survival function") {
    CHECK(chi_square_sf(0.0, 5) == doctest::Approx(1.0));
    CHECK(chi_square_sf(100.0, 5) < 1e-10);
    // known value: P[chi2_2 > 5.991] ~ 0.05
    CHECK(chi_square_sf(5.991, 2) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("suite reports are deterministic modulo timing") {
    SuiteConfig cfg;
    cfg.suite = "wick";
    cfg.seed = 3;
    Report a = run_suite(cfg);
    Report b = run_suite(cfg);
    CHECK(a.to_json(false) == b.to_json(false));
    CHECK(a.pass);
}

TEST_CASE("unknown suite name") {
    SuiteConfig cfg;
    cfg.suite = "nope";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

TEST_CASE("question2 emits a table") {
    SuiteConfig cfg;
    cfg.suite = "question2";
    cfg.beta_grid = {0.3, 0.6};
    cfg.out_path = "question2_test.csv";
    Report rep = run_suite(cfg);
    CHECK(rep.pass);  // report-only, never asserts
    CHECK(rep.records.size() == 3);
    std::remove("question2_test.csv");
}

TEST_CASE("config graph precedence") {
    SuiteConfig cfg;
    cfg.generator = "path:3";
    cfg.beta = 0.7;
    WeightedGraph g = config_graph(cfg);
    CHECK(g.num_vertices() == 3);
    CHECK(g.beta() == doctest::Approx(0.7));
}
