#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isinglab/graph.hpp"

namespace isinglab {

struct CheckRecord {
    std::string name;      // which check
    std::string identity;  // which identity or law it exercises
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    long long instances = 1;
};

struct Report {
    std::string suite;
    std::vector<CheckRecord> records;
    bool pass = false;  // all records pass
    std::uint64_t seed = 0;
    std::string version;
    double wall_seconds = 0.0;  // excluded from determinism comparisons

    /// Deterministic part (everything except wall_seconds) as ordered JSON.
    std::string to_json(bool include_timing = true) const;
    void finalize();  // summary pass := conjunction of records
};

struct SuiteConfig {
    std::string suite;
    std::string graph_path;             // one of graph_path / generator
    std::string generator;
    double beta = 0.4;
    double h = 0.0;
    std::vector<double> beta_grid;      // used by question2 / onsager
    std::uint64_t seed = 1;
    int trials = 200;                   // randomized instances
    int seeds = 20;                     // (beta, h) draws per corpus graph
    long long samples = 100000;         // MC samples
    std::optional<double> tolerance;    // overrides the per-suite default
    std::string out_path;
};

/// Dispatches to the named suite: expansions | switching | ursell | wick |
/// simon-lieb | samplers | onsager | question2. Throws
/// std::invalid_argument for an unknown suite name.
Report run_suite(const SuiteConfig& cfg);

// Individual suites (used directly by the acceptance runner).
Report suite_expansions(const SuiteConfig& cfg);
Report suite_switching(const SuiteConfig& cfg);
Report suite_ursell(const SuiteConfig& cfg);
Report suite_backbone(const SuiteConfig& cfg);
Report suite_wick(const SuiteConfig& cfg);
Report suite_simon_lieb(const SuiteConfig& cfg);
Report suite_samplers(const SuiteConfig& cfg);
Report suite_onsager(const SuiteConfig& cfg);
Report suite_question2(const SuiteConfig& cfg);

/// All connected graphs on <= max_n labeled vertices with unit couplings.
/// h > 0 yields the ghost-augmented variants.
std::vector<WeightedGraph> corpus_graphs(int max_n, double beta, double h);

/// Loads a graph per config: file wins over generator; otherwise a default
/// complete:4.
WeightedGraph config_graph(const SuiteConfig& cfg);

struct TableRow {
    double beta = 0.0;
    double h = 0.0;
    std::string observable;
    double value = 0.0;
    double stderr_ = 0.0;
    std::string method;
};

/// CSV with stable column order: beta,h,observable,value,stderr,method.
std::string emit_table(const std::vector<TableRow>& rows);

/// <sigma_center> on an L x L grid with the boundary spins frozen to +1,
/// by Glauber dynamics.
double mc_plus_boundary_magnetization(int L, double beta, std::uint64_t seed,
                                      long long sweeps);

/// Upper tail of the chi-square distribution (survival function).
double chi_square_sf(double stat, int dof);

}  // namespace isinglab
