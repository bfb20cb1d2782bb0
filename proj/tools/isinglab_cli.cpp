#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isinglab/analytic2d.hpp"
#include "isinglab/currents.hpp"
#include "isinglab/exact.hpp"
#include "isinglab/graph.hpp"
#include "isinglab/samplers.hpp"
#include "isinglab/suites.hpp"

namespace {

using namespace isinglab;

// Exit codes: 0 pass, 1 check failed, 2 usage, 3 parse error, 4 enumeration
// cap exceeded, 5 precondition violated.
enum ExitCode {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kParseError = 3,
    kCapError = 4,
    kPrecondition = 5,
};

std::vector<double> parse_beta_grid(const std::string& text) {
    // "a:b:step" inclusive range, or a comma-separated list
    std::vector<double> out;
    if (text.empty()) return out;
    if (text.find(':') != std::string::npos) {
        double a, b, s;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &s) != 3 || s <= 0)
            throw std::invalid_argument("bad beta grid: " + text);
        for (double x = a; x <= b + 1e-12; x += s) out.push_back(x);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stod(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::string default_out_dir() {
    const char* dir = std::getenv("ISINGLAB_OUT_DIR");
    return dir ? dir : "";
}

void write_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::string path = out_path;
    std::string dir = default_out_dir();
    if (!dir.empty() && path.find('/') == std::string::npos)
        path = dir + "/" + path;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and Monte Carlo laboratory for the ferromagnetic Ising model"};
    app.require_subcommand(1);
    // keep -h free for the field flag
    app.set_help_flag("--help", "print help");

    std::string graph_path, generator, sources_csv = "", out_path;
    double beta = 0.4, h = 0.0;
    std::uint64_t seed = 1;

    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--graph", graph_path, "JSON graph file");
        cmd->add_option("--generator", generator,
                        "path:N | cycle:N | complete:N | grid:WxL | torus:WxL");
        cmd->add_option("--beta", beta, "inverse temperature");
        cmd->add_option("--h", h, "magnetic field (ghost coupling)");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    // verify <suite>
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite_name, beta_grid_text;
    SuiteConfig cfg;
    double tolerance = -1.0;
    verify->add_option("suite", suite_name,
                       "expansions | switching | ursell | backbone | wick | "
                       "simon-lieb | samplers | onsager | question2")
        ->required();
    add_model_flags(verify);
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--trials", cfg.trials, "randomized instances");
    verify->add_option("--seeds", cfg.seeds, "(beta, h) draws");
    verify->add_option("--samples", cfg.samples, "MC samples per chain");
    verify->add_option("--tolerance", tolerance, "override the suite tolerance");
    verify->add_option("--beta-grid", beta_grid_text, "a:b:step or comma list");

    // compute <quantity>
    auto* compute = app.add_subcommand("compute", "exact finite-volume quantities");
    std::string quantity, subset_csv;
    int x0 = 0;
    compute->add_option("quantity", quantity, "corr | z | phi-s")->required();
    add_model_flags(compute);
    compute->add_option("--sources", sources_csv, "vertex list, e.g. 0,2");
    compute->add_option("--subset", subset_csv, "vertex subset S for phi-s");
    compute->add_option("--x0", x0, "base vertex for phi-s");

    // sample
    auto* sample = app.add_subcommand("sample", "run a Monte Carlo chain");
    std::string law = "spin";
    long long steps = 100000, burn = kDefaultBurnIn;
    sample->add_option("--law", law, "spin | current | even");
    add_model_flags(sample);
    sample->add_option("--sources", sources_csv, "source set for current/even laws");
    sample->add_option("--steps", steps, "measured steps");
    sample->add_option("--burn-in", burn, "discarded steps");
    sample->add_option("--seed", seed, "RNG seed");

    // onsager
    auto* onsager = app.add_subcommand("onsager", "square-lattice closed forms");
    std::string onsager_grid = "0.1:0.9:0.1";
    int width = 0;
    onsager->add_option("--beta-grid", onsager_grid, "a:b:step or comma list");
    onsager->add_option("--width", width, "also tabulate the width-W strip value");
    onsager->add_option("--out", out_path, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (verify->parsed()) {
            static const std::vector<std::string> known = {
                "expansions", "switching", "ursell",   "backbone", "wick",
                "simon-lieb", "samplers",  "onsager",  "question2"};
            if (std::find(known.begin(), known.end(), suite_name) == known.end()) {
                std::cerr << "error: unknown suite: " << suite_name << "\n";
                return kUsage;
            }
            cfg.suite = suite_name;
            cfg.graph_path = graph_path;
            cfg.generator = generator;
            cfg.beta = beta;
            cfg.h = h;
            cfg.seed = seed;
            if (tolerance > 0.0) cfg.tolerance = tolerance;
            cfg.beta_grid = parse_beta_grid(beta_grid_text);
            cfg.out_path = out_path;
            Report rep = run_suite(cfg);
            if (out_path.empty() || cfg.suite == "question2")
                std::cout << rep.to_json() << "\n";
            else
                write_or_print(out_path, rep.to_json());
            return rep.pass ? kOk : kCheckFailed;
        }
        if (compute->parsed()) {
            SuiteConfig gc;
            gc.graph_path = graph_path;
            gc.generator = generator;
            gc.beta = beta;
            gc.h = h;
            WeightedGraph g = config_graph(gc);
            VertexSet A = vs_parse(sources_csv);
            std::vector<TableRow> rows;
            if (quantity == "corr")
                rows.push_back({g.beta(), g.field(), "corr", corr_spin(g, A), 0.0,
                                "enumeration"});
            else if (quantity == "z")
                rows.push_back({g.beta(), g.field(), "z", z_spin(g, A), 0.0,
                                "enumeration"});
            else if (quantity == "phi-s") {
                VertexSet S = vs_parse(subset_csv);
                rows.push_back({g.beta(), g.field(), "phi_S", phi_S(g, S, x0), 0.0,
                                "enumeration"});
            } else
                throw std::invalid_argument("unknown quantity: " + quantity);
            write_or_print(out_path, emit_table(rows));
            return kOk;
        }
        if (sample->parsed()) {
            SuiteConfig gc;
            gc.graph_path = graph_path;
            gc.generator = generator;
            gc.beta = beta;
            gc.h = h;
            WeightedGraph g = config_graph(gc);
            VertexSet A = vs_parse(sources_csv);
            std::vector<TableRow> rows;
            if (law == "spin") {
                auto rng = make_rng(seed, 0);
                SpinConfig state(g.num_vertices(), 1);
                auto res = estimate([&] { glauber_step(g, state, rng); },
                                    [&] {
                                        double s = 0.0;
                                        for (int v : state) s += v;
                                        return s / g.num_vertices();
                                    },
                                    steps, burn);
                rows.push_back({g.beta(), g.field(), "magnetization", res.mean,
                                res.std_error, "glauber"});
            } else if (law == "current") {
                WormChain chain(g, A, seed, 0);
                auto res = estimate([&] { chain.step(); },
                                    [&] {
                                        return (double)vs_size(chain.current().trace());
                                    },
                                    steps, burn);
                rows.push_back({g.beta(), g.field(), "trace_size", res.mean,
                                res.std_error, "worm"});
            } else if (law == "even") {
                EvenSubgraphChain chain(g, A, seed, 0);
                auto res = estimate([&] { chain.step(); },
                                    [&] { return (double)vs_size(chain.state()); },
                                    steps, burn);
                rows.push_back({g.beta(), g.field(), "subgraph_size", res.mean,
                                res.std_error, "even-subgraph"});
            } else
                throw std::invalid_argument("unknown law: " + law);
            write_or_print(out_path, emit_table(rows));
            return kOk;
        }
        if (onsager->parsed()) {
            std::vector<TableRow> rows;
            for (double b : parse_beta_grid(onsager_grid)) {
                double f;
                try {
                    f = onsager_free_energy(b);
                } catch (const SingularBeta&) {
                    continue;
                }
                rows.push_back({b, 0.0, "free_energy", f, 0.0, "quadrature"});
                rows.push_back({b, 0.0, "magnetization", onsager_magnetization(b),
                                0.0, "closed-form"});
                if (width > 0)
                    rows.push_back({b, 0.0, "free_energy", strip_free_energy({width, b}),
                                    0.0, "strip"});
            }
            write_or_print(out_path, emit_table(rows));
            return kOk;
        }
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    return kUsage;
}
