#include "isinglab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "isinglab/analytic2d.hpp"
#include "isinglab/currents.hpp"
#include "isinglab/exact.hpp"
#include "isinglab/planar.hpp"
#include "isinglab/samplers.hpp"

namespace isinglab {

namespace {

constexpr const char* kVersion = "isinglab 0.1.0";

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

CheckRecord make_record(std::string name, std::string identity, double lhs,
                        double rhs, double tol, long long instances = 1) {
    CheckRecord r;
    r.name = std::move(name);
    r.identity = std::move(identity);
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = lhs - rhs;
    r.tolerance = tol;
    r.instances = instances;
    r.pass = std::abs(r.gap) <= tol;
    return r;
}

CheckRecord bound_record(std::string name, std::string identity, double value,
                         double bound, double slack, long long instances = 1) {
    CheckRecord r;
    r.name = std::move(name);
    r.identity = std::move(identity);
    r.lhs = value;
    r.rhs = bound;
    r.gap = value - bound;
    r.tolerance = slack;
    r.instances = instances;
    r.pass = value <= bound + slack;
    return r;
}

/// Tracks the worst |gap| over many instances of one identity.
struct WorstGap {
    double worst = 0.0;
    long long count = 0;
    void add(double gap) {
        if (std::abs(gap) > std::abs(worst)) worst = gap;
        ++count;
    }
    CheckRecord record(std::string name, std::string identity, double tol) const {
        CheckRecord r = make_record(std::move(name), std::move(identity), worst,
                                    0.0, tol, count);
        return r;
    }
};

double uniform_01_open(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng);
    return x == 0.0 ? 1.0 : x;  // (0, 1]
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

}  // namespace

void Report::finalize() {
    pass = true;
    for (const auto& r : records) pass = pass && r.pass;
    version = kVersion;
}

std::string Report::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["pass"] = pass;
    j["seed"] = seed;
    j["version"] = version;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json rec;
        rec["name"] = r.name;
        rec["identity"] = r.identity;
        rec["lhs"] = r.lhs;
        rec["rhs"] = r.rhs;
        rec["gap"] = r.gap;
        rec["tolerance"] = r.tolerance;
        rec["pass"] = r.pass;
        rec["instances"] = r.instances;
        arr.push_back(rec);
    }
    j["records"] = arr;
    if (include_timing) j["timing"] = {{"wall_seconds", wall_seconds}};
    return j.dump(2);
}

std::vector<WeightedGraph> corpus_graphs(int max_n, double beta, double h) {
    std::vector<WeightedGraph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        const int m = (int)pairs.size();
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<Edge> edges;
            for (int e = 0; e < m; ++e)
                if ((mask >> e) & 1u)
                    edges.push_back({pairs[e].first, pairs[e].second, 1.0});
            WeightedGraph g = WeightedGraph::with_field(n, edges, beta, 0.0);
            if (n > 1 && !g.connected()) continue;
            if (h > 0.0)
                out.push_back(ghost_augment(
                    WeightedGraph::with_field(n, std::move(edges), beta, h)));
            else
                out.push_back(std::move(g));
        }
    }
    return out;
}

WeightedGraph config_graph(const SuiteConfig& cfg) {
    if (!cfg.graph_path.empty()) return WeightedGraph::from_json_file(cfg.graph_path);
    if (!cfg.generator.empty()) return make_generator(cfg.generator, cfg.beta, cfg.h);
    return make_complete(4, cfg.beta, 1.0, cfg.h);
}

std::string emit_table(const std::vector<TableRow>& rows) {
    if (rows.empty()) throw std::domain_error("emit_table: no rows");
    std::string out = "beta,h,observable,value,stderr,method\n";
    for (const auto& r : rows) {
        out += fmt(r.beta) + "," + fmt(r.h) + "," + r.observable + "," +
               fmt(r.value) + "," + fmt(r.stderr_) + "," + r.method + "\n";
    }
    return out;
}

double chi_square_sf(double stat, int dof) {
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

// --- expansions -----------------------------------------------------------

Report suite_expansions(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "expansions";
    rep.seed = cfg.seed;
    const double tol = cfg.tolerance.value_or(kRelTol);
    auto rng = make_rng(cfg.seed, 1);

    WorstGap ht_gap, cur_gap, fk_gap, lt_gap;
    double min_corr = 1.0;
    long long corr_count = 0;
    for (int draw = 0; draw < cfg.seeds; ++draw) {
        double beta = uniform_01_open(rng);
        double h = uniform_01_open(rng);
        for (bool ghost : {false, true}) {
            for (const auto& g : corpus_graphs(4, beta, ghost ? h : 0.0)) {
                const int n = g.num_vertices();
                double z0 = z_spin(g, 0);
                double ht0 = ht_sum(g, 0);
                double cur0 = current_sum(g, 0);
                double fk0 = fk_sum(g, 0);
                lt_gap.add((lt_partition(g) - z0) / z0);
                for (VertexSet A = 0; A < (1u << n); ++A) {
                    double c = z_spin(g, A) / z0;
                    ht_gap.add(ht_sum(g, A) / ht0 - c);
                    cur_gap.add(current_sum(g, A) / cur0 - c);
                    fk_gap.add(fk_sum(g, A) / fk0 - c);
                    if (c < min_corr) min_corr = c;
                    ++corr_count;
                }
            }
        }
    }
    rep.records.push_back(
        ht_gap.record("corr-vs-high-temperature", "tanh-weighted even-subgraph ratio", tol));
    rep.records.push_back(
        cur_gap.record("corr-vs-currents", "current-expansion ratio", tol));
    rep.records.push_back(
        fk_gap.record("corr-vs-random-cluster", "FK connectivity probability", tol));
    rep.records.push_back(
        lt_gap.record("partition-vs-contours", "low-temperature contour sum", tol));
    {
        CheckRecord r = bound_record("griffiths-1", "nonnegative correlations",
                                     -min_corr, 0.0, kIneqSlack, corr_count);
        rep.records.push_back(r);
    }
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- switching ------------------------------------------------------------

namespace {

std::vector<TraceFunctional> functional_bank(const WeightedGraph& g) {
    return {
        [](EdgeSet) { return 1.0; },
        [](EdgeSet T) { return (T & 1u) ? 1.0 : 0.0; },
        [](EdgeSet T) { return (double)vs_size(T); },
        [](EdgeSet T) { return (double)vs_size(T) * vs_size(T); },
        [](EdgeSet T) { return vs_size(T) % 2 ? -1.0 : 1.0; },
        [](EdgeSet T) { return T == 0 ? 1.0 : 0.0; },
        [](EdgeSet T) { return std::pow(0.5, vs_size(T)); },
        [&g](EdgeSet T) {
            return g.num_vertices() >= 2 && sets_connected(g, T, 1u, 2u) ? 1.0 : 0.0;
        },
        [&g](EdgeSet T) { return (double)component_count(g, T); },
        [&g](EdgeSet T) {
            for (int ei : g.incident(0))
                if ((T >> ei) & 1u) return 0.0;
            return 1.0;  // vertex 0 isolated in the trace
        },
    };
}

struct RandomModel {
    WeightedGraph graph;
    double beta, h;
};

RandomModel random_corpus_model(std::mt19937_64& rng, int min_vertices) {
    // draw a connected shape on 3..4 vertices plus couplings
    std::uniform_int_distribution<int> nv(std::max(3, min_vertices), 4);
    double beta = uniform_01_open(rng);
    bool with_field = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    double h = with_field ? uniform_01_open(rng) : 0.0;
    int n = nv(rng);
    while (true) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        std::uint32_t mask = std::uniform_int_distribution<std::uint32_t>(
            1, (1u << pairs.size()) - 1)(rng);
        std::vector<Edge> edges;
        for (int e = 0; e < (int)pairs.size(); ++e)
            if ((mask >> e) & 1u)
                edges.push_back({pairs[e].first, pairs[e].second, 1.0});
        WeightedGraph g = WeightedGraph::with_field(n, edges, beta, h);
        if (!WeightedGraph::with_field(n, edges, beta, 0.0).connected()) continue;
        return {h > 0.0 ? ghost_augment(g) : g, beta, h};
    }
}

VertexSet random_subset(std::mt19937_64& rng, int n) {
    return std::uniform_int_distribution<std::uint32_t>(0, (1u << n) - 1)(rng);
}

}  // namespace

Report suite_switching(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "switching";
    rep.seed = cfg.seed;
    const double tol = cfg.tolerance.value_or(kRelTol);
    auto rng = make_rng(cfg.seed, 2);

    WorstGap sq_gap, g2_gap, sw_gap, u4_gap;
    double worst_g2_neg = 0.0, worst_u4_sign = -1.0;
    int bank_index = 0;
    long long attempts = 0;
    while ((sq_gap.count < cfg.trials || g2_gap.count < cfg.trials ||
            sw_gap.count < cfg.trials || u4_gap.count < cfg.trials) &&
           attempts < 100LL * cfg.trials) {
        ++attempts;
        auto model = random_corpus_model(rng, 3);
        const auto& g = model.graph;
        const int n = g.num_vertices();
        VertexSet A = random_subset(rng, n);
        VertexSet B = random_subset(rng, n);

        if (sq_gap.count < cfg.trials) {
            auto sq = squared_corr_identity(g, A);
            sq_gap.add(sq.gap());
        }
        if (g2_gap.count < cfg.trials) {
            try {
                auto g2 = griffiths2_gap(g, A, B);
                g2_gap.add(g2.ratio_gap - g2.current_gap);
                worst_g2_neg = std::min(
                    worst_g2_neg, std::min(g2.ratio_gap, g2.current_gap));
            } catch (const std::domain_error&) {
            }
        }
        if (sw_gap.count < cfg.trials) {
            auto bank = functional_bank(g);
            auto sw = switching_verify(g, A, B, bank[bank_index % bank.size()]);
            ++bank_index;
            sw_gap.add((sw.lhs - sw.rhs) / std::max(1.0, std::abs(sw.lhs)));
        }
        if (u4_gap.count < cfg.trials && n >= 4) {
            try {
                auto u4 = ursell4(g, 0, 1, 2, 3);
                u4_gap.add(u4.gap());
                worst_u4_sign = std::max(worst_u4_sign, u4.rhs);
            } catch (const std::domain_error&) {
            }
        }
    }
    rep.records.push_back(sq_gap.record(
        "squared-correlation", "squared spin correlation as two-current connectivity", tol));
    rep.records.push_back(g2_gap.record(
        "griffiths-2-dual", "second-inequality gap via duplicated currents", tol));
    rep.records.push_back(bound_record("griffiths-2-sign", "gap nonnegative",
                                       -worst_g2_neg, 0.0, kIneqSlack, g2_gap.count));
    rep.records.push_back(sw_gap.record(
        "switching-lemma", "source switching for trace functionals", tol));
    rep.records.push_back(u4_gap.record(
        "ursell-4", "four-point function via two-current connectivity", tol));
    rep.records.push_back(bound_record("ursell-4-sign", "U4 nonpositive",
                                       worst_u4_sign, 0.0, kIneqSlack, u4_gap.count));
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

Report suite_ursell(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "ursell";
    rep.seed = cfg.seed;
    const double tol = cfg.tolerance.value_or(kRelTol);
    auto rng = make_rng(cfg.seed, 3);
    WorstGap gap;
    double worst_sign = -1.0;
    long long attempts = 0;
    while (gap.count < cfg.trials && attempts < 100LL * cfg.trials) {
        ++attempts;
        auto model = random_corpus_model(rng, 4);
        try {
            auto u4 = ursell4(model.graph, 0, 1, 2, 3);
            gap.add(u4.gap());
            worst_sign = std::max(worst_sign, u4.rhs);
        } catch (const std::domain_error&) {
        }
    }
    rep.records.push_back(gap.record(
        "ursell-4", "four-point function via two-current connectivity", tol));
    rep.records.push_back(bound_record("ursell-4-sign", "U4 nonpositive",
                                       worst_sign, 0.0, kIneqSlack, gap.count));
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- backbone -------------------------------------------------------------

namespace {

/// Endpoints of the backbone walks must partition the source set (plus the
/// ghost when |A| is odd) and all other walks must close.
bool decomposition_valid(const WeightedGraph& g, const BackboneDecomposition& d,
                         VertexSet A) {
    std::vector<int> expected;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (vs_contains(A, v)) expected.push_back(v);
    if (vs_size(A) % 2 == 1) {
        if (!g.has_ghost()) return false;
        expected.push_back(g.ghost_index());
    }
    if ((int)d.backbone_walks.size() != (vs_size(A) + 1) / 2) return false;
    std::vector<int> endpoints;
    for (const auto& w : d.backbone_walks) {
        if (w.closed()) return false;
        endpoints.push_back(w.vertices.front());
        endpoints.push_back(w.vertices.back());
    }
    std::sort(endpoints.begin(), endpoints.end());
    if (endpoints != expected) return false;
    for (const auto& w : d.loops)
        if (!w.closed()) return false;
    return true;
}

}  // namespace

Report suite_backbone(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "backbone";
    rep.seed = cfg.seed;

    std::vector<WeightedGraph> small = {
        make_path(3, 0.5),
        make_path(4, 0.5),
        make_cycle(3, 0.5),
        make_cycle(4, 0.5),
        WeightedGraph::with_field(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}, 0.5, 0.0),
        WeightedGraph::with_field(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}},
                                  0.5, 0.0),
        make_path(2, 0.5, 1.0, 0.7),  // ghost variant, 3 edges
    };
    long long exhaustive = 0, exhaustive_fail = 0;
    for (const auto& g : small) {
        const int m = g.num_edges();
        std::vector<int> counts(m, 0);
        while (true) {
            Current n{counts};
            VertexSet A = sources(g, n);
            auto d = backbone_peel(g, n, A);
            Current back = backbone_reconstruct(g, d);
            bool ok = back.counts == counts && decomposition_valid(g, d, A);
            // the converse direction: a valid decomposition reassembles to a
            // current whose sources are exactly A
            ok = ok && sources(g, back) == A;
            ++exhaustive;
            if (!ok) ++exhaustive_fail;
            int i = 0;
            while (i < m && counts[i] == 3) counts[i++] = 0;
            if (i == m) break;
            ++counts[i];
        }
    }
    {
        CheckRecord r;
        r.name = "peeling-exhaustive";
        r.identity = "walk decomposition of currents, both directions";
        r.lhs = (double)exhaustive_fail;
        r.rhs = 0.0;
        r.gap = r.lhs;
        r.tolerance = 0.0;
        r.instances = exhaustive;
        r.pass = exhaustive_fail == 0;
        rep.records.push_back(r);
    }

    auto rng = make_rng(cfg.seed, 4);
    std::vector<WeightedGraph> large = {
        make_grid(3, 3, 0.5),
        ghost_augment(make_complete(4, 0.5, 1.0, 0.4)),
        make_torus(3, 3, 0.3),
    };
    long long randomized = 0, randomized_fail = 0;
    std::uniform_int_distribution<int> count_dist(0, 6);
    const long long rounds =
        (10000 + (long long)large.size() - 1) / (long long)large.size();
    for (const auto& g : large) {
        for (long long t = 0; t < rounds; ++t) {
            Current n;
            n.counts.resize(g.num_edges());
            for (auto& c : n.counts) c = count_dist(rng);
            VertexSet A = sources(g, n);
            auto d = backbone_peel(g, n, A);
            bool ok = backbone_reconstruct(g, d).counts == n.counts &&
                      decomposition_valid(g, d, A);
            ++randomized;
            if (!ok) ++randomized_fail;
        }
    }
    {
        CheckRecord r;
        r.name = "peeling-random-roundtrip";
        r.identity = "peel then reconstruct is the identity";
        r.lhs = (double)randomized_fail;
        r.rhs = 0.0;
        r.gap = r.lhs;
        r.tolerance = 0.0;
        r.instances = randomized;
        r.pass = randomized_fail == 0;
        rep.records.push_back(r);
    }
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- wick -----------------------------------------------------------------

Report suite_wick(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "wick";
    rep.seed = cfg.seed;
    const double tol = cfg.tolerance.value_or(kRelTol);

    for (double beta : {0.2, 0.4, 0.6}) {
        {
            WeightedGraph g = make_grid(2, 2, beta);
            auto r = boundary_wick4(g, 2, 2, grid_boundary_ccw(2, 2));
            rep.records.push_back(make_record("wick4-grid2x2-beta" + fmt_short(beta),
                                              "boundary four-point pairing rule",
                                              r.lhs, r.rhs, tol));
        }
        {
            WeightedGraph g = make_grid(3, 3, beta);
            // four boundary vertices in ccw order: corners of the 3x3 grid
            auto r = boundary_wick4(g, 3, 3, {0, 2, 8, 6});
            rep.records.push_back(make_record("wick4-grid3x3-beta" + fmt_short(beta),
                                              "boundary four-point pairing rule",
                                              r.lhs, r.rhs, tol));
        }
    }
    {
        WeightedGraph g = make_grid(4, 4, 0.3);
        // six boundary vertices of the 4x4 grid in ccw order
        std::vector<int> xs = {0, 2, 3, 11, 15, 12};
        auto r = fermionic_wick_2n(g, 4, 4, xs);
        rep.records.push_back(make_record("wick6-grid4x4-beta0.3",
                                          "fermionic pairing rule, six points",
                                          r.lhs, r.rhs, tol));
    }
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- inequalities (simon-lieb suite) --------------------------------------

Report suite_simon_lieb(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "simon-lieb";
    rep.seed = cfg.seed;
    auto rng = make_rng(cfg.seed, 5);

    double min_corr = 1.0, min_g2 = 1.0;
    long long corr_count = 0, g2_count = 0;
    WorstGap deriv_gap;
    double min_deriv = 0.0;
    long long sl_count = 0, sl_fail = 0;
    double worst_sl = -1.0;

    for (int draw = 0; draw < cfg.seeds; ++draw) {
        double beta = uniform_01_open(rng);
        double h = uniform_01_open(rng);
        for (bool ghost : {false, true}) {
            for (const auto& g : corpus_graphs(4, beta, ghost ? h : 0.0)) {
                const int n = g.num_vertices();
                std::vector<double> corr(1u << n);
                double z0 = z_spin(g, 0);
                for (VertexSet A = 0; A < (1u << n); ++A) {
                    corr[A] = z_spin(g, A) / z0;
                    min_corr = std::min(min_corr, corr[A]);
                    ++corr_count;
                }
                for (VertexSet A = 0; A < (1u << n); ++A)
                    for (VertexSet B = 0; B < (1u << n); ++B) {
                        min_g2 = std::min(min_g2, corr[A ^ B] - corr[A] * corr[B]);
                        ++g2_count;
                    }
                VertexSet A = random_subset(rng, n);
                auto d = beta_derivative_check(g, A);
                deriv_gap.add(d.analytic - d.numeric);
                min_deriv = std::min(min_deriv, d.analytic);
                if (n >= 3 && !ghost && g.connected()) {
                    // h = 0 only: with a field the ghost couples S to the
                    // outside, bypassing the boundary sum
                    // random proper S containing 0, random x outside
                    VertexSet S =
                        (random_subset(rng, n) | 1u) & ~(1u << (n - 1));
                    int x = n - 1;
                    auto sl = simon_lieb_check(g, S, 0, x);
                    ++sl_count;
                    if (!sl.holds) ++sl_fail;
                    worst_sl = std::max(worst_sl, sl.lhs - sl.rhs);
                }
            }
        }
    }
    // 4x4 grid with a 2x2 corner block, randomized beta
    for (int t = 0; t < 5; ++t) {
        double beta = uniform_01_open(rng);
        WeightedGraph g = make_grid(4, 4, beta);
        VertexSet S = (1u << 0) | (1u << 1) | (1u << 4) | (1u << 5);
        auto sl = simon_lieb_check(g, S, 0, 15);
        ++sl_count;
        if (!sl.holds) ++sl_fail;
        worst_sl = std::max(worst_sl, sl.lhs - sl.rhs);
    }

    rep.records.push_back(bound_record("griffiths-1", "nonnegative correlations",
                                       -min_corr, 0.0, kIneqSlack, corr_count));
    rep.records.push_back(bound_record("griffiths-2", "nonnegative covariance",
                                       -min_g2, 0.0, kIneqSlack, g2_count));
    rep.records.push_back(deriv_gap.record(
        "beta-derivative", "correlation-sum derivative vs finite difference", 1e-6));
    rep.records.push_back(bound_record("beta-monotone", "derivative nonnegative",
                                       -min_deriv, 0.0, kIneqSlack, deriv_gap.count));
    rep.records.push_back(bound_record("simon-lieb", "finite-volume two-point bound",
                                       worst_sl, 0.0, kIneqSlack, sl_count));
    rep.records.back().pass = sl_fail == 0;
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- samplers -------------------------------------------------------------

namespace {

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    for (size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
    return tv / 2.0;
}

/// Inverse-CDF sample from an enumerated categorical law.
template <class T>
const T& categorical(const std::vector<std::pair<T, double>>& law,
                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng);
    for (const auto& [value, p] : law) {
        if (x < p) return value;
        x -= p;
    }
    return law.back().first;
}

/// Row-to-row transfer-matrix correlation <s_(0,0) s_(dx,0)> on a W x L
/// torus (dense matrices; used as the oracle for the torus MC check).
double torus_row_correlation(int W, int L, double beta, int dx) {
    const std::size_t dim = std::size_t(1) << W;
    std::vector<double> T(dim * dim);
    auto row_energy = [&](std::size_t s) {
        double e = 0.0;
        if (W > 1)
            for (int i = 0; i < W; ++i) {
                int a = (s >> i) & 1u ? -1 : 1;
                int b = (s >> ((i + 1) % W)) & 1u ? -1 : 1;
                e += a * b;
            }
        return e;
    };
    for (std::size_t s = 0; s < dim; ++s)
        for (std::size_t t = 0; t < dim; ++t) {
            double cross = 0.0;
            for (int i = 0; i < W; ++i) {
                int a = (s >> i) & 1u ? -1 : 1;
                int b = (t >> i) & 1u ? -1 : 1;
                cross += a * b;
            }
            T[s * dim + t] = std::exp(
                beta * (0.5 * row_energy(s) + 0.5 * row_energy(t) + cross));
        }
    auto matmul = [&](const std::vector<double>& A, const std::vector<double>& B) {
        std::vector<double> C(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) {
                double a = A[i * dim + k];
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < dim; ++j) C[i * dim + j] += a * B[k * dim + j];
            }
        return C;
    };
    std::vector<double> M = T;
    for (int p = 1; p < L; ++p) M = matmul(M, T);
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = M[s * dim + s];
        int a = (s >> 0) & 1u ? -1 : 1;
        int b = (s >> dx) & 1u ? -1 : 1;
        den += diag;
        num += diag * a * b;
    }
    return num / den;
}

}  // namespace

double mc_plus_boundary_magnetization(int L, double beta, std::uint64_t seed,
                                      long long sweeps) {
    WeightedGraph g = make_grid(L, L, beta);
    SpinConfig sigma(L * L, 1);
    std::vector<char> frozen(L * L, 0);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            if (x == 0 || y == 0 || x == L - 1 || y == L - 1) frozen[y * L + x] = 1;
    auto rng = make_rng(seed, 6);
    const int center = (L / 2) * L + L / 2;
    const long long burn = sweeps / 5;
    double acc = 0.0;
    long long measured = 0;
    for (long long s = 0; s < sweeps; ++s) {
        for (int k = 0; k < L * L; ++k) glauber_step(g, sigma, rng, frozen);
        if (s >= burn) {
            acc += sigma[center];
            ++measured;
        }
    }
    return acc / measured;
}

Report suite_samplers(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "samplers";
    rep.seed = cfg.seed;
    const long long N = cfg.samples;
    const double tv_tol = cfg.tolerance.value_or(0.01);

    // Glauber vs exact Gibbs on the triangle: TV over the 8 spin states.
    {
        WeightedGraph g = make_complete(3, 0.6);
        std::vector<double> exact(8, 0.0);
        double z0 = z_spin(g, 0);
        SpinConfig sigma(3);
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            for (int v = 0; v < 3; ++v) sigma[v] = (mask >> v) & 1u ? -1 : 1;
            exact[mask] = std::exp(-g.beta() * energy(g, sigma)) / z0;
        }
        auto rng = make_rng(cfg.seed, 7);
        SpinConfig state(3, 1);
        for (int i = 0; i < 10000; ++i) glauber_step(g, state, rng);
        std::vector<double> emp(8, 0.0);
        for (long long i = 0; i < N; ++i) {
            for (int k = 0; k < 3; ++k) glauber_step(g, state, rng);
            std::uint32_t mask = 0;
            for (int v = 0; v < 3; ++v)
                if (state[v] < 0) mask |= 1u << v;
            emp[mask] += 1.0 / N;
        }
        rep.records.push_back(bound_record("glauber-triangle-tv",
                                           "spin chain vs Gibbs law",
                                           total_variation(emp, exact), tv_tol, 0.0, N));
    }
    // Glauber estimate of <s_x s_y> on a single edge, within 3 sigma.
    {
        WeightedGraph g = make_path(2, 0.7);
        auto rng = make_rng(cfg.seed, 8);
        SpinConfig state(2, 1);
        auto res = estimate([&] { glauber_step(g, state, rng); },
                            [&] { return (double)(state[0] * state[1]); }, N);
        double exact = std::tanh(0.7);
        rep.records.push_back(make_record(
            "glauber-edge-corr", "two-point estimate vs enumeration", res.mean,
            exact, 3.0 * std::max(res.std_error, 1e-12)));
    }
    // Worm chain on the single edge: P[trace empty] = 1/cosh(beta J).
    {
        WeightedGraph g = make_path(2, 0.8);
        WormChain chain(g, 0, cfg.seed, 9);
        auto res = estimate([&] { chain.step(); },
                            [&] { return chain.current().trace() == 0 ? 1.0 : 0.0; },
                            N);
        double exact = 1.0 / std::cosh(0.8);
        rep.records.push_back(make_record(
            "worm-edge-empty-trace", "trace law of the sourceless current law",
            res.mean, exact, 3.0 * std::max(res.std_error, 1e-12)));
    }
    // Worm chain on the triangle: TV of the trace distribution.
    {
        WeightedGraph g = make_complete(3, 0.7);
        auto law = trace_law_exact(g, 0);
        auto exact = law.full_distribution();
        WormChain chain(g, 0, cfg.seed, 10);
        for (int i = 0; i < 10000; ++i) chain.step();
        std::vector<double> emp(exact.size(), 0.0);
        for (long long i = 0; i < N; ++i) {
            chain.step();
            chain.step();
            emp[chain.current().trace()] += 1.0 / N;
        }
        rep.records.push_back(bound_record("worm-triangle-tv",
                                           "trace law of the sourceless current law",
                                           total_variation(emp, exact), tv_tol, 0.0, N));
        rep.records.push_back(bound_record(
            "worm-source-conservation", "sources invariant along the chain",
            sources(chain.graph(), chain.current()) == chain.declared_sources() ? 0.0
                                                                                : 1.0,
            0.0, 0.0, N));
    }
    // Even-subgraph chain on a 2x2 grid with ghost: TV against the
    // tanh-weighted law on the sourceless parity class.
    {
        WeightedGraph g = make_grid(2, 2, 0.6, 1.0, 0.5).ghost_form();
        auto classes = parity_classes(g, 0);
        // tanh-weighted law: prod sinh / prod cosh is proportional to prod tanh
        double total = 0.0;
        for (auto& [mask, w] : classes) total += w;
        std::vector<double> exact(1u << g.num_edges(), 0.0);
        for (auto& [mask, w] : classes) exact[mask] = w / total;
        EvenSubgraphChain chain(g, 0, cfg.seed, 11);
        for (int i = 0; i < 10000; ++i) chain.step();
        std::vector<double> emp(exact.size(), 0.0);
        for (long long i = 0; i < N; ++i) {
            chain.step();
            emp[chain.state()] += 1.0 / N;
        }
        rep.records.push_back(bound_record("even-subgraph-grid-tv",
                                           "tanh-weighted even-subgraph law",
                                           total_variation(emp, exact), tv_tol, 0.0, N));
    }
    // Sprinkling pipeline on the triangle: exact mu^0 sample, then the two
    // sprinkles; chi-square against the exact trace and FK laws, and
    // edge-marginal z-tests against FK enumeration.
    {
        WeightedGraph g = make_complete(3, 0.8);
        auto classes = parity_classes(g, 0);
        auto w = ExpansionWeights::of(g);
        std::vector<std::pair<EdgeSet, double>> mu0;
        double total = 0.0;
        for (auto& [mask, wt] : classes) {
            double x = 1.0;
            for (int e = 0; e < g.num_edges(); ++e)
                if ((mask >> e) & 1u) x *= w.tanh_bj[e];
            mu0.emplace_back(mask, x);
            total += x;
        }
        for (auto& [mask, p] : mu0) p /= total;
        auto trace_exact = trace_law_exact(g, 0).full_distribution();
        // exact FK law over subsets
        const int m = g.num_edges();
        std::vector<double> fk_exact(1u << m, 0.0);
        double fk_total = 0.0;
        for (EdgeSet E = 0; E < (1u << m); ++E) {
            double r = std::ldexp(1.0, component_count(g, E));
            for (int e = 0; e < m; ++e) r *= ((E >> e) & 1u) ? w.p[e] : 1.0 - w.p[e];
            fk_exact[E] = r;
            fk_total += r;
        }
        for (auto& p : fk_exact) p /= fk_total;

        auto rng = make_rng(cfg.seed, 12);
        std::vector<double> trace_emp(1u << m, 0.0), fk_emp(1u << m, 0.0);
        std::vector<double> marg_emp(m, 0.0);
        for (long long i = 0; i < N; ++i) {
            EdgeSet E = categorical(mu0, rng);
            EdgeSet T = sprinkle_ht_to_current(E, g, rng);
            EdgeSet F = sprinkle_current_to_fk(T, g, rng);
            trace_emp[T] += 1.0 / N;
            fk_emp[F] += 1.0 / N;
            for (int e = 0; e < m; ++e)
                if ((F >> e) & 1u) marg_emp[e] += 1.0 / N;
        }
        auto chi2_p = [&](const std::vector<double>& emp,
                          const std::vector<double>& exact) {
            double stat = 0.0;
            int dof = 0;
            for (size_t i = 0; i < exact.size(); ++i) {
                double expct = exact[i] * N;
                if (expct < 5.0) continue;  // merge tiny cells away
                double diff = emp[i] * N - expct;
                stat += diff * diff / expct;
                ++dof;
            }
            return chi_square_sf(stat, std::max(1, dof - 1));
        };
        double p_trace = chi2_p(trace_emp, trace_exact);
        double p_fk = chi2_p(fk_emp, fk_exact);
        rep.records.push_back(bound_record("sprinkle-trace-chi2",
                                           "sprinkled even subgraph has the current trace law",
                                           0.001, p_trace, 0.0, N));
        rep.records.push_back(bound_record("sprinkle-fk-chi2",
                                           "sprinkled trace has the random-cluster law",
                                           0.001, p_fk, 0.0, N));
        double worst_z = 0.0;
        for (int e = 0; e < m; ++e) {
            double p = 0.0;
            for (EdgeSet E = 0; E < (1u << m); ++E)
                if ((E >> e) & 1u) p += fk_exact[E];
            double se = std::sqrt(p * (1.0 - p) / N);
            worst_z = std::max(worst_z, std::abs(marg_emp[e] - p) / se);
        }
        rep.records.push_back(bound_record("sprinkle-fk-marginals",
                                           "pipeline edge marginals vs FK enumeration",
                                           worst_z, 3.0, 0.0, N));
    }
    // Torus correlation: Glauber vs transfer-matrix oracle, within 3 sigma.
    {
        const int W = 8, L = 8;
        const double beta = 0.3;
        WeightedGraph g = make_torus(W, L, beta);
        double exact = torus_row_correlation(W, L, beta, 2);
        auto rng = make_rng(cfg.seed, 13);
        SpinConfig state(W * L, 1);
        auto res = estimate(
            [&] {
                for (int k = 0; k < W * L; ++k) glauber_step(g, state, rng);
            },
            [&] { return (double)(state[0] * state[2]); },
            std::max<long long>(20000, N / 5), 2000);
        rep.records.push_back(make_record(
            "glauber-torus-corr", "torus two-point estimate vs transfer matrix",
            res.mean, exact, 3.0 * std::max(res.std_error, 1e-12)));
    }
    // Spontaneous magnetization by MC with an all-plus boundary.
    {
        double mc = mc_plus_boundary_magnetization(24, 0.6, cfg.seed, 20000);
        rep.records.push_back(make_record("mc-magnetization-24",
                                          "plus-boundary center spin vs closed form",
                                          mc, onsager_magnetization(0.6), 0.02));
    }
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- onsager --------------------------------------------------------------

Report suite_onsager(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "onsager";
    rep.seed = cfg.seed;

    double bc = critical_beta_2d();
    rep.records.push_back(make_record("beta-c-sinh", "sinh(2 beta_c) = 1",
                                      std::sinh(2.0 * bc), 1.0, 1e-15));
    rep.records.push_back(make_record("beta-c-tanh", "tanh(beta_c) = sqrt 2 - 1",
                                      std::tanh(bc), std::sqrt(2.0) - 1.0, 1e-15));
    for (double beta : {0.2, 0.3}) {
        double f = onsager_free_energy(beta, 512);
        std::vector<double> gaps;
        for (int W : {4, 6, 8, 10})
            gaps.push_back(std::abs(strip_free_energy({W, beta}) - f));
        bool monotone = true;
        for (size_t i = 1; i < gaps.size(); ++i) monotone = monotone && gaps[i] < gaps[i - 1];
        rep.records.push_back(bound_record("strip-gap-w10-beta" + fmt_short(beta),
                                           "strip free energy vs quadrature",
                                           gaps.back(), 1e-2, 0.0));
        CheckRecord mono = bound_record("strip-gap-monotone-beta" + fmt_short(beta),
                                        "gap decreasing in the strip width",
                                        monotone ? 0.0 : 1.0, 0.0, 0.0, 4);
        rep.records.push_back(mono);
    }
    for (double beta : {0.2, 0.3, 0.6}) {
        double d1 = std::abs(onsager_free_energy(beta, 128) -
                             onsager_free_energy(beta, 64));
        double d2 = std::abs(onsager_free_energy(beta, 256) -
                             onsager_free_energy(beta, 128));
        rep.records.push_back(bound_record("quadrature-doubling-beta" + fmt_short(beta),
                                           "self-convergence under doubling",
                                           d2, 1e-8, 0.0));
        // the ratio is meaningless once both differences sit at rounding level
        rep.records.push_back(bound_record("quadrature-cauchy-beta" + fmt_short(beta),
                                           "contraction ratio below 0.1",
                                           d1 > 1e-12 ? d2 / d1 : 0.0, 0.1, 0.0));
    }
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// --- question 2 -----------------------------------------------------------

Report suite_question2(const SuiteConfig& cfg) {
    Timer timer;
    Report rep;
    rep.suite = "question2";
    rep.seed = cfg.seed;
    std::vector<double> grid = cfg.beta_grid;
    if (grid.empty())
        for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);

    struct Target {
        std::string name;
        WeightedGraph graph;
        VertexSet A, B;
    };
    std::vector<Target> targets = {
        {"path2", make_path(2, 1.0), 1u << 0, 1u << 1},
        {"triangle", make_complete(3, 1.0), 1u << 0, 1u << 2},
        {"grid2x2-ghost", make_grid(2, 2, 1.0, 1.0, 0.3), 1u << 0, 1u << 3},
    };
    std::vector<TableRow> rows;
    for (const auto& t : targets) {
        auto scan = question2_scan(t.graph, t.A, t.B, grid);
        // smallest step between consecutive grid points; negative would be a
        // counterexample worth looking at
        double min_diff = scan.size() > 1 ? 1e300 : 0.0;
        for (size_t i = 1; i < scan.size(); ++i)
            min_diff = std::min(min_diff, scan[i].prob - scan[i - 1].prob);
        for (const auto& row : scan)
            rows.push_back({row.beta, t.graph.field(), "two-current-connectivity",
                            row.prob, 0.0, t.name});
        // report-only: monotone output is expected but never asserted
        CheckRecord r;
        r.name = "question2-" + t.name;
        r.identity = "connectivity of duplicated sourceless currents (report only)";
        r.lhs = min_diff;
        r.rhs = 0.0;
        r.gap = min_diff;
        r.tolerance = 0.0;
        r.instances = (long long)scan.size();
        r.pass = true;
        rep.records.push_back(r);
    }
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        out << emit_table(rows);
    }
    rep.finalize();
    rep.wall_seconds = timer.seconds();
    return rep;
}

Report run_suite(const SuiteConfig& cfg) {
    if (cfg.suite == "expansions") return suite_expansions(cfg);
    if (cfg.suite == "switching") return suite_switching(cfg);
    if (cfg.suite == "ursell") return suite_ursell(cfg);
    if (cfg.suite == "backbone") return suite_backbone(cfg);
    if (cfg.suite == "wick") return suite_wick(cfg);
    if (cfg.suite == "simon-lieb") return suite_simon_lieb(cfg);
    if (cfg.suite == "samplers") return suite_samplers(cfg);
    if (cfg.suite == "onsager") return suite_onsager(cfg);
    if (cfg.suite == "question2") return suite_question2(cfg);
    throw std::invalid_argument("unknown suite: " + cfg.suite);
}

}  // namespace isinglab
