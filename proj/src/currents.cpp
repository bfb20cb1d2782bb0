#include "isinglab/currents.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace isinglab {

namespace {

void check_counts(const WeightedGraph& g, const Current& n) {
    if ((int)n.counts.size() != g.num_edges())
        throw std::domain_error("current does not match the edge list");
    for (int c : n.counts)
        if (c < 0) throw std::domain_error("negative current count");
}

}  // namespace

VertexSet sources(const WeightedGraph& g, const Current& n) {
    check_counts(g, n);
    VertexSet s = 0;
    const auto& edges = g.edges();
    for (int i = 0; i < (int)edges.size(); ++i) {
        if (n.counts[i] % 2 == 0) continue;
        if (!g.is_ghost(edges[i].u)) s ^= 1u << edges[i].u;
        if (!g.is_ghost(edges[i].v)) s ^= 1u << edges[i].v;
    }
    return s;
}

double current_weight(const WeightedGraph& g, const Current& n) {
    check_counts(g, n);
    double w = 1.0;
    for (int i = 0; i < g.num_edges(); ++i) {
        double bj = g.beta() * g.edges()[i].J;
        for (int k = 1; k <= n.counts[i]; ++k) w *= bj / k;
    }
    return w;
}

BackboneDecomposition backbone_peel(const WeightedGraph& g, const Current& n,
                                    VertexSet A, std::vector<int> vertex_order,
                                    std::vector<int> edge_order) {
    check_counts(g, n);
    if (sources(g, n) != A)
        throw std::domain_error("backbone_peel: sources(n) != A");
    const int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    if (vertex_order.empty()) {
        vertex_order.resize(total);
        std::iota(vertex_order.begin(), vertex_order.end(), 0);
    }
    if (edge_order.empty()) {
        edge_order.resize(g.num_edges());
        std::iota(edge_order.begin(), edge_order.end(), 0);
    }
    if ((int)vertex_order.size() != total || (int)edge_order.size() != g.num_edges())
        throw std::domain_error("backbone_peel: order size mismatch");

    std::vector<int> residual = n.counts;
    std::vector<int> degree(total, 0);
    const auto& edges = g.edges();
    for (int i = 0; i < g.num_edges(); ++i) {
        degree[edges[i].u] += residual[i];
        degree[edges[i].v] += residual[i];
    }
    long long remaining = std::accumulate(residual.begin(), residual.end(), 0LL);

    std::vector<char> visited(total, 0);
    auto smallest = [&](auto&& pred) {
        int best = -1;
        for (int v = 0; v < total; ++v)
            if (pred(v) && (best < 0 || vertex_order[v] < vertex_order[best])) best = v;
        return best;
    };

    BackboneDecomposition out;
    out.vertex_order = vertex_order;
    out.edge_order = edge_order;
    if (remaining == 0) return out;

    auto pick_start = [&]() {
        int v = smallest([&](int x) {
            return x < g.num_vertices() && vs_contains(A, x) && !visited[x];
        });
        if (v < 0) v = smallest([&](int x) { return degree[x] % 2 == 1; });
        if (v < 0) v = smallest([&](int x) { return degree[x] > 0; });
        return v;
    };

    std::vector<Walk> walks;
    int cur = vs_size(A) > 0
                  ? smallest([&](int x) { return x < g.num_vertices() && vs_contains(A, x); })
                  : pick_start();
    visited[cur] = 1;
    walks.push_back({{cur}});
    while (remaining > 0) {
        // smallest positive edge out of cur
        int pick = -1;
        for (int ei : g.incident(cur))
            if (residual[ei] > 0 && (pick < 0 || edge_order[ei] < edge_order[pick]))
                pick = ei;
        if (pick >= 0) {
            --residual[pick];
            --degree[edges[pick].u];
            --degree[edges[pick].v];
            --remaining;
            cur = edges[pick].u == cur ? edges[pick].v : edges[pick].u;
            visited[cur] = 1;
            walks.back().vertices.push_back(cur);
        } else {
            cur = pick_start();
            visited[cur] = 1;
            walks.push_back({{cur}});
        }
    }
    for (auto& w : walks) {
        if (w.vertices.size() < 2) continue;  // degenerate, cannot happen
        if (w.closed())
            out.loops.push_back(std::move(w));
        else
            out.backbone_walks.push_back(std::move(w));
    }
    return out;
}

Current backbone_reconstruct(const WeightedGraph& g,
                             const BackboneDecomposition& d) {
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < g.num_edges(); ++i)
        index[{g.edges()[i].u, g.edges()[i].v}] = i;
    Current n;
    n.counts.assign(g.num_edges(), 0);
    auto add_walk = [&](const Walk& w) {
        for (size_t t = 0; t + 1 < w.vertices.size(); ++t) {
            auto key = std::minmax(w.vertices[t], w.vertices[t + 1]);
            auto it = index.find({key.first, key.second});
            if (it == index.end())
                throw std::domain_error("walk steps over a missing edge");
            ++n.counts[it->second];
        }
    };
    for (const auto& w : d.backbone_walks) add_walk(w);
    for (const auto& w : d.loops) add_walk(w);
    return n;
}

std::vector<std::pair<EdgeSet, double>> parity_classes(const WeightedGraph& g,
                                                       VertexSet A) {
    if (g.num_edges() > kEdgeCap)
        throw CapExceeded("parity-class enumeration over too many edges");
    auto w = ExpansionWeights::of(g);
    const int m = g.num_edges();
    const auto& edges = g.edges();
    std::vector<VertexSet> pm(m, 0);
    for (int i = 0; i < m; ++i) {
        if (!g.is_ghost(edges[i].u)) pm[i] |= 1u << edges[i].u;
        if (!g.is_ghost(edges[i].v)) pm[i] |= 1u << edges[i].v;
    }
    std::vector<std::pair<EdgeSet, double>> out;
    auto rec = [&](auto&& self, int i, EdgeSet E, VertexSet parity, double prod) -> void {
        if (i == m) {
            if (parity == A) out.emplace_back(E, prod);
            return;
        }
        self(self, i + 1, E, parity, prod * w.cosh_bj[i]);
        self(self, i + 1, E | (1u << i), parity ^ pm[i], prod * w.sinh_bj[i]);
    };
    rec(rec, 0, 0u, 0u, 1.0);
    return out;
}

TraceLaw trace_law_exact(const WeightedGraph& g, VertexSet A) {
    const WeightedGraph gf = g.ghost_form();
    auto classes = parity_classes(gf, A);
    if (classes.empty())
        throw EmptySupport("no edge subset has boundary A; P^A is empty");
    double total = 0.0;
    for (auto& [mask, wgt] : classes) total += wgt;
    if (total <= 0.0) throw EmptySupport("current_sum(g, A) vanishes");
    TraceLaw law;
    law.num_edges = gf.num_edges();
    for (auto& [mask, wgt] : classes) law.parity.emplace_back(mask, wgt / total);
    for (const auto& e : gf.edges())
        law.sprinkle_q.push_back(1.0 - 1.0 / std::cosh(gf.beta() * e.J));
    return law;
}

double TraceLaw::prob_trace(EdgeSet T) const {
    double p = 0.0;
    for (const auto& [E, mass] : parity) {
        if ((E & ~T) != 0) continue;  // parity edges are in the trace surely
        double term = mass;
        for (int e = 0; e < num_edges; ++e) {
            if ((E >> e) & 1u) continue;
            term *= ((T >> e) & 1u) ? sprinkle_q[e] : 1.0 - sprinkle_q[e];
        }
        p += term;
    }
    return p;
}

std::vector<double> TraceLaw::full_distribution() const {
    std::vector<double> dist(1u << num_edges, 0.0);
    for (EdgeSet T = 0; T < (EdgeSet)dist.size(); ++T) dist[T] = prob_trace(T);
    return dist;
}

double TraceLaw::edge_marginal(int e) const {
    double p = 0.0;
    for (const auto& [E, mass] : parity)
        p += mass * (((E >> e) & 1u) ? 1.0 : sprinkle_q[e]);
    return p;
}

double TraceLaw::total_mass() const {
    double t = 0.0;
    for (const auto& [E, mass] : parity) t += mass;
    return t;
}

namespace {

/// Expectation of F over the union trace of two independent currents with
/// the given parity-class weights. The union contains E1 | E2 surely; every
/// other edge appears independently with 1 - (1 - q_e)^2.
double union_trace_expectation(const WeightedGraph& g,
                               const std::vector<std::pair<EdgeSet, double>>& law1,
                               const std::vector<std::pair<EdgeSet, double>>& law2,
                               const TraceFunctional& F) {
    const int m = g.num_edges();
    std::vector<double> q2(m);
    for (int e = 0; e < m; ++e) {
        double q = 1.0 - 1.0 / std::cosh(g.beta() * g.edges()[e].J);
        q2[e] = 1.0 - (1.0 - q) * (1.0 - q);
    }
    // the sprinkle only sees E1 | E2, so group pairs by their union
    std::map<EdgeSet, double> base_weight;
    for (const auto& [E1, w1] : law1)
        for (const auto& [E2, w2] : law2) base_weight[E1 | E2] += w1 * w2;
    double total = 0.0;
    for (const auto& [base, wgt] : base_weight) {
        std::vector<int> free;
        for (int e = 0; e < m; ++e)
            if (!((base >> e) & 1u)) free.push_back(e);
        auto rec = [&](auto&& self, size_t i, EdgeSet T, double prod) -> void {
            if (i == free.size()) {
                total += wgt * prod * F(T);
                return;
            }
            int e = free[i];
            self(self, i + 1, T, prod * (1.0 - q2[e]));
            self(self, i + 1, T | (1u << e), prod * q2[e]);
        };
        rec(rec, 0, base, 1.0);
    }
    return total;
}

std::vector<std::pair<EdgeSet, double>> normalized(
    std::vector<std::pair<EdgeSet, double>> classes, const char* who) {
    double total = 0.0;
    for (auto& [mask, w] : classes) total += w;
    if (classes.empty() || total <= 0.0)
        throw EmptySupport(std::string(who) + ": empty current support");
    for (auto& [mask, w] : classes) w /= total;
    return classes;
}

}  // namespace

LhsRhs squared_corr_identity(const WeightedGraph& g, VertexSet A) {
    const WeightedGraph gf = g.ghost_form();
    LhsRhs out;
    double c = corr_spin(gf, A);
    out.lhs = c * c;
    auto p0 = normalized(parity_classes(gf, 0), "P^0");
    out.rhs = union_trace_expectation(
        gf, p0, p0, [&](EdgeSet T) { return in_F_A(gf, T, A) ? 1.0 : 0.0; });
    return out;
}

Griffiths2 griffiths2_gap(const WeightedGraph& g, VertexSet A, VertexSet B) {
    const WeightedGraph gf = g.ghost_form();
    double cAB = corr_spin(gf, A ^ B);
    if (cAB == 0.0)
        throw std::domain_error("griffiths2_gap: <sigma_A sigma_B> vanishes");
    Griffiths2 out;
    out.ratio_gap = 1.0 - corr_spin(gf, A) * corr_spin(gf, B) / cAB;
    auto p0 = normalized(parity_classes(gf, 0), "P^0");
    auto pAB = normalized(parity_classes(gf, A ^ B), "P^{A delta B}");
    out.current_gap = union_trace_expectation(
        gf, p0, pAB, [&](EdgeSet T) { return in_F_A(gf, T, A) ? 0.0 : 1.0; });
    return out;
}

LhsRhs switching_verify(const WeightedGraph& g, VertexSet A, VertexSet B,
                        const TraceFunctional& F) {
    const WeightedGraph gf = g.ghost_form();
    auto wA = parity_classes(gf, A);
    auto wB = parity_classes(gf, B);
    auto w0 = parity_classes(gf, 0);
    auto wAB = parity_classes(gf, A ^ B);
    LhsRhs out;
    // Unnormalized sums: the per-class weight already equals the full sum of
    // w(n) over currents with that parity pattern.
    out.lhs = union_trace_expectation(gf, wA, wB, F);
    out.rhs = union_trace_expectation(gf, w0, wAB, [&](EdgeSet T) {
        return in_F_A(gf, T, A) ? F(T) : 0.0;
    });
    return out;
}

LhsRhs ursell4(const WeightedGraph& g, int x1, int x2, int x3, int x4) {
    const WeightedGraph gf = g.ghost_form();
    auto pair_set = [](int a, int b) { return (VertexSet(1) << a) ^ (VertexSet(1) << b); };
    double c12 = corr_spin(gf, pair_set(x1, x2));
    double c34 = corr_spin(gf, pair_set(x3, x4));
    double c13 = corr_spin(gf, pair_set(x1, x3));
    double c24 = corr_spin(gf, pair_set(x2, x4));
    double c14 = corr_spin(gf, pair_set(x1, x4));
    double c23 = corr_spin(gf, pair_set(x2, x3));
    VertexSet all = pair_set(x1, x2) | pair_set(x3, x4);
    LhsRhs out;
    out.lhs = corr_spin(gf, (1u << x1) ^ (1u << x2) ^ (1u << x3) ^ (1u << x4)) -
              c12 * c34 - c13 * c24 - c14 * c23;
    if (c13 == 0.0 || c24 == 0.0)
        throw std::domain_error("ursell4: vanishing two-point denominator");
    auto p13 = normalized(parity_classes(gf, pair_set(x1, x3)), "P^{13}");
    auto p24 = normalized(parity_classes(gf, pair_set(x2, x4)), "P^{24}");
    double prob = union_trace_expectation(gf, p13, p24, [&](EdgeSet T) {
        return all_connected(gf, T, all) ? 1.0 : 0.0;
    });
    out.rhs = -2.0 * c13 * c24 * prob;
    return out;
}

std::vector<Question2Row> question2_scan(const WeightedGraph& g, VertexSet A,
                                         VertexSet B,
                                         const std::vector<double>& betas) {
    std::vector<Question2Row> rows;
    for (double beta : betas) {
        const WeightedGraph gb = g.with_beta(beta).ghost_form();
        auto p0 = normalized(parity_classes(gb, 0), "P^0");
        double prob = union_trace_expectation(gb, p0, p0, [&](EdgeSet T) {
            return sets_connected(gb, T, A, B) ? 1.0 : 0.0;
        });
        rows.push_back({beta, prob});
    }
    return rows;
}

}  // namespace isinglab
