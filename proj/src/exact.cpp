#include "isinglab/exact.hpp"

#include <cmath>
#include <unordered_set>

namespace isinglab {

namespace {

void check_vertex_cap(const WeightedGraph& g) {
    if (g.num_vertices() > kVertexCap)
        throw CapExceeded("spin enumeration cap exceeded: " +
                          std::to_string(g.num_vertices()) + " > " +
                          std::to_string(kVertexCap) + " vertices");
}

void check_edge_cap(const WeightedGraph& g) {
    if (g.num_edges() > kEdgeCap)
        throw CapExceeded("edge-subset enumeration cap exceeded: " +
                          std::to_string(g.num_edges()) + " > " +
                          std::to_string(kEdgeCap) + " edges");
}

void check_A(const WeightedGraph& g, VertexSet A) {
    if (g.num_vertices() < 32 && (A >> g.num_vertices()) != 0)
        throw std::domain_error("source set contains vertices outside Lambda");
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// sum over subsets E of the edge list with edge_boundary(E) == A of
/// prod_{e in E} in_w[e] * prod_{e not in E} out_w[e].
double parity_subset_sum(const WeightedGraph& g, VertexSet A,
                         const std::vector<double>& in_w,
                         const std::vector<double>& out_w) {
    const auto& edges = g.edges();
    const int m = (int)edges.size();
    std::vector<VertexSet> pm(m, 0);
    for (int i = 0; i < m; ++i) {
        if (!g.is_ghost(edges[i].u)) pm[i] |= 1u << edges[i].u;
        if (!g.is_ghost(edges[i].v)) pm[i] |= 1u << edges[i].v;
    }
    double total = 0.0;
    // depth-first include/exclude with running parity and product
    auto rec = [&](auto&& self, int i, VertexSet parity, double prod) -> void {
        if (i == m) {
            if (parity == A) total += prod;
            return;
        }
        self(self, i + 1, parity, prod * out_w[i]);
        self(self, i + 1, parity ^ pm[i], prod * in_w[i]);
    };
    rec(rec, 0, 0u, 1.0);
    return total;
}

}  // namespace

ExpansionWeights ExpansionWeights::of(const WeightedGraph& g) {
    ExpansionWeights w;
    for (const auto& e : g.edges()) {
        double bj = g.beta() * e.J;
        w.c0 *= std::cosh(bj);
        w.c1 *= std::exp(bj);
        w.tanh_bj.push_back(std::tanh(bj));
        w.p.push_back(1.0 - std::exp(-2.0 * bj));
        w.t.push_back(std::exp(-2.0 * bj));
        w.sinh_bj.push_back(std::sinh(bj));
        w.cosh_bj.push_back(std::cosh(bj));
    }
    return w;
}

double z_spin(const WeightedGraph& g, VertexSet A) {
    check_vertex_cap(g);
    check_A(g, A);
    const int n = g.num_vertices();
    double z = 0.0;
    SpinConfig sigma(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (int v = 0; v < n; ++v) sigma[v] = (mask >> v) & 1u ? -1 : 1;
        int sa = vs_size(A & mask) % 2 ? -1 : 1;
        z += sa * std::exp(-g.beta() * energy(g, sigma));
    }
    return z;
}

double corr_spin(const WeightedGraph& g, VertexSet A) {
    if (A == 0) return 1.0;
    return z_spin(g, A) / z_spin(g, 0);
}

double ht_sum(const WeightedGraph& g, VertexSet A) {
    const WeightedGraph gf = g.ghost_form();
    check_edge_cap(gf);
    check_A(gf, A);
    auto w = ExpansionWeights::of(gf);
    std::vector<double> ones(gf.num_edges(), 1.0);
    return parity_subset_sum(gf, A, w.tanh_bj, ones);
}

double current_sum(const WeightedGraph& g, VertexSet A) {
    const WeightedGraph gf = g.ghost_form();
    check_edge_cap(gf);
    check_A(gf, A);
    auto w = ExpansionWeights::of(gf);
    return parity_subset_sum(gf, A, w.sinh_bj, w.cosh_bj);
}

VertexSet edge_boundary(const WeightedGraph& g, EdgeSet E) {
    VertexSet b = 0;
    const auto& edges = g.edges();
    for (int i = 0; i < (int)edges.size(); ++i) {
        if (!((E >> i) & 1u)) continue;
        if (!g.is_ghost(edges[i].u)) b ^= 1u << edges[i].u;
        if (!g.is_ghost(edges[i].v)) b ^= 1u << edges[i].v;
    }
    return b;
}

int component_count(const WeightedGraph& g, EdgeSet E) {
    int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    UnionFind uf(total);
    const auto& edges = g.edges();
    for (int i = 0; i < (int)edges.size(); ++i)
        if ((E >> i) & 1u) uf.unite(edges[i].u, edges[i].v);
    int k = 0;
    for (int v = 0; v < total; ++v)
        if (uf.find(v) == v) ++k;
    return k;
}

bool in_F_A(const WeightedGraph& g, EdgeSet E, VertexSet A) {
    bool odd = vs_size(A) % 2 != 0;
    if (odd && !g.has_ghost()) return false;  // F_A empty without the ghost
    int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    UnionFind uf(total);
    const auto& edges = g.edges();
    for (int i = 0; i < (int)edges.size(); ++i)
        if ((E >> i) & 1u) uf.unite(edges[i].u, edges[i].v);
    std::vector<int> count(total, 0);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (vs_contains(A, v)) ++count[uf.find(v)];
    if (odd) ++count[uf.find(g.ghost_index())];
    for (int v = 0; v < total; ++v)
        if (count[v] % 2 != 0) return false;
    return true;
}

bool all_connected(const WeightedGraph& g, EdgeSet E, VertexSet marked,
                   bool with_ghost_marked) {
    int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    UnionFind uf(total);
    const auto& edges = g.edges();
    for (int i = 0; i < (int)edges.size(); ++i)
        if ((E >> i) & 1u) uf.unite(edges[i].u, edges[i].v);
    int root = -1;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!vs_contains(marked, v)) continue;
        if (root < 0)
            root = uf.find(v);
        else if (uf.find(v) != root)
            return false;
    }
    if (with_ghost_marked) {
        if (!g.has_ghost()) return false;
        if (root >= 0 && uf.find(g.ghost_index()) != root) return false;
    }
    return true;
}

bool sets_connected(const WeightedGraph& g, EdgeSet E, VertexSet A, VertexSet B) {
    if (A & B) return true;
    int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    UnionFind uf(total);
    const auto& edges = g.edges();
    for (int i = 0; i < (int)edges.size(); ++i)
        if ((E >> i) & 1u) uf.unite(edges[i].u, edges[i].v);
    for (int a = 0; a < g.num_vertices(); ++a) {
        if (!vs_contains(A, a)) continue;
        for (int b = 0; b < g.num_vertices(); ++b)
            if (vs_contains(B, b) && uf.find(a) == uf.find(b)) return true;
    }
    return false;
}

double fk_sum(const WeightedGraph& g, VertexSet A) {
    const WeightedGraph gf = g.ghost_form();
    check_edge_cap(gf);
    check_A(gf, A);
    auto w = ExpansionWeights::of(gf);
    const int m = gf.num_edges();
    double total = 0.0;
    for (EdgeSet E = 0; E < (1u << m); ++E) {
        if (!in_F_A(gf, E, A)) continue;
        double r = std::ldexp(1.0, component_count(gf, E));
        for (int i = 0; i < m; ++i) r *= ((E >> i) & 1u) ? w.p[i] : 1.0 - w.p[i];
        total += r;
    }
    return total;
}

double fk_corr(const WeightedGraph& g, VertexSet A) {
    if (A == 0) return 1.0;
    return fk_sum(g, A) / fk_sum(g, 0);
}

double lt_partition(const WeightedGraph& g) {
    const WeightedGraph gf = g.ghost_form();
    check_vertex_cap(gf);
    check_edge_cap(gf);
    if (!gf.connected())
        throw std::domain_error(
            "lt_partition needs a connected positive-coupling graph");
    auto w = ExpansionWeights::of(gf);
    const int n = gf.num_vertices();
    const int m = gf.num_edges();
    const auto& edges = gf.edges();
    std::unordered_set<EdgeSet> contour_sets;
    SpinConfig sigma(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        EdgeSet C = 0;
        auto spin = [&](int v) { return gf.is_ghost(v) ? 1 : ((mask >> v) & 1u ? -1 : 1); };
        for (int i = 0; i < m; ++i)
            if (spin(edges[i].u) != spin(edges[i].v)) C |= 1u << i;
        contour_sets.insert(C);
    }
    bool field_on = false;  // any ghost edge breaks the global flip symmetry
    for (const auto& e : edges)
        if (gf.is_ghost(e.u) || gf.is_ghost(e.v)) field_on = true;
    double c2 = field_on ? w.c1 : 2.0 * w.c1;
    double sum = 0.0;
    for (EdgeSet C : contour_sets) {
        double t = 1.0;
        for (int i = 0; i < m; ++i)
            if ((C >> i) & 1u) t *= w.t[i];
        sum += t;
    }
    return c2 * sum;
}

double phi_S(const WeightedGraph& g, VertexSet S, int x0) {
    if (!vs_contains(S, x0)) throw std::domain_error("phi_S: x0 must lie in S");
    // inner boundary w.r.t. the ambient positive couplings, ghost excluded
    VertexSet boundary = 0;
    for (const auto& e : g.edges()) {
        if (g.is_ghost(e.u) || g.is_ghost(e.v)) continue;
        if (vs_contains(S, e.u) && !vs_contains(S, e.v)) boundary |= 1u << e.u;
        if (vs_contains(S, e.v) && !vs_contains(S, e.u)) boundary |= 1u << e.v;
    }
    WeightedGraph sub = g.induced(S, /*keep_field=*/false);
    // original index -> induced index
    std::vector<int> remap(g.num_vertices(), -1);
    int k = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (vs_contains(S, v)) remap[v] = k++;
    double total = 0.0;
    for (int x = 0; x < g.num_vertices(); ++x) {
        if (!vs_contains(boundary, x)) continue;
        VertexSet A = (1u << remap[x0]) ^ (1u << remap[x]);  // empty when x == x0
        total += corr_spin(sub, A);
    }
    return total;
}

SimonLieb simon_lieb_check(const WeightedGraph& g, VertexSet S, int x0, int x) {
    if (!vs_contains(S, x0)) throw std::domain_error("simon_lieb: x0 must lie in S");
    if (vs_contains(S, x)) throw std::domain_error("simon_lieb: x must lie outside S");
    VertexSet boundary = 0;
    for (const auto& e : g.edges()) {
        if (g.is_ghost(e.u) || g.is_ghost(e.v)) continue;
        if (vs_contains(S, e.u) && !vs_contains(S, e.v)) boundary |= 1u << e.u;
        if (vs_contains(S, e.v) && !vs_contains(S, e.u)) boundary |= 1u << e.v;
    }
    WeightedGraph sub = g.induced(S, /*keep_field=*/true);
    std::vector<int> remap(g.num_vertices(), -1);
    int k = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (vs_contains(S, v)) remap[v] = k++;
    SimonLieb out;
    out.lhs = corr_spin(g, (1u << x0) | (1u << x));
    for (int y = 0; y < g.num_vertices(); ++y) {
        if (!vs_contains(boundary, y)) continue;
        VertexSet Ain = (1u << remap[x0]) ^ (1u << remap[y]);
        out.rhs += corr_spin(sub, Ain) * corr_spin(g, (1u << y) ^ (1u << x));
    }
    out.holds = out.lhs <= out.rhs + kIneqSlack;
    return out;
}

BetaDerivative beta_derivative_check(const WeightedGraph& g, VertexSet A) {
    const WeightedGraph gf = g.ghost_form();
    BetaDerivative out;
    double corr_A = corr_spin(gf, A);
    for (const auto& e : gf.edges()) {
        VertexSet xy = 0;  // sigma_ghost == +1 drops out of the product
        if (!gf.is_ghost(e.u)) xy ^= 1u << e.u;
        if (!gf.is_ghost(e.v)) xy ^= 1u << e.v;
        out.analytic += e.J * (corr_spin(gf, A ^ xy) - corr_A * corr_spin(gf, xy));
    }
    const double step = 1e-5;
    double up = corr_spin(gf.with_beta(gf.beta() + step), A);
    if (gf.beta() >= step) {
        double dn = corr_spin(gf.with_beta(gf.beta() - step), A);
        out.numeric = (up - dn) / (2.0 * step);
    } else {
        out.numeric = (up - corr_A) / step;  // forward difference near beta = 0
    }
    return out;
}

}  // namespace isinglab
