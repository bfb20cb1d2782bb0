#include "isinglab/samplers.hpp"

#include <cmath>
#include <queue>

namespace isinglab {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{(std::uint32_t)(seed & 0xffffffffu), (std::uint32_t)(seed >> 32),
                      (std::uint32_t)(stream & 0xffffffffu),
                      (std::uint32_t)(stream >> 32)};
    return std::mt19937_64(seq);
}

std::vector<EdgeSet> cycle_basis(const WeightedGraph& g) {
    const int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    std::vector<int> parent_edge(total, -1), parent(total, -1);
    std::vector<char> seen(total, 0);
    std::vector<EdgeSet> basis;
    for (int root = 0; root < total; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int ei : g.incident(v)) {
                const auto& e = g.edges()[ei];
                int w = e.u == v ? e.v : e.u;
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    parent_edge[w] = ei;
                    q.push(w);
                }
            }
        }
    }
    auto path_to_root = [&](int v) {
        EdgeSet mask = 0;
        while (parent_edge[v] >= 0) {
            mask ^= 1u << parent_edge[v];
            v = parent[v];
        }
        return mask;
    };
    for (int ei = 0; ei < g.num_edges(); ++ei) {
        const auto& e = g.edges()[ei];
        if (parent_edge[e.u] == ei || parent_edge[e.v] == ei) continue;  // tree edge
        basis.push_back((1u << ei) ^ path_to_root(e.u) ^ path_to_root(e.v));
    }
    return basis;
}

EdgeSet initial_parity_set(const WeightedGraph& g, VertexSet A) {
    const int total = g.num_vertices() + (g.has_ghost() ? 1 : 0);
    std::vector<int> terminals;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (vs_contains(A, v)) terminals.push_back(v);
    if (terminals.size() % 2 != 0) {
        if (!g.has_ghost())
            throw EmptySupport("odd source set without a ghost vertex");
        terminals.push_back(g.ghost_index());
    }
    EdgeSet mask = 0;
    for (size_t i = 0; i + 1 < terminals.size(); i += 2) {
        // BFS path between the pair
        std::vector<int> parent_edge(total, -1), parent(total, -1);
        std::vector<char> seen(total, 0);
        std::queue<int> q;
        q.push(terminals[i]);
        seen[terminals[i]] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int ei : g.incident(v)) {
                const auto& e = g.edges()[ei];
                int w = e.u == v ? e.v : e.u;
                if (seen[w]) continue;
                seen[w] = 1;
                parent[w] = v;
                parent_edge[w] = ei;
                q.push(w);
            }
        }
        int v = terminals[i + 1];
        if (!seen[v])
            throw EmptySupport("source vertices lie in different components");
        while (parent_edge[v] >= 0) {
            mask ^= 1u << parent_edge[v];
            v = parent[v];
        }
    }
    return mask;
}

void glauber_step(const WeightedGraph& g, SpinConfig& sigma, std::mt19937_64& rng,
                  const std::vector<char>& frozen) {
    if ((int)sigma.size() != g.num_vertices())
        throw std::domain_error("spin configuration does not match vertex set");
    std::uniform_int_distribution<int> pick(0, g.num_vertices() - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int v = pick(rng);
    if (!frozen.empty() && frozen[v]) return;
    double local = g.field();
    for (int ei : g.incident(v)) {
        const auto& e = g.edges()[ei];
        int w = e.u == v ? e.v : e.u;
        local += e.J * (g.is_ghost(w) ? 1 : sigma[w]);
    }
    double p_plus = 1.0 / (1.0 + std::exp(-2.0 * g.beta() * local));
    sigma[v] = unif(rng) < p_plus ? 1 : -1;
}

WormChain::WormChain(WeightedGraph g, VertexSet A, std::uint64_t seed,
                     std::uint64_t stream)
    : g_(std::move(g)), A_(A), rng_(make_rng(seed, stream)) {
    EdgeSet E = initial_parity_set(g_, A_);
    n_.counts.assign(g_.num_edges(), 0);
    for (int i = 0; i < g_.num_edges(); ++i)
        if ((E >> i) & 1u) n_.counts[i] = 1;
    basis_ = cycle_basis(g_);
    for (const auto& e : g_.edges()) beta_j_.push_back(g_.beta() * e.J);
}

void WormChain::step() {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int m = g_.num_edges();
    if (m == 0) return;
    bool cycle_move = !basis_.empty() && unif(rng_) < 0.5;
    if (cycle_move) {
        std::uniform_int_distribution<size_t> pick(0, basis_.size() - 1);
        EdgeSet cyc = basis_[pick(rng_)];
        // independent +-1 per cycle edge; the proposal is symmetric because
        // the reverse uses the opposite signs with the same probability
        double log_ratio = 0.0;
        std::vector<std::pair<int, int>> delta;
        for (int e = 0; e < m; ++e) {
            if (!((cyc >> e) & 1u)) continue;
            int d = unif(rng_) < 0.5 ? 1 : -1;
            int next = n_.counts[e] + d;
            if (next < 0) return;  // reject
            // w ratio for n_e -> n_e + d: (bJ)/(n_e+1) or n_e/(bJ)
            log_ratio += d > 0 ? std::log(beta_j_[e] / next)
                               : std::log(n_.counts[e] / beta_j_[e]);
            delta.emplace_back(e, d);
        }
        if (std::log(unif(rng_)) < log_ratio)
            for (auto [e, d] : delta) n_.counts[e] += d;
    } else {
        std::uniform_int_distribution<int> pick(0, m - 1);
        int e = pick(rng_);
        int d = unif(rng_) < 0.5 ? 2 : -2;
        int next = n_.counts[e] + d;
        if (next < 0) return;
        double ratio = d > 0 ? (beta_j_[e] * beta_j_[e]) / ((double)next * (next - 1))
                             : ((double)n_.counts[e] * (n_.counts[e] - 1)) /
                                   (beta_j_[e] * beta_j_[e]);
        if (unif(rng_) < ratio) n_.counts[e] = next;
    }
}

EvenSubgraphChain::EvenSubgraphChain(WeightedGraph g, VertexSet A,
                                     std::uint64_t seed, std::uint64_t stream)
    : g_(std::move(g)), A_(A), rng_(make_rng(seed, stream)) {
    E_ = initial_parity_set(g_, A_);
    basis_ = cycle_basis(g_);
    for (const auto& e : g_.edges())
        tanh_bj_.push_back(std::tanh(g_.beta() * e.J));
}

void EvenSubgraphChain::step() {
    if (basis_.empty()) return;  // single state in this source class
    std::uniform_int_distribution<size_t> pick(0, basis_.size() - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    EdgeSet cyc = basis_[pick(rng_)];
    double ratio = 1.0;
    for (int e = 0; e < g_.num_edges(); ++e) {
        if (!((cyc >> e) & 1u)) continue;
        ratio *= ((E_ >> e) & 1u) ? 1.0 / tanh_bj_[e] : tanh_bj_[e];
    }
    if (unif(rng_) < ratio) E_ ^= cyc;
}

EdgeSet sprinkle_ht_to_current(EdgeSet E, const WeightedGraph& g,
                               std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int e = 0; e < g.num_edges(); ++e) {
        double q = 1.0 - 1.0 / std::cosh(g.beta() * g.edges()[e].J);
        if (unif(rng) < q) E |= 1u << e;
    }
    return E;
}

EdgeSet sprinkle_current_to_fk(EdgeSet T, const WeightedGraph& g,
                               std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int e = 0; e < g.num_edges(); ++e) {
        double p = 1.0 - std::exp(-g.beta() * g.edges()[e].J);
        if (unif(rng) < p) T |= 1u << e;
    }
    return T;
}

}  // namespace isinglab
