#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace isinglab {

/// Subset of the ordinary vertices 0..n-1 as a bit mask. The ghost vertex
/// never appears in a VertexSet.
using VertexSet = std::uint32_t;

/// Subset of the edge list as a bit mask over edge indices.
using EdgeSet = std::uint32_t;

struct Edge {
    int u = 0;
    int v = 0;       // u < v after canonicalization
    double J = 0.0;  // strictly positive; zero-coupling pairs are dropped
};

class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Ferromagnetic Ising model on a finite vertex set {0,...,n-1}, optionally
/// augmented by a ghost vertex carrying the magnetic field as pair couplings.
///
/// The ghost vertex, when present, has index n and its spin is pinned to +1.
/// A graph either stores the field explicitly in `h` (no ghost) or has the
/// field folded into ghost edges (h == 0, has_ghost == true). ghost_augment()
/// maps the first form to the second; all expansion code works on the ghost
/// form.
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Builds a graph over n vertices with explicit field h (no ghost edges).
    /// Edges with J == 0 are dropped, duplicates merged by summing J,
    /// self-pairs rejected.
    static WeightedGraph with_field(int n, std::vector<Edge> edges, double beta, double h);

    /// Builds a graph whose edge list may already reference the ghost
    /// (index n). Field is zero.
    static WeightedGraph with_ghost(int n, std::vector<Edge> edges, double beta);

    int num_vertices() const { return n_; }           // |Lambda|, ghost excluded
    int ghost_index() const { return n_; }
    bool has_ghost() const { return has_ghost_; }
    double beta() const { return beta_; }
    double field() const { return h_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    bool is_ghost(int v) const { return has_ghost_ && v == n_; }

    /// Edge indices incident to vertex v, in edge-list order.
    const std::vector<int>& incident(int v) const { return incident_[v]; }

    /// Same model with the field encoded through the ghost vertex. Returns
    /// *this unchanged when h == 0.
    WeightedGraph ghost_form() const;

    /// Copy with a different inverse temperature.
    WeightedGraph with_beta(double beta) const;

    /// Subgraph induced by the vertex set S (re-indexed densely, in
    /// increasing order of original index). keep_field retains ghost edges /
    /// explicit field for the kept vertices; otherwise the restricted model
    /// has h = 0.
    WeightedGraph induced(VertexSet S, bool keep_field) const;

    /// True when the positive-coupling graph on Lambda (plus ghost when
    /// present) is connected.
    bool connected() const;

    // --- JSON interface: {"vertices": N, "edges": [[x,y,J],...],
    //     "beta": b, "h": h}; the ghost is implicit via h. ---
    static WeightedGraph from_json_string(const std::string& text);
    static WeightedGraph from_json_file(const std::string& path);
    std::string to_json_string() const;

private:
    WeightedGraph(int n, bool has_ghost, double beta, double h, std::vector<Edge> edges);

    int n_ = 0;
    bool has_ghost_ = false;
    double beta_ = 0.0;
    double h_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;  // size n_ + (has_ghost ? 1 : 0)
};

/// Spins on Lambda; the ghost spin is implicit and always +1.
using SpinConfig = std::vector<int>;

/// -sum J s_x s_y - h sum s_x, evaluated in whichever encoding the graph
/// uses (ghost spin +1).
double energy(const WeightedGraph& g, const SpinConfig& sigma);

/// Folds the field into ghost couplings (Griffiths' ghost vertex).
WeightedGraph ghost_augment(const WeightedGraph& g);

// Vertex-set helpers.
inline bool vs_contains(VertexSet s, int v) { return (s >> v) & 1u; }
inline int vs_size(VertexSet s) { return __builtin_popcount(s); }
VertexSet vs_parse(const std::string& csv);  // "0,2,3" -> mask

// --- generators -----------------------------------------------------------

WeightedGraph make_path(int n, double beta, double J = 1.0, double h = 0.0);
WeightedGraph make_cycle(int n, double beta, double J = 1.0, double h = 0.0);
WeightedGraph make_complete(int n, double beta, double J = 1.0, double h = 0.0);
WeightedGraph make_grid(int w, int l, double beta, double J = 1.0, double h = 0.0);
/// Torus; parallel edges arising from circumference-2 rings are merged by
/// summing couplings, and self-pairs from circumference-1 rings are dropped.
WeightedGraph make_torus(int w, int l, double beta, double J = 1.0, double h = 0.0);

/// "path:4", "cycle:3", "complete:4", "grid:3x3", "torus:2x8"
WeightedGraph make_generator(const std::string& desc, double beta, double h);

}  // namespace isinglab
