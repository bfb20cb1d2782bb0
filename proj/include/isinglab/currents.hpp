#pragma once

#include <functional>
#include <utility>

#include "isinglab/exact.hpp"
#include "isinglab/graph.hpp"

namespace isinglab {

/// Nonnegative integer counts per edge, aligned with the graph's edge list.
struct Current {
    std::vector<int> counts;

    EdgeSet trace() const {
        EdgeSet t = 0;
        for (int i = 0; i < (int)counts.size(); ++i)
            if (counts[i] > 0) t |= 1u << i;
        return t;
    }
};

/// Vertices of Lambda with odd total incident count; the ghost is never a
/// source.
VertexSet sources(const WeightedGraph& g, const Current& n);

/// w(n) = prod (beta J)^n_e / n_e!.
double current_weight(const WeightedGraph& g, const Current& n);

struct Walk {
    std::vector<int> vertices;
    bool closed() const {
        return vertices.size() >= 2 && vertices.front() == vertices.back();
    }
};

struct BackboneDecomposition {
    std::vector<Walk> backbone_walks;  // non-closed, in peeling order
    std::vector<Walk> loops;           // closed
    std::vector<int> vertex_order;     // rank per vertex (ghost included)
    std::vector<int> edge_order;       // rank per edge index
};

/// Deterministic peeling of a current into backbone walks plus loops.
/// Walks start at the smallest source, follow the smallest positive edge,
/// and on exhaustion jump to the smallest unvisited source, then to the
/// smallest vertex with odd remaining incidence, then to the smallest with
/// positive incidence. Empty orders mean the numeric default.
BackboneDecomposition backbone_peel(const WeightedGraph& g, const Current& n,
                                    VertexSet A,
                                    std::vector<int> vertex_order = {},
                                    std::vector<int> edge_order = {});

/// n_xy = sum over walks of n(w,x,y) + n(w,y,x); exact inverse of the peel.
Current backbone_reconstruct(const WeightedGraph& g,
                             const BackboneDecomposition& d);

class EmptySupport : public std::domain_error {
public:
    explicit EmptySupport(const std::string& what) : std::domain_error(what) {}
};

/// Exact law of the trace of a current under P^A, in factorized form:
/// a parity set E with dE = A (weight prop. to prod sinh * prod cosh), whose
/// edges are in the trace surely, plus independent sprinkles with
/// q_e = 1 - 1/cosh(beta J_e) on the remaining edges.
struct TraceLaw {
    int num_edges = 0;
    std::vector<std::pair<EdgeSet, double>> parity;  // normalized masses
    std::vector<double> sprinkle_q;

    double prob_trace(EdgeSet T) const;
    std::vector<double> full_distribution() const;  // indexed by trace mask
    double edge_marginal(int e) const;
    double total_mass() const;  // 1 up to rounding
};

TraceLaw trace_law_exact(const WeightedGraph& g, VertexSet A);

struct LhsRhs {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap() const { return lhs - rhs; }
};

/// <sigma_A>^2 vs P0 x P0 [trace union in F_A], both exact.
LhsRhs squared_corr_identity(const WeightedGraph& g, VertexSet A);

struct Griffiths2 {
    double ratio_gap = 0.0;    // 1 - <A><B>/<AB>
    double current_gap = 0.0;  // P0 x P^{A delta B} [union not in F_A]
};

Griffiths2 griffiths2_gap(const WeightedGraph& g, VertexSet A, VertexSet B);

/// Weight on edge subsets; stands for a current functional that depends on
/// n1 + n2 only through its trace.
using TraceFunctional = std::function<double(EdgeSet)>;

/// Both sides of the switching lemma for a trace-measurable F, as exact
/// unnormalized sums.
LhsRhs switching_verify(const WeightedGraph& g, VertexSet A, VertexSet B,
                        const TraceFunctional& F);

/// Ursell U4 directly from correlations (lhs) and through the two-current
/// connectivity formula (rhs).
LhsRhs ursell4(const WeightedGraph& g, int x1, int x2, int x3, int x4);

struct Question2Row {
    double beta = 0.0;
    double prob = 0.0;  // P0 x P0 [A connected to B in the union trace]
};

/// Report-only scan; monotonicity is an open problem and never asserted.
std::vector<Question2Row> question2_scan(const WeightedGraph& g, VertexSet A,
                                         VertexSet B,
                                         const std::vector<double>& betas);

// Shared by the switching-style verifiers: unnormalized parity-class
// weights prod_{e in E} sinh * prod_{e not in E} cosh over {E : dE = A}.
std::vector<std::pair<EdgeSet, double>> parity_classes(const WeightedGraph& g,
                                                       VertexSet A);

}  // namespace isinglab
