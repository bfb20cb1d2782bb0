#pragma once

#include <tuple>

#include "isinglab/graph.hpp"

namespace isinglab {

// Enumeration caps. Exceeding one is an error, never silent truncation.
inline constexpr int kVertexCap = 20;  // spin sums, 2^|Lambda| terms
inline constexpr int kEdgeCap = 24;    // subset sums, 2^|E| terms

// Identity tolerances.
inline constexpr double kRelTol = 1e-10;      // equalities, relative
inline constexpr double kIneqSlack = 1e-12;   // inequalities, absolute slack

/// Per-edge expansion factors shared by the four expansions.
struct ExpansionWeights {
    double c0 = 1.0;  // prod cosh(beta J)
    double c1 = 1.0;  // prod exp(beta J)
    std::vector<double> tanh_bj;  // high-temperature weight per edge
    std::vector<double> p;        // 1 - exp(-2 beta J), FK open probability
    std::vector<double> t;        // exp(-2 beta J), low-temperature weight
    std::vector<double> sinh_bj;
    std::vector<double> cosh_bj;

    static ExpansionWeights of(const WeightedGraph& g);
};

/// Z_{Lambda,beta,h}(sigma_A) = sum_sigma sigma_A exp(-beta H(sigma)).
double z_spin(const WeightedGraph& g, VertexSet A);

/// <sigma_A> = z_spin(g, A) / z_spin(g, {}).
double corr_spin(const WeightedGraph& g, VertexSet A);

/// High-temperature sum: sum over E subset of edges with boundary A of
/// prod tanh(beta J). Satisfies z_spin = c0 2^|Lambda| ht_sum.
double ht_sum(const WeightedGraph& g, VertexSet A);

/// Current-expansion sum over {n : dn = A} of w(n), computed in closed form
/// by the even/odd parity factorization (cosh / sinh per edge).
/// Satisfies z_spin = 2^|Lambda| current_sum.
double current_sum(const WeightedGraph& g, VertexSet A);

/// Random-cluster sum over F_A of r(E) = 2^{k(E)} prod p prod (1-p), with
/// components counted over Lambda plus the ghost when present.
double fk_sum(const WeightedGraph& g, VertexSet A);

/// phi(F_A) = fk_sum(g, A) / fk_sum(g, {}); equals corr_spin.
double fk_corr(const WeightedGraph& g, VertexSet A);

/// Low-temperature (contour) value of Z: c2 * sum over distinct contour
/// sets C(sigma) of prod exp(-2 beta J). Requires the positive-coupling
/// graph connected (the two-to-one property at h = 0 presumes it).
double lt_partition(const WeightedGraph& g);

/// phi_S(beta) = sum over x in the inner boundary of S of
/// <sigma_x0 sigma_x>_{S,beta,0}. Boundary membership uses J_xy > 0 in the
/// ambient graph, ghost excluded.
double phi_S(const WeightedGraph& g, VertexSet S, int x0);

struct SimonLieb {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Finite-volume Simon-Lieb check: <s_x0 s_x>_g vs
/// sum_{y in dS} <s_x0 s_y>_S <s_y s_x>_g.
SimonLieb simon_lieb_check(const WeightedGraph& g, VertexSet S, int x0, int x);

struct BetaDerivative {
    double analytic = 0.0;
    double numeric = 0.0;
};

/// d/dbeta <sigma_A> both as the correlation-sum identity and as a central
/// finite difference (step 1e-5).
BetaDerivative beta_derivative_check(const WeightedGraph& g, VertexSet A);

// --- shared combinatorial helpers ----------------------------------------

/// Boundary of an edge subset: vertices of Lambda with odd incidence
/// (ghost excluded).
VertexSet edge_boundary(const WeightedGraph& g, EdgeSet E);

/// Membership in F_A: every connected component of (Lambda [+ ghost], E)
/// meets A (|A| even) resp. A + ghost (|A| odd) an even number of times.
bool in_F_A(const WeightedGraph& g, EdgeSet E, VertexSet A);

/// True when all marked vertices lie in one component of (Lambda [+ ghost], E).
/// `with_ghost_marked` additionally marks the ghost.
bool all_connected(const WeightedGraph& g, EdgeSet E, VertexSet marked,
                   bool with_ghost_marked = false);

/// True when some vertex of A and some vertex of B share a component
/// (true immediately if A and B intersect).
bool sets_connected(const WeightedGraph& g, EdgeSet E, VertexSet A, VertexSet B);

int component_count(const WeightedGraph& g, EdgeSet E);

}  // namespace isinglab
