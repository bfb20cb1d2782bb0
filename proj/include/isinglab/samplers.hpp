#pragma once

#include <random>

#include "isinglab/currents.hpp"
#include "isinglab/graph.hpp"

namespace isinglab {

/// One RNG stream per chain: (seed, stream) seeds a mt19937_64 through a
/// seed_seq, so distinct streams are independent and runs reproducible.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Fundamental cycles of a spanning forest of the positive-coupling graph
/// (ghost included), as edge masks. XOR-closure of these is the sourceless
/// parity class.
std::vector<EdgeSet> cycle_basis(const WeightedGraph& g);

/// Some edge subset with boundary A, built by pairing A-vertices (and the
/// ghost when |A| is odd) along graph paths. Throws EmptySupport when no
/// such subset exists.
EdgeSet initial_parity_set(const WeightedGraph& g, VertexSet A);

// --- spin chain -----------------------------------------------------------

/// Single-site heat-bath update at a uniformly chosen vertex. `frozen`
/// marks spins excluded from updates (used for +-boundary conditions);
/// empty means none.
void glauber_step(const WeightedGraph& g, SpinConfig& sigma, std::mt19937_64& rng,
                  const std::vector<char>& frozen = {});

// --- current chain --------------------------------------------------------

/// Worm-style chain on currents with fixed sources A, targeting P^A.
/// Moves: +-1 around a random basis cycle (signs independent per edge), or
/// +-2 on a random single edge; Metropolis-accepted with w(n) ratios.
/// Every move is even at every vertex, so sources are invariant.
class WormChain {
public:
    WormChain(WeightedGraph g, VertexSet A, std::uint64_t seed,
              std::uint64_t stream = 0);

    void step();
    const Current& current() const { return n_; }
    const WeightedGraph& graph() const { return g_; }
    VertexSet declared_sources() const { return A_; }

private:
    WeightedGraph g_;
    VertexSet A_;
    Current n_;
    std::vector<EdgeSet> basis_;
    std::vector<double> beta_j_;
    std::mt19937_64 rng_;
};

// --- even-subgraph chain --------------------------------------------------

/// Chain on {E : dE = A} targeting the tanh-weighted law mu^A; proposals
/// XOR a uniformly chosen cycle-basis element.
class EvenSubgraphChain {
public:
    EvenSubgraphChain(WeightedGraph g, VertexSet A, std::uint64_t seed,
                      std::uint64_t stream = 0);

    void step();
    EdgeSet state() const { return E_; }
    const WeightedGraph& graph() const { return g_; }

private:
    WeightedGraph g_;
    VertexSet A_;
    EdgeSet E_ = 0;
    std::vector<EdgeSet> basis_;
    std::vector<double> tanh_bj_;
    std::mt19937_64 rng_;
};

// --- sprinkling couplings -------------------------------------------------

/// Adds each edge independently with probability 1 - 1/cosh(beta J);
/// maps the high-temperature law mu^0 onto the trace law of P^0.
EdgeSet sprinkle_ht_to_current(EdgeSet E, const WeightedGraph& g,
                               std::mt19937_64& rng);

/// Adds each edge independently with probability 1 - exp(-beta J);
/// maps the trace law of P^0 onto the random-cluster law phi.
EdgeSet sprinkle_current_to_fk(EdgeSet T, const WeightedGraph& g,
                               std::mt19937_64& rng);

// --- estimation -----------------------------------------------------------

struct EstimatorResult {
    double mean = 0.0;
    double std_error = 0.0;  // batch means
    long long samples = 0;
    long long burn_in = 0;
};

inline constexpr long long kDefaultBurnIn = 10000;
inline constexpr int kDefaultBatches = 32;

/// Batch-means estimate of a chain observable. `advance` performs one chain
/// step; `observe` reads the current state.
template <class Advance, class Observe>
EstimatorResult estimate(Advance&& advance, Observe&& observe, long long samples,
                         long long burn_in = kDefaultBurnIn,
                         int batches = kDefaultBatches) {
    if (samples < 2 * batches)
        throw std::domain_error("estimate: need at least two samples per batch");
    for (long long i = 0; i < burn_in; ++i) advance();
    const long long per_batch = samples / batches;
    std::vector<double> means(batches, 0.0);
    long long used = 0;
    for (int b = 0; b < batches; ++b) {
        double acc = 0.0;
        for (long long i = 0; i < per_batch; ++i) {
            advance();
            acc += observe();
            ++used;
        }
        means[b] = acc / per_batch;
    }
    EstimatorResult r;
    r.burn_in = burn_in;
    r.samples = used;
    for (double m : means) r.mean += m;
    r.mean /= batches;
    double var = 0.0;
    for (double m : means) var += (m - r.mean) * (m - r.mean);
    var /= (batches - 1);
    r.std_error = std::sqrt(var / batches);
    return r;
}

}  // namespace isinglab
