#pragma once

#include "isinglab/currents.hpp"
#include "isinglab/graph.hpp"

namespace isinglab {

/// Boundary cycle of a full w x l grid (vertex x + y*w) in counter-clockwise
/// order starting at (0,0), with y pointing up.
std::vector<int> grid_boundary_ccw(int w, int l);

/// Checks that the given vertices are distinct boundary vertices of the grid
/// appearing in counter-clockwise cyclic order; throws otherwise.
void validate_boundary_ccw(int w, int l, const std::vector<int>& xs);

/// Boundary four-point identity of the planar model at h = 0:
/// <1234> vs <12><34> - <13><24> + <14><23>.
LhsRhs boundary_wick4(const WeightedGraph& g, int w, int l,
                      const std::vector<int>& xs);

/// Fermionic Wick rule for 2n boundary spins (2n <= 8): the pairing sum with
/// chord-crossing signs.
LhsRhs fermionic_wick_2n(const WeightedGraph& g, int w, int l,
                         const std::vector<int>& xs);

/// All pairings of {0,...,2n-1} in canonical form, with their chord-diagram
/// signs (-1)^#crossings.
std::vector<std::pair<std::vector<std::pair<int, int>>, int>> signed_pairings(int n);

}  // namespace isinglab
