#pragma once

#include "pm/graph.hpp"
#include "pm/recognizers.hpp"
#include "pm/rng.hpp"

namespace pm {

// The 6-cycle on 3+3 vertices: two perfect matchings the switch chain cannot
// connect.
BipartiteGraph gen_dgh_6cycle();

// The biconvex family on n = 2k-1 vertices per side with 2^k - 1 perfect
// matchings; requires k >= 2.
BipartiteGraph gen_Gk(int k);

// The tridiagonal band graph (Hamiltonian monotone); requires n >= 2.
BipartiteGraph gen_ladder(int n);

// A(i,j) = 1 iff i <= j; unique perfect matching; requires n >= 3.
BipartiteGraph gen_lower_triangular(int n);

// Seeded random instance of the requested class, verified by the matching
// recognizer before return. Distributions are constructive, not uniform over
// the class. density in (0, 1] biases edge/interval sizes.
BipartiteGraph gen_random(ClassLabel cls, int n, Rng& rng, double density = 0.5,
                          int retry_budget = 200);

// Hamiltonicity test for monotone presentations: true iff the
// ladder is a spanning subgraph.
bool has_spanning_ladder(const BipartiteGraph& g);

} // namespace pm
