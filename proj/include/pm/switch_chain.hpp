#pragma once

#include <map>
#include <vector>

#include "pm/graph.hpp"
#include "pm/rng.hpp"

namespace pm {

// One switch: rows i and j exchange their matched columns. Legal on pi iff
// (i, pi[j]) and (j, pi[i]) are both edges.
struct SwitchMove {
    int i, j;
};

// Exhaustive state space of the chain with switch adjacency. Transition
// probabilities are implicit: P(Z, Zdag) = 2/n^2 for adjacent Z != Zdag
// (ordered-pair proposal), remainder is loop mass (always >= 1/n).
struct TransitionGraph {
    int n = 0;                          // board size (rows of g)
    std::vector<PerfectMatching> states; // Omega, lexicographic order
    std::vector<std::vector<int>> nbr;   // adjacency lists (sorted)

    double p_edge() const { return 2.0 / (double(n) * n); }
};

struct MixingReport {
    double spectral_gap = 0.0;
    std::vector<std::pair<long long, double>> tv_curve; // (t, max-start TV)
    std::map<double, long long> t_mix;                  // epsilon -> first t
};

PerfectMatching apply_switch(const BipartiteGraph& g, const PerfectMatching& m, const SwitchMove& mv);

// One step of the chain: ordered pair (i, j) from n^2 outcomes, switch iff
// i != j and the crossing edges exist.
PerfectMatching step(const BipartiteGraph& g, const PerfectMatching& m, Rng& rng);

PerfectMatching run(const BipartiteGraph& g, const PerfectMatching& m0, uint64_t t_max, Rng& rng);

TransitionGraph build_transition_graph(const BipartiteGraph& g, int state_cap = 100000);

// BFS connectivity and exact diameter (-1 encodes infinite/disconnected).
std::pair<bool, int> ergodicity_check(const TransitionGraph& tg);

// Constructive connectivity: at most n valid switches from x to y on a
// Gamma-free presented graph.
std::vector<SwitchMove> greedy_connect(const BipartiteGraph& g, const PerfectMatching& x,
                                       const PerfectMatching& y);

// Exact spectral gap and total-variation mixing times from the dense
// symmetric transition matrix.
MixingReport exact_mixing(const TransitionGraph& tg, const std::vector<double>& epsilons);

// Closed-form mixing bound 8 n^6 (n ln n + 2 ln 1/eps).
double theorem_mixing_bound(int n, double epsilon);

// Companion form 2 rho (ln |Omega| + 2 ln 1/eps).
double congestion_mixing_bound(double rho, double omega_size, double epsilon);

} // namespace pm
