#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pm/errors.hpp"

namespace pm {

using Bitset = boost::dynamic_bitset<uint64_t>;

// Bipartite graph over rows [m] and columns [n]' stored as bitset rows of the
// biadjacency matrix. Indices are 0-based internally; reports and the matrix
// text format are 1-based with primes on columns.
struct BipartiteGraph {
    int m = 0;
    int n = 0;
    bool allow_isolated = false;
    std::vector<Bitset> adj; // adj[i][j] == 1  iff  (i, j') is an edge

    bool edge(int i, int j) const { return adj[i].test(j); }
    bool balanced() const { return m == n; }
    int row_degree(int i) const { return static_cast<int>(adj[i].count()); }
    int col_degree(int j) const {
        int d = 0;
        for (int i = 0; i < m; ++i) d += adj[i].test(j);
        return d;
    }
    size_t edge_count() const {
        size_t e = 0;
        for (const auto& row : adj) e += row.count();
        return e;
    }
    bool operator==(const BipartiteGraph& o) const { return m == o.m && n == o.n && adj == o.adj; }
};

// A perfect matching as a permutation: pi[i] = column matched to row i.
struct PerfectMatching {
    std::vector<int> pi;

    bool operator==(const PerfectMatching& o) const { return pi == o.pi; }
    bool operator<(const PerfectMatching& o) const { return pi < o.pi; }
    // sigma view: sigma[j] = row matched to column j (inverse permutation).
    std::vector<int> sigma() const {
        std::vector<int> s(pi.size());
        for (size_t i = 0; i < pi.size(); ++i) s[pi[i]] = static_cast<int>(i);
        return s;
    }
};

// Per-row (and optionally per-column) neighborhood intervals of a convex
// presentation: row i's neighborhood is [alpha_i, beta_i].
struct IntervalPresentation {
    std::vector<std::pair<int, int>> row_intervals;
    std::optional<std::vector<std::pair<int, int>>> col_intervals;
};

// Build from 0/1 strings, one per row.
BipartiteGraph from_matrix(const std::vector<std::string>& rows, bool allow_isolated = false);

// Matrix text format: '#' comment lines, then "m n", then m rows of 0/1.
BipartiteGraph read_matrix(std::istream& in, bool allow_isolated = false);
void write_matrix(std::ostream& out, const BipartiteGraph& g, const std::string& comment = "");

bool validate_matching(const BipartiteGraph& g, const PerfectMatching& pm);

// Deterministic maximum-matching search (lowest-index augmenting paths);
// returns a perfect matching iff one exists.
std::optional<PerfectMatching> find_perfect_matching(const BipartiteGraph& g);

// True iff (i, i') is an edge for all i. Under a monotone presentation this
// is equivalent to the existence of any perfect matching.
bool diagonal_matching_exists(const BipartiteGraph& g);

// (max row degree, max column degree).
std::pair<int, int> degree_stats(const BipartiteGraph& g);

BipartiteGraph induced_subgraph(const BipartiteGraph& g, const std::vector<int>& rows,
                                const std::vector<int>& cols);

} // namespace pm
