#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pm/graph.hpp"
#include "pm/rng.hpp"

namespace pm {

using BigInt = boost::multiprecision::cpp_int;

// Non-decreasing prefix-neighborhood sizes of a chain graph: row i's
// neighborhood is the first a[i] columns.
struct ChainDegreeVector {
    std::vector<int> a;
};

// Exact count by row-by-row backtracking; optionally collects the full list
// of matchings (canonical order: lexicographic in pi).
BigInt permanent_enumerate(const BipartiteGraph& g, int cap = 12,
                           std::vector<PerfectMatching>* omega = nullptr);

// Ryser's inclusion-exclusion formula with Gray-code subset iteration.
BigInt permanent_ryser(const BipartiteGraph& g, int cap = 30);

// prod_i (a_i - i + 1), or 0 if any a_i < i (1-based reading).
BigInt chain_permanent(const ChainDegreeVector& a);

// Exactly uniform O(n) sampler over the chain graph's perfect matchings.
PerfectMatching chain_sample(const ChainDegreeVector& a, Rng& rng);

// Retained state of the windowed convex DP, enough to count and to trace
// back samples.
struct ConvexDpTables;

struct ConvexDpResult {
    BigInt permanent;
    std::shared_ptr<ConvexDpTables> tables; // present iff retain_tables
    bool degenerate_warning = false;        // r >= n/2: sweep near-enumerates
};

// Exact permanent of a convex-presented balanced graph by the triangular
// window sweep. Rows are sorted by interval start internally; the sampler
// undoes the reordering.
ConvexDpResult convex_dp_permanent(const BipartiteGraph& g, bool retain_tables = false);

// Exactly uniform traceback sampler; requires tables from a counting run
// with retain_tables and a positive permanent.
PerfectMatching convex_dp_sample(const ConvexDpResult& dp, Rng& rng);

} // namespace pm
