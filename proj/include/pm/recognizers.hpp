#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pm/graph.hpp"

namespace pm {

// Row/column reordering. Applying it yields B[r][c] = A[row_order[r]][col_order[c]].
struct Presentation {
    std::vector<int> row_order;
    std::vector<int> col_order;

    static Presentation identity(int m, int n);
};

BipartiteGraph apply_presentation(const BipartiteGraph& g, const Presentation& p);

enum class ClassLabel { Chain, Monotone, Biconvex, Convex, ChordalBipartite, OtherBipartite };

const char* class_name(ClassLabel c);

// A forbidden 2x2 induced submatrix (or 2K2 subgraph) witness, 0-based.
struct SubmatrixWitness {
    enum class Shape { Gamma, BackwardsL, Slash, TwoK2 };
    int row_i, row_j;  // i < j
    int col_k, col_l;  // k < l
    Shape shape;
};

// none iff the matrix, as presented, has no induced [1 1; 1 0]; otherwise the
// lexicographically first witness (i, j, k', l').
std::optional<SubmatrixWitness> gamma_free_check(const BipartiteGraph& g);

// Rows and columns ordered so both, read as binary vectors with later
// rows/columns more significant, are non-decreasing. Verified before return.
Presentation doubly_lexical_order(const BipartiteGraph& g);

bool is_chordal_bipartite(const BipartiteGraph& g);

std::optional<Presentation> check_convex(const BipartiteGraph& g);
std::optional<Presentation> check_biconvex(const BipartiteGraph& g);
std::optional<Presentation> check_monotone(const BipartiteGraph& g);
std::optional<Presentation> check_chain(const BipartiteGraph& g);

ClassLabel classify(const BipartiteGraph& g);

// Exact verification of a presented matrix: no Gamma [1 1;1 0],
// backwards-L [0 1;1 1] or slash [0 1;1 0] induced 2x2 submatrix.
std::optional<SubmatrixWitness> monotone_violation(const BipartiteGraph& g);

// For a matrix that passed monotone_violation: column neighborhoods are
// intervals with non-decreasing endpoints.
bool verify_monotone_column_property(const BipartiteGraph& g);

// Helpers shared with tests: row neighborhoods as intervals, if consecutive.
std::optional<IntervalPresentation> row_intervals(const BipartiteGraph& g);

} // namespace pm
