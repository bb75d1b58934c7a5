#pragma once

#include <vector>

#include "pm/errors.hpp"

namespace pm {

// A piecewise-linear mountain range: nodes p_0..p_{n-1} at integer heights,
// boundary nodes at the common minimum. Height ties are broken symbolically
// (an epsilon-perturbation): among interior nodes the smaller index
// counts as higher; boundary nodes rank below interior nodes of equal
// height and equal to each other.
struct Range {
    enum class Node { Boundary, Peak, Valley, Up, Down };

    std::vector<long long> y;
    int n = 0;
    int s = 0; // summit index
    std::vector<Node> type;

    // Strict "is node i higher than node j" under the tie-break.
    bool above(int i, int j) const {
        if (y[i] != y[j]) return y[i] > y[j];
        bool bi = (i == 0 || i == n - 1), bj = (j == 0 || j == n - 1);
        if (bi || bj) return !bi && bj;
        return i < j;
    }
};

Range build_range(const std::vector<long long>& heights);

// The event graph: a vertex for each admissible node/slope intersection plus
// the two endpoint vertices p_0 p_{n-1} (start) and p_s p_s (summit). Slope j
// joins nodes j and j+1.
struct RangeGraph {
    struct Vertex {
        int node;  // -1 for the two special endpoint vertices
        int slope; // start: -1, summit: -2
    };
    std::vector<Vertex> verts; // verts[0] = start, verts[1] = summit
    std::vector<std::vector<int>> adj;
    int start = 0;
    int summit = 1;
};

RangeGraph build_range_graph(const Range& r);

// One event of the parallel climb, decoded to climber positions (1-based x
// coordinates, matching the written-out examples).
struct ClimbEvent {
    double ax, ay, bx, by;
    int node, slope; // underlying range-graph vertex (-1/-1 start, -1/-2 summit)
};

// The unique range-graph path from p_0 p_{n-1} to p_s p_s, decoded. The
// alpha climber is the one that starts at p_0 unless swap_roles.
std::vector<ClimbEvent> climb(const Range& r, bool swap_roles = false);

// The worst-case family following the n = 2k+1 figure; for k = 10 reproduces
// its heights exactly.
Range gen_lambda(int k);

} // namespace pm
