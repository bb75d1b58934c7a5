#pragma once

// Worked instances shared across the test suite.

#include <vector>
#include <string>

#include "pm/graph.hpp"

namespace fx {

// 4x4 instance whose matching pi = (4,2,1,3)' is drawn in the worked example;
// it has 4 perfect matchings.
inline pm::BipartiteGraph worked4x4() {
    return pm::from_matrix({"0011", "1100", "0101", "1111"});
}

// The 5x5 staircase (monotone as presented).
inline pm::BipartiteGraph staircase5() {
    return pm::from_matrix({"11000", "11100", "11110", "00111", "00011"});
}

// The 5x5 chain instance with prefix sizes a = (2,3,4,5,5); 16 matchings.
inline pm::BipartiteGraph chain5() {
    return pm::from_matrix({"11000", "11100", "11110", "11111", "11111"});
}

// Biconvex 5x5 instance containing the armchair; not monotone.
inline pm::BipartiteGraph armchair5() {
    return pm::from_matrix({"00010", "00111", "01110", "11100", "01100"});
}

// 4x4 matrix that is convex as presented but admits no simultaneous row and
// column interval presentation.
inline pm::BipartiteGraph convex_not_biconvex4() {
    return pm::from_matrix({"1000", "1110", "0100", "0011"});
}

// The printed 7x7 biadjacency matrix of the k = 4 family member.
inline std::vector<std::string> g4_rows() {
    return {"0001100", "0001110", "0001111", "1111111", "1111000", "0111000", "0011000"};
}

// The 11-node mountain profile example, heights doubled to stay integral
// (the published list contains one half-integer; scaling by 2 is an order
// isomorphism, which is all the algorithm sees).
inline std::vector<long long> range11() {
    return {0, 5, 16, 10, 12, 6, 20, 8, 4, 14, 0};
}

} // namespace fx
