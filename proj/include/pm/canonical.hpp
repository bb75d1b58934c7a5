#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pm/graph.hpp"
#include "pm/switch_chain.hpp"

namespace pm {

// One alternating cycle of X ^ Y, stored in cycle order: rows[t] is matched
// to cols[t] in X and rows[t+1] (cyclically) is matched to cols[t] in Y.
// rows[0] is the largest row of the cycle.
struct CyclePart {
    std::vector<int> rows;
    std::vector<int> cols;

    int size() const { return static_cast<int>(rows.size()); }
};

struct CycleDecomposition {
    std::vector<CyclePart> cycles;          // ordered by smallest row
    std::vector<std::pair<int, int>> shared; // isolated edges of X n Y
};

CycleDecomposition decompose_cycles(const PerfectMatching& x, const PerfectMatching& y);

// A point of the (extended) board. x grows with column rank, y shrinks with
// row rank: row u maps to y = N - u + 1.
struct BoardPoint {
    int x = 0, y = 0;
    auto operator<=>(const BoardPoint&) const = default;
};

// The cycle relabelled onto an N x N board. p[i]/q[i] (1-based) carry the
// X- and Y-edges; the path runs p_1, q_1, p_2, ..., p_N, q_N with
// y(p_1) = y(q_N) = 1.
struct Board {
    int N = 0;
    std::vector<int> rows_sorted; // board rank u (1-based) -> original row rows_sorted[u-1]
    std::vector<int> cols_sorted;
    std::vector<BoardPoint> p, q; // index 0 unused
    std::vector<std::vector<char>> cell; // cell[y][x], 1-based: 1-entries of the induced matrix

    int h = 0; // x(p_1)

    bool legal_real(int x, int y) const {
        return 1 <= x && x <= N && 1 <= y && y <= N && cell[y][x];
    }
    int orig_row(int y) const { return rows_sorted[N - y]; }
    int orig_col(int x) const { return cols_sorted[x - 1]; }
};

Board build_board(const BipartiteGraph& g, const CyclePart& cycle);

// One stable configuration of the token game (the configuration during a
// v-period). Tokens include the fixed virtual token; the dislocation is the
// unique token not sitting on an extended-path point.
struct TokenConfig {
    std::vector<BoardPoint> tokens; // sorted
    int seg_a = 0, seg_b = 0;       // slope indices of the two foci
    bool up = true;                 // direction of the current v-period
    bool has_foci = true;           // false once the summit has been reached
    bool transitory = false;
    int cores_done = 0;             // core events completed (plateau height >= 2)
    int moves_applied = 0;          // prefix of the move list producing this config
};

// Full trace of the token game on one cycle. states[0] is the post-finesse
// initial configuration; there is one state per v-period plus one per
// transitory mid-event configuration, each recording how many of the moves
// (switches, as row pairs of g) have been applied.
struct TokenTrace {
    Board board;
    bool reversed = false;
    std::vector<BoardPoint> path; // extended path, 2N+2 points
    std::vector<TokenConfig> states;
    std::vector<SwitchMove> moves;
};

// Play the token game on the cycle board: forward transforms the X-side
// points into the Y-side points; reversed swaps the roles (the
// near-complement game).
TokenTrace run_token_game(const BipartiteGraph& g, const CyclePart& cycle, bool reversed = false);

// Verify I1-I3 and their consequences for a stable state; nullopt = ok.
std::optional<std::string> invariant_check(const TokenTrace& trace, int state_index);

// The configuration of the role-reversed game paired with forward state
// t_index under the monotone complementary alignment of the two traces, as
// a matching of the cycle's board. Throws at transitory forward states.
PerfectMatching near_complement(const BipartiteGraph& g, const CyclePart& cycle, int t_index);

struct CanonicalPath {
    std::vector<PerfectMatching> states; // states.front() = x, states.back() = y
    std::vector<SwitchMove> moves;
    std::vector<char> transitory;        // parallel to states
    std::vector<int> cycle_start;        // index into moves where each cycle begins

    int length() const { return static_cast<int>(moves.size()); }
};

CanonicalPath build_canonical_path(const BipartiteGraph& g, const PerfectMatching& x,
                                   const PerfectMatching& y);

struct CongestionReport {
    double rho = 0.0;
    long long omega = 0;
    std::pair<int, int> worst_transition{-1, -1}; // state indices in the enumerated Omega
    long long paths_per_transition_max = 0;
    long long max_load = 0;   // max over transitions of sum |gamma_XY|
    int max_path_length = 0;
    double bound_rho = 0.0;   // 4 n^6
    double bound_paths = 0.0; // 8 n^2 |Omega|
};

// Exact congestion of the canonical-path family over the full state space.
CongestionReport congestion(const BipartiteGraph& g, int state_cap = 2000);

} // namespace pm
