#include "pm/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "pm/exact_count.hpp"
#include "pm/mountain.hpp"
#include "pm/recognizers.hpp"

namespace pm {

CycleDecomposition decompose_cycles(const PerfectMatching& x, const PerfectMatching& y) {
    const int n = static_cast<int>(x.pi.size());
    require(y.pi.size() == x.pi.size(), Err::BadInput, "matchings of different size");
    CycleDecomposition out;
    std::vector<int> ysig(n);
    for (int i = 0; i < n; ++i) ysig[y.pi[i]] = i;
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        if (x.pi[i] == y.pi[i]) {
            seen[i] = 1;
            out.shared.emplace_back(i, x.pi[i]);
            continue;
        }
        // Trace the alternating cycle: follow the X-edge of the current row,
        // then the Y-edge of that column.
        std::vector<int> rows;
        int cur = i;
        while (!seen[cur]) {
            seen[cur] = 1;
            rows.push_back(cur);
            cur = ysig[x.pi[cur]];
        }
        // Start the stored order at the largest row (u_1 = N convention).
        int off = static_cast<int>(std::max_element(rows.begin(), rows.end()) - rows.begin());
        CyclePart c;
        for (size_t t = 0; t < rows.size(); ++t) {
            int r = rows[(off + t) % rows.size()];
            c.rows.push_back(r);
            c.cols.push_back(x.pi[r]);
        }
        out.cycles.push_back(std::move(c));
    }
    // Cycles ordered by their smallest row.
    std::sort(out.cycles.begin(), out.cycles.end(), [](const CyclePart& a, const CyclePart& b) {
        return *std::min_element(a.rows.begin(), a.rows.end()) <
               *std::min_element(b.rows.begin(), b.rows.end());
    });
    return out;
}

Board build_board(const BipartiteGraph& g, const CyclePart& cycle) {
    const int N = cycle.size();
    require(N >= 2, Err::NotAlternatingCycle, "cycle needs at least two rows");
    require(cycle.cols.size() == cycle.rows.size(), Err::NotAlternatingCycle, "ragged cycle");
    Board b;
    b.N = N;
    b.rows_sorted = cycle.rows;
    b.cols_sorted = cycle.cols;
    std::sort(b.rows_sorted.begin(), b.rows_sorted.end());
    std::sort(b.cols_sorted.begin(), b.cols_sorted.end());
    require(std::unique(b.rows_sorted.begin(), b.rows_sorted.end()) == b.rows_sorted.end() &&
                std::unique(b.cols_sorted.begin(), b.cols_sorted.end()) == b.cols_sorted.end(),
            Err::NotAlternatingCycle, "repeated vertex in cycle");
    require(cycle.rows[0] == b.rows_sorted.back(), Err::NotAlternatingCycle,
            "cycle must start at its largest row");

    auto row_rank = [&](int r) {
        return static_cast<int>(std::lower_bound(b.rows_sorted.begin(), b.rows_sorted.end(), r) -
                                b.rows_sorted.begin()) +
               1;
    };
    auto col_rank = [&](int c) {
        return static_cast<int>(std::lower_bound(b.cols_sorted.begin(), b.cols_sorted.end(), c) -
                                b.cols_sorted.begin()) +
               1;
    };

    b.cell.assign(N + 1, std::vector<char>(N + 1, 0));
    for (int y = 1; y <= N; ++y)
        for (int x = 1; x <= N; ++x) b.cell[y][x] = g.edge(b.orig_row(y), b.orig_col(x));

    b.p.assign(N + 1, {});
    b.q.assign(N + 1, {});
    for (int t = 0; t < N; ++t) {
        int u = row_rank(cycle.rows[t]);
        int u_next = row_rank(cycle.rows[(t + 1) % N]);
        int v = col_rank(cycle.cols[t]);
        b.p[t + 1] = {v, N - u + 1};
        b.q[t + 1] = {v, N - u_next + 1};
        require(g.edge(cycle.rows[t], cycle.cols[t]), Err::NotAlternatingCycle,
                "cycle X-edge missing from graph");
        require(g.edge(cycle.rows[(t + 1) % N], cycle.cols[t]), Err::NotAlternatingCycle,
                "cycle Y-edge missing from graph");
    }
    require(b.p[1].y == 1 && b.q[N].y == 1, Err::NotAlternatingCycle,
            "path must begin and end at height 1");
    b.h = b.p[1].x;
    return b;
}

namespace {

struct Engine {
    const Board& b;
    bool reversed;
    int N;
    std::vector<BoardPoint> path; // 2N+2 points
    std::map<BoardPoint, int> path_index;
    std::set<BoardPoint> tokens;
    BoardPoint old_start;  // the deleted point (p_1 forward, q_N reversed)
    BoardPoint virt_token; // (N+1, 0)
    int ext_lo;            // left end of the legal part of row y = 0

    std::vector<TokenConfig> states;
    std::vector<SwitchMove> moves;
    int seg_a = 0, seg_b = 0;
    int cores = 0;
    size_t fix_from = 0; // states whose v-period direction is not yet known

    explicit Engine(const Board& board, bool rev) : b(board), reversed(rev), N(board.N) {
        path.resize(2 * N + 2);
        if (!reversed) {
            old_start = b.p[1];
            path[0] = {b.p[1].x, 0};
            for (int t = 1; t <= N; ++t) {
                if (t >= 2) path[2 * t - 2] = b.p[t];
                path[2 * t - 1] = b.q[t];
            }
        } else {
            old_start = b.q[N];
            path[0] = {b.q[N].x, 0};
            for (int t = 1; t <= N; ++t) {
                if (t >= 2) path[2 * t - 2] = b.q[N + 1 - t];
                path[2 * t - 1] = b.p[N + 1 - t];
            }
        }
        path[2 * N] = {N + 1, 1};
        path[2 * N + 1] = {N + 1, 0};
        ext_lo = path[0].x;
        virt_token = path[2 * N + 1];
        for (int i = 0; i < 2 * N + 2; ++i) path_index[path[i]] = i;

        // Post-finesse start: tokens on the start-side points, the token of
        // the deleted point becoming the dislocation, plus the virtual token.
        tokens.insert(old_start);
        for (int t = 2; t <= N; ++t) tokens.insert(path[2 * t - 2]);
        tokens.insert(virt_token);
        seg_a = 0;
        seg_b = N;
        push_state(false, true);
    }

    bool legal(const BoardPoint& pt) const {
        if (b.legal_real(pt.x, pt.y)) return true;
        if (pt.y == 0) return ext_lo <= pt.x && pt.x <= N + 1;
        if (pt.x == N + 1) return pt.y == 0 || pt.y == 1;
        return false;
    }

    void push_state(bool transitory, bool has_foci) {
        TokenConfig st;
        st.tokens.assign(tokens.begin(), tokens.end());
        st.seg_a = seg_a;
        st.seg_b = seg_b;
        st.up = true;
        st.has_foci = has_foci;
        st.transitory = transitory;
        st.cores_done = cores;
        st.moves_applied = static_cast<int>(moves.size());
        states.push_back(std::move(st));
    }

    BoardPoint dislocation() const {
        const BoardPoint* d = nullptr;
        for (const BoardPoint& t : tokens)
            if (!path_index.count(t)) {
                require(d == nullptr, Err::InvariantViolation, "multiple dislocations at event");
                d = &t;
            }
        require(d != nullptr, Err::InvariantViolation, "dislocation not found");
        return *d;
    }

    // The rectangle switch: tokens at s and t move to the opposite corners.
    void do_switch(const BoardPoint& s, const BoardPoint& t, bool transitory, bool has_foci = true) {
        require(s.x != t.x && s.y != t.y, Err::InvariantViolation, "degenerate switch rectangle");
        require(tokens.count(s) && tokens.count(t), Err::InvariantViolation,
                "switch source token missing");
        BoardPoint r1{s.x, t.y}, r2{t.x, s.y};
        require(legal(r1) && legal(r2), Err::InvariantViolation, "switch target not a 1-entry");
        require(1 <= s.y && s.y <= N && 1 <= t.y && t.y <= N && s.x <= N && t.x <= N,
                Err::InvariantViolation, "switch touches a virtual point");
        tokens.erase(s);
        tokens.erase(t);
        tokens.insert(r1);
        tokens.insert(r2);
        moves.push_back({b.orig_row(s.y), b.orig_row(t.y)});
        push_state(transitory, has_foci);
    }

    // Local chain labels c_0, c_1, c_2, ... along the path around a focus on
    // slope sg: c_1/c_2 are the frame-lower/upper segment ends, the
    // numbering continuing over the plateau beyond c_2.
    struct Chain {
        int i1, step;
    };
    Chain chain(int sg, bool up) const {
        int lo = 2 * sg, hi = 2 * sg + 1;
        if ((path[lo].y < path[hi].y) != up) std::swap(lo, hi);
        return {lo, hi - lo};
    }
    const BoardPoint& at(const Chain& c, int k) const {
        int idx = c.i1 + (k - 1) * c.step;
        require(0 <= idx && idx <= 2 * N + 1, Err::InvariantViolation, "chain label out of range");
        return path[idx];
    }

    void run() {
        // Profile of the extended path: node 0 and N+1 at the boundary,
        // node t = plateau (path[2t-1], path[2t]).
        std::vector<long long> heights(N + 2, 0);
        for (int t = 1; t <= N; ++t) heights[t] = path[2 * t - 1].y;
        Range prof = build_range(heights);
        prof_summit_ = prof.s;
        auto events = climb(prof);

        int prev_node = 0;
        for (const ClimbEvent& e : events) {
            if (e.node < 0 && e.slope == -1) continue; // start vertex
            bool summit = (e.node < 0);
            int t = summit ? prof.s : e.node;
            bool up = prof.above(t, prev_node);
            prev_node = t;
            for (size_t i = fix_from; i < states.size(); ++i) states[i].up = up;
            if (summit) break;

            bool core = heights[t] >= 2;
            if (core) ++cores;

            bool node_is_a = (t < prof.s);
            int& node_seg = node_is_a ? seg_a : seg_b;
            int other_seg = node_is_a ? seg_b : seg_a;
            require(node_seg == t - 1 || node_seg == t, Err::InvariantViolation,
                    "node focus not adjacent to event node");
            require(other_seg == e.slope, Err::InvariantViolation,
                    "slope focus not on event slope");

            // Chains describe the approach to the event; the states pushed by
            // the event's switches belong to the following v-period, so the
            // node focus steps over the plateau first.
            Chain A = chain(seg_a, up), B = chain(seg_b, up);
            node_seg = (t - 1) + t - node_seg;
            size_t before = states.size();
            dispatch(A, B, up, node_is_a);
            if (states.size() == before) push_state(false, true);
            fix_from = before;
        }
        finish();
    }

    void dispatch(const Chain& A, const Chain& B, bool up, bool node_is_a) {
        auto fx = [&](const BoardPoint& p) { return up ? p.x : -p.x; };
        auto fy = [&](const BoardPoint& p) { return up ? p.y : -p.y; };
        const BoardPoint a1 = at(A, 1), b1 = at(B, 1), b2 = at(B, 2);
        require(fx(a1) != fx(b1), Err::InvariantViolation, "foci share a column");
        const bool a_left = fx(a1) < fx(b1);
        const BoardPoint d = dislocation();

        if (node_is_a) {
            const BoardPoint a3 = at(A, 3);
            if (a_left) {
                if (fx(a3) < fx(b1)) {
                    do_switch(a3, d, false); // Case I
                } else {
                    do_switch(a3, b1, true); // Case I*
                    do_switch(d, {b1.x, a3.y}, false);
                }
            } else {
                if (fx(a3) > fx(b1)) {
                    do_switch(a3, d, false); // Case III
                } else {
                    do_switch(a3, b2, true); // Case III*
                    do_switch(d, {b2.x, a3.y}, false);
                }
            }
        } else {
            const BoardPoint b3 = at(B, 3), b4 = at(B, 4);
            if (a_left) {
                if (fx(a1) < fx(b3)) {
                    if (fy(b4) > fy(b3)) do_switch(b4, d, false); // Case II
                } else {
                    if (fy(b4) < fy(b3)) do_switch(b4, d, false); // Case II*
                }
            } else {
                bool second = (fx(a1) > fx(b3)) ? (fy(b4) < fy(b3))   // Case IV
                                                : (fy(b4) > fy(b3)); // Case IV*
                BoardPoint dd{d.x, b2.y};
                do_switch(b2, d, second);
                if (second) do_switch(b4, dd, false);
            }
        }
    }

    std::set<BoardPoint> target() const {
        std::set<BoardPoint> tg{virt_token};
        for (int t = 1; t <= N; ++t) tg.insert(reversed ? b.p[t] : b.q[t]);
        return tg;
    }

    // Both foci have reached the summit plateau. If one last pair of tokens
    // is out of place, a single switch of the dislocation with the token on
    // the far plateau end completes the finish finesse.
    void finish() {
        auto tg = target();
        if (tokens != tg) {
            const BoardPoint e2 = path[2 * prof_summit_];
            require(tokens.count(e2), Err::InvariantViolation,
                    "summit configuration lacks the expected token");
            do_switch(dislocation(), e2, false, false);
        } else if (!states.empty() && !states.back().transitory) {
            // The last event already produced the target configuration: that
            // state is the endgame state, not a v-period state.
            states.back().has_foci = false;
        } else {
            push_state(false, false);
        }
        require(tokens == tg, Err::InvariantViolation, "game did not end at the target matching");
    }

    int prof_summit_ = 0;
};

PerfectMatching config_matching(const Board& b, const TokenConfig& st) {
    PerfectMatching m;
    m.pi.assign(b.N, -1);
    for (const BoardPoint& t : st.tokens) {
        if (t.y < 1 || t.y > b.N) continue; // virtual token
        int u = b.N - t.y + 1;
        require(m.pi[u - 1] == -1, Err::Internal, "two tokens on one board row");
        require(1 <= t.x && t.x <= b.N, Err::Internal, "real token in virtual column");
        m.pi[u - 1] = t.x - 1;
    }
    for (int v : m.pi) require(v >= 0, Err::Internal, "board row without token");
    return m;
}

} // namespace

TokenTrace run_token_game(const BipartiteGraph& g, const CyclePart& cycle, bool reversed) {
    Board board = build_board(g, cycle);
    Engine eng(board, reversed);
    eng.run();
    TokenTrace trace;
    trace.board = std::move(board);
    trace.reversed = reversed;
    trace.path = std::move(eng.path);
    trace.states = std::move(eng.states);
    trace.moves = std::move(eng.moves);
    return trace;
}

std::optional<std::string> invariant_check(const TokenTrace& trace, int state_index) {
    const int N = trace.board.N;
    require(0 <= state_index && state_index < static_cast<int>(trace.states.size()), Err::BadInput,
            "state index out of range");
    const TokenConfig& st = trace.states[state_index];
    if (st.transitory) return "transitory state";

    std::set<BoardPoint> toks(st.tokens.begin(), st.tokens.end());
    std::vector<char> occ(2 * N + 2, 0);
    std::map<BoardPoint, int> index;
    for (int i = 0; i < 2 * N + 2; ++i) index[trace.path[i]] = i;
    for (const BoardPoint& t : toks) {
        auto it = index.find(t);
        if (it != index.end()) occ[it->second] = 1;
    }

    if (!st.has_foci) {
        // Endgame: all tokens at their final locations (odd path indices
        // carry the target labels), plus the virtual token.
        for (int t = 1; t <= N; ++t)
            if (!occ[2 * t - 1]) return "endgame state missing a target token";
        return std::nullopt;
    }

    auto lower_end = [&](int sg) {
        int lo = 2 * sg, hi = 2 * sg + 1;
        if ((trace.path[lo].y < trace.path[hi].y) != st.up) std::swap(lo, hi);
        return std::pair<int, int>(lo, hi - lo);
    };
    auto [ai1, astep] = lower_end(st.seg_a);
    auto [bi1, bstep] = lower_end(st.seg_b);
    auto fx = [&](int idx) { return st.up ? trace.path[idx].x : -trace.path[idx].x; };

    // I1: {a_1, a_2} is a hole-pair.
    int a_lo = std::min(ai1, ai1 + astep);
    if (occ[a_lo] || occ[a_lo + 1]) return "I1: {a1,a2} is not a hole-pair";
    // I2: the b-side hole-pair location depends on the x-order of the foci.
    int b_pair_lo;
    if (fx(ai1) < fx(bi1)) {
        int b2 = bi1 + bstep, b3 = b2 + bstep;
        if (b3 < 0 || b3 > 2 * N + 1) return "I2: {b2,b3} out of range";
        b_pair_lo = std::min(b2, b3);
    } else {
        int b0 = bi1 - bstep;
        if (b0 < 0 || b0 > 2 * N + 1) return "I2: {b0,b1} out of range";
        b_pair_lo = std::min(b0, bi1);
    }
    if (occ[b_pair_lo] || occ[b_pair_lo + 1]) return "I2: expected b-side hole-pair occupied";
    // I3: no hole-pairs beyond these two.
    for (int i = 0; i + 1 <= 2 * N + 1; ++i)
        if (!occ[i] && !occ[i + 1] && i != a_lo && i != b_pair_lo)
            return "I3: unexpected hole-pair at path position " + std::to_string(i);

    // Consequences: n-1 tokens on the real path points; between the foci the
    // tokens sit on start labels (even indices), outside on target labels.
    int on_real = 0;
    for (int i = 1; i <= 2 * N - 1; ++i) on_real += occ[i];
    if (on_real != N - 1) return "consequence (ii): |sigma n P| != n-1";
    for (int i = 2 * st.seg_a + 1; i <= 2 * st.seg_b; ++i)
        if (occ[i] && (i % 2) == 1 && i <= 2 * N - 1)
            return "consequence (iv): target-label token between the foci";
    for (int i = 1; i <= 2 * N - 1; ++i)
        if (occ[i] && (i % 2) == 0 && !(2 * st.seg_a + 1 <= i && i <= 2 * st.seg_b))
            return "consequence (iii): start-label token outside the foci";
    return std::nullopt;
}

PerfectMatching near_complement(const BipartiteGraph& g, const CyclePart& cycle, int t_index) {
    TokenTrace fwd = run_token_game(g, cycle, false);
    require(0 <= t_index && t_index < static_cast<int>(fwd.states.size()), Err::BadInput,
            "state index out of range");
    require(!fwd.states[t_index].transitory, Err::TransitoryState,
            "near complement undefined at a transitory state");
    TokenTrace rev = run_token_game(g, cycle, true);
    // The role-reversed game plays toward X on the mirrored finesse, so its
    // trace is the forward trace's complement run. The two traces are not
    // literally synchronous (each finesse inserts its own low-height
    // bookkeeping events), so states are paired by the unique monotone
    // alignment under which every pair occupies complementary path points:
    // away from the two finesse-deleted points p_1 and q_N, a mid-game pair
    // holds N-1 points each, disjointly; the final pair is an exact
    // complement of all 2N points.
    const Board& bd = fwd.board;
    std::set<BoardPoint> pset;
    for (int i = 1; i <= bd.N; ++i) {
        pset.insert(bd.p[i]);
        pset.insert(bd.q[i]);
    }
    auto on_path = [&](const std::vector<BoardPoint>& tks, const BoardPoint& skip) {
        std::set<BoardPoint> out;
        for (const BoardPoint& t : tks)
            if (pset.count(t) && !(t == skip)) out.insert(t);
        return out;
    };
    const int last = static_cast<int>(fwd.states.size()) - 1;
    auto complements = [&](int s, size_t r) {
        std::set<BoardPoint> A = on_path(fwd.states[s].tokens, bd.p[1]);
        std::set<BoardPoint> B = on_path(rev.states[r].tokens, bd.q[bd.N]);
        size_t uni = A.size();
        for (const BoardPoint& t : B)
            if (!A.count(t)) ++uni;
        if (s == last) return uni == 2 * static_cast<size_t>(bd.N);
        return B.size() == static_cast<size_t>(bd.N) - 1 && uni == A.size() + B.size();
    };
    size_t r = 0;
    for (int s = 0; s <= t_index; ++s) {
        if (fwd.states[s].transitory) continue;
        while (r < rev.states.size() && !complements(s, r)) ++r;
        require(r < rev.states.size(), Err::InvariantViolation,
                "no complementary reversed state");
        if (s == t_index) return config_matching(rev.board, rev.states[r]);
    }
    fail(Err::Internal, "unreachable");
}

CanonicalPath build_canonical_path(const BipartiteGraph& g, const PerfectMatching& x,
                                   const PerfectMatching& y) {
    require(g.balanced(), Err::UnbalancedGraph, "canonical paths need m == n");
    require(!monotone_violation(g).has_value(), Err::NotMonotone,
            "canonical paths require a monotone presentation");
    require(validate_matching(g, x) && validate_matching(g, y), Err::BadInput, "invalid matchings");

    CanonicalPath cp;
    cp.states.push_back(x);
    cp.transitory.push_back(0);
    PerfectMatching cur = x;
    auto dec = decompose_cycles(x, y);
    for (const CyclePart& cyc : dec.cycles) {
        cp.cycle_start.push_back(static_cast<int>(cp.moves.size()));
        TokenTrace trace = run_token_game(g, cyc, false);
        int applied = 0;
        for (const TokenConfig& st : trace.states) {
            if (st.moves_applied == applied) continue;
            require(st.moves_applied == applied + 1, Err::Internal, "trace skipped a move");
            cur = apply_switch(g, cur, trace.moves[applied]);
            cp.states.push_back(cur);
            cp.moves.push_back(trace.moves[applied]);
            cp.transitory.push_back(st.transitory);
            ++applied;
        }
        require(applied == static_cast<int>(trace.moves.size()), Err::Internal,
                "trace and move list disagree");
    }
    require(cur == y, Err::InvariantViolation, "canonical path did not reach y");
    return cp;
}

CongestionReport congestion(const BipartiteGraph& g, int state_cap) {
    require(g.balanced(), Err::UnbalancedGraph, "congestion needs m == n");
    std::vector<PerfectMatching> omega;
    permanent_enumerate(g, 20, &omega);
    require(static_cast<int>(omega.size()) <= state_cap, Err::TooLarge,
            "state space larger than congestion cap");
    const long long M = static_cast<long long>(omega.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < M; ++i) index[omega[i].pi] = i;

    CongestionReport rep;
    rep.omega = M;
    const double n = static_cast<double>(g.n);
    rep.bound_rho = 4.0 * std::pow(n, 6.0);
    rep.bound_paths = 8.0 * n * n * static_cast<double>(M);
    if (M <= 1) return rep;

    std::unordered_map<long long, std::pair<long long, long long>> load; // (sum|gamma|, count)
    for (int xi = 0; xi < M; ++xi)
        for (int yi = 0; yi < M; ++yi) {
            if (xi == yi) continue;
            CanonicalPath cp = build_canonical_path(g, omega[xi], omega[yi]);
            rep.max_path_length = std::max(rep.max_path_length, cp.length());
            for (int s = 0; s < cp.length(); ++s) {
                long long a = index.at(cp.states[s].pi);
                long long b = index.at(cp.states[s + 1].pi);
                auto& slot = load[a * M + b];
                slot.first += cp.length();
                slot.second += 1;
            }
        }
    for (const auto& [key, slot] : load) {
        double r = (n * n / (2.0 * static_cast<double>(M))) * static_cast<double>(slot.first);
        if (r > rep.rho) {
            rep.rho = r;
            rep.max_load = slot.first;
            rep.worst_transition = {static_cast<int>(key / M), static_cast<int>(key % M)};
        }
        rep.paths_per_transition_max = std::max(rep.paths_per_transition_max, slot.second);
    }
    return rep;
}

} // namespace pm
