#include "pm/exact_count.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "pm/recognizers.hpp"

namespace pm {

BigInt permanent_enumerate(const BipartiteGraph& g, int cap, std::vector<PerfectMatching>* omega) {
    require(g.balanced(), Err::UnbalancedGraph, "permanent requires m == n");
    require(g.n <= cap, Err::TooLarge,
            "enumeration capped at n = " + std::to_string(cap) + ", got " + std::to_string(g.n));
    const int n = g.n;
    std::vector<uint64_t> rows(n, 0);
    for (int i = 0; i < n; ++i)
        for (size_t j = g.adj[i].find_first(); j != Bitset::npos; j = g.adj[i].find_next(j))
            rows[i] |= (uint64_t(1) << j);
    BigInt count = 0;
    std::vector<int> pi(n);
    uint64_t used = 0;
    // Row-by-row backtracking, columns ascending: Omega comes out in
    // lexicographic pi order.
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            ++count;
            if (omega) omega->push_back(PerfectMatching{pi});
            return;
        }
        for (uint64_t rem = rows[i] & ~used; rem; rem &= rem - 1) {
            int j = std::countr_zero(rem);
            pi[i] = j;
            used |= (uint64_t(1) << j);
            rec(i + 1);
            used &= ~(uint64_t(1) << j);
        }
    };
    rec(0);
    return count;
}

BigInt permanent_ryser(const BipartiteGraph& g, int cap) {
    require(g.balanced(), Err::UnbalancedGraph, "permanent requires m == n");
    require(g.n <= cap && g.n <= 30, Err::TooLarge, "Ryser capped at n = 30");
    const int n = g.n;
    // per(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i (row sum over S).
    // Gray-code iteration updates the n row sums by one column per step.
    std::vector<int> row_sum(n, 0);
    BigInt total = 0;
    uint32_t gray = 0;
    int popcount = 0;
    for (uint32_t idx = 1; idx < (uint32_t(1) << n); ++idx) {
        int c = std::countr_zero(idx);
        uint32_t bit = uint32_t(1) << c;
        if (gray & bit) {
            gray ^= bit;
            --popcount;
            for (int i = 0; i < n; ++i) row_sum[i] -= g.edge(i, c);
        } else {
            gray ^= bit;
            ++popcount;
            for (int i = 0; i < n; ++i) row_sum[i] += g.edge(i, c);
        }
        BigInt prod = 1;
        for (int i = 0; i < n && prod != 0; ++i) prod *= row_sum[i];
        if ((n - popcount) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

BigInt chain_permanent(const ChainDegreeVector& cv) {
    BigInt prod = 1;
    for (size_t i = 0; i < cv.a.size(); ++i) {
        long long factor = cv.a[i] - static_cast<long long>(i); // a_i - i + 1, 1-based
        if (factor <= 0) return 0;
        prod *= factor;
    }
    return prod;
}

PerfectMatching chain_sample(const ChainDegreeVector& cv, Rng& rng) {
    const int n = static_cast<int>(cv.a.size());
    require(chain_permanent(cv) > 0, Err::NoPerfectMatching, "chain graph has no perfect matching");
    // Process rows in order; row i may use any still-free column < a_i.
    // Keeping the free columns of the prefix at positions [i, a_i) of a
    // permutation array makes each draw O(1): after row i picks position
    // j in [i, a_i), the swap restores the invariant for row i+1 because
    // a is non-decreasing.
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    PerfectMatching m;
    m.pi.resize(n);
    for (int i = 0; i < n; ++i) {
        int avail = cv.a[i] - i;
        int j = i + static_cast<int>(rng.below(avail));
        std::swap(cols[i], cols[j]);
        m.pi[i] = cols[i];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Windowed DP over a convex presentation (triangular windows of width 2r+1).
// ---------------------------------------------------------------------------

namespace {

// An edge inside a window, stored as (column, row), both 1-based in the
// row-sorted coordinate system.
using Cell = std::pair<int, int>;
using StateKey = std::vector<Cell>;

struct State {
    StateKey edges;
    BigInt count;
    std::vector<int> preds; // indices into the previous level
};

struct Level {
    std::vector<State> states;
};

} // namespace

struct ConvexDpTables {
    int n = 0;
    int r = 0;
    int final_level = 0;           // 1-based index of the last level
    std::vector<int> row_order;    // sorted position -> original row
    std::vector<Level> levels;     // levels[i-1] = S_i
};

ConvexDpResult convex_dp_permanent(const BipartiteGraph& g, bool retain_tables) {
    require(g.balanced(), Err::UnbalancedGraph, "permanent requires m == n");
    auto iv = row_intervals(g);
    require(iv.has_value(), Err::NotConvexPresentation, "rows are not intervals in this presentation");
    const int n = g.n;

    // Sort rows by (interval start, interval end). With a perfect matching
    // present this guarantees every usable edge satisfies |u - v| <= r, which
    // is what confines the sweep to the triangular windows.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return iv->row_intervals[a] < iv->row_intervals[b];
    });
    // lo[u], hi[u]: 1-based column interval of 1-based sorted row u.
    std::vector<int> lo(n + 1), hi(n + 1);
    int r = 0;
    for (int u = 1; u <= n; ++u) {
        auto [a, b] = iv->row_intervals[order[u - 1]];
        require(a <= b, Err::NotConvexPresentation, "empty row");
        lo[u] = a + 1;
        hi[u] = b + 1;
        r = std::max(r, b - a + 1);
    }
    auto has_edge = [&](int u, int v) { return lo[u] <= v && v <= hi[u]; };

    auto tables = std::make_shared<ConvexDpTables>();
    tables->n = n;
    tables->r = r;
    tables->row_order = order;
    const int final_level = std::max(1, n - r);
    tables->final_level = final_level;

    ConvexDpResult result;
    result.degenerate_warning = (2 * r >= n);

    const BigInt state_cap = [&] {
        BigInt f = 1;
        for (int k = 2; k <= 2 * r; ++k) f *= k;
        return f;
    }();

    // S_1: matchings within W_1 covering every column <= min(r+1, n).
    Level cur;
    {
        const int cmax = std::min(r + 1, n);
        const int rmax = std::min(1 + 2 * r, n);
        StateKey acc;
        std::vector<char> used_row(rmax + 1, 0);
        std::function<void(int)> build = [&](int v) {
            if (v > cmax) {
                StateKey key = acc;
                std::sort(key.begin(), key.end());
                cur.states.push_back(State{std::move(key), 1, {}});
                return;
            }
            for (int u = 1; u <= std::min(v + r, rmax); ++u) {
                if (used_row[u] || !has_edge(u, v)) continue;
                used_row[u] = 1;
                acc.emplace_back(v, u);
                build(v + 1);
                acc.pop_back();
                used_row[u] = 0;
            }
        };
        build(1);
    }

    auto check_cap = [&](const Level& lv) {
        require(r <= 1 || BigInt(lv.states.size()) < state_cap, Err::Internal,
                "window state count exceeded (2r)!");
    };
    check_cap(cur);
    if (retain_tables) tables->levels.push_back(cur);

    for (int i = 1; i < final_level; ++i) {
        // Build S_{i+1} from S_i: drop states with row i unmatched, delete
        // row i's edge, merge duplicates, then (if column i+r+1 exists)
        // extend every state by a row for that column.
        const int new_col = i + r + 1;
        const int new_row_max = std::min(i + 1 + 2 * r, n);
        std::map<StateKey, int> index;
        Level next;
        for (int si = 0; si < static_cast<int>(cur.states.size()); ++si) {
            const State& st = cur.states[si];
            StateKey shrunk;
            bool row_i_matched = false;
            for (const Cell& c : st.edges) {
                if (c.second == i)
                    row_i_matched = true;
                else
                    shrunk.push_back(c);
            }
            if (!row_i_matched) continue;
            auto emit = [&](StateKey key) {
                std::sort(key.begin(), key.end());
                auto [it, inserted] = index.try_emplace(key, static_cast<int>(next.states.size()));
                if (inserted) next.states.push_back(State{std::move(key), 0, {}});
                State& tgt = next.states[it->second];
                tgt.count += st.count;
                tgt.preds.push_back(si);
            };
            if (new_col > n) {
                emit(shrunk);
                continue;
            }
            std::vector<char> used(new_row_max + 1, 0);
            for (const Cell& c : shrunk)
                if (c.second <= new_row_max) used[c.second] = 1;
            for (int u = i + 1; u <= new_row_max; ++u) {
                if (used[u] || !has_edge(u, new_col)) continue;
                StateKey key = shrunk;
                key.emplace_back(new_col, u);
                emit(std::move(key));
            }
        }
        cur = std::move(next);
        check_cap(cur);
        if (retain_tables) tables->levels.push_back(cur);
    }

    BigInt total = 0;
    for (const State& st : cur.states) total += st.count;
    result.permanent = total;
    if (retain_tables) result.tables = tables;
    return result;
}

PerfectMatching convex_dp_sample(const ConvexDpResult& dp, Rng& rng) {
    require(dp.tables != nullptr, Err::Internal, "convex_dp_sample requires retained tables");
    require(dp.permanent > 0, Err::NoPerfectMatching, "graph has no perfect matching");
    const ConvexDpTables& t = *dp.tables;

    auto pick_weighted = [&](const std::vector<const State*>& opts, const BigInt& total) -> int {
        // Draw uniformly from [0, total) by rejection over whole 64-bit words.
        BigInt x = 0;
        const size_t bits = msb(total) + 1;
        for (;;) {
            x = 0;
            for (size_t got = 0; got < bits; got += 64) {
                x <<= 64;
                x += rng.next();
            }
            x >>= (((bits + 63) / 64) * 64 - bits);
            if (x < total) break;
        }
        for (size_t k = 0; k < opts.size(); ++k) {
            if (x < opts[k]->count) return static_cast<int>(k);
            x -= opts[k]->count;
        }
        fail(Err::Internal, "weighted pick fell through");
    };

    // Choose the final state with probability N(M)/per, then walk levels
    // backwards choosing predecessors proportional to their counts.
    std::vector<Cell> chosen; // (col, row) pairs of the full matching, sorted rows later
    const Level& last = t.levels.back();
    int cur_idx;
    {
        std::vector<const State*> opts;
        for (const State& s : last.states) opts.push_back(&s);
        cur_idx = pick_weighted(opts, dp.permanent);
    }
    for (int lvl = t.final_level; lvl >= 1; --lvl) {
        const State& st = t.levels[lvl - 1].states[cur_idx];
        if (lvl == t.final_level) {
            for (const Cell& c : st.edges) chosen.push_back(c);
        } else {
            // Record row lvl's edge: it is dropped in the transition to lvl+1.
            for (const Cell& c : st.edges)
                if (c.second == lvl) chosen.push_back(c);
        }
        if (lvl == 1) break;
        const State& from = t.levels[lvl - 1].states[cur_idx];
        std::vector<const State*> opts;
        BigInt total = 0;
        for (int p : from.preds) {
            opts.push_back(&t.levels[lvl - 2].states[p]);
            total += t.levels[lvl - 2].states[p].count;
        }
        int k = pick_weighted(opts, total);
        cur_idx = from.preds[k];
    }

    PerfectMatching m;
    m.pi.assign(t.n, -1);
    for (const Cell& c : chosen) {
        int orig_row = t.row_order[c.second - 1];
        require(m.pi[orig_row] == -1, Err::Internal, "traceback produced duplicate row");
        m.pi[orig_row] = c.first - 1;
    }
    for (int v : m.pi) require(v >= 0, Err::Internal, "traceback missed a row");
    return m;
}

} // namespace pm
