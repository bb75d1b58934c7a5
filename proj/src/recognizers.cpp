#include "pm/recognizers.hpp"

#include <algorithm>
#include <numeric>

namespace pm {

Presentation Presentation::identity(int m, int n) {
    Presentation p;
    p.row_order.resize(m);
    p.col_order.resize(n);
    std::iota(p.row_order.begin(), p.row_order.end(), 0);
    std::iota(p.col_order.begin(), p.col_order.end(), 0);
    return p;
}

BipartiteGraph apply_presentation(const BipartiteGraph& g, const Presentation& p) {
    BipartiteGraph h;
    h.m = g.m;
    h.n = g.n;
    h.allow_isolated = g.allow_isolated;
    for (int r = 0; r < g.m; ++r) {
        Bitset b(g.n);
        for (int c = 0; c < g.n; ++c)
            if (g.edge(p.row_order[r], p.col_order[c])) b.set(c);
        h.adj.push_back(std::move(b));
    }
    return h;
}

const char* class_name(ClassLabel c) {
    switch (c) {
    case ClassLabel::Chain: return "Chain";
    case ClassLabel::Monotone: return "Monotone";
    case ClassLabel::Biconvex: return "Biconvex";
    case ClassLabel::Convex: return "Convex";
    case ClassLabel::ChordalBipartite: return "ChordalBipartite";
    case ClassLabel::OtherBipartite: return "OtherBipartite";
    }
    return "?";
}

std::optional<SubmatrixWitness> gamma_free_check(const BipartiteGraph& g) {
    // Lexicographically first (i, j, k, l) with 1s at (i,k),(i,l),(j,k) and 0
    // at (j,l). For fixed (i, j) the smallest usable k is the first common 1:
    // shrinking k only enlarges the candidate range for l.
    for (int i = 0; i < g.m; ++i) {
        for (int j = i + 1; j < g.m; ++j) {
            Bitset common = g.adj[i] & g.adj[j];
            size_t k = common.find_first();
            if (k == Bitset::npos) continue;
            Bitset only_i = g.adj[i] & ~g.adj[j];
            for (size_t l = only_i.find_first(); l != Bitset::npos; l = only_i.find_next(l)) {
                if (l > k)
                    return SubmatrixWitness{static_cast<int>(i), j, static_cast<int>(k),
                                            static_cast<int>(l), SubmatrixWitness::Shape::Gamma};
            }
        }
    }
    return std::nullopt;
}

namespace {

// Compare two rows as binary vectors with later columns more significant.
bool row_less(const BipartiteGraph& g, const std::vector<int>& col_order, int a, int b) {
    for (int c = g.n - 1; c >= 0; --c) {
        bool xa = g.edge(a, col_order[c]);
        bool xb = g.edge(b, col_order[c]);
        if (xa != xb) return xb; // a has 0 where b has 1 -> a smaller
    }
    return false;
}

bool col_less(const BipartiteGraph& g, const std::vector<int>& row_order, int a, int b) {
    for (int r = g.m - 1; r >= 0; --r) {
        bool xa = g.edge(row_order[r], a);
        bool xb = g.edge(row_order[r], b);
        if (xa != xb) return xb;
    }
    return false;
}

} // namespace

Presentation doubly_lexical_order(const BipartiteGraph& g) {
    Presentation p = Presentation::identity(g.m, g.n);
    // Alternate stable sorts until both orders are simultaneously sorted.
    // Each changing pass strictly increases a bounded potential, so this
    // terminates; the guard below catches any convention error.
    const int max_pass = 4 * (g.m + g.n) + 8;
    for (int pass = 0; pass < max_pass; ++pass) {
        auto rows = p.row_order;
        std::stable_sort(rows.begin(), rows.end(),
                         [&](int a, int b) { return row_less(g, p.col_order, a, b); });
        bool rows_changed = rows != p.row_order;
        p.row_order = std::move(rows);
        auto cols = p.col_order;
        std::stable_sort(cols.begin(), cols.end(),
                         [&](int a, int b) { return col_less(g, p.row_order, a, b); });
        bool cols_changed = cols != p.col_order;
        p.col_order = std::move(cols);
        if (!rows_changed && !cols_changed) {
            // Verify before returning, per contract.
            for (int r = 0; r + 1 < g.m; ++r)
                require(!row_less(g, p.col_order, p.row_order[r + 1], p.row_order[r]), Err::Internal,
                        "doubly lexical ordering: rows not sorted");
            for (int c = 0; c + 1 < g.n; ++c)
                require(!col_less(g, p.row_order, p.col_order[c + 1], p.col_order[c]), Err::Internal,
                        "doubly lexical ordering: columns not sorted");
            return p;
        }
    }
    fail(Err::Internal, "doubly lexical ordering did not converge");
}

bool is_chordal_bipartite(const BipartiteGraph& g) {
    return !gamma_free_check(apply_presentation(g, doubly_lexical_order(g))).has_value();
}

std::optional<IntervalPresentation> row_intervals(const BipartiteGraph& g) {
    IntervalPresentation ip;
    for (int i = 0; i < g.m; ++i) {
        size_t first = g.adj[i].find_first();
        if (first == Bitset::npos) {
            ip.row_intervals.emplace_back(-1, -2); // empty row
            continue;
        }
        size_t last = first;
        for (size_t j = first; j != Bitset::npos; j = g.adj[i].find_next(j)) last = j;
        if (g.adj[i].count() != last - first + 1) return std::nullopt; // gap
        ip.row_intervals.emplace_back(static_cast<int>(first), static_cast<int>(last));
    }
    return ip;
}

namespace {

BipartiteGraph transpose(const BipartiteGraph& g) {
    BipartiteGraph t;
    t.m = g.n;
    t.n = g.m;
    t.allow_isolated = true;
    t.adj.assign(t.m, Bitset(t.n));
    for (int i = 0; i < g.m; ++i)
        for (size_t j = g.adj[i].find_first(); j != Bitset::npos; j = g.adj[i].find_next(j))
            t.adj[j].set(i);
    return t;
}

// Consecutive-ones property: find a column order making every row an
// interval, by reachability over column subsets. A column c may extend a
// prefix set S iff every row that S has started but not finished contains c.
// Exact for all inputs within the documented cap.
std::optional<std::vector<int>> c1p_order(const BipartiteGraph& g) {
    const int n = g.n;
    require(n <= 22, Err::TooLarge, "consecutive-ones search capped at 22 columns");
    std::vector<uint32_t> rows(g.m);
    for (int i = 0; i < g.m; ++i) {
        uint32_t msk = 0;
        for (size_t j = g.adj[i].find_first(); j != Bitset::npos; j = g.adj[i].find_next(j))
            msk |= (1u << j);
        rows[i] = msk;
    }
    const uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    std::vector<int8_t> parent(size_t(1) << n, -2); // -2 unvisited, -1 root, else column added
    parent[0] = -1;
    std::vector<uint32_t> stack{0};
    while (!stack.empty()) {
        uint32_t S = stack.back();
        stack.pop_back();
        if (S == full) {
            std::vector<int> order;
            for (uint32_t T = full; parent[T] >= 0; T ^= (1u << parent[T]))
                order.push_back(parent[T]);
            std::reverse(order.begin(), order.end());
            return order;
        }
        // Columns every open row contains:
        uint32_t allowed = full & ~S;
        for (uint32_t r : rows)
            if ((r & S) && (r & ~S)) allowed &= r;
        for (uint32_t rem = allowed; rem; rem &= rem - 1) {
            int c = std::countr_zero(rem);
            uint32_t T = S | (1u << c);
            if (parent[T] == -2) {
                parent[T] = static_cast<int8_t>(c);
                stack.push_back(T);
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Presentation> check_convex(const BipartiteGraph& g) {
    auto order = c1p_order(g);
    if (!order) return std::nullopt;
    Presentation p = Presentation::identity(g.m, g.n);
    p.col_order = *order;
    // Verify-then-return.
    require(row_intervals(apply_presentation(g, p)).has_value(), Err::Internal,
            "consecutive-ones order failed interval verification");
    return p;
}

std::optional<Presentation> check_biconvex(const BipartiteGraph& g) {
    // Row and column consecutive-ones orders can be found independently:
    // permuting rows never changes whether row neighborhoods are intervals,
    // and vice versa.
    auto cols = c1p_order(g);
    if (!cols) return std::nullopt;
    auto rows = c1p_order(transpose(g));
    if (!rows) return std::nullopt;
    Presentation p{*rows, *cols};
    BipartiteGraph h = apply_presentation(g, p);
    require(row_intervals(h).has_value() && row_intervals(transpose(h)).has_value(), Err::Internal,
            "biconvex orders failed interval verification");
    return p;
}

std::optional<SubmatrixWitness> monotone_violation(const BipartiteGraph& g) {
    // Forbidden induced 2x2 submatrices (rows i<j, cols k<l), as row pairs
    // (top row; bottom row): Gamma (1,1;1,0), backwards-L (0,1;1,1),
    // slash (0,1;1,0).
    for (int i = 0; i < g.m; ++i)
        for (int j = i + 1; j < g.m; ++j)
            for (int k = 0; k < g.n; ++k)
                for (int l = k + 1; l < g.n; ++l) {
                    bool a = g.edge(i, k), b = g.edge(i, l), c = g.edge(j, k), d = g.edge(j, l);
                    if (a && b && c && !d)
                        return SubmatrixWitness{i, j, k, l, SubmatrixWitness::Shape::Gamma};
                    if (!a && b && c && d)
                        return SubmatrixWitness{i, j, k, l, SubmatrixWitness::Shape::BackwardsL};
                    if (!a && b && c && !d)
                        return SubmatrixWitness{i, j, k, l, SubmatrixWitness::Shape::Slash};
                }
    return std::nullopt;
}

namespace {

// Sort rows stably by (first, last) neighbor under the given column order.
std::vector<int> rows_by_interval(const BipartiteGraph& g, const std::vector<int>& col_order) {
    std::vector<std::pair<int, int>> key(g.m, {g.n, g.n});
    for (int i = 0; i < g.m; ++i) {
        int lo = g.n, hi = -1;
        for (int c = 0; c < g.n; ++c)
            if (g.edge(i, col_order[c])) {
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
        key[i] = {lo, hi};
    }
    std::vector<int> order(g.m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
    return order;
}

bool monotone_ok(const BipartiteGraph& g, const Presentation& p) {
    return !monotone_violation(apply_presentation(g, p)).has_value();
}

std::optional<Presentation> monotone_heuristic(const BipartiteGraph& g) {
    std::vector<std::vector<int>> col_candidates;
    {
        Presentation id = Presentation::identity(g.m, g.n);
        col_candidates.push_back(id.col_order);
        if (auto conv = check_convex(g)) {
            col_candidates.push_back(conv->col_order);
            auto rev = conv->col_order;
            std::reverse(rev.begin(), rev.end());
            col_candidates.push_back(rev);
        }
    }
    BipartiteGraph t = transpose(g);
    for (auto cols : col_candidates) {
        std::vector<int> rows(g.m);
        std::iota(rows.begin(), rows.end(), 0);
        // Fixpoint refinement: alternately re-sort rows and columns by
        // (leftmost, rightmost) neighbor in the other dimension's order.
        for (int pass = 0; pass < g.m + g.n + 2; ++pass) {
            Presentation rp{rows, cols};
            auto new_rows = rows_by_interval(apply_presentation(g, rp), [&] {
                std::vector<int> idc(g.n);
                std::iota(idc.begin(), idc.end(), 0);
                return idc;
            }());
            std::vector<int> rows2(g.m);
            for (int r = 0; r < g.m; ++r) rows2[r] = rows[new_rows[r]];
            Presentation cp{rows2, cols};
            BipartiteGraph ht = transpose(apply_presentation(g, cp));
            auto new_cols = rows_by_interval(ht, [&] {
                std::vector<int> idr(g.m);
                std::iota(idr.begin(), idr.end(), 0);
                return idr;
            }());
            std::vector<int> cols2(g.n);
            for (int c = 0; c < g.n; ++c) cols2[c] = cols[new_cols[c]];
            bool stable = (rows2 == rows && cols2 == cols);
            rows = std::move(rows2);
            cols = std::move(cols2);
            if (stable) break;
        }
        Presentation p{rows, cols};
        if (monotone_ok(g, p)) return p;
    }
    return std::nullopt;
}

std::optional<Presentation> monotone_exhaustive(const BipartiteGraph& g) {
    // Enumerate permutations of the smaller side; the other side's order is
    // forced (up to ties between identical lines) by sorting on intervals.
    if (g.m < g.n) {
        auto t = monotone_exhaustive(transpose(g));
        if (!t) return std::nullopt;
        return Presentation{t->col_order, t->row_order};
    }
    std::vector<int> cols(g.n);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<int> perm = cols;
    do {
        Presentation p0{Presentation::identity(g.m, g.n).row_order, perm};
        auto rows = rows_by_interval(g, perm);
        Presentation p{rows, perm};
        if (monotone_ok(g, p)) return p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

} // namespace

std::optional<Presentation> check_monotone(const BipartiteGraph& g) {
    if (auto p = monotone_heuristic(g)) return p;
    if (std::min(g.m, g.n) <= 7) return monotone_exhaustive(g);
    return std::nullopt; // heuristic exhausted; documented best-effort beyond the cap
}

std::optional<Presentation> check_chain(const BipartiteGraph& g) {
    // Chain iff after sorting rows by degree (ascending) and columns by
    // degree (descending) every row is a prefix of columns.
    Presentation p = Presentation::identity(g.m, g.n);
    std::stable_sort(p.row_order.begin(), p.row_order.end(),
                     [&](int a, int b) { return g.row_degree(a) < g.row_degree(b); });
    std::vector<int> cdeg(g.n);
    for (int j = 0; j < g.n; ++j) cdeg[j] = g.col_degree(j);
    std::stable_sort(p.col_order.begin(), p.col_order.end(),
                     [&](int a, int b) { return cdeg[a] > cdeg[b]; });
    BipartiteGraph h = apply_presentation(g, p);
    for (int i = 0; i < h.m; ++i) {
        int d = h.row_degree(i);
        for (int j = 0; j < d; ++j)
            if (!h.edge(i, j)) return std::nullopt;
    }
    return p;
}

ClassLabel classify(const BipartiteGraph& g) {
    bool chain = check_chain(g).has_value();
    bool mono = check_monotone(g).has_value();
    bool bic = check_biconvex(g).has_value();
    bool conv = check_convex(g).has_value();
    bool chb = is_chordal_bipartite(g);
    // Hierarchy soundness: the set of succeeding recognizers must be
    // downward-closed along Chain -> ... -> ChordalBipartite.
    require(!chain || mono, Err::Internal, "hierarchy violation: chain but not monotone");
    require(!mono || bic, Err::Internal, "hierarchy violation: monotone but not biconvex");
    require(!bic || conv, Err::Internal, "hierarchy violation: biconvex but not convex");
    require(!conv || chb, Err::Internal, "hierarchy violation: convex but not chordal bipartite");
    if (chain) return ClassLabel::Chain;
    if (mono) return ClassLabel::Monotone;
    if (bic) return ClassLabel::Biconvex;
    if (conv) return ClassLabel::Convex;
    if (chb) return ClassLabel::ChordalBipartite;
    return ClassLabel::OtherBipartite;
}

bool verify_monotone_column_property(const BipartiteGraph& g) {
    require(!monotone_violation(g).has_value(), Err::NotMonotonePresentation,
            "matrix is not in a verified monotone presentation");
    BipartiteGraph t = transpose(g);
    auto ci = row_intervals(t);
    if (!ci) return false;
    int prev_lo = -1, prev_hi = -1;
    for (int j = 0; j < t.m; ++j) {
        auto [lo, hi] = ci->row_intervals[j];
        if (lo > hi) continue; // empty column (only with allow_isolated)
        if (lo < prev_lo || hi < prev_hi) return false;
        prev_lo = lo;
        prev_hi = hi;
    }
    return true;
}

} // namespace pm
