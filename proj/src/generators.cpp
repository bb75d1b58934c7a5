#include "pm/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace pm {

namespace {

BipartiteGraph grid(const std::vector<std::vector<int>>& a) {
    std::vector<std::string> rows;
    for (const auto& r : a) {
        std::string s;
        for (int v : r) s += (v ? '1' : '0');
        rows.push_back(std::move(s));
    }
    return from_matrix(rows);
}

} // namespace

BipartiteGraph gen_dgh_6cycle() {
    return grid({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

BipartiteGraph gen_Gk(int k) {
    require(k >= 2, Err::BadInput, "G_k requires k >= 2");
    const int n = 2 * k - 1;
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    // 1-based rule: rows below k see an upper-right triangle, row k sees
    // everything, rows above k see a lower-left triangle.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            bool e;
            if (i < k)
                e = (k <= j && j <= k + i);
            else if (i == k)
                e = true;
            else
                e = (i - k <= j && j <= k);
            a[i - 1][j - 1] = e ? 1 : 0;
        }
    return grid(a);
}

BipartiteGraph gen_ladder(int n) {
    require(n >= 2, Err::BadInput, "ladder requires n >= 2");
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) a[i][j] = 1;
    return grid(a);
}

BipartiteGraph gen_lower_triangular(int n) {
    require(n >= 3, Err::BadInput, "triangular example requires n >= 3");
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a[i][j] = 1;
    return grid(a);
}

namespace {

BipartiteGraph from_row_intervals(const std::vector<std::pair<int, int>>& iv, int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = iv[i].first; j <= iv[i].second; ++j) a[i][j] = 1;
    return grid(a);
}

// Random interval of expected width ~ density * n around a center.
std::pair<int, int> random_interval(int n, int center, double density, Rng& rng) {
    int w = 1 + static_cast<int>(rng.below(std::max<uint64_t>(1, uint64_t(density * n))));
    int lo = center - static_cast<int>(rng.below(uint64_t(w)));
    lo = std::clamp(lo, 0, n - 1);
    int hi = std::clamp(lo + w - 1, lo, n - 1);
    return {lo, hi};
}

bool covers_all_columns(const std::vector<std::pair<int, int>>& iv, int n) {
    std::vector<char> cov(n, 0);
    for (auto [lo, hi] : iv)
        for (int j = lo; j <= hi; ++j) cov[j] = 1;
    return std::all_of(cov.begin(), cov.end(), [](char c) { return c != 0; });
}

BipartiteGraph gen_chain(int n, double density, Rng& rng) {
    // Non-decreasing a with a_i >= i (1-based) guarantees a perfect matching.
    std::vector<int> a(n);
    int prev = 1;
    for (int i = 1; i <= n; ++i) {
        int extra = static_cast<int>(rng.below(std::max<uint64_t>(1, uint64_t(density * n)) + 1));
        a[i - 1] = std::clamp(std::max(prev, i + extra), i, n);
        prev = a[i - 1];
    }
    a[n - 1] = n;
    std::vector<std::pair<int, int>> iv(n);
    for (int i = 0; i < n; ++i) iv[i] = {0, a[i] - 1};
    return from_row_intervals(iv, n);
}

BipartiteGraph gen_monotone(int n, double density, Rng& rng) {
    // Staircase: both interval endpoints non-decreasing, consecutive
    // intervals overlapping or adjacent, so the columns are covered.
    std::vector<std::pair<int, int>> iv(n);
    int lo = 0, hi = 0;
    for (int i = 0; i < n; ++i) {
        int w = 1 + static_cast<int>(rng.below(std::max<uint64_t>(1, uint64_t(density * n))));
        if (i > 0) {
            int next_lo = lo + static_cast<int>(rng.below(uint64_t(iv[i - 1].second - lo + 2)));
            lo = std::min(next_lo, n - 1);
        }
        hi = std::clamp(std::max(hi, lo + w - 1), lo, n - 1);
        iv[i] = {lo, hi};
    }
    iv[n - 1].second = n - 1;
    return from_row_intervals(iv, n);
}

BipartiteGraph gen_other(int n, double density, Rng& rng) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 1; // a perfect matching exists
    uint64_t den = static_cast<uint64_t>(density * 1000.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng.below(1000) < den) a[i][j] = 1;
    return grid(a);
}

} // namespace

BipartiteGraph gen_random(ClassLabel cls, int n, Rng& rng, double density, int retry_budget) {
    require(n >= 1 && n <= 64, Err::BadInput, "size out of range");
    density = std::clamp(density, 0.05, 1.0);
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        switch (cls) {
            case ClassLabel::Chain: {
                BipartiteGraph g = gen_chain(n, density, rng);
                if (check_chain(g)) return g;
                break;
            }
            case ClassLabel::Monotone: {
                BipartiteGraph g = gen_monotone(n, density, rng);
                if (!monotone_violation(g)) return g;
                break;
            }
            case ClassLabel::Convex:
            case ClassLabel::Biconvex: {
                // Free-form intervals first; if biconvexity keeps failing,
                // fall back to a shuffled staircase (monotone, so biconvex).
                if (cls == ClassLabel::Biconvex && attempt >= retry_budget / 2) {
                    BipartiteGraph g = gen_monotone(n, density, rng);
                    Presentation p = Presentation::identity(n, n);
                    for (int i = n - 1; i > 0; --i) {
                        std::swap(p.row_order[i], p.row_order[rng.below(uint64_t(i) + 1)]);
                        std::swap(p.col_order[i], p.col_order[rng.below(uint64_t(i) + 1)]);
                    }
                    g = apply_presentation(g, p);
                    if (check_biconvex(g)) return g;
                    break;
                }
                std::vector<std::pair<int, int>> iv(n);
                for (int i = 0; i < n; ++i) iv[i] = random_interval(n, i, density, rng);
                if (!covers_all_columns(iv, n)) break;
                BipartiteGraph g = from_row_intervals(iv, n);
                if (cls == ClassLabel::Convex ? check_convex(g).has_value()
                                              : check_biconvex(g).has_value())
                    return g;
                break;
            }
            case ClassLabel::ChordalBipartite: {
                // Edge insertion on a diagonal frame, rejecting additions
                // that destroy chordal bipartiteness.
                std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
                for (int i = 0; i < n; ++i) a[i][i] = 1;
                BipartiteGraph g = grid(a);
                int tries = static_cast<int>(density * n * n) + n;
                for (int t = 0; t < tries; ++t) {
                    int i = static_cast<int>(rng.below(uint64_t(n)));
                    int j = static_cast<int>(rng.below(uint64_t(n)));
                    if (g.edge(i, j)) continue;
                    BipartiteGraph h = g;
                    h.adj[i].set(j);
                    if (is_chordal_bipartite(h)) g = std::move(h);
                }
                if (is_chordal_bipartite(g)) return g;
                break;
            }
            case ClassLabel::OtherBipartite:
                return gen_other(n, density, rng);
        }
    }
    fail(Err::GenerationFailed, "could not generate a verified instance within the retry budget");
}

bool has_spanning_ladder(const BipartiteGraph& g) {
    require(g.balanced(), Err::UnbalancedGraph, "spanning-ladder test needs m == n");
    require(!monotone_violation(g).has_value(), Err::NotMonotone,
            "spanning-ladder test requires a monotone presentation");
    const int n = g.n;
    if (!g.edge(n - 1, n - 1)) return false;
    for (int i = 0; i + 1 < n; ++i)
        if (!g.edge(i, i) || !g.edge(i, i + 1) || !g.edge(i + 1, i)) return false;
    return true;
}

} // namespace pm
