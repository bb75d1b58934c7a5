#include "pm/mountain.hpp"

#include <algorithm>
#include <map>

namespace pm {

Range build_range(const std::vector<long long>& heights) {
    Range r;
    r.n = static_cast<int>(heights.size());
    require(r.n >= 3, Err::TooShort, "a range needs at least 3 nodes");
    r.y = heights;
    require(r.y.front() == r.y.back(), Err::BadBoundary, "boundary heights must be equal");
    for (long long h : r.y)
        require(h >= r.y.front(), Err::BadBoundary, "boundary must be the minimum height");
    r.type.assign(r.n, Range::Node::Boundary);
    r.s = 1;
    for (int i = 1; i + 1 < r.n; ++i) {
        bool up_l = r.above(i, i - 1);  // higher than left neighbor
        bool up_r = r.above(i, i + 1);  // higher than right neighbor
        if (up_l && up_r)
            r.type[i] = Range::Node::Peak;
        else if (!up_l && !up_r)
            r.type[i] = Range::Node::Valley;
        else if (up_l)
            r.type[i] = Range::Node::Up; // ascending left-to-right
        else
            r.type[i] = Range::Node::Down;
        if (r.above(i, r.s)) r.s = i;
    }
    return r;
}

namespace {

// Strictly inside the open height span of slope j (which joins nodes j, j+1).
bool inside_slope(const Range& r, int node, int slope) {
    int a = slope, b = slope + 1;
    int lo = r.above(a, b) ? b : a;
    int hi = (lo == a) ? b : a;
    return r.above(node, lo) && r.above(hi, node);
}

} // namespace

RangeGraph build_range_graph(const Range& r) {
    RangeGraph g;
    g.verts.push_back({-1, -1}); // start p_0 p_{n-1}
    g.verts.push_back({-1, -2}); // summit p_s p_s
    const int n = r.n, s = r.s;
    std::map<std::pair<int, int>, int> id;
    // Left nodes vs right slopes, and right nodes vs left slopes.
    for (int i = 1; i < s; ++i)
        for (int j = s; j <= n - 2; ++j)
            if (inside_slope(r, i, j)) {
                id[{i, j}] = static_cast<int>(g.verts.size());
                g.verts.push_back({i, j});
            }
    for (int i = s + 1; i < n - 1; ++i)
        for (int j = 0; j <= s - 1; ++j)
            if (inside_slope(r, i, j)) {
                id[{i, j}] = static_cast<int>(g.verts.size());
                g.verts.push_back({i, j});
            }
    g.adj.assign(g.verts.size(), {});
    auto link = [&](int a, int b) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    };
    // Interior adjacency: (i,j) ~ (k,t) iff the pairs describe consecutive
    // events: same slope with adjacent nodes, or each node on the other
    // vertex's slope.
    for (const auto& [key, va] : id) {
        auto [i, j] = key;
        for (int k : {i - 1, i + 1}) {
            auto it = id.find({k, j});
            if (it != id.end() && it->second > va) link(va, it->second);
        }
        for (int jj : {i - 1, i}) // slopes through node i
            for (int k : {j, j + 1}) { // nodes of slope j
                auto it = id.find({k, jj});
                if (it != id.end() && it->second > va) link(va, it->second);
            }
    }
    // Start endpoint: the first event is at the lower of the two nodes next
    // to the boundary, the other climber still on their first slope.
    if (n == 3) {
        link(g.start, g.summit); // single interior node: both reach it at once
        return g;
    }
    {
        int v;
        if (r.above(n - 2, 1))
            v = id.at({1, n - 2});
        else
            v = id.at({n - 2, 0});
        link(g.start, v);
    }
    // Summit endpoint: the last event is at the higher of the two nodes next
    // to the summit, the other climber on the slope facing it.
    {
        int v;
        if (r.above(s - 1, s + 1))
            v = id.at({s - 1, s});
        else
            v = id.at({s + 1, s - 1});
        link(g.summit, v);
    }
    return g;
}

std::vector<ClimbEvent> climb(const Range& r, bool swap_roles) {
    RangeGraph g = build_range_graph(r);
    std::vector<int> path;
    int prev = -1, cur = g.start;
    path.push_back(cur);
    while (cur != g.summit) {
        require(g.adj[cur].size() <= 2, Err::Internal, "range graph vertex of degree > 2");
        int next = -1;
        for (int w : g.adj[cur])
            if (w != prev) {
                require(next == -1, Err::Internal, "branching in range graph path");
                next = w;
            }
        require(next != -1, Err::Internal, "dead end before reaching summit");
        prev = cur;
        cur = next;
        path.push_back(cur);
        require(path.size() <= g.verts.size() + 1, Err::Internal, "range graph walk cycled");
    }
    std::vector<ClimbEvent> events;
    for (int v : path) {
        const auto& vert = g.verts[v];
        ClimbEvent e{};
        e.node = vert.node;
        e.slope = vert.slope;
        double lx, ly, rx, ry; // left-of-summit and right-of-summit climber
        if (vert.node < 0 && vert.slope == -1) {
            lx = 1;
            ly = static_cast<double>(r.y[0]);
            rx = r.n;
            ry = ly;
        } else if (vert.node < 0) {
            lx = rx = r.s + 1;
            ly = ry = static_cast<double>(r.y[r.s]);
        } else {
            double ny = static_cast<double>(r.y[vert.node]);
            double y0 = static_cast<double>(r.y[vert.slope]);
            double y1 = static_cast<double>(r.y[vert.slope + 1]);
            double frac = (y1 == y0) ? 0.5 : (ny - y0) / (y1 - y0);
            double sx = vert.slope + 1 + frac;
            if (vert.node < r.s) {
                lx = vert.node + 1;
                rx = sx;
            } else {
                lx = sx;
                rx = vert.node + 1;
            }
            ly = ry = ny;
        }
        if (!swap_roles) {
            e.ax = lx;
            e.ay = ly;
            e.bx = rx;
            e.by = ry;
        } else {
            e.ax = rx;
            e.ay = ry;
            e.bx = lx;
            e.by = ly;
        }
        events.push_back(e);
    }
    return events;
}

Range gen_lambda(int k) {
    require(k >= 1, Err::BadInput, "k >= 1");
    if (k == 1) return build_range({0, 2, 0});
    // Inverse of the stage-1 reduction: grow from the single peak by
    // inserting (new deepest valley, new summit) next to the current summit,
    // alternating sides.
    std::vector<long long> s{k + 1};
    int sp = 0;
    for (int j = 2; j <= k; ++j) {
        if (j % 2 == 0) {
            s.insert(s.begin() + sp + 1, {static_cast<long long>(k + 1 - j), static_cast<long long>(k + j)});
            sp += 2;
        } else {
            s.insert(s.begin() + sp, {static_cast<long long>(k + j), static_cast<long long>(k + 1 - j)});
        }
    }
    std::vector<long long> h;
    h.push_back(0);
    h.insert(h.end(), s.begin(), s.end());
    h.push_back(0);
    return build_range(h);
}

} // namespace pm
