#include "pm/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace pm {

namespace {

void check_isolated(const BipartiteGraph& g) {
    if (g.allow_isolated) return;
    for (int i = 0; i < g.m; ++i)
        if (g.adj[i].none())
            fail(Err::IsolatedVertex, "row " + std::to_string(i + 1) + " has no neighbors");
    for (int j = 0; j < g.n; ++j)
        if (g.col_degree(j) == 0)
            fail(Err::IsolatedVertex, "column " + std::to_string(j + 1) + "' has no neighbors");
}

} // namespace

BipartiteGraph from_matrix(const std::vector<std::string>& rows, bool allow_isolated) {
    require(!rows.empty(), Err::RaggedInput, "no rows");
    BipartiteGraph g;
    g.m = static_cast<int>(rows.size());
    g.n = static_cast<int>(rows[0].size());
    g.allow_isolated = allow_isolated;
    require(g.n >= 1, Err::RaggedInput, "empty first row");
    for (int i = 0; i < g.m; ++i) {
        require(static_cast<int>(rows[i].size()) == g.n, Err::RaggedInput,
                "row " + std::to_string(i + 1) + " has length " + std::to_string(rows[i].size()) +
                    ", expected " + std::to_string(g.n));
        Bitset b(g.n);
        for (int j = 0; j < g.n; ++j) {
            char c = rows[i][j];
            require(c == '0' || c == '1', Err::RaggedInput,
                    std::string("bad character '") + c + "' in matrix row");
            if (c == '1') b.set(j);
        }
        g.adj.push_back(std::move(b));
    }
    check_isolated(g);
    return g;
}

BipartiteGraph read_matrix(std::istream& in, bool allow_isolated) {
    std::string line;
    int m = -1, n = -1;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '#') continue;
        if (m < 0) {
            std::istringstream hdr(line);
            if (!(hdr >> m >> n) || m < 1 || n < 1)
                fail(Err::RaggedInput, "expected header line \"m n\", got: " + line);
            continue;
        }
        rows.push_back(line.substr(pos, line.find_last_not_of(" \t") - pos + 1));
        if (static_cast<int>(rows.size()) == m) break;
    }
    require(m > 0, Err::RaggedInput, "missing header line \"m n\"");
    require(static_cast<int>(rows.size()) == m, Err::RaggedInput, "fewer matrix rows than header declares");
    BipartiteGraph g = from_matrix(rows, allow_isolated);
    require(g.n == n, Err::RaggedInput, "row length disagrees with header");
    return g;
}

void write_matrix(std::ostream& out, const BipartiteGraph& g, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << g.m << " " << g.n << "\n";
    for (int i = 0; i < g.m; ++i) {
        for (int j = 0; j < g.n; ++j) out << (g.edge(i, j) ? '1' : '0');
        out << "\n";
    }
}

bool validate_matching(const BipartiteGraph& g, const PerfectMatching& pm) {
    require(g.balanced(), Err::UnbalancedGraph, "perfect matchings require m == n");
    if (static_cast<int>(pm.pi.size()) != g.n) return false;
    std::vector<char> used(g.n, 0);
    for (int i = 0; i < g.n; ++i) {
        int j = pm.pi[i];
        if (j < 0 || j >= g.n || used[j] || !g.edge(i, j)) return false;
        used[j] = 1;
    }
    return true;
}

std::optional<PerfectMatching> find_perfect_matching(const BipartiteGraph& g) {
    require(g.balanced(), Err::UnbalancedGraph, "perfect matchings require m == n");
    const int n = g.n;
    std::vector<int> match_col(n, -1); // row -> col
    std::vector<int> match_row(n, -1); // col -> row
    std::vector<char> seen(n);
    // Lowest-index augmenting DFS, processed row by row: deterministic.
    std::function<bool(int)> augment = [&](int i) -> bool {
        for (int j = 0; j < n; ++j) {
            if (!g.edge(i, j) || seen[j]) continue;
            seen[j] = 1;
            if (match_row[j] < 0 || augment(match_row[j])) {
                match_row[j] = i;
                match_col[i] = j;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        if (!augment(i)) return std::nullopt;
    }
    return PerfectMatching{std::move(match_col)};
}

bool diagonal_matching_exists(const BipartiteGraph& g) {
    require(g.balanced(), Err::UnbalancedGraph, "diagonal matching requires m == n");
    for (int i = 0; i < g.n; ++i)
        if (!g.edge(i, i)) return false;
    return true;
}

std::pair<int, int> degree_stats(const BipartiteGraph& g) {
    int r = 0, c = 0;
    for (int i = 0; i < g.m; ++i) r = std::max(r, g.row_degree(i));
    for (int j = 0; j < g.n; ++j) c = std::max(c, g.col_degree(j));
    return {r, c};
}

BipartiteGraph induced_subgraph(const BipartiteGraph& g, const std::vector<int>& rows,
                                const std::vector<int>& cols) {
    require(!rows.empty() && !cols.empty(), Err::EmptySelection, "induced subgraph needs non-empty row and column sets");
    BipartiteGraph h;
    h.m = static_cast<int>(rows.size());
    h.n = static_cast<int>(cols.size());
    h.allow_isolated = true;
    for (int i : rows) {
        Bitset b(h.n);
        for (int c = 0; c < h.n; ++c)
            if (g.edge(i, cols[c])) b.set(c);
        h.adj.push_back(std::move(b));
    }
    return h;
}

} // namespace pm
