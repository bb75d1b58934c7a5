// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every randomized check is seeded and therefore reproducible.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pm/canonical.hpp"
#include "pm/errors.hpp"
#include "pm/exact_count.hpp"
#include "pm/generators.hpp"
#include "pm/graph.hpp"
#include "pm/mountain.hpp"
#include "pm/recognizers.hpp"
#include "pm/rng.hpp"
#include "pm/switch_chain.hpp"

using namespace pm;

namespace {

int g_failures = 0;

// body returns "" on success, otherwise a short failure description.
void criterion(int id, const std::string& title, const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
        detail = body();
    } catch (const Error& e) {
        detail = std::string("error ") + e.code_name() + ": " + e.what();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    if (detail.empty()) {
        line << "PASS criterion " << id << ": " << title;
    } else {
        line << "FAIL criterion " << id << ": " << title << " -- " << detail;
        ++g_failures;
    }
    line.setf(std::ios::fixed);
    line.precision(1);
    line << " (" << secs << "s)";
    std::cout << line.str() << std::endl;
}

// Prefix-neighborhood degree vector of a matrix already in chain form.
std::string chain_vector_of(const BipartiteGraph& g, ChainDegreeVector& out) {
    out.a.clear();
    for (int i = 0; i < g.m; ++i) {
        int d = static_cast<int>(g.adj[i].count());
        for (int j = 0; j < d; ++j)
            if (!g.adj[i].test(j)) return "row " + std::to_string(i) + " is not a prefix";
        if (i > 0 && d < out.a.back()) return "row degrees not non-decreasing";
        out.a.push_back(d);
    }
    return "";
}

// Random monotone instance with 2 <= |Omega| <= max_omega.
BipartiteGraph small_monotone(int n, Rng& rng, long long max_omega,
                              std::vector<PerfectMatching>* omega) {
    // At small n the default density can force width-1 row intervals, whose
    // permanent never exceeds 1; widen until |Omega| >= 2 is reachable.
    double density = std::max(0.5, 2.5 / n);
    for (;;) {
        BipartiteGraph g = gen_random(ClassLabel::Monotone, n, rng, density);
        omega->clear();
        BigInt per = permanent_enumerate(g, 12, omega);
        if (per >= 2 && per <= max_omega) return g;
    }
}

std::set<BoardPoint> matching_points(const Board& b, const PerfectMatching& m) {
    std::set<BoardPoint> pts;
    for (int u = 1; u <= b.N; ++u) pts.insert({m.pi[u - 1] + 1, b.N - u + 1});
    return pts;
}

// Invariant I at all non-transitory states of every cycle of (x, y), plus the
// paired-game point coverage at sampled states. Distinct cycles are checked
// once (the trace depends only on the cycle).
std::string check_pair_traces(const BipartiteGraph& g, const PerfectMatching& x,
                              const PerfectMatching& y,
                              std::set<std::vector<int>>* seen_cycles) {
    CycleDecomposition dec = decompose_cycles(x, y);
    for (const CyclePart& cyc : dec.cycles) {
        std::vector<int> key = cyc.rows;
        key.insert(key.end(), cyc.cols.begin(), cyc.cols.end());
        if (!seen_cycles->insert(key).second) continue;
        TokenTrace trace = run_token_game(g, cyc, false);
        const Board& bd = trace.board;
        std::set<BoardPoint> pset;
        for (int i = 1; i <= bd.N; ++i) {
            pset.insert(bd.p[i]);
            pset.insert(bd.q[i]);
        }
        const int last = static_cast<int>(trace.states.size()) - 1;
        for (int s = 0; s <= last; ++s) {
            auto v = invariant_check(trace, s);
            if (trace.states[s].transitory) {
                if (v != std::string("transitory state")) return "transitory state misclassified";
                continue;
            }
            if (v) return "invariant violated: " + *v;
            if (s % 3 != 0 && s != last) continue; // sampled complementarity check
            // Near complementarity: the forward tokens away from the deleted
            // p_1 and the paired reversed tokens away from the deleted q_N
            // hold N-1 path points each and are disjoint; the two finish
            // configurations are exact complements.
            PerfectMatching sp = near_complement(g, cyc, s);
            std::set<BoardPoint> A, B;
            for (const BoardPoint& t : trace.states[s].tokens)
                if (pset.count(t) && !(t == bd.p[1])) A.insert(t);
            for (const BoardPoint& t : matching_points(bd, sp))
                if (pset.count(t) && !(t == bd.q[bd.N])) B.insert(t);
            std::set<BoardPoint> uni = A;
            uni.insert(B.begin(), B.end());
            const size_t want = s == last ? 2 * static_cast<size_t>(bd.N)
                                          : 2 * static_cast<size_t>(bd.N) - 2;
            if (uni.size() != want ||
                (s != last && (A.size() != static_cast<size_t>(bd.N) - 1 ||
                               B.size() != static_cast<size_t>(bd.N) - 1)))
                return "paired games hold " + std::to_string(uni.size()) + " of " +
                       std::to_string(want) + " path points";
        }
    }
    return "";
}

// Shared instance suite for criteria 6 and 7.
std::vector<BipartiteGraph> canonical_suite() {
    BipartiteGraph g2 = gen_Gk(2);
    std::vector<BipartiteGraph> suite{fx::staircase5(),
                                      apply_presentation(g2, *check_monotone(g2))};
    for (int n = 3; n <= 7; ++n) suite.push_back(gen_ladder(n));
    Rng rng(601);
    for (int t = 0; t < 30; ++t) {
        std::vector<PerfectMatching> omega;
        suite.push_back(small_monotone(3 + int(rng.below(4)), rng, 36, &omega));
    }
    return suite;
}

std::string crit1() {
    BipartiteGraph g = fx::chain5();
    if (permanent_enumerate(g) != 16) return "enumeration != 16";
    if (permanent_ryser(g) != 16) return "Ryser != 16";
    ChainDegreeVector a;
    std::string err = chain_vector_of(g, a);
    if (!err.empty()) return err;
    if (chain_permanent(a) != 16) return "chain formula != 16";
    if (convex_dp_permanent(g).permanent != 16) return "convex DP != 16";
    return "";
}

std::string crit2() {
    for (int k = 2; k <= 6; ++k) {
        BipartiteGraph g = gen_Gk(k);
        BigInt want = (BigInt(1) << k) - 1;
        if (permanent_enumerate(g) != want) return "enumeration wrong at k=" + std::to_string(k);
        auto p = check_convex(g);
        if (!p) return "k-family not recognized as convex";
        if (convex_dp_permanent(apply_presentation(g, *p)).permanent != want)
            return "convex DP wrong at k=" + std::to_string(k);
    }
    return "";
}

std::string crit3() {
    Rng rng(603);
    int done = 0;
    while (done < 200) {
        int n = 3 + int(rng.below(7));
        BipartiteGraph g = gen_random(ClassLabel::Convex, n, rng);
        BigInt a = permanent_enumerate(g);
        if (permanent_ryser(g) != a) return "Ryser disagrees on instance " + std::to_string(done);
        auto p = check_convex(g);
        if (!p) return "generated instance not convex";
        if (convex_dp_permanent(apply_presentation(g, *p)).permanent != a)
            return "convex DP disagrees on instance " + std::to_string(done);
        ++done;
    }
    return "";
}

std::string crit4() {
    TransitionGraph tg = build_transition_graph(gen_dgh_6cycle());
    if (tg.states.size() != 2) return "expected 2 states, got " + std::to_string(tg.states.size());
    if (!tg.nbr[0].empty() || !tg.nbr[1].empty()) return "expected 0 edges";
    return "";
}

std::string crit5() {
    Rng rng(605);
    int done = 0;
    while (done < 100) {
        int n = 3 + int(rng.below(5));
        BipartiteGraph raw = gen_random(ClassLabel::ChordalBipartite, n, rng);
        BipartiteGraph g = apply_presentation(raw, doubly_lexical_order(raw));
        if (gamma_free_check(g)) return "doubly lexical presentation not Gamma-free";
        std::vector<PerfectMatching> omega;
        BigInt per = permanent_enumerate(g, 12, &omega);
        if (per < 2 || per > 200) continue; // keep the all-pairs check affordable
        TransitionGraph tg = build_transition_graph(g);
        auto [conn, diam] = ergodicity_check(tg);
        if (!conn) return "disconnected at instance " + std::to_string(done);
        if (diam > n) return "diameter " + std::to_string(diam) + " > n=" + std::to_string(n);
        for (const PerfectMatching& x : omega)
            for (const PerfectMatching& y : omega) {
                auto mvs = greedy_connect(g, x, y);
                if (static_cast<int>(mvs.size()) > n) return "greedy path longer than n";
                PerfectMatching cur = x;
                for (const SwitchMove& mv : mvs) cur = apply_switch(g, cur, mv);
                if (cur != y) return "greedy path misses target";
            }
        ++done;
    }
    return "";
}

std::string crit6() {
    for (const BipartiteGraph& g : canonical_suite()) {
        std::vector<PerfectMatching> omega;
        permanent_enumerate(g, 12, &omega);
        const int n = g.n;
        std::set<std::vector<int>> seen_cycles;
        for (size_t a = 0; a < omega.size(); ++a)
            for (size_t b = 0; b < omega.size(); ++b) {
                CanonicalPath cp = build_canonical_path(g, omega[a], omega[b]);
                if (cp.states.front() != omega[a] || cp.states.back() != omega[b])
                    return "endpoint mismatch";
                if (cp.length() > n * n + 4 * n)
                    return "length " + std::to_string(cp.length()) + " exceeds bound at n=" +
                           std::to_string(n);
                for (size_t s = 0; s + 1 < cp.states.size(); ++s)
                    if (apply_switch(g, cp.states[s], cp.moves[s]) != cp.states[s + 1])
                        return "illegal or misrecorded switch";
                std::string err = check_pair_traces(g, omega[a], omega[b], &seen_cycles);
                if (!err.empty()) return err;
            }
    }
    return "";
}

std::string crit7() {
    for (const BipartiteGraph& g : canonical_suite()) {
        CongestionReport rep = congestion(g);
        if (rep.rho > rep.bound_rho) return "congestion exceeds 4n^6";
        if (static_cast<double>(rep.paths_per_transition_max) > rep.bound_paths)
            return "paths per transition exceed 8n^2|Omega|";
    }
    return "";
}

std::string crit8() {
    Rng rng(607);
    double eps = 1.0 / std::exp(1.0);
    int done = 0;
    while (done < 40) {
        int n = 3 + int(rng.below(5));
        BipartiteGraph g = gen_random(ClassLabel::Monotone, n, rng);
        BigInt per = permanent_enumerate(g);
        if (per < 2 || per > 400) continue; // keep the eigensolve affordable
        MixingReport rep = exact_mixing(build_transition_graph(g), {eps});
        if (static_cast<double>(rep.t_mix.at(eps)) > theorem_mixing_bound(n, eps))
            return "t_mix exceeds closed-form bound at n=" + std::to_string(n);
        ++done;
    }
    return "";
}

std::string crit9() {
    double prev = -1;
    for (int k = 2; k <= 7; ++k) {
        MixingReport rep = exact_mixing(build_transition_graph(gen_Gk(k)), {});
        if (prev >= 0 && !(rep.spectral_gap < prev / 1.5))
            return "gap not shrinking fast enough at k=" + std::to_string(k);
        prev = rep.spectral_gap;
    }
    return "";
}

std::string crit10() {
    // (a) the published 11-node example
    RangeGraph ex = build_range_graph(build_range(fx::range11()));
    if (ex.verts.size() != 22) return "example graph has " + std::to_string(ex.verts.size()) +
                                      " vertices, expected 22";
    {
        std::vector<int> comp(ex.verts.size(), -1);
        int nc = 0;
        for (size_t v = 0; v < ex.verts.size(); ++v) {
            if (comp[v] >= 0) continue;
            std::vector<int> stack{static_cast<int>(v)};
            comp[v] = nc;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : ex.adj[u])
                    if (comp[w] < 0) {
                        comp[w] = nc;
                        stack.push_back(w);
                    }
            }
            ++nc;
        }
        if (nc != 2) return "example graph has " + std::to_string(nc) + " components";
        std::vector<int> sz(nc, 0);
        for (int c : comp) ++sz[c];
        if (std::min(sz[0], sz[1]) != 8 || std::max(sz[0], sz[1]) != 14)
            return "example components are not 14 + 8";
    }

    // (b) the worst-case family: claimed T_1 = 1, T_k = T_{k-1} + 2(k-1) and
    // vertex count k(k-1) + 2
    std::ostringstream lam;
    long long claimed_t = 1;
    for (int k = 1; k <= 12; ++k) {
        if (k > 1) claimed_t += 2 * (k - 1);
        RangeGraph g = build_range_graph(gen_lambda(k));
        long long edges = 0;
        for (const auto& a : g.adj) edges += static_cast<long long>(a.size());
        edges /= 2;
        long long verts = static_cast<long long>(g.verts.size());
        long long path_edges = static_cast<long long>(climb(gen_lambda(k)).size()) - 1;
        long long claimed_v = static_cast<long long>(k) * (k - 1) + 2;
        if (edges != claimed_t || verts != claimed_v || path_edges != edges) {
            if (lam.tellp() > 0) lam << "; ";
            lam << "k=" << k << " measured V=" << verts << " E=" << edges
                << " path=" << path_edges << " vs claimed V=" << claimed_v
                << " T=" << claimed_t;
        }
    }
    if (lam.tellp() > 0) return "worst-case family counts disagree: " + lam.str();

    // (c) random ranges: vertex bound and degree structure
    Rng rng(610);
    for (int t = 0; t < 1000; ++t) {
        int n = 3 + int(rng.below(13));
        std::vector<long long> h(n);
        h[0] = h[n - 1] = 0;
        for (int i = 1; i + 1 < n; ++i) h[i] = 1 + int(rng.below(30));
        RangeGraph g = build_range_graph(build_range(h));
        if (static_cast<double>(g.verts.size()) > double(n - 1) * (n - 1) / 4.0 + 1.0 + 1e-9)
            return "vertex bound violated";
        for (size_t v = 0; v < g.verts.size(); ++v) {
            size_t want = (static_cast<int>(v) == g.start || static_cast<int>(v) == g.summit)
                              ? 1
                              : 2;
            if (g.adj[v].size() != want) return "degree structure violated";
        }
    }
    return "";
}

std::string crit11() {
    const long long draws = 100000;
    Rng rng(611);
    auto test_counts = [&](const std::vector<long long>& counts,
                           const char* which) -> std::string {
        double p = oracle::chi_square_uniform_p(counts);
        if (p <= 0.001) {
            std::ostringstream os;
            os << which << " sampler chi-square p=" << p;
            return os.str();
        }
        return "";
    };
    for (int inst = 0; inst < 10; ++inst) {
        bool chain_inst = inst < 5;
        BipartiteGraph g;
        std::optional<Presentation> p;
        for (;;) {
            int n = 3 + int(rng.below(4));
            BipartiteGraph cand =
                gen_random(chain_inst ? ClassLabel::Chain : ClassLabel::Convex, n, rng);
            BigInt per = permanent_enumerate(cand);
            if (per < 2 || per > 300) continue;
            p = chain_inst ? check_chain(cand) : check_convex(cand);
            if (!p) continue;
            g = apply_presentation(cand, *p);
            break;
        }
        std::vector<PerfectMatching> omega;
        permanent_enumerate(g, 12, &omega);
        std::map<std::vector<int>, int> index;
        for (size_t i = 0; i < omega.size(); ++i) index[omega[i].pi] = static_cast<int>(i);

        if (chain_inst) {
            ChainDegreeVector a;
            std::string err = chain_vector_of(g, a);
            if (!err.empty()) return err;
            std::vector<long long> counts(omega.size(), 0);
            for (long long d = 0; d < draws; ++d) {
                auto it = index.find(chain_sample(a, rng).pi);
                if (it == index.end()) return "chain sampler produced a non-matching";
                ++counts[it->second];
            }
            err = test_counts(counts, "chain");
            if (!err.empty()) return err;
        }
        auto pres = check_convex(g);
        if (!pres) return "instance lost convexity";
        ConvexDpResult dp = convex_dp_permanent(apply_presentation(g, *pres), true);
        std::map<std::vector<int>, int> pindex;
        {
            std::vector<PerfectMatching> pomega;
            permanent_enumerate(apply_presentation(g, *pres), 12, &pomega);
            for (size_t i = 0; i < pomega.size(); ++i) pindex[pomega[i].pi] = static_cast<int>(i);
        }
        std::vector<long long> counts(pindex.size(), 0);
        for (long long d = 0; d < draws; ++d) {
            auto it = pindex.find(convex_dp_sample(dp, rng).pi);
            if (it == pindex.end()) return "DP sampler produced a non-matching";
            ++counts[it->second];
        }
        std::string err = test_counts(counts, "DP");
        if (!err.empty()) return err;
    }
    return "";
}

std::string crit12() {
    Rng rng(613);
    int done = 0;
    while (done < 500) { // column degree <= 2 * (row degree max) - 1
        BipartiteGraph g = gen_random(ClassLabel::Convex, 4 + int(rng.below(5)), rng);
        if (!find_perfect_matching(g)) continue;
        auto [r, c] = degree_stats(g);
        if (c > 2 * r - 1) return "column-degree bound violated";
        ++done;
    }
    for (int t = 0; t < 300; ++t) { // column-interval monotonicity
        BipartiteGraph g = gen_random(ClassLabel::Monotone, 3 + int(rng.below(5)), rng);
        if (monotone_violation(g)) return "generated instance not in staircase form";
        if (!verify_monotone_column_property(g)) return "column monotonicity violated";
    }
    for (int t = 0; t < 300; ++t) { // diagonal matching <=> any matching
        BipartiteGraph g = gen_random(ClassLabel::Monotone, 3 + int(rng.below(5)), rng);
        if (diagonal_matching_exists(g) != find_perfect_matching(g).has_value())
            return "diagonal-matching equivalence violated";
    }
    for (int t = 0; t < 300; ++t) { // spanning band subgraph <=> Hamilton cycle
        BipartiteGraph g = gen_random(ClassLabel::Monotone, 3 + int(rng.below(5)), rng);
        if (has_spanning_ladder(g) != oracle::hamilton_cycle_exists(g))
            return "spanning-band / Hamiltonicity equivalence violated";
    }
    return "";
}

std::string crit13() {
    Rng gen_rng(617);
    std::vector<PerfectMatching> omega;
    BipartiteGraph g = small_monotone(6, gen_rng, 12, &omega);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < omega.size(); ++i) index[omega[i].pi] = static_cast<int>(i);
    PerfectMatching start = *find_perfect_matching(g);
    const long long runs = 10000, steps = 1000000;
    std::vector<long long> counts(omega.size(), 0);
    Rng rng(619);
    for (long long t = 0; t < runs; ++t) {
        PerfectMatching end = run(g, start, steps, rng);
        auto it = index.find(end.pi);
        if (it == index.end()) return "chain left the state space";
        ++counts[it->second];
    }
    double tv = 0;
    for (long long c : counts)
        tv += std::abs(static_cast<double>(c) / runs - 1.0 / double(omega.size()));
    tv /= 2;
    std::ostringstream os;
    os << "empirical TV " << tv << " over " << omega.size() << " states";
    if (tv >= 0.02) return os.str() + " (threshold 0.02)";
    return "";
}

} // namespace

int main() {
    criterion(1, "chain-formula instance counted four ways equals 16", crit1);
    criterion(2, "hard-family permanents equal 2^k - 1 for k = 2..6", crit2);
    criterion(3, "enumeration, Ryser and convex DP agree on 200 random convex instances", crit3);
    criterion(4, "disconnected 6-cycle instance: 2 isolated states", crit4);
    criterion(5, "chordal bipartite ergodicity, diameter and greedy paths within n", crit5);
    criterion(6, "canonical paths: legality, endpoints, invariant, coverage, length bound", crit6);
    criterion(7, "congestion within 4n^6 and path counts within 8n^2|Omega|", crit7);
    criterion(8, "exact mixing time below the closed-form bound on staircase instances", crit8);
    criterion(9, "spectral gap of the hard family shrinks geometrically for k = 2..7", crit9);
    criterion(10, "mountain climbing: worked example, worst-case family, random ranges", crit10);
    criterion(11, "both exact samplers pass chi-square uniformity at p > 0.001", crit11);
    criterion(12, "structural lemmas hold on randomized instance suites", crit12);
    criterion(13, "empirical chain distribution within TV 0.02 of uniform", crit13);
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 13 criteria passed" << std::endl;
    return 0;
}
