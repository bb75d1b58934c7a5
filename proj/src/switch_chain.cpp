#include "pm/switch_chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include <Eigen/Dense>

#include "pm/exact_count.hpp"
#include "pm/recognizers.hpp"

namespace pm {

PerfectMatching apply_switch(const BipartiteGraph& g, const PerfectMatching& m, const SwitchMove& mv) {
    require(mv.i != mv.j, Err::BadInput, "switch needs distinct rows");
    require(g.edge(mv.i, m.pi[mv.j]) && g.edge(mv.j, m.pi[mv.i]), Err::BadInput,
            "switch edges not present");
    PerfectMatching out = m;
    std::swap(out.pi[mv.i], out.pi[mv.j]);
    return out;
}

PerfectMatching step(const BipartiteGraph& g, const PerfectMatching& m, Rng& rng) {
    const int n = g.n;
    // One draw decides the ordered pair (i, j) among the n^2 outcomes.
    uint64_t pair = rng.below(uint64_t(n) * n);
    int i = static_cast<int>(pair / n);
    int j = static_cast<int>(pair % n);
    if (i == j || !g.edge(i, m.pi[j]) || !g.edge(j, m.pi[i])) return m;
    PerfectMatching out = m;
    std::swap(out.pi[i], out.pi[j]);
    return out;
}

PerfectMatching run(const BipartiteGraph& g, const PerfectMatching& m0, uint64_t t_max, Rng& rng) {
    const int n = g.n;
    // Flat adjacency byte matrix keeps the inner loop tight.
    std::vector<unsigned char> adj(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) adj[size_t(i) * n + j] = g.edge(i, j);
    std::vector<int> pi = m0.pi;
    const uint64_t nn = uint64_t(n) * n;
    for (uint64_t t = 0; t < t_max; ++t) {
        uint64_t pair = rng.below(nn);
        int i = static_cast<int>(pair / n);
        int j = static_cast<int>(pair % n);
        if (i != j && adj[size_t(i) * n + pi[j]] && adj[size_t(j) * n + pi[i]])
            std::swap(pi[i], pi[j]);
    }
    return PerfectMatching{std::move(pi)};
}

TransitionGraph build_transition_graph(const BipartiteGraph& g, int state_cap) {
    TransitionGraph tg;
    tg.n = g.n;
    permanent_enumerate(g, 20, &tg.states);
    require(static_cast<int>(tg.states.size()) <= state_cap, Err::TooLarge,
            "state space larger than cap");
    std::map<std::vector<int>, int> index;
    for (size_t k = 0; k < tg.states.size(); ++k) index[tg.states[k].pi] = static_cast<int>(k);
    tg.nbr.assign(tg.states.size(), {});
    const int n = g.n;
    for (size_t k = 0; k < tg.states.size(); ++k) {
        const auto& pi = tg.states[k].pi;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (!g.edge(i, pi[j]) || !g.edge(j, pi[i])) continue;
                auto other = pi;
                std::swap(other[i], other[j]);
                tg.nbr[k].push_back(index.at(other));
            }
        std::sort(tg.nbr[k].begin(), tg.nbr[k].end());
        tg.nbr[k].erase(std::unique(tg.nbr[k].begin(), tg.nbr[k].end()), tg.nbr[k].end());
    }
    return tg;
}

std::pair<bool, int> ergodicity_check(const TransitionGraph& tg) {
    const int N = static_cast<int>(tg.states.size());
    if (N == 0) return {true, 0};
    auto bfs = [&](int src, std::vector<int>& dist) {
        dist.assign(N, -1);
        dist[src] = 0;
        std::deque<int> q{src};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : tg.nbr[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
        }
    };
    std::vector<int> dist;
    bfs(0, dist);
    for (int d : dist)
        if (d < 0) return {false, -1};
    int diam = 0;
    for (int s = 0; s < N; ++s) {
        bfs(s, dist);
        diam = std::max(diam, *std::max_element(dist.begin(), dist.end()));
    }
    return {true, diam};
}

std::vector<SwitchMove> greedy_connect(const BipartiteGraph& g, const PerfectMatching& x,
                                       const PerfectMatching& y) {
    require(!gamma_free_check(g).has_value(), Err::NotGammaFree,
            "greedy_connect requires a Gamma-free presentation");
    require(validate_matching(g, x) && validate_matching(g, y), Err::BadInput, "invalid matchings");
    const int n = g.n;
    PerfectMatching a = x, b = y;
    std::vector<SwitchMove> front, back;
    // Fix rows left to right. At the first disagreement k, the larger of
    // pi'_k, sigma'_k moves: Gamma-freeness forces the diagonal edge of the
    // switch rectangle, so one switch aligns row k. Moves applied to the
    // y-side are emitted reversed at the end.
    for (int k = 0; k < n; ++k) {
        if (a.pi[k] == b.pi[k]) continue;
        if (a.pi[k] > b.pi[k]) {
            int l = -1;
            for (int t = k + 1; t < n; ++t)
                if (a.pi[t] == b.pi[k]) {
                    l = t;
                    break;
                }
            require(l > k, Err::Internal, "target column missing");
            a = apply_switch(g, a, SwitchMove{k, l});
            front.push_back({k, l});
        } else {
            int l = -1;
            for (int t = k + 1; t < n; ++t)
                if (b.pi[t] == a.pi[k]) {
                    l = t;
                    break;
                }
            require(l > k, Err::Internal, "target column missing");
            b = apply_switch(g, b, SwitchMove{k, l});
            back.push_back({k, l});
        }
    }
    require(a.pi == b.pi, Err::Internal, "greedy_connect did not converge");
    std::vector<SwitchMove> moves = front;
    for (auto it = back.rbegin(); it != back.rend(); ++it) moves.push_back(*it);
    return moves;
}

namespace {

double ipow(double base, long long e) {
    double mag = std::pow(std::fabs(base), static_cast<double>(e));
    return (base < 0 && (e & 1)) ? -mag : mag;
}

} // namespace

MixingReport exact_mixing(const TransitionGraph& tg, const std::vector<double>& epsilons) {
    const int N = static_cast<int>(tg.states.size());
    require(N <= 5000, Err::TooLarge, "exact mixing capped at |Omega| = 5000");
    MixingReport rep;
    if (N <= 1) {
        rep.spectral_gap = 1.0;
        for (double e : epsilons) rep.t_mix[e] = 0;
        rep.tv_curve.emplace_back(0, 0.0);
        return rep;
    }
    auto [connected, diam] = ergodicity_check(tg);
    (void)diam;
    require(connected, Err::Disconnected, "mixing undefined: chain not ergodic");

    const double pe = tg.p_edge();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
    for (int a = 0; a < N; ++a) {
        for (int b : tg.nbr[a]) P(a, b) = pe;
        P(a, a) = 1.0 - pe * static_cast<double>(tg.nbr[a].size());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
    const Eigen::VectorXd& lam = es.eigenvalues(); // ascending
    const Eigen::MatrixXd& V = es.eigenvectors();
    rep.spectral_gap = 1.0 - std::max(std::fabs(lam(N - 2)), std::fabs(lam(0)));

    std::map<long long, double> cache;
    auto delta_max = [&](long long t) {
        auto it = cache.find(t);
        if (it != cache.end()) return it->second;
        Eigen::VectorXd lt(N);
        for (int k = 0; k < N; ++k) lt(k) = ipow(lam(k), t);
        Eigen::MatrixXd Pt = V * lt.asDiagonal() * V.transpose();
        const double u = 1.0 / N;
        double worst = 0.0;
        for (int x = 0; x < N; ++x) {
            double tv = 0.0;
            for (int y = 0; y < N; ++y) tv += std::fabs(Pt(x, y) - u);
            worst = std::max(worst, 0.5 * tv);
        }
        cache[t] = worst;
        return worst;
    };

    for (double eps : epsilons) {
        if (delta_max(1) <= eps) {
            rep.t_mix[eps] = delta_max(0) <= eps ? 0 : 1;
            continue;
        }
        long long hi = 2;
        while (delta_max(hi) > eps) {
            hi *= 2;
            require(hi < (1LL << 50), Err::Internal, "mixing search overflow");
        }
        long long lo = hi / 2; // delta(lo) > eps
        while (hi - lo > 1) {
            long long mid = lo + (hi - lo) / 2;
            if (delta_max(mid) <= eps)
                hi = mid;
            else
                lo = mid;
        }
        rep.t_mix[eps] = hi;
    }
    for (const auto& [t, d] : cache) rep.tv_curve.emplace_back(t, d);
    return rep;
}

double theorem_mixing_bound(int n, double epsilon) {
    double nn = static_cast<double>(n);
    return 8.0 * std::pow(nn, 6.0) * (nn * std::log(nn) + 2.0 * std::log(1.0 / epsilon));
}

double congestion_mixing_bound(double rho, double omega_size, double epsilon) {
    return 2.0 * rho * (std::log(omega_size) + 2.0 * std::log(1.0 / epsilon));
}

} // namespace pm
