// pmatch: counting, sampling and chain analysis for structured bipartite
// graphs. See README.md for the subcommand and output contract.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pm/canonical.hpp"
#include "pm/exact_count.hpp"
#include "pm/generators.hpp"
#include "pm/graph.hpp"
#include "pm/mountain.hpp"
#include "pm/recognizers.hpp"
#include "pm/rng.hpp"
#include "pm/switch_chain.hpp"

using json = nlohmann::ordered_json;
using namespace pm;

namespace {

struct Opts {
    std::string input = "-";
    uint64_t seed = 42;
    std::string format = "json";
    int threads = 1;
    std::vector<double> eps{0.5, 1.0 / std::exp(1.0), 0.01};
    std::string method;
    uint64_t tmax = 1000000;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

BipartiteGraph load_graph(const std::string& path) {
    if (path == "-") return read_matrix(std::cin);
    std::ifstream in(path);
    if (!in) fail(Err::BadInput, "cannot open " + path);
    return read_matrix(in);
}

std::vector<std::string> read_tokens(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream f;
    if (path != "-") {
        f.open(path);
        if (!f) fail(Err::BadInput, "cannot open " + path);
        in = &f;
    }
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(*in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) toks.push_back(t);
    }
    return toks;
}

// Heights may be decimals (the algorithm is ordinal, so a common scale
// factor making everything integral changes nothing).
std::vector<long long> parse_heights(const std::vector<std::string>& toks) {
    std::vector<double> vals;
    for (const std::string& t : toks) vals.push_back(std::stod(t));
    double scale = 1;
    for (int d = 0; d < 7; ++d) {
        bool integral = true;
        for (double v : vals)
            if (std::abs(v * scale - std::llround(v * scale)) > 1e-9) integral = false;
        if (integral) break;
        scale *= 10;
    }
    std::vector<long long> h;
    for (double v : vals) h.push_back(std::llround(v * scale));
    return h;
}

std::vector<int> parse_perm(const std::string& s) {
    std::vector<int> pi;
    std::istringstream in(s);
    std::string t;
    while (std::getline(in, t, ',')) pi.push_back(std::stoi(t) - 1);
    return pi;
}

json perm_json(const PerfectMatching& m) {
    json a = json::array();
    for (int v : m.pi) a.push_back(v + 1);
    return a;
}

std::string perm_line(const PerfectMatching& m) {
    std::string s;
    for (size_t i = 0; i < m.pi.size(); ++i) s += (i ? " " : "") + std::to_string(m.pi[i] + 1);
    return s;
}

void emit(const Opts& o, const json& j) {
    if (o.format == "text") {
        for (auto& [k, v] : j.items())
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

int cmd_recognize(const Opts& o) {
    BipartiteGraph g = load_graph(o.input);
    json j;
    j["class"] = class_name(classify(g));
    j["m"] = g.m;
    j["n"] = g.n;
    j["edges"] = g.edge_count();
    emit(o, j);
    return 0;
}

ChainDegreeVector chain_vector(const BipartiteGraph& g) {
    auto p = check_chain(g);
    require(p.has_value(), Err::BadInput, "not a chain graph");
    BipartiteGraph h = apply_presentation(g, *p);
    ChainDegreeVector a;
    for (int i = 0; i < h.m; ++i) a.a.push_back(h.row_degree(i));
    return a;
}

BipartiteGraph convex_presented(const BipartiteGraph& g) {
    auto p = check_convex(g);
    require(p.has_value(), Err::NotConvexPresentation, "not a convex graph");
    return apply_presentation(g, *p);
}

int cmd_count(const Opts& o) {
    BipartiteGraph g = load_graph(o.input);
    std::string method = o.method.empty() ? "enumerate" : o.method;
    double t0 = now_seconds();
    BigInt value;
    if (method == "enumerate")
        value = permanent_enumerate(g);
    else if (method == "ryser")
        value = permanent_ryser(g);
    else if (method == "chain")
        value = chain_permanent(chain_vector(g));
    else if (method == "convex-dp")
        value = convex_dp_permanent(convex_presented(g)).permanent;
    else
        fail(Err::BadInput, "unknown method " + method);
    json j;
    j["method"] = method;
    j["permanent"] = value.str();
    j["seconds"] = now_seconds() - t0;
    emit(o, j);
    return 0;
}

// Samples are drawn on the presented graph; translate back to the caller's
// row and column labels so each draw is a matching of the input as given.
PerfectMatching unpresent(const Presentation& p, const PerfectMatching& m) {
    std::vector<int> pi(m.pi.size());
    for (size_t r = 0; r < m.pi.size(); ++r) pi[p.row_order[r]] = p.col_order[m.pi[r]];
    return PerfectMatching{std::move(pi)};
}

int cmd_sample(const Opts& o, int count) {
    BipartiteGraph g = load_graph(o.input);
    Rng rng(o.seed);
    std::string method = o.method.empty() ? "convex-dp" : o.method;
    std::vector<PerfectMatching> out;
    if (method == "chain") {
        auto p = check_chain(g);
        require(p.has_value(), Err::BadInput, "not a chain graph");
        BipartiteGraph h = apply_presentation(g, *p);
        ChainDegreeVector a;
        for (int i = 0; i < h.m; ++i) a.a.push_back(h.row_degree(i));
        for (int i = 0; i < count; ++i) out.push_back(unpresent(*p, chain_sample(a, rng)));
    } else if (method == "convex-dp") {
        auto p = check_convex(g);
        require(p.has_value(), Err::NotConvexPresentation, "not a convex graph");
        auto dp = convex_dp_permanent(apply_presentation(g, *p), true);
        for (int i = 0; i < count; ++i) out.push_back(unpresent(*p, convex_dp_sample(dp, rng)));
    } else {
        fail(Err::BadInput, "sample supports methods chain and convex-dp");
    }
    if (o.format == "json") {
        json j;
        j["method"] = method;
        j["samples"] = json::array();
        for (const auto& m : out) j["samples"].push_back(perm_json(m));
        emit(o, j);
    } else {
        for (const auto& m : out) std::cout << perm_line(m) << "\n";
    }
    return 0;
}

int cmd_run(const Opts& o) {
    BipartiteGraph g = load_graph(o.input);
    auto m0 = find_perfect_matching(g);
    require(m0.has_value(), Err::NoPerfectMatching, "graph has no perfect matching");
    Rng rng(o.seed);
    PerfectMatching m = run(g, *m0, o.tmax, rng);
    if (o.format == "json") {
        json j;
        j["steps"] = o.tmax;
        j["pi"] = perm_json(m);
        emit(o, j);
    } else {
        std::cout << perm_line(m) << "\n";
    }
    return 0;
}

int cmd_mix(const Opts& o) {
    BipartiteGraph g = load_graph(o.input);
    TransitionGraph tg = build_transition_graph(g);
    MixingReport rep = exact_mixing(tg, o.eps);
    if (o.format == "csv") {
        std::cout << "t,delta\n";
        for (auto [t, d] : rep.tv_curve) std::cout << t << "," << d << "\n";
    } else {
        json j;
        j["states"] = tg.states.size();
        j["gap"] = rep.spectral_gap;
        json tm;
        for (auto [e, t] : rep.t_mix) tm[std::to_string(e)] = t;
        j["tmix"] = tm;
        emit(o, j);
    }
    return 0;
}

int cmd_canon(const Opts& o, const std::string& xs, const std::string& ys) {
    BipartiteGraph g = load_graph(o.input);
    std::vector<PerfectMatching> omega;
    permanent_enumerate(g, 12, &omega);
    require(!omega.empty(), Err::NoPerfectMatching, "graph has no perfect matching");
    PerfectMatching x = xs.empty() ? omega.front() : PerfectMatching{parse_perm(xs)};
    PerfectMatching y = ys.empty() ? omega.back() : PerfectMatching{parse_perm(ys)};
    CanonicalPath cp = build_canonical_path(g, x, y);
    for (const SwitchMove& mv : cp.moves) std::cout << mv.i + 1 << " " << mv.j + 1 << "\n";
    json j;
    j["cycles"] = cp.cycle_start.size();
    j["length"] = cp.length();
    j["invariant_ok"] = true; // construction verifies every state internally
    emit(o, j);
    return 0;
}

int cmd_congestion(const Opts& o) {
    BipartiteGraph g = load_graph(o.input);
    CongestionReport rep = congestion(g);
    json j;
    j["rho"] = rep.rho;
    j["bound_4n6"] = rep.bound_rho;
    j["max_load"] = rep.max_load;
    j["paths_per_transition_max"] = rep.paths_per_transition_max;
    j["bound_8n2_omega"] = rep.bound_paths;
    j["omega"] = rep.omega;
    j["max_path_length"] = rep.max_path_length;
    emit(o, j);
    return 0;
}

int cmd_climb(const Opts& o) {
    Range r = build_range(parse_heights(read_tokens(o.input)));
    auto events = climb(r);
    if (o.format == "json") {
        json j;
        j["summit"] = r.s + 1;
        j["events"] = json::array();
        for (const ClimbEvent& e : events)
            j["events"].push_back({{"ax", e.ax}, {"ay", e.ay}, {"bx", e.bx}, {"by", e.by}});
        emit(o, j);
    } else {
        std::cout << "event,ax,ay,bx,by\n";
        for (size_t i = 0; i < events.size(); ++i)
            std::cout << i << "," << events[i].ax << "," << events[i].ay << "," << events[i].bx
                      << "," << events[i].by << "\n";
    }
    return 0;
}

int cmd_gen(const Opts& o, const std::string& family, int n, int k, double density,
            const std::string& out_path) {
    Rng rng(o.seed);
    BipartiteGraph g;
    std::ostringstream hdr;
    hdr << "family=" << family;
    if (family == "dgh") {
        g = gen_dgh_6cycle();
    } else if (family == "gk") {
        g = gen_Gk(k);
        hdr << " k=" << k;
    } else if (family == "ladder") {
        g = gen_ladder(n);
        hdr << " n=" << n;
    } else if (family == "triangular") {
        g = gen_lower_triangular(n);
        hdr << " n=" << n;
    } else {
        ClassLabel cls;
        if (family == "chain")
            cls = ClassLabel::Chain;
        else if (family == "monotone")
            cls = ClassLabel::Monotone;
        else if (family == "biconvex")
            cls = ClassLabel::Biconvex;
        else if (family == "convex")
            cls = ClassLabel::Convex;
        else if (family == "chordal")
            cls = ClassLabel::ChordalBipartite;
        else if (family == "other")
            cls = ClassLabel::OtherBipartite;
        else
            fail(Err::BadInput, "unknown family " + family);
        g = gen_random(cls, n, rng, density);
        hdr << " n=" << n << " seed=" << o.seed << " density=" << density;
    }
    if (out_path == "-") {
        write_matrix(std::cout, g, hdr.str());
    } else {
        std::ofstream out(out_path);
        if (!out) fail(Err::BadInput, "cannot open " + out_path);
        write_matrix(out, g, hdr.str());
    }
    return 0;
}

int cmd_bench(const Opts& o, const std::vector<int>& sizes, int samples) {
    std::cout << "method,n,seconds_per_sample\n";
    Rng rng(o.seed);
    for (int n : sizes) {
        // A band instance is both a valid chain-DP target and (for small n)
        // cheap to enumerate, keeping the comparison apples-to-apples.
        ChainDegreeVector a;
        for (int i = 1; i <= n; ++i) a.a.push_back(std::min(n, i + 1));
        double t0 = now_seconds();
        for (int s = 0; s < samples; ++s) chain_sample(a, rng);
        std::cout << "chain," << n << "," << (now_seconds() - t0) / samples << "\n";

        BipartiteGraph g = gen_ladder(n);
        auto dp = convex_dp_permanent(g, true);
        t0 = now_seconds();
        for (int s = 0; s < samples; ++s) convex_dp_sample(dp, rng);
        std::cout << "convex-dp," << n << "," << (now_seconds() - t0) / samples << "\n";

        if (n <= 16) {
            PerfectMatching m0 = *find_perfect_matching(g);
            uint64_t steps = o.tmax;
            t0 = now_seconds();
            for (int s = 0; s < std::min(samples, 20); ++s) m0 = run(g, m0, steps, rng);
            std::cout << "switch-run," << n << ","
                      << (now_seconds() - t0) / std::min(samples, 20) << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect-matching counting, sampling and switch-chain analysis"};
    app.require_subcommand(1);
    app.fallthrough(); // allow the global flags after the subcommand too
    Opts o;
    app.add_option("--seed", o.seed, "RNG seed (default 42)");
    app.add_option("--format", o.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", o.threads, "worker threads (advisory)");
    app.add_option("--eps", o.eps, "epsilon list for mixing times")->delimiter(',');
    app.add_option("--method", o.method, "enumerate|ryser|chain|convex-dp");
    app.add_option("--tmax", o.tmax, "chain steps");

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "matrix file, or - for stdin");
    };
    CLI::App* rec = app.add_subcommand("recognize", "classify a graph");
    add_input(rec);
    CLI::App* cnt = app.add_subcommand("count", "exact permanent");
    add_input(cnt);
    CLI::App* smp = app.add_subcommand("sample", "uniform matchings");
    add_input(smp);
    int n_samples = 1;
    smp->add_option("--samples", n_samples, "number of draws");
    CLI::App* runc = app.add_subcommand("run", "simulate the switch chain");
    add_input(runc);
    CLI::App* mix = app.add_subcommand("mix", "exact spectral gap and mixing time");
    add_input(mix);
    CLI::App* can = app.add_subcommand("canon", "canonical path between two matchings");
    add_input(can);
    std::string xs, ys;
    can->add_option("--x", xs, "start matching, 1-based columns, comma separated");
    can->add_option("--y", ys, "end matching, 1-based columns, comma separated");
    CLI::App* cong = app.add_subcommand("congestion", "exact congestion of the path family");
    add_input(cong);
    CLI::App* clm = app.add_subcommand("climb", "parallel climbers event path");
    add_input(clm);
    CLI::App* gn = app.add_subcommand("gen", "generate an instance");
    std::string family = "monotone", out_path = "-";
    int gn_n = 6, gn_k = 3;
    double density = 0.5;
    gn->add_option("--family", family, "dgh|gk|ladder|triangular|chain|monotone|biconvex|convex|chordal|other");
    gn->add_option("--n", gn_n, "size");
    gn->add_option("--k", gn_k, "family parameter k");
    gn->add_option("--density", density, "edge/interval density in (0,1]");
    gn->add_option("--out", out_path, "output file, - for stdout");
    CLI::App* bch = app.add_subcommand("bench", "per-sample cost comparison");
    std::vector<int> sizes{50, 100, 200};
    int samples = 1000;
    bch->add_option("--sizes", sizes, "instance sizes")->delimiter(',');
    bch->add_option("--samples", samples, "draws per method");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (rec->parsed()) return cmd_recognize(o);
        if (cnt->parsed()) return cmd_count(o);
        if (smp->parsed()) return cmd_sample(o, n_samples);
        if (runc->parsed()) return cmd_run(o);
        if (mix->parsed()) return cmd_mix(o);
        if (can->parsed()) return cmd_canon(o, xs, ys);
        if (cong->parsed()) return cmd_congestion(o);
        if (clm->parsed()) return cmd_climb(o);
        if (gn->parsed()) return cmd_gen(o, family, gn_n, gn_k, density, out_path);
        if (bch->parsed()) return cmd_bench(o, sizes, samples);
    } catch (const Error& e) {
        json j;
        j["error"] = e.code_name();
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = "Internal";
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    return 2;
}
