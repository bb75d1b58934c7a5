#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pm/generators.hpp"
#include "pm/recognizers.hpp"
#include "pm/rng.hpp"

using namespace pm;

namespace {

BipartiteGraph random_matrix(int m, int n, Rng& rng, double density = 0.5) {
    BipartiteGraph g;
    g.m = m;
    g.n = n;
    g.allow_isolated = true;
    g.adj.assign(m, Bitset(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (rng.unit() < density) g.adj[i].set(j);
    return g;
}

bool doubly_lexical_holds(const BipartiteGraph& g) {
    // Later rows/columns more significant: compare two rows (or columns) by
    // scanning from the last column (row) backwards.
    auto row_leq = [&](int a, int b) {
        for (int j = g.n - 1; j >= 0; --j)
            if (g.edge(a, j) != g.edge(b, j)) return g.edge(b, j);
        return true;
    };
    auto col_leq = [&](int a, int b) {
        for (int i = g.m - 1; i >= 0; --i)
            if (g.edge(i, a) != g.edge(i, b)) return g.edge(i, b);
        return true;
    };
    for (int i = 0; i + 1 < g.m; ++i)
        if (!row_leq(i, i + 1)) return false;
    for (int j = 0; j + 1 < g.n; ++j)
        if (!col_leq(j, j + 1)) return false;
    return true;
}

} // namespace

TEST_CASE("gamma witness on the defining 2x2 matrix") {
    auto w = gamma_free_check(from_matrix({"11", "10"}));
    REQUIRE(w.has_value());
    CHECK(w->shape == SubmatrixWitness::Shape::Gamma);
    CHECK(w->row_i == 0);
    CHECK(w->row_j == 1);
    CHECK(w->col_k == 0);
    CHECK(w->col_l == 1);
}

TEST_CASE("staircase and identity matrices are gamma-free as presented") {
    CHECK_FALSE(gamma_free_check(fx::staircase5()).has_value());
    CHECK_FALSE(gamma_free_check(from_matrix({"100", "010", "001"})).has_value());
}

TEST_CASE("doubly lexical order verifies on random matrices") {
    Rng rng(23);
    for (int t = 0; t < 100; ++t) {
        int m = 2 + int(rng.below(7)), n = 2 + int(rng.below(7));
        BipartiteGraph g = random_matrix(m, n, rng);
        Presentation p = doubly_lexical_order(g);
        CHECK(doubly_lexical_holds(apply_presentation(g, p)));
    }
}

TEST_CASE("the 6-cycle is doubly-lexically orderable but not gamma-free") {
    BipartiteGraph g = gen_dgh_6cycle();
    Presentation p = doubly_lexical_order(g);
    BipartiteGraph h = apply_presentation(g, p);
    CHECK(doubly_lexical_holds(h));
    CHECK(gamma_free_check(h).has_value());
    CHECK_FALSE(is_chordal_bipartite(g));
}

TEST_CASE("chordal bipartite agrees with chordless-cycle search") {
    CHECK(is_chordal_bipartite(fx::staircase5()));
    Rng rng(29);
    // Exhaustive over all 2x2 and 3x3 matrices, then a random 4..6 suite.
    for (int n = 2; n <= 3; ++n)
        for (unsigned bits = 0; bits < (1u << (n * n)); ++bits) {
            BipartiteGraph g;
            g.m = g.n = n;
            g.allow_isolated = true;
            g.adj.assign(n, Bitset(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (bits >> (i * n + j) & 1u) g.adj[i].set(j);
            CHECK(is_chordal_bipartite(g) == !oracle::has_long_chordless_cycle(g));
        }
    for (int t = 0; t < 300; ++t) {
        int n = 4 + int(rng.below(3));
        BipartiteGraph g = random_matrix(n, n, rng, 0.3 + 0.4 * rng.unit());
        CHECK(is_chordal_bipartite(g) == !oracle::has_long_chordless_cycle(g));
    }
}

TEST_CASE("convex/biconvex recognition on the worked instances") {
    BipartiteGraph g = fx::convex_not_biconvex4();
    auto conv = check_convex(g);
    REQUIRE(conv.has_value());
    CHECK(oracle::rows_are_intervals(apply_presentation(g, *conv)));
    CHECK_FALSE(check_biconvex(g).has_value());

    BipartiteGraph id = from_matrix({"100", "010", "001"});
    CHECK(check_convex(id).has_value());
    CHECK(check_biconvex(id).has_value());

    auto bi = check_biconvex(fx::armchair5());
    REQUIRE(bi.has_value());
    CHECK(oracle::rows_and_cols_are_intervals(apply_presentation(fx::armchair5(), *bi)));
}

TEST_CASE("convex/biconvex agree with factorial search on random matrices") {
    Rng rng(31);
    for (int t = 0; t < 60; ++t) {
        int m = 2 + int(rng.below(4)), n = 2 + int(rng.below(4));
        BipartiteGraph g = random_matrix(m, n, rng, 0.25 + 0.5 * rng.unit());
        auto conv = check_convex(g);
        CHECK(conv.has_value() == oracle::convex_by_search(g));
        if (conv) CHECK(oracle::rows_are_intervals(apply_presentation(g, *conv)));
        auto bi = check_biconvex(g);
        CHECK(bi.has_value() == oracle::biconvex_by_search(g));
        if (bi) CHECK(oracle::rows_and_cols_are_intervals(apply_presentation(g, *bi)));
    }
}

TEST_CASE("monotone recognition") {
    auto p = check_monotone(fx::staircase5());
    REQUIRE(p.has_value());
    CHECK_FALSE(monotone_violation(apply_presentation(fx::staircase5(), *p)).has_value());
    CHECK_FALSE(check_monotone(fx::armchair5()).has_value());
    CHECK(check_monotone(gen_Gk(2)).has_value());
    CHECK_FALSE(check_monotone(gen_Gk(3)).has_value());
}

TEST_CASE("monotone recognition agrees with staircase search on random matrices") {
    Rng rng(37);
    for (int t = 0; t < 60; ++t) {
        int m = 2 + int(rng.below(4)), n = 2 + int(rng.below(4));
        BipartiteGraph g = random_matrix(m, n, rng, 0.25 + 0.5 * rng.unit());
        auto p = check_monotone(g);
        CHECK(p.has_value() == oracle::monotone_by_search(g));
        if (p) CHECK(oracle::is_staircase(apply_presentation(g, *p)));
    }
}

TEST_CASE("chain recognition") {
    auto p = check_chain(fx::chain5());
    CHECK(p.has_value());
    CHECK_FALSE(check_chain(fx::staircase5()).has_value()); // no all-ones column
    CHECK_FALSE(check_chain(from_matrix({"10", "01"})).has_value()); // the 2K2 itself
    CHECK(check_chain(from_matrix({"111"}, true)).has_value());
    CHECK(check_chain(from_matrix({"1", "1", "1"}, true)).has_value());
}

TEST_CASE("classify picks the most specific label") {
    CHECK(classify(fx::chain5()) == ClassLabel::Chain);
    CHECK(classify(fx::staircase5()) == ClassLabel::Monotone);
    CHECK(classify(gen_Gk(4)) == ClassLabel::Biconvex);
    CHECK(classify(fx::convex_not_biconvex4()) == ClassLabel::Convex);
    CHECK(classify(gen_dgh_6cycle()) == ClassLabel::OtherBipartite);
}

TEST_CASE("recognizer hierarchy is downward closed") {
    Rng rng(41);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + int(rng.below(5));
        BipartiteGraph g = random_matrix(n, n, rng, 0.2 + 0.6 * rng.unit());
        bool chain = check_chain(g).has_value();
        bool mono = check_monotone(g).has_value();
        bool bi = check_biconvex(g).has_value();
        bool conv = check_convex(g).has_value();
        bool cb = is_chordal_bipartite(g);
        if (chain) CHECK(mono);
        if (mono) CHECK(bi);
        if (bi) CHECK(conv);
        if (conv) CHECK(cb);
    }
}

TEST_CASE("verified staircases have the column staircase property too") {
    CHECK(verify_monotone_column_property(fx::staircase5()));
    CHECK(verify_monotone_column_property(from_matrix({"100", "010", "001"})));
    Rng rng(43);
    for (int t = 0; t < 300; ++t) {
        BipartiteGraph g = gen_random(ClassLabel::Monotone, 3 + int(rng.below(6)), rng);
        REQUIRE_FALSE(monotone_violation(g).has_value());
        CHECK(verify_monotone_column_property(g));
    }
}
