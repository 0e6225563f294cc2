#include "oracles.hh"

#include <descomp/problems.hh>
#include <descomp/sat2col.hh>

#include <gtest/gtest.h>

using namespace descomp;

TEST(Gadget, SingleClauseIsColourable)
{
    auto cnf = make_cnf(3, {{{0, true}, {1, true}, {2, true}}, {}, {}});
    auto g = build_gadget_graph(cnf);
    EXPECT_EQ(g.size(), 27u);
    EXPECT_TRUE(oracle::three_colourable_backtrack(g));
}

TEST(Gadget, ContradictoryUnitClauses)
{
    auto cnf = make_cnf(2, {{{0, true}}, {{0, false}}});
    EXPECT_FALSE(oracle::satisfiable(cnf));
    EXPECT_FALSE(oracle::three_colourable_backtrack(build_gadget_graph(cnf)));
}

TEST(Gadget, AllClausesEmpty)
{
    for (std::size_t n = 1; n <= 4; ++n)
        EXPECT_TRUE(oracle::three_colourable_backtrack(build_gadget_graph(make_cnf(n, {}))));
}

TEST(Gadget, EdgesAreSymmetricAndLoopFree)
{
    auto g = build_gadget_graph(random_cnf(4, 3));
    auto adj = oracle::adjacency(g);
    for (std::size_t u = 0; u < g.size(); ++u) {
        EXPECT_FALSE(adj[u][u]);
        for (std::size_t v = 0; v < g.size(); ++v)
            EXPECT_EQ(adj[u][v], adj[v][u]);
    }
}

TEST(Gadget, OrProperty)
{
    auto report = gadget_or_property_check();
    ASSERT_EQ(report.rows.size(), 8u);
    EXPECT_TRUE(report.passed());
    for (auto &row : report.rows) {
        bool any = row.stubs[0] || row.stubs[1] || row.stubs[2];
        EXPECT_EQ(row.extendable, any);
    }
}

TEST(Layout, ClassesAndIndices)
{
    GadgetLayout layout{3};
    EXPECT_EQ(layout.vertex_count(), 27u);
    EXPECT_EQ(layout.vertex_class(layout.truth()), VertexClass::True);
    EXPECT_EQ(layout.vertex_class(layout.literal(2, false)), VertexClass::Negative);
    EXPECT_EQ(layout.vertex_index(layout.literal(2, false)), 2u);
    EXPECT_EQ(layout.vertex_class(layout.gadget(1, 5)), VertexClass::Output);
    EXPECT_EQ(layout.vertex_index(layout.gadget(1, 5)), 1u);
}

TEST(Interpretation, IsQfp) { EXPECT_TRUE(is_qfp(sat2col_interpretation())); }

TEST(Interpretation, MatchesEmbeddedGadgetGraph)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto n = 2 + seed % 3;
        auto cnf = random_cnf(n, seed);
        auto expected = embed_gadget_graph(build_gadget_graph(cnf, EmptyClauseWiring::None), n);
        ASSERT_EQ(apply(sat2col_interpretation(), cnf), expected);
    }
}

TEST(Interpretation, ColourabilityMatchesGadgetGraph)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto n = 2 + seed % 4;
        auto cnf = random_cnf(n, 100 + seed);
        auto direct = oracle::three_colourable_backtrack(build_gadget_graph(cnf));
        auto via = oracle::three_colourable_backtrack(apply(sat2col_interpretation(), cnf));
        ASSERT_EQ(direct, via) << format_structure(cnf);
        ASSERT_EQ(direct, oracle::satisfiable(cnf)) << format_structure(cnf);
    }
}

TEST(Interpretation, SizeOneUniverse)
{
    for_each_cnf(1, [](const Structure &cnf) {
        auto out = apply(sat2col_interpretation(), cnf);
        EXPECT_EQ(out.size(), 1u);
        EXPECT_EQ(decide_3col(out), oracle::satisfiable(cnf));
    });
}

TEST(Equivalence, ExhaustiveUpToTwo)
{
    auto report = verify_equivalence(2, 0, 0);
    EXPECT_EQ(report.cases, 9u + 65u * 65u);
    EXPECT_TRUE(report.passed());
    EXPECT_LT(report.satisfiable, report.cases);
}

TEST(Vertex, Coordinates)
{
    // class Output = 10 = 1010: coordinates (1,0,1,0,i)
    EXPECT_EQ(sat2col_vertex(VertexClass::Output, 2, 3), rank_lex(Tuple{1, 0, 1, 0, 2}, 3));
    EXPECT_THROW(sat2col_vertex(VertexClass::True, 0, 1), Error);
}
