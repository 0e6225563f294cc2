#include "oracles.hh"

#include <descomp/evaluator.hh>
#include <descomp/problems.hh>

#include <gtest/gtest.h>

using namespace descomp;

namespace
{
    auto graph(std::size_t n, std::vector<Tuple> edges) -> Structure
    {
        return Structure(graph_vocabulary(), n, {{"E", std::move(edges)}});
    }

    auto altgraph(std::size_t n, std::vector<Tuple> edges, std::vector<Tuple> universal) -> Structure
    {
        return Structure(altgraph_vocabulary(), n, {{"E", std::move(edges)}, {"U", std::move(universal)}});
    }
}

TEST(Reach, Examples)
{
    EXPECT_TRUE(decide_reach(path_graph(3)));
    EXPECT_FALSE(decide_reach(graph(2, {})));
    EXPECT_TRUE(decide_reach(graph(1, {})));
}

TEST(Reachd, Examples)
{
    EXPECT_TRUE(decide_reachd(path_graph(3)));
    EXPECT_FALSE(decide_reachd(graph(3, {{0, 1}, {1, 2}, {0, 2}})));
    EXPECT_FALSE(decide_reachd(graph(3, {{0, 1}, {1, 0}})));
}

TEST(Reacha, Examples)
{
    // universal min with successors 1 and 2; only 1 reaches max = 3
    EXPECT_FALSE(decide_reacha(altgraph(4, {{0, 1}, {0, 2}, {1, 3}}, {{0}})));
    EXPECT_TRUE(decide_reacha(altgraph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {{0}})));
    EXPECT_TRUE(decide_reacha(altgraph(4, {{0, 1}, {0, 2}, {1, 3}}, {})));
    EXPECT_TRUE(decide_reacha(altgraph(1, {}, {})));
    // a universal vertex without successors is losing
    EXPECT_FALSE(decide_reacha(altgraph(3, {{0, 1}}, {{1}})));
}

TEST(Reacha, AllExistentialIsReach)
{
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        auto n = 1 + rng.below(6);
        auto g = oracle::random_graph(n, 0.3, rng);
        auto a = Structure(altgraph_vocabulary(), n, {{"E", g.tuples("E")}, {"U", {}}});
        ASSERT_EQ(decide_reacha(a), oracle::reachable_max(g));
    }
}

TEST(Sat, Examples)
{
    EXPECT_TRUE(decide_3sat(make_cnf(1, {{{0, true}}})));
    EXPECT_FALSE(decide_3sat(make_cnf(2, {{{0, true}}, {{0, false}}})));
}

TEST(Sat, AgreesWithEnumeration)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            auto cnf = random_cnf(n, seed);
            ASSERT_EQ(decide_3sat(cnf), oracle::satisfiable(cnf)) << format_structure(cnf);
        }
    }
}

TEST(Cnf, CountsAndValidation)
{
    std::size_t count = 0;
    for_each_cnf(1, [&](const Structure &s) {
        ASSERT_TRUE(is_valid_cnf(s));
        ++count;
    });
    EXPECT_EQ(count, 9u);
    count = 0;
    for_each_cnf(2, [&](const Structure &) { ++count; });
    EXPECT_EQ(count, 65u * 65u);

    // two literals in position 1 of the same clause
    auto bad = Structure(cnf_vocabulary(), 2, {{"P1", {{0, 0}, {1, 0}}}});
    EXPECT_FALSE(is_valid_cnf(bad));
    EXPECT_THROW(validate_cnf(bad), StructureError);
}

TEST(Cnf, ShortClausesRepeatTheirLastLiteral)
{
    auto cnf = make_cnf(3, {{{2, false}}, {{0, true}, {1, false}}, {}});
    auto c0 = clause_literals(cnf, 0);
    ASSERT_EQ(c0.size(), 3u);
    for (auto &l : c0)
        EXPECT_EQ(l, (Literal{2, false}));
    auto c1 = clause_literals(cnf, 1);
    EXPECT_EQ(c1, (std::vector<Literal>{{0, true}, {1, false}, {1, false}}));
    EXPECT_TRUE(clause_literals(cnf, 2).empty());
}

TEST(Colour, Examples)
{
    EXPECT_TRUE(decide_3col(complete_graph(3)));
    EXPECT_FALSE(decide_3col(complete_graph(4)));
    auto c5 = cycle_graph(5);
    EXPECT_EQ(decide_3col(c5), oracle::three_colourable_brute(c5));
    EXPECT_TRUE(decide_3col(c5));
    EXPECT_FALSE(decide_3col(graph(2, {{1, 1}})));
}

TEST(Colour, AgreesWithBruteForce)
{
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        auto n = 1 + rng.below(7);
        auto g = oracle::random_graph(n, 0.2 + 0.5 * rng.unit(), rng);
        ASSERT_EQ(decide_3col(g), oracle::three_colourable_brute(g)) << format_structure(g);
    }
}

TEST(Majority, Examples)
{
    EXPECT_TRUE(decide_maj(BitString::parse("110")));
    EXPECT_FALSE(decide_maj(BitString::parse("10")));
    EXPECT_TRUE(decide_maj(BitString::parse("1")));
    EXPECT_FALSE(decide_maj(BitString::parse("0")));
    EXPECT_TRUE(decide_maj(Structure(string_vocabulary(), 3, {{"S", {{0}, {2}}}})));
}

TEST(Generators, Shapes)
{
    EXPECT_EQ(path_graph(3), graph(3, {{0, 1}, {1, 2}}));
    auto k4 = complete_graph(4);
    EXPECT_EQ(k4.tuples("E").size(), 12u);
    for (auto &e : k4.tuples("E"))
        EXPECT_NE(e[0], e[1]);
    EXPECT_EQ(gnp_graph(5, 0.5, 42), gnp_graph(5, 0.5, 42));
    EXPECT_EQ(random_cnf(4, 8), random_cnf(4, 8));
    EXPECT_TRUE(is_valid_cnf(random_cnf(5, 1)));
    EXPECT_EQ(random_altgraph(6, 0.3, 0.5, 2), random_altgraph(6, 0.3, 0.5, 2));
    EXPECT_EQ(graph_from_mask(2, 0b0010), graph(2, {{0, 1}}));
}

TEST(Formulas, ReachAndReachdAgreeWithOracles)
{
    auto reach = reach_formula();
    auto reachd = reachd_formula();
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            auto g = oracle::graph(n, mask);
            auto expect_reach = oracle::reachable_max(g);
            ASSERT_EQ(decide_reach(g), expect_reach);
            ASSERT_EQ(eval(g, reach), expect_reach);
            auto walk = oracle::deterministic_reach(g);
            ASSERT_EQ(eval(g, reachd), walk);
            ASSERT_EQ(decide_reachd(g), walk && oracle::max_outdegree(g) <= 1);
        }
    }
}

TEST(Formulas, FaginSentenceOnSmallGraphs)
{
    auto phi = three_color_sentence();
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            auto g = oracle::graph(n, mask);
            ASSERT_EQ(eval(g, phi), oracle::three_colourable_brute(g)) << format_structure(g);
        }
}
