#include "oracles.hh"

#include <descomp/evaluator.hh>
#include <descomp/problems.hh>
#include <descomp/suites.hh>

#include <gtest/gtest.h>

using namespace descomp;

namespace
{
    auto parse(const std::string &text) -> Formula { return parse_formula(text, graph_vocabulary()); }

    const auto reach = "TC[(x;y).E(x,y)](min;max)";
}

TEST(Eval, ReachExamples)
{
    EXPECT_TRUE(eval(path_graph(3), parse(reach)));
    EXPECT_FALSE(eval(oracle::graph(2, 0), parse(reach)));
    EXPECT_TRUE(eval(oracle::graph(1, 0), parse(reach)));
}

TEST(Eval, ThreeColourSentence)
{
    EXPECT_FALSE(eval(complete_graph(4), three_color_sentence()));
    EXPECT_TRUE(eval(complete_graph(3), three_color_sentence()));
}

TEST(Eval, NumeralsAndOrder)
{
    auto g = path_graph(4);
    EXPECT_TRUE(eval(g, parse("E(0,1) & E(2,3) & suc(2,3) & 1<=3 & !(3<=1)")));
    EXPECT_TRUE(eval(g, parse("max=3 & min=0")));
    EXPECT_THROW(eval(g, parse("E(4,0)")), EvaluationError);
}

TEST(Eval, UnboundVariableIsAnError) { EXPECT_THROW(eval(path_graph(3), parse("E(x,y)")), Error); }

TEST(SatisfyingAssignments, Examples)
{
    auto p3 = path_graph(3);
    EXPECT_EQ(satisfying_assignments(p3, parse("E(x,y)"), {"x", "y"}), (std::vector<Tuple>{{0, 1}, {1, 2}}));
    EXPECT_EQ(satisfying_assignments(p3, parse("TC[(x;y).E(x,y)](x;y)"), {"x", "y"}),
        (std::vector<Tuple>{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}));
    EXPECT_TRUE(satisfying_assignments(p3, parse("x!=x"), {"x"}).empty());
}

TEST(SatisfyingAssignments, ExtraVariablesRangeFreely)
{
    auto p3 = path_graph(3);
    auto rows = satisfying_assignments(p3, parse("E(x,1)"), {"x", "z"});
    EXPECT_EQ(rows, (std::vector<Tuple>{{0, 0}, {0, 1}, {0, 2}}));
}

TEST(TcClosure, Examples)
{
    using P = std::vector<TuplePair>;
    EXPECT_EQ(tc_closure({}, 2, 1), (P{{{0}, {0}}, {{1}, {1}}}));
    auto closed = tc_closure({{{0}, {1}}, {{1}, {2}}}, 3, 1);
    EXPECT_EQ(closed, (P{{{0}, {0}}, {{0}, {1}}, {{0}, {2}}, {{1}, {1}}, {{1}, {2}}, {{2}, {2}}}));
}

TEST(TcClosure, ChainOverPairsMatchesFixpoint)
{
    // (0,0) -> (0,1) -> (1,1) -> (1,0) -> (2,2)
    std::vector<TuplePair> chain = {{{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, {{1, 1}, {1, 0}}, {{1, 0}, {2, 2}}};
    auto closed = tc_closure(chain, 3, 2);
    std::vector<std::vector<bool>> reach(9, std::vector<bool>(9, false));
    auto idx = [](const Tuple &t) { return t[0] * 3 + t[1]; };
    for (std::size_t i = 0; i < 9; ++i)
        reach[i][i] = true;
    for (auto &[a, b] : chain)
        reach[idx(a)][idx(b)] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                for (std::size_t k = 0; k < 9; ++k)
                    if (reach[i][j] && reach[j][k] && ! reach[i][k])
                        reach[i][k] = changed = true;
    }
    std::size_t expected = 0;
    for (auto &row : reach)
        for (bool b : row)
            expected += b;
    ASSERT_EQ(closed.size(), expected);
    for (auto &[a, b] : closed)
        EXPECT_TRUE(reach[idx(a)][idx(b)]);
}

TEST(Eval, SecondOrderCap)
{
    auto g = path_graph(5);
    auto f = parse("exR Q/2. all x. Q(x,x)");
    EvalOptions small;
    small.soe_cell_cap = 20;
    EXPECT_THROW(Evaluator(g, small).eval(f), EvaluationError);
    EvalOptions large;
    large.soe_cell_cap = 25;
    EXPECT_TRUE(Evaluator(g, large).eval(f));
}

TEST(Eval, SecondOrderBinding)
{
    auto g = path_graph(3);
    Environment env;
    env.relations["Q"] = RelationVariable{1, RelationTable(3)};
    env.relations["Q"].table.set(2);
    auto f = parse_formula("Q(max) & !Q(min)", graph_vocabulary(), {{"Q", 1}});
    EXPECT_TRUE(eval(g, f, env));
}

TEST(EvalPartial, ThreeValued)
{
    auto p3 = path_graph(3);
    Evaluator ev(p3);
    auto f = parse("E(x,y) | E(min,1)");
    std::vector<std::int64_t> values = {-1, -1};
    EXPECT_EQ(ev.eval_partial(f, {"x", "y"}, values), Truth::True);
    auto g = parse("E(x,y)");
    EXPECT_EQ(ev.eval_partial(g, {"x", "y"}, values), Truth::Unknown);
    values = {0, -1};
    EXPECT_EQ(ev.eval_partial(parse("E(x,y) & E(x,x)"), {"x", "y"}, values), Truth::False);
    EXPECT_EQ(ev.eval_partial(parse("E(x,y) & E(y,x)"), {"x", "y"}, values), Truth::Unknown);
}

// Agreement with the direct recursive evaluator on every graph with at most three vertices.
TEST(Eval, AgreesWithNaiveEvaluator)
{
    Rng rng(77);
    std::vector<Structure> graphs;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask)
            graphs.push_back(oracle::graph(n, mask));
    std::size_t compared = 0;
    for (int t = 0; t < 40; ++t) {
        auto f = random_formula(graph_vocabulary(), rng, 1 + static_cast<unsigned>(rng.below(4)));
        for (std::size_t g = 0; g < graphs.size(); g += (t % 4 == 0 ? 1 : 7)) {
            auto &s = graphs[g];
            oracle::NaiveEvaluator naive(s);
            Evaluator ev(s);
            auto n = s.size();
            for (Element x = 0; x < n; ++x) {
                for (Element y = 0; y < n; ++y) {
                    std::map<std::string, Element> assignment{{"x", x}, {"y", y}, {"z", 0}, {"u", 1 % n}, {"w", n - 1}};
                    bool expected;
                    try {
                        expected = naive.eval(f, assignment);
                    } catch (const oracle::NaiveError &) {
                        continue;
                    }
                    Environment env;
                    env.elements = assignment;
                    bool got;
                    try {
                        got = ev.eval(f, env);
                    } catch (const EvaluationError &) {
                        // Short-circuiting may reach a numeral the oracle never touched, never the reverse.
                        continue;
                    }
                    ASSERT_EQ(got, expected) << print(f) << "\n" << format_structure(s) << "x=" << x << " y=" << y;
                    ++compared;
                }
            }
        }
    }
    EXPECT_GT(compared, 5000u);
}

TEST(Eval, TcMonotoneAndDtcContainedInTc)
{
    Rng rng(9);
    for (int t = 0; t < 150; ++t) {
        auto n = 2 + rng.below(4);
        auto a = oracle::random_graph(n, 0.3, rng);
        // b = a plus a few edges
        StructureBuilder bb(graph_vocabulary(), n);
        bb.table(0) = a.table(0);
        for (int extra = 0; extra < 3; ++extra)
            bb.set_rank(0, rng.below(n * n));
        auto b = std::move(bb).build();
        for (auto &text : {std::string("TC[(x;y).E(x,y)](x;y)"), std::string("TC[(x,u;y,w).E(x,y) & E(u,w)](x,u;y,w)")}) {
            auto f = parse(text);
            std::vector<std::string> vars = free_vars(f);
            auto ra = satisfying_assignments(a, f, vars);
            auto rb = satisfying_assignments(b, f, vars);
            for (auto &row : ra)
                ASSERT_TRUE(std::binary_search(rb.begin(), rb.end(), row)) << text;
            auto d = parse("D" + text);
            auto rd = satisfying_assignments(a, d, vars);
            for (auto &row : rd)
                ASSERT_TRUE(std::binary_search(ra.begin(), ra.end(), row)) << text;
        }
    }
}

TEST(Eval, CacheDoesNotChangeResults)
{
    auto g = oracle::graph(4, 0x1234);
    Evaluator ev(g);
    auto f = parse("TC[(x;y).E(x,y)](z;max)");
    std::vector<bool> first, second;
    for (Element z = 0; z < 4; ++z) {
        Environment env;
        env.elements = {{"z", z}};
        first.push_back(ev.eval(f, env));
    }
    ev.clear_cache();
    for (Element z = 0; z < 4; ++z) {
        Environment env;
        env.elements = {{"z", z}};
        second.push_back(eval(g, f, env));
    }
    EXPECT_EQ(first, second);
}
