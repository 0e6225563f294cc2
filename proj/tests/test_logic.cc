#include "oracles.hh"

#include <descomp/evaluator.hh>
#include <descomp/logic.hh>
#include <descomp/problems.hh>
#include <descomp/suites.hh>

#include <gtest/gtest.h>

using namespace descomp;

namespace
{
    auto parse(const std::string &text) -> Formula { return parse_formula(text, graph_vocabulary()); }
}

TEST(Parse, Conjunction)
{
    auto f = parse("E(x,y) & x=y");
    ASSERT_EQ(f.kind(), FormulaKind::And);
    EXPECT_EQ(f.child(0).kind(), FormulaKind::Atom);
    EXPECT_EQ(f.child(1).kind(), FormulaKind::Equal);
}

TEST(Parse, TransitiveClosure)
{
    auto f = parse("TC[(x;y). E(x,y) | x=y](min; max)");
    ASSERT_EQ(f.kind(), FormulaKind::TC);
    EXPECT_EQ(f.tc_width(), 1u);
    EXPECT_EQ(f.child().kind(), FormulaKind::Or);
    EXPECT_EQ(f.terms()[0], Term::min());
    EXPECT_EQ(f.terms()[1], Term::max());
}

TEST(Parse, ArityError) { EXPECT_THROW(parse("E(x)"), ParseError); }

TEST(Parse, ErrorPosition)
{
    try {
        parse("E(x,y) & & x=y");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 9u);
    }
}

TEST(Parse, RejectsBadInput)
{
    EXPECT_THROW(parse("F(x,y)"), ParseError);
    EXPECT_THROW(parse("TC[(x;x). E(x,x)](min;max)"), ParseError);
    EXPECT_THROW(parse("TC[(x,y;z). E(x,z)](min;max)"), ParseError);
    EXPECT_THROW(parse("exR Q/2. Q(x)"), ParseError);
    EXPECT_THROW(parse("E(x,y) )"), ParseError);
}

TEST(Parse, Precedence)
{
    auto f = parse("!E(x,y) & x=y | suc(x,y) -> y<=x");
    ASSERT_EQ(f.kind(), FormulaKind::Implies);
    ASSERT_EQ(f.child(0).kind(), FormulaKind::Or);
    ASSERT_EQ(f.child(0).child(0).kind(), FormulaKind::And);
    EXPECT_EQ(f.child(0).child(0).child(0).kind(), FormulaKind::Not);
    EXPECT_EQ(f.child(1).kind(), FormulaKind::LessEq);
}

TEST(Print, RoundTripExamples)
{
    for (auto text : {"E(x,y) & x=y", "TC[(x;y). E(x,y) | x=y](min; max)", "all x. ex y. E(x,y) -> x!=y",
             "exR R/1. all x. R(x) | !R(x)", "DTC[(a,b;c,d). suc(a,c) & b=d](min,0;max,2)"}) {
        auto f = parse(text);
        auto printed = print(f);
        EXPECT_EQ(parse(printed), f) << printed;
        EXPECT_EQ(print(parse(printed)), printed);
    }
}

TEST(Print, RandomRoundTripDepthSix)
{
    Rng rng(2024);
    for (int t = 0; t < 500; ++t) {
        auto f = random_formula(graph_vocabulary(), rng, 1 + static_cast<unsigned>(rng.below(6)));
        auto text = print(f);
        ASSERT_EQ(parse(text), f) << text;
    }
}

TEST(Print, NestedShapesNeedBrackets)
{
    auto a = parse("E(x,y)"), b = parse("x=y"), c = parse("suc(x,y)");
    for (auto &f : {land(a, land(b, c)), lor(land(a, b), c), land(lor(a, b), c), implies(implies(a, b), c),
             lnot(land(a, b)), land(exists("z", a), b), lor(a, forall("z", b)), lnot(lnot(a))}) {
        EXPECT_EQ(parse(print(f)), f) << print(f);
    }
}

TEST(FreeVars, Examples)
{
    EXPECT_EQ(free_vars(parse("E(x,y)")), (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(free_vars(parse("ex y. E(x,y)")), (std::vector<std::string>{"x"}));
    EXPECT_EQ(free_vars(parse("TC[(x;y).E(x,y)](u;max)")), (std::vector<std::string>{"u"}));
}

TEST(Classifiers, IsNumeric)
{
    EXPECT_TRUE(is_numeric(parse("suc(x,y) & x!=min")));
    EXPECT_FALSE(is_numeric(parse("E(x,y)")));
    EXPECT_TRUE(is_numeric(parse("x=y")));
}

TEST(Classifiers, IsQuantifierFree)
{
    EXPECT_TRUE(is_quantifier_free(parse("E(x,y) | (suc(x,y) & !E(y,x))")));
    EXPECT_FALSE(is_quantifier_free(parse("ex z. E(x,z)")));
    EXPECT_FALSE(is_quantifier_free(parse("TC[(x;y).E(x,y)](min;max)")));
}

TEST(Classifiers, IsTcPositive)
{
    EXPECT_TRUE(is_tc_positive(parse("TC[(x;y).E(x,y)](min;max)")));
    EXPECT_FALSE(is_tc_positive(parse("!TC[(x;y).E(x,y)](min;max)")));
    EXPECT_TRUE(is_tc_positive(parse("!E(x,y) & TC[(x;y).E(x,y)](min;max)")));
    EXPECT_FALSE(is_tc_positive(parse("TC[(x;y).E(x,y)](min;max) -> E(min,max)")));
    EXPECT_TRUE(is_tc_positive(parse("!!TC[(x;y).E(x,y)](min;max)")));
}

TEST(Substitute, AvoidsCapture)
{
    auto f = parse("ex y. E(x,y)");
    auto g = substitute(f, {{"x", var("y")}});
    EXPECT_EQ(free_vars(g), (std::vector<std::string>{"y"}));
    // The substituted formula says "y has a successor" on every structure.
    auto p3 = path_graph(3);
    for (Element v = 0; v < 3; ++v) {
        Environment env;
        env.elements = {{"y", v}};
        EXPECT_EQ(eval(p3, g, env), v < 2);
    }
}

TEST(Substitute, ConstantsAndTcTerms)
{
    auto f = parse("TC[(a;b). E(a,b)](x;max)");
    auto g = substitute(f, {{"x", Term::min()}});
    EXPECT_EQ(g, parse("TC[(a;b). E(a,b)](min;max)"));
    // Binders are untouched.
    EXPECT_EQ(substitute(f, {{"a", Term::max()}}), f);
}

TEST(Measures, DepthAndSize)
{
    auto f = parse("ex y. E(x,y) & x=y");
    EXPECT_EQ(depth(f), 3u);
    EXPECT_EQ(node_count(f), 4u);
    EXPECT_EQ(input_atoms(parse("E(x,y) | x=y & !E(y,x)"), graph_vocabulary()).size(), 2u);
}

// Numeric formulas cannot tell apart two structures of the same size.
TEST(Classifiers, NumericFormulasIgnoreTheInput)
{
    Rng rng(5);
    int tried = 0;
    while (tried < 40) {
        auto f = random_formula(graph_vocabulary(), rng, 3);
        if (! is_numeric(f))
            continue;
        ++tried;
        for (std::size_t n = 3; n <= 4; ++n) {
            auto a = oracle::random_graph(n, 0.5, rng);
            auto b = oracle::random_graph(n, 0.5, rng);
            auto vars = free_vars(f);
            std::vector<std::string> names = vars;
            auto sa = satisfying_assignments(a, f, names);
            auto sb = satisfying_assignments(b, f, names);
            ASSERT_EQ(sa, sb) << print(f);
        }
    }
}
