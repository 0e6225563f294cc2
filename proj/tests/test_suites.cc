#include <descomp/problems.hh>
#include <descomp/suites.hh>

#include <gtest/gtest.h>

using namespace descomp;

namespace
{
    auto small(const std::string &name) -> SuiteConfig
    {
        auto c = default_suite_config(name);
        c.n_max = name == "sat2col" ? 1 : 3;
        c.trials = 10;
        c.seed = 5;
        return c;
    }
}

class SuiteSmoke : public ::testing::TestWithParam<std::string>
{
};

TEST_P(SuiteSmoke, PassesAtSmallSettings)
{
    auto report = run_suite(GetParam(), small(GetParam()));
    ASSERT_FALSE(report.properties.empty());
    for (auto &p : report.properties) {
        EXPECT_TRUE(p.passed) << p.id << ": " << p.detail;
        EXPECT_GT(p.cases, 0u) << p.id;
        EXPECT_EQ(p.id.rfind(GetParam() + ".", 0), 0u) << p.id;
    }
    EXPECT_TRUE(report.passed());
}

INSTANTIATE_TEST_SUITE_P(All, SuiteSmoke, ::testing::ValuesIn(suite_names()));

TEST(Suites, NamesAndDefaults)
{
    EXPECT_EQ(suite_names().size(), 8u);
    EXPECT_TRUE(is_suite("certs"));
    EXPECT_FALSE(is_suite("bogus"));
    EXPECT_EQ(default_suite_config("roundtrip").trials, 1000u);
    EXPECT_THROW(run_suite("bogus", {}), Error);
    EXPECT_THROW(run_suite("reach", SuiteConfig{6, 1, 0}), Error);
}

TEST(Suites, Deterministic)
{
    auto a = format_report(run_suite("roundtrip", small("roundtrip")));
    auto b = format_report(run_suite("roundtrip", small("roundtrip")));
    EXPECT_EQ(a, b);
}

TEST(Suites, FormatResult)
{
    EXPECT_EQ(format_result({"reach.formula", true, 12, 7, ""}), "PASS reach.formula 12 7");
    EXPECT_EQ(format_result({"x.y", false, 3, 0, "boom"}).rfind("FAIL x.y 3 0", 0), 0u);
    SuiteReport r;
    r.properties.push_back({"a.b", true, 1, 0, ""});
    r.notes.push_back("hello");
    EXPECT_EQ(format_report(r), "PASS a.b 1 0\n# hello\n");
}

TEST(RandomFormula, WellFormedAndSeeded)
{
    Rng a(3), b(3);
    for (int i = 0; i < 100; ++i) {
        auto f = random_formula(graph_vocabulary(), a, 5);
        auto g = random_formula(graph_vocabulary(), b, 5);
        ASSERT_EQ(print(f), print(g));
        for (auto &v : free_vars(f))
            EXPECT_TRUE(v == "x" || v == "y" || v == "z" || v == "u" || v == "w") << v;
    }
}
