#include "oracles.hh"

#include <descomp/structures.hh>

#include <gtest/gtest.h>

using namespace descomp;

namespace
{
    auto graph(std::size_t n, std::vector<Tuple> edges) -> Structure
    {
        return Structure(graph_vocabulary(), n, {{"E", std::move(edges)}});
    }
}

TEST(Structure, PathGraph)
{
    auto p3 = graph(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(p3.size(), 3u);
    EXPECT_EQ(p3.tuples("E"), (std::vector<Tuple>{{0, 1}, {1, 2}}));
    EXPECT_TRUE(p3.holds(0, Tuple{1, 2}));
    EXPECT_FALSE(p3.holds(0, Tuple{2, 1}));
}

TEST(Structure, RejectsOutOfRangeElement) { EXPECT_THROW(graph(2, {{0, 2}}), StructureError); }

TEST(Structure, SingleVertex)
{
    auto g = graph(1, {});
    EXPECT_EQ(g.size(), 1u);
    EXPECT_TRUE(g.tuples("E").empty());
}

TEST(Structure, RejectsWrongArityAndUnknownRelation)
{
    EXPECT_THROW(graph(3, {{0, 1, 2}}), StructureError);
    EXPECT_THROW(Structure(graph_vocabulary(), 2, {{"F", {{0, 1}}}}), StructureError);
    EXPECT_THROW(Structure(graph_vocabulary(), 0, std::map<std::string, std::vector<Tuple>>{}), StructureError);
}

TEST(Vocabulary, ReservedAndDuplicateNames)
{
    EXPECT_THROW(Vocabulary({{"suc", 2}}), StructureError);
    EXPECT_THROW(Vocabulary({{"min", 1}}), StructureError);
    EXPECT_THROW(Vocabulary({{"E", 2}, {"E", 1}}), StructureError);
    EXPECT_THROW(Vocabulary({{"E", 0}}), StructureError);
    EXPECT_EQ(Vocabulary::parse("E/2 U/1").to_string(), "E/2 U/1");
}

TEST(Encode, Examples)
{
    EXPECT_EQ(encode(graph(2, {{0, 1}})).to_string(), "0100");
    EXPECT_EQ(encode(graph(2, {})).to_string(), "0000");
    EXPECT_EQ(encode(graph(2, {{0, 1}, {1, 0}})).to_string(), "0110");
}

TEST(Decode, Examples)
{
    EXPECT_EQ(decode(graph_vocabulary(), 2, BitString::parse("0100")), graph(2, {{0, 1}}));
    EXPECT_THROW(decode(graph_vocabulary(), 2, BitString::parse("010")), StructureError);
    EXPECT_EQ(decode(graph_vocabulary(), 1, BitString::parse("1")), graph(1, {{0, 0}}));
}

TEST(Encode, RoundTripAllGraphsUpToFour)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            auto g = oracle::graph(n, mask);
            auto bits = encode(g);
            ASSERT_EQ(bits.size(), n * n);
            for (std::size_t i = 0; i < n * n; ++i)
                ASSERT_EQ(bits[i], ((mask >> i) & 1) != 0);
            ASSERT_EQ(decode(graph_vocabulary(), n, bits), g);
        }
    }
}

TEST(Encode, RandomMixedVocabularies)
{
    Rng rng(11);
    Vocabulary vocab({{"A", 1}, {"B", 3}, {"C", 2}});
    for (int t = 0; t < 200; ++t) {
        auto n = 1 + rng.below(5);
        auto bits = encoding_length(vocab, n);
        std::vector<bool> raw(bits);
        for (std::size_t i = 0; i < bits; ++i)
            raw[i] = rng.chance(0.4);
        BitString s(raw);
        auto structure = decode(vocab, n, s);
        ASSERT_EQ(encode(structure), s);
        ASSERT_EQ(parse_structure(format_structure(structure)), structure);
    }
}

TEST(RankLex, Examples)
{
    EXPECT_EQ(rank_lex(Tuple{1, 2}, 3), 5u);
    for (Element j = 0; j < 7; ++j)
        EXPECT_EQ(rank_lex(Tuple{j}, 7), j);
    EXPECT_EQ(unrank_lex(5, 2, 3), (Tuple{1, 2}));
}

TEST(RankLex, InversesExhaustive)
{
    for (std::size_t n = 1; n <= 5; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
            std::uint64_t total = checked_power(n, k);
            for (std::uint64_t i = 0; i < total; ++i) {
                auto t = unrank_lex(i, k, n);
                ASSERT_EQ(t.size(), k);
                ASSERT_EQ(rank_lex(t, n), i);
                std::uint64_t value = 0;
                for (auto e : t)
                    value = value * n + e;
                ASSERT_EQ(value, i);
            }
        }
    }
}

TEST(StructureText, ParseAndFormat)
{
    auto text = "vocab E/2\nsize 3\nE: (0,1) (1,2)\n";
    auto s = parse_structure(text);
    EXPECT_EQ(s, graph(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(format_structure(s), text);
    EXPECT_THROW(parse_structure("vocab E/2\nsize 3\nE: (0,3)\n"), StructureError);
    EXPECT_THROW(parse_structure("size 3\n"), StructureError);
}

TEST(Builder, SetRankAndTable)
{
    StructureBuilder b(graph_vocabulary(), 3);
    b.set_rank(0, 5);
    b.add("E", {0, 1});
    auto s = std::move(b).build();
    EXPECT_EQ(s.tuples("E"), (std::vector<Tuple>{{0, 1}, {1, 2}}));
}

TEST(CheckedPower, Overflow)
{
    EXPECT_EQ(checked_power(3, 4), 81u);
    EXPECT_THROW(checked_power(1u << 20, 4), Error);
}
