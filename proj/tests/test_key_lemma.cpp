#include <gtest/gtest.h>

#include "chooselab/key_lemma.hpp"

using namespace chooselab;

TEST(KeyLemma, EdgeHasEightOverlapClasses) {
    const auto r = verify_key_lemma_case(FrontierCase::P2);
    EXPECT_EQ(r.mode, "exhaustive");
    EXPECT_EQ(r.classes, 8u);
    EXPECT_EQ(r.colorable, 7u);  // identical lists leave only 7 colours for 8 demands
    EXPECT_TRUE(r.passed());
}

TEST(KeyLemma, EdgeWithUnionEightHasConstruction) {
    ListAssignment l{{1, ColorSet::range(1, 7)}, {2, ColorSet::range(2, 7)}};
    EXPECT_TRUE(frontier_construction_exists(FrontierCase::P2, l));
}

TEST(KeyLemma, IdenticalListsAreNotColourable) {
    const PlaneGraph g = frontier_case_graph(FrontierCase::P2);
    ListAssignment l;
    Demand d;
    for (int v : g.vertices()) {
        l[v] = ColorSet::range(1, 7);
        d[v] = 4;
    }
    EXPECT_FALSE(find_coloring(g, l, d).has_value());
}

TEST(KeyLemma, PathCasesExhaustive) {
    for (FrontierCase c : {FrontierCase::P3, FrontierCase::P4}) {
        const auto r = verify_key_lemma_case(c);
        EXPECT_EQ(r.mode, "exhaustive") << to_string(c);
        EXPECT_GT(r.colorable, 0u);
        EXPECT_TRUE(r.passed()) << to_string(c);
    }
}

TEST(KeyLemma, ClawSampledWithPinnedSeed) {
    KeyLemmaOptions opt;
    opt.cap = 1000;  // force the sampled fallback
    opt.samples = 3000;
    const auto a = verify_key_lemma_case(FrontierCase::K13, opt);
    const auto b = verify_key_lemma_case(FrontierCase::K13, opt);
    EXPECT_NE(a.mode.find("sampled"), std::string::npos);
    EXPECT_EQ(a.classes, 3000u);
    EXPECT_EQ(a.colorable, b.colorable);
    EXPECT_TRUE(a.passed());
}

TEST(KeyLemma, UnknownCaseName) {
    EXPECT_THROW(parse_frontier_case("P5"), Error);
    EXPECT_EQ(parse_frontier_case("K13"), FrontierCase::K13);
}
