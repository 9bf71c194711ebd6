#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "chooselab/claims.hpp"
#include "chooselab/plane_graph.hpp"
#include "fixtures.hpp"

using namespace chooselab;

namespace {

PlaneGraph c4_embedded() { return PlaneGraph::from_rotations({{0, {1, 3}}, {1, {0, 2}}, {2, {1, 3}}, {3, {2, 0}}}); }

std::string kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

// Oracle for path matching: every injective sequence of the right length, checked directly.
std::set<std::vector<int>> brute_paths(const PlaneGraph& g, const Pattern& p) {
    std::set<std::vector<int>> out;
    const auto vs = g.vertices();
    std::vector<int> seq(p.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == p.size()) {
            auto fits = [&](const std::vector<int>& s) {
                for (std::size_t k = 0; k < s.size(); ++k)
                    if (!p[k].accepts(g.degree_class(s[k]))) return false;
                return true;
            };
            std::vector<int> rev(seq.rbegin(), seq.rend());
            if (fits(seq) || fits(rev)) out.insert(std::min(seq, rev));
            return;
        }
        for (int v : vs) {
            if (std::find(seq.begin(), seq.begin() + static_cast<long>(i), v) != seq.begin() + static_cast<long>(i)) continue;
            if (i > 0 && !g.adjacent(seq[i - 1], v)) continue;
            seq[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

TEST(PlaneGraphBuild, FourCycleHasFourEdges) {
    const PlaneGraph g = c4_embedded();
    EXPECT_EQ(g.vertex_count(), 4u);
    EXPECT_EQ(g.edge_count(), 4u);
    EXPECT_TRUE(g.embedded());
}

TEST(PlaneGraphBuild, OneSidedEdgeIsRejected) {
    EXPECT_EQ(kind_of([] { PlaneGraph::from_rotations({{0, {1}}, {1, {}}}); }), "AsymmetricRotation");
}

TEST(PlaneGraphBuild, RepeatedNeighbourAndLoopAreRejected) {
    EXPECT_EQ(kind_of([] { PlaneGraph::from_rotations({{0, {1, 1}}, {1, {0, 0}}}); }), "DuplicateNeighbor");
    EXPECT_EQ(kind_of([] { PlaneGraph::from_rotations({{0, {0}}}); }), "SelfLoop");
    EXPECT_EQ(kind_of([] { PlaneGraph::from_edges({0, 1}, {{0, 1}, {1, 0}}); }), "DuplicateNeighbor");
    EXPECT_EQ(kind_of([] { PlaneGraph::from_edges({0}, {{0, 0}}); }), "SelfLoop");
}

TEST(PlaneGraphBuild, CubeFixture) {
    const PlaneGraph g = *fixtures::embed(fixtures::cube_edges());
    EXPECT_EQ(g.vertex_count(), 8u);
    EXPECT_EQ(g.edge_count(), 12u);
    EXPECT_EQ(g.euler_characteristic(), 2);
}

TEST(FaceTracing, FourCycleHasTwoQuadFaces) {
    const auto faces = c4_embedded().faces();
    ASSERT_EQ(faces.size(), 2u);
    for (const auto& f : faces) EXPECT_EQ(f.degree(), 4u);
}

TEST(FaceTracing, CubeHasSixQuadFaces) {
    const auto faces = fixtures::embed(fixtures::cube_edges())->faces();
    ASSERT_EQ(faces.size(), 6u);
    for (const auto& f : faces) EXPECT_EQ(f.degree(), 4u);
}

TEST(FaceTracing, SingleEdgeIsOneFaceOfDegreeTwo) {
    const auto faces = PlaneGraph::from_rotations({{0, {1}}, {1, {0}}}).faces();
    ASSERT_EQ(faces.size(), 1u);
    EXPECT_EQ(faces[0].degree(), 2u);
}

TEST(FaceTracing, FollowsTheDocumentedSuccessorRule) {
    const PlaneGraph g = c4_embedded();
    for (const auto& f : g.faces())
        for (std::size_t i = 0; i < f.degree(); ++i) {
            const int u = f.walk[i], v = f.walk[(i + 1) % f.degree()], w = f.walk[(i + 2) % f.degree()];
            EXPECT_EQ(g.rotation_next(v, u), w);
        }
}

TEST(FaceTracing, AbstractGraphHasNoFaces) {
    EXPECT_EQ(kind_of([] { PlaneGraph::from_edges({0, 1}, {{0, 1}}).faces(); }), "NotEmbedded");
}

TEST(FaceTracing, DodecahedronIsTwelvePentagons) {
    const auto faces = fixtures::embed(fixtures::dodecahedron_edges())->faces();
    ASSERT_EQ(faces.size(), 12u);
    for (const auto& f : faces) EXPECT_EQ(f.degree(), 5u);
}

TEST(DegreeClassTest, Examples) {
    const PlaneGraph star = PlaneGraph::from_edges({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}});
    EXPECT_EQ(star.degree_class(0), (DegreeClass{3, 0}));
    const PlaneGraph p4 = PlaneGraph::from_edges({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(p4.degree_class(1), (DegreeClass{2, 0}));
    // u=0 has neighbours 1..4; only vertex 1 gets degree 3 (two extra leaves).
    const PlaneGraph g = PlaneGraph::from_edges({0, 1, 2, 3, 4, 5, 6}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}});
    EXPECT_EQ(g.degree_class(0), (DegreeClass{4, 1}));
}

TEST(PatternMatch, FourCycleTwoTwoTwo) {
    const PlaneGraph g = c4_embedded();
    const auto found = g.match_path(parse_pattern({"2", "2", "2"}));
    EXPECT_EQ(found.size(), 4u);
    EXPECT_EQ(std::set<std::vector<int>>(found.begin(), found.end()), brute_paths(g, parse_pattern({"2", "2", "2"})));
}

TEST(PatternMatch, NoDegreeThreeInACycle) {
    EXPECT_TRUE(c4_embedded().match_path(parse_pattern({"3", "3", "3"})).empty());
}

TEST(PatternMatch, PlantedPathInClaimFixture) {
    const Claim& c = find_claim("k2-no-3nbr");
    bool seen = false;
    for (const auto& v : c.variants) {
        const auto hits = v.host.match_path(parse_pattern({"3", "3", "4", "3"}));
        if (hits.empty()) continue;
        seen = true;
        EXPECT_EQ(hits.size(), 1u) << v.label;
        for (int x : hits.front()) EXPECT_TRUE(v.h.count(x)) << v.label;
    }
    EXPECT_TRUE(seen);
}

TEST(PatternMatch, CycleMatchCountsEachCycleOnce) {
    const PlaneGraph g = *fixtures::embed(fixtures::cube_edges());
    EXPECT_EQ(g.match_cycle(parse_pattern({"3", "3", "3", "3"})).size(), 6u);
    EXPECT_TRUE(g.match_cycle(parse_pattern({"3", "3", "3"})).empty());
}

TEST(PatternMatch, AgreesWithBruteForceOnRandomGrids) {
    std::mt19937_64 rng(11);
    const std::vector<std::vector<std::string>> pats{{"2", "3"}, {"3", "4-", "2"}, {"4", "3_1", "2+"}, {"2_>=1", "3", "3", "2"}};
    for (int trial = 0; trial < 25; ++trial) {
        const PlaneGraph g = fixtures::random_grid_subgraph(3, 4, 0.5, rng);
        for (const auto& p : pats) {
            const Pattern pat = parse_pattern(p);
            const auto got = g.match_path(pat);
            EXPECT_EQ(std::set<std::vector<int>>(got.begin(), got.end()), brute_paths(g, pat));
        }
    }
}

TEST(Consecutive, RotationExamples) {
    // u=0 with rotation [1,2,3,4] (a,b,c,d).
    const PlaneGraph g =
        PlaneGraph::from_rotations({{0, {1, 2, 3, 4}}, {1, {0}}, {2, {0}}, {3, {0}}, {4, {0}}});
    EXPECT_TRUE(g.consecutive(0, 1, 2));
    EXPECT_FALSE(g.consecutive(0, 1, 3));
    EXPECT_TRUE(g.consecutive(0, 4, 1));
}

TEST(DegreeConstraintParse, Forms) {
    EXPECT_TRUE(DegreeConstraint::parse("6+").accepts({9, 0}));
    EXPECT_FALSE(DegreeConstraint::parse("6+").accepts({5, 0}));
    EXPECT_TRUE(DegreeConstraint::parse("4-").accepts({3, 2}));
    EXPECT_TRUE(DegreeConstraint::parse("4_1").accepts({4, 1}));
    EXPECT_FALSE(DegreeConstraint::parse("4_1").accepts({4, 2}));
    EXPECT_TRUE(DegreeConstraint::parse("5_>=2").accepts({5, 3}));
    EXPECT_FALSE(DegreeConstraint::parse("5_>=2").accepts({5, 1}));
    EXPECT_EQ(kind_of([] { DegreeConstraint::parse("x"); }), "BadPattern");
}

// Property: on random plane grid subgraphs every dart lies on exactly one face and Euler holds.
TEST(FaceTracingProperty, DartsPartitionAndEuler) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const PlaneGraph g = fixtures::random_grid_subgraph(2 + trial % 4, 2 + trial % 5, 0.6, rng);
        std::size_t darts = 0;
        std::set<std::pair<int, int>> seen;
        for (const auto& f : g.faces())
            for (std::size_t i = 0; i < f.degree(); ++i) {
                ++darts;
                EXPECT_TRUE(seen.insert({f.walk[i], f.walk[(i + 1) % f.degree()]}).second);
            }
        EXPECT_EQ(darts, 2 * g.edge_count());
        EXPECT_EQ(g.euler_characteristic(), 2);
        EXPECT_TRUE(g.triangle_free());
    }
}
