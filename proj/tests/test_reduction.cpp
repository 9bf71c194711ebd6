#include <random>

#include <gtest/gtest.h>

#include "chooselab/claims.hpp"
#include "chooselab/reduction.hpp"

using namespace chooselab;

namespace {

PlaneGraph path3() { return PlaneGraph::from_edges({0, 1, 2}, {{0, 1}, {0, 2}}); }

SymbolicState sym(const PlaneGraph& g, std::map<int, std::pair<int, int>> fg) { return SymbolicState::make(g, fg); }

// Oracle: search every S, T, R inside the allowed regions for |S|+|T|+|R| = m.
bool brute_three_sets(ColorSet a, ColorSet b, ColorSet c, int m) {
    const ColorSet sa = a - c, tb = b - c, rc = a & b & c;
    for (std::uint64_t s = sa.bits();; s = (s - 1) & sa.bits()) {
        for (std::uint64_t t = tb.bits();; t = (t - 1) & tb.bits()) {
            const int st = std::popcount(s) + std::popcount(t);
            if (st <= m && m - st <= rc.size()) return true;
            if (t == 0) break;
        }
        if (s == 0) break;
    }
    return false;
}

ColorSet from_bits(unsigned bits) {
    ColorSet s;
    for (int i = 0; i < 8; ++i)
        if (bits >> i & 1U) s.insert(i + 1);
    return s;
}

}  // namespace

// ---- deletion

TEST(DegDel, IsolatedVertexWithExactList) {
    const PlaneGraph g = PlaneGraph::from_edges({0}, {});
    const auto tr = run_scheme_concrete(g, {{0, ColorSet::range(1, 4)}}, {{0, 4}}, {Step::del(0)});
    EXPECT_TRUE(tr.legal);
    EXPECT_TRUE(tr.exhausted);
    ASSERT_TRUE(tr.coloring.has_value());
    EXPECT_EQ(tr.coloring->at(0), ColorSet::range(1, 4));
}

TEST(DegDel, SymbolicMinimumDegreeArithmetic) {
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {15, 4}}, {1, {7, 4}}, {2, {7, 4}}}), {Step::del(0)});
    ASSERT_TRUE(t.legal());
    EXPECT_EQ(t.branches[0].steps[0].lhs, 15);
    EXPECT_EQ(t.branches[0].steps[0].rhs, 12);
}

TEST(DegDel, ShortListIsIllegal) {
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {10, 3}}, {1, {7, 4}}, {2, {7, 4}}}), {Step::del(0)});
    EXPECT_FALSE(t.legal());
    const auto f = t.first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->lhs, 10);
    EXPECT_EQ(f->rhs, 11);
    EXPECT_NE(f->error.find("IllegalDelete"), std::string::npos);
}

TEST(DegDel, ConcreteShortListRaises) {
    const PlaneGraph g = path3();
    ListAssignment l{{0, ColorSet::range(1, 10)}, {1, ColorSet::range(1, 7)}, {2, ColorSet::range(1, 7)}};
    const auto tr = run_scheme_concrete(g, l, {{0, 3}, {1, 4}, {2, 4}}, {Step::del(0)});
    EXPECT_FALSE(tr.legal);
    EXPECT_NE(tr.steps.back().error.find("IllegalDelete"), std::string::npos);
}

// ---- partial colouring

TEST(ParCol, RemovesColoursFromNeighbour) {
    const PlaneGraph g = PlaneGraph::from_edges({0, 1}, {{0, 1}});
    ConcreteState st(g, {{0, ColorSet{1, 2, 3}}, {1, ColorSet{1, 2, 3}}}, {{0, 1}, {1, 1}});
    StepRecord rec;
    st.par_col({{0, ColorSet{3}}}, rec);
    EXPECT_EQ(st.lists().at(1), (ColorSet{1, 2}));
    EXPECT_EQ(st.demand().at(0), 0);
}

TEST(ParCol, TakingAWholeNeighbourListIsIllegal) {
    const PlaneGraph g = PlaneGraph::from_edges({0, 1}, {{0, 1}});
    ConcreteState st(g, {{0, ColorSet{1, 2, 3}}, {1, ColorSet{1, 2}}}, {{0, 2}, {1, 1}});
    StepRecord rec;
    try {
        st.par_col({{0, ColorSet{1, 2}}}, rec);
        FAIL() << "expected IllegalParCol";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "IllegalParCol");
    }
}

// ---- single save

TEST(SaveSingle, SymbolicBoundsUpdate) {
    // u=0 joined to v=1 and w=2.
    SymbolicState st = sym(path3(), {{0, {11, 4}}, {1, {7, 4}}, {2, {7, 4}}});
    StepRecord rec;
    const auto x = detail::new_set(st, "save", 1, {0}, {1});
    ASSERT_TRUE(detail::symbolic_parcol(st, {{0, {x}}}, rec));
    EXPECT_EQ(st.live.at(0).g, 3);
    EXPECT_EQ(st.live.at(0).lo, 10);
    EXPECT_EQ(st.live.at(2).lo, 6);
    EXPECT_EQ(st.live.at(1).lo, 7);
    EXPECT_EQ(st.live.at(1).hi, 7);
}

TEST(SaveSingle, SymbolicLegalThroughScheme) {
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {11, 4}}, {1, {7, 4}}, {2, {7, 4}}}), {Step::save(0, 1)});
    ASSERT_TRUE(t.legal());
    EXPECT_EQ(t.branches[0].steps[0].lhs, 4);
}

TEST(SaveSingle, EqualListsCannotBeAvoided) {
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {7, 4}}, {1, {7, 4}}, {2, {7, 4}}}), {Step::save(0, 1)});
    const auto f = t.first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_NE(f->error.find("CannotAvoid"), std::string::npos);
    EXPECT_EQ(f->lhs, 0);
}

TEST(SaveSingle, ConcretePicksOutsideNeighbourList) {
    const PlaneGraph g = PlaneGraph::from_edges({0, 1}, {{0, 1}});
    ConcreteState st(g, {{0, ColorSet{1, 2, 3}}, {1, ColorSet{1, 2}}}, {{0, 1}, {1, 1}});
    StepRecord rec;
    EXPECT_EQ(st.save(0, 1, 1, rec), ColorSet{3});
}

// ---- pair save

TEST(SavePair, SymbolicForksIntoThreeCorners) {
    // v=0 is the common neighbour of u1=1 and u2=2.
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {12, 4}}, {1, {7, 4}}, {2, {7, 4}}}), {Step::pair(1, 2, 0)});
    ASSERT_EQ(t.branches.size(), 3u);
    EXPECT_TRUE(t.legal());
    std::set<std::string> labels;
    for (const auto& b : t.branches) labels.insert(b.label);
    EXPECT_EQ(labels, (std::set<std::string>{"S", "T", "R"}));
    EXPECT_EQ(t.branches[0].steps[0].lhs, 14);
    EXPECT_EQ(t.branches[0].steps[0].rhs, 13);
}

TEST(SavePair, ShortListsFailTheBound) {
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {12, 4}}, {1, {5, 4}}, {2, {5, 4}}}), {Step::pair(1, 2, 0)});
    const auto f = t.first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_NE(f->error.find("PairBoundFails"), std::string::npos);
    EXPECT_EQ(f->lhs, 10);
    EXPECT_EQ(f->rhs, 13);
}

TEST(SavePair, AdjacentPartnersAreFlagged) {
    const PlaneGraph tri = PlaneGraph::from_edges({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
    const auto t = run_scheme_symbolic(sym(tri, {{0, {6, 1}}, {1, {6, 1}}, {2, {6, 1}}}), {Step::pair(1, 2, 0)});
    EXPECT_FALSE(t.flags().empty());
}

// ---- three-sets lemma

TEST(ThreeSets, Examples) {
    auto p = three_sets_pick({1, 2}, {2, 3}, {2}, 3);
    EXPECT_EQ(p.s, ColorSet{1});
    EXPECT_EQ(p.t, ColorSet{3});
    EXPECT_EQ(p.r, ColorSet{2});
    p = three_sets_pick({1}, {1}, {1}, 1);
    EXPECT_TRUE(p.s.empty());
    EXPECT_TRUE(p.t.empty());
    EXPECT_EQ(p.r, ColorSet{1});
    p = three_sets_pick({1}, {2}, {}, 2);
    EXPECT_EQ(p.s, ColorSet{1});
    EXPECT_EQ(p.t, ColorSet{2});
    EXPECT_TRUE(p.r.empty());
}

// Exhaustive over a 4-colour universe and sampled over 6 colours.
TEST(ThreeSets, AgreesWithBruteForce) {
    auto check = [](ColorSet a, ColorSet b, ColorSet c, int m) {
        const bool bound = a.size() + b.size() >= c.size() + m;
        if (!bound) {
            EXPECT_THROW(three_sets_pick(a, b, c, m), Error);
            return;
        }
        ASSERT_TRUE(brute_three_sets(a, b, c, m));
        const auto p = three_sets_pick(a, b, c, m);
        EXPECT_TRUE(p.s.subset_of(a - c));
        EXPECT_TRUE(p.t.subset_of(b - c));
        EXPECT_TRUE(p.r.subset_of(a & b & c));
        EXPECT_EQ(p.s.size() + p.t.size() + p.r.size(), m);
    };
    for (unsigned a = 0; a < 16; ++a)
        for (unsigned b = 0; b < 16; ++b)
            for (unsigned c = 0; c < 16; ++c)
                for (int m = 0; m <= 8; ++m) check(from_bits(a), from_bits(b), from_bits(c), m);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20000; ++i) {
        const unsigned a = rng() % 64, b = rng() % 64, c = rng() % 64;
        check(from_bits(a), from_bits(b), from_bits(c), static_cast<int>(rng() % 13));
    }
}

// ---- assumed sets

TEST(AssumeSet, UncertifiedSetIsTagged) {
    const PlaneGraph g = PlaneGraph::from_edges({2, 3}, {{2, 3}});
    SetDecl d;
    d.name = "A";
    d.size = 1;
    d.inside = {2};
    d.avoids = {3};
    d.tag = "from a colouring of the frontier";
    const auto t = run_scheme_symbolic(sym(g, {{2, {7, 4}}, {3, {7, 4}}}), {Step::assume(d)});
    EXPECT_TRUE(t.legal());
    const auto a = t.assumptions();
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NE(a.begin()->find("from a colouring of the frontier"), std::string::npos);
}

TEST(AssumeSet, RoomyListCertifies) {
    const PlaneGraph g = PlaneGraph::from_edges({0}, {});
    SetDecl d;
    d.name = "A";
    d.size = 2;
    d.inside = {0};
    const auto t = run_scheme_symbolic(sym(g, {{0, {5, 2}}}), {Step::assume(d)});
    EXPECT_TRUE(t.legal());
    EXPECT_TRUE(t.assumptions().empty());
    EXPECT_EQ(t.branches[0].steps[0].note, "certified");
}

TEST(AssumeSet, OverpackedListIsInfeasible) {
    const PlaneGraph g = PlaneGraph::from_edges({0}, {});
    SetDecl a, b;
    a.name = "A";
    a.size = 1;
    a.inside = {0};
    b = a;
    b.name = "B";
    b.disjoint_from = {"A"};
    const auto t = run_scheme_symbolic(sym(g, {{0, {1, 1}}}), {Step::assume(a), Step::assume(b)});
    const auto f = t.first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_NE(f->error.find("InfeasibleDeclaration"), std::string::npos);
}

// ---- whole schemes

TEST(RunScheme, RepairedStarSchemeAtKThree) {
    const SymbolicState st = sym(path3(), {{0, {11, 4}}, {1, {7, 4}}, {2, {7, 4}}});
    const auto t = run_scheme_symbolic(st, {Step::save(0, 1), Step::del(1), Step::del(0), Step::del(2)});
    EXPECT_TRUE(t.legal());
    EXPECT_TRUE(t.exhausted());
}

TEST(RunScheme, EmptySchemeIsLegalButLeavesVertices) {
    const auto t = run_scheme_symbolic(sym(path3(), {{0, {11, 4}}, {1, {7, 4}}, {2, {7, 4}}}), {});
    EXPECT_TRUE(t.legal());
    EXPECT_FALSE(t.exhausted());
}

TEST(RunScheme, LiteralStarOrderFailsAtKFour) {
    const Claim& star = find_claim("star");
    const auto& v = star.variants.at(1);
    ASSERT_EQ(v.label, "k=4");
    ASSERT_TRUE(v.literal.has_value());
    const auto t = run_scheme_symbolic(start_state(v, profile(v.host, v.h).fg), *v.literal);
    const auto f = t.first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->step, "<0>");
    EXPECT_EQ(f->lhs, 9);
    EXPECT_EQ(f->rhs, 10);
}

TEST(RunScheme, ConcreteRunRebuildsAValidColouring) {
    const PlaneGraph g = path3();
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const Profile p{{0, {11, 4}}, {1, {7, 4}}, {2, {7, 4}}};
        const ListAssignment la = random_lists(p, rng);
        const Demand d{{0, 4}, {1, 4}, {2, 4}};
        const auto tr = run_scheme_concrete(g, la, d, {Step::save(0, 1), Step::del(1), Step::del(0), Step::del(2)});
        ASSERT_TRUE(tr.legal);
        ASSERT_TRUE(tr.coloring.has_value());
        EXPECT_FALSE(validate_coloring(g, la, d, *tr.coloring).has_value());
    }
}

// Property: multiplying every size by m leaves each verdict unchanged.
TEST(RunSchemeProperty, HomogeneousInScale) {
    std::mt19937_64 rng(29);
    const PlaneGraph g = path3();
    for (int i = 0; i < 300; ++i) {
        std::map<int, std::pair<int, int>> fg;
        for (int v : {0, 1, 2}) {
            const int gg = 1 + static_cast<int>(rng() % 4);
            fg[v] = {gg + static_cast<int>(rng() % 10), gg};
        }
        Scheme sc;
        switch (rng() % 3) {
            case 0: sc = {Step::save(0, 1), Step::del(1), Step::del(0), Step::del(2)}; break;
            case 1: sc = {Step::pair(1, 2, 0), Step::del(0), Step::del(1), Step::del(2)}; break;
            default: sc = {Step::del(1), Step::del(2), Step::del(0)}; break;
        }
        const bool base = run_scheme_symbolic(sym(g, fg), sc).fully_passes();
        for (int m : {2, 3}) {
            auto scaled = fg;
            for (auto& [v, x] : scaled) x = {x.first * m, x.second * m};
            EXPECT_EQ(run_scheme_symbolic(sym(g, scaled), scale_scheme(sc, m)).fully_passes(), base);
        }
    }
}
