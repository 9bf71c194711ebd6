#include <random>

#include <gtest/gtest.h>

#include "chooselab/multicolor.hpp"

using namespace chooselab;

namespace {

PlaneGraph cycle(int n) {
    std::vector<int> vs;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(i);
        es.emplace_back(i, (i + 1) % n);
    }
    return PlaneGraph::from_edges(vs, es);
}

PlaneGraph k33() {
    std::vector<std::pair<int, int>> es;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) es.emplace_back(a, b);
    return PlaneGraph::from_edges({0, 1, 2, 3, 4, 5}, es);
}

std::map<int, int> uniform(const PlaneGraph& g, int x) {
    std::map<int, int> m;
    for (int v : g.vertices()) m[v] = x;
    return m;
}

std::vector<ColorSet> subsets_of_size(ColorSet from, int k) {
    std::vector<ColorSet> out;
    const auto v = from.to_vector();
    const int n = static_cast<int>(v.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        ColorSet s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1U) s.insert(v[i]);
        out.push_back(s);
    }
    return out;
}

// Oracle: product of all g-subsets, checked edge by edge.
bool brute_colorable(const PlaneGraph& g, const ListAssignment& l, const Demand& d) {
    const auto vs = g.vertices();
    std::map<int, ColorSet> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size()) return true;
        const int v = vs[i];
        for (ColorSet s : subsets_of_size(l.at(v), d.at(v))) {
            bool ok = true;
            for (int w : g.neighbors(v))
                if (pick.count(w) && !pick[w].disjoint(s)) ok = false;
            if (!ok) continue;
            pick[v] = s;
            if (rec(i + 1)) return true;
            pick.erase(v);
        }
        return false;
    };
    return rec(0);
}

// Oracle: every assignment of f-subsets of a palette of sum(f) colours.
bool brute_choosable(const PlaneGraph& g, const std::map<int, int>& f, const Demand& d) {
    int palette = 0;
    for (const auto& [v, x] : f) palette += x;
    const ColorSet all = ColorSet::range(1, palette);
    const auto vs = g.vertices();
    ListAssignment la;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == vs.size()) return brute_colorable(g, la, d);
        for (ColorSet s : subsets_of_size(all, f.at(vs[i]))) {
            la[vs[i]] = s;
            if (!rec(i + 1)) return false;
        }
        return true;
    };
    return rec(0);
}

}  // namespace

TEST(ValidateColoring, Examples) {
    const PlaneGraph e = PlaneGraph::from_edges({0, 1}, {{0, 1}});
    const ListAssignment l{{0, ColorSet{1, 2}}, {1, ColorSet{1, 2}}};
    const Demand d{{0, 1}, {1, 1}};
    EXPECT_FALSE(validate_coloring(e, l, d, {{0, ColorSet{1}}, {1, ColorSet{2}}}).has_value());
    auto bad = validate_coloring(e, l, d, {{0, ColorSet{1}}, {1, ColorSet{1}}});
    ASSERT_TRUE(bad.has_value());
    EXPECT_EQ(bad->kind, Violation::Kind::EdgeConflict);
    bad = validate_coloring(e, l, d, {{0, ColorSet{3}}, {1, ColorSet{2}}});
    ASSERT_TRUE(bad.has_value());
    EXPECT_EQ(bad->kind, Violation::Kind::NotInList);
}

TEST(ValidateColoring, StandardTwoFoldFiveColouringOfC5) {
    const PlaneGraph g = cycle(5);
    ListAssignment l;
    Demand d;
    Coloring c;
    for (int i = 0; i < 5; ++i) {
        l[i] = ColorSet::range(0, 5);
        d[i] = 2;
        c[i] = ColorSet{(2 * i) % 5, (2 * i + 1) % 5};
    }
    EXPECT_FALSE(validate_coloring(g, l, d, c).has_value());
}

TEST(FindColoring, Examples) {
    const PlaneGraph e = PlaneGraph::from_edges({0, 1}, {{0, 1}});
    EXPECT_FALSE(find_coloring(e, {{0, ColorSet{1}}, {1, ColorSet{1}}}, {{0, 1}, {1, 1}}).has_value());
    const PlaneGraph c5 = cycle(5);
    ListAssignment l;
    Demand d;
    for (int i = 0; i < 5; ++i) {
        l[i] = ColorSet::range(1, 5);
        d[i] = 2;
    }
    const auto c = find_coloring(c5, l, d);
    ASSERT_TRUE(c.has_value());
    EXPECT_FALSE(validate_coloring(c5, l, d, *c).has_value());
}

TEST(FindColoring, C4WithAnyTwoListsIsColourable) {
    const PlaneGraph g = cycle(4);
    std::size_t seen = 0;
    enumerate_assignments_canonical(g.vertices(), uniform(g, 2), 0, [&](const ListAssignment& la) {
        ++seen;
        EXPECT_TRUE(find_coloring(g, la, uniform(g, 1)).has_value());
        return false;
    });
    EXPECT_GT(seen, 0u);
}

TEST(FindColoring, AgreesWithBruteForceOnRandomInstances) {
    std::mt19937_64 rng(5);
    const std::vector<PlaneGraph> graphs{cycle(4), cycle(5), PlaneGraph::from_edges({0, 1, 2}, {{0, 1}, {1, 2}}),
                                         PlaneGraph::from_edges({0, 1, 2, 3}, {{0, 3}, {1, 3}, {2, 3}})};
    for (int trial = 0; trial < 400; ++trial) {
        const PlaneGraph& g = graphs[trial % graphs.size()];
        ListAssignment l;
        Demand d;
        for (int v : g.vertices()) {
            const int size = 1 + static_cast<int>(rng() % 4);
            std::vector<int> pool{1, 2, 3, 4, 5, 6};
            std::shuffle(pool.begin(), pool.end(), rng);
            l[v] = ColorSet::from_vector({pool.begin(), pool.begin() + size});
            d[v] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(size));
        }
        const auto c = find_coloring(g, l, d);
        EXPECT_EQ(c.has_value(), brute_colorable(g, l, d));
        if (c) {
            EXPECT_FALSE(validate_coloring(g, l, d, *c).has_value());
        }
    }
}

TEST(EnumerateCanonical, Examples) {
    std::vector<ListAssignment> got;
    auto collect = [&](const ListAssignment& la) {
        got.push_back(la);
        return false;
    };
    EXPECT_EQ(enumerate_assignments_canonical({0}, {{0, 2}}, 0, collect), 1u);
    EXPECT_EQ(got.front().at(0), (ColorSet{1, 2}));
    EXPECT_EQ(enumerate_assignments_canonical({0, 1}, {{0, 1}, {1, 1}}, 0, [](const ListAssignment&) { return false; }), 2u);
    EXPECT_EQ(enumerate_assignments_canonical({0, 1}, {{0, 2}, {1, 2}}, 0, [](const ListAssignment&) { return false; }), 3u);
}

// Property: for two vertices the classes are the overlaps 0..min(a,b).
TEST(EnumerateCanonical, EdgeClassCountIsMinPlusOne) {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            std::set<int> overlaps;
            const std::size_t n = enumerate_assignments_canonical({0, 1}, {{0, a}, {1, b}}, 0, [&](const ListAssignment& la) {
                EXPECT_EQ(la.at(0).size(), a);
                EXPECT_EQ(la.at(1).size(), b);
                overlaps.insert((la.at(0) & la.at(1)).size());
                return false;
            });
            EXPECT_EQ(n, static_cast<std::size_t>(std::min(a, b) + 1));
            EXPECT_EQ(overlaps.size(), n);
        }
}

TEST(EnumerateCanonical, CapRaisesTooLarge) {
    EXPECT_THROW(enumerate_assignments_canonical({0, 1}, {{0, 5}, {1, 5}}, 0, [](const ListAssignment&) { return false; }, 2),
                 Error);
}

TEST(Choosable, CycleAndBipartiteVerdicts) {
    const PlaneGraph c5 = cycle(5), c4 = cycle(4), k = k33();
    const auto no5 = choosable(c5, uniform(c5, 2), uniform(c5, 1));
    EXPECT_FALSE(no5.choosable);
    ASSERT_TRUE(no5.witness.has_value());
    EXPECT_FALSE(find_coloring(c5, *no5.witness, uniform(c5, 1)).has_value());
    EXPECT_TRUE(choosable(c4, uniform(c4, 2), uniform(c4, 1)).choosable);
    const auto nok = choosable(k, uniform(k, 2), uniform(k, 1));
    EXPECT_FALSE(nok.choosable);
    ASSERT_TRUE(nok.witness.has_value());
    EXPECT_FALSE(find_coloring(k, *nok.witness, uniform(k, 1)).has_value());
}

TEST(Choosable, AgreesWithExhaustiveListsOnSmallGraphs) {
    const std::vector<PlaneGraph> graphs{PlaneGraph::from_edges({0, 1}, {{0, 1}}),
                                         PlaneGraph::from_edges({0, 1, 2}, {{0, 1}, {1, 2}}),
                                         PlaneGraph::from_edges({0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}})};
    for (const auto& g : graphs)
        for (int f = 1; f <= 3; ++f)
            for (int d = 1; d <= f; ++d) {
                const auto fv = uniform(g, f), dv = uniform(g, d);
                EXPECT_EQ(choosable(g, fv, dv).choosable, brute_choosable(g, fv, dv))
                    << "n=" << g.vertex_count() << " f=" << f << " g=" << d;
            }
}

TEST(ColorableAB, Examples) {
    const PlaneGraph c5 = cycle(5);
    const auto yes = colorable_ab(c5, 5, 2);
    ASSERT_TRUE(yes.has_value());
    ListAssignment l;
    for (int v : c5.vertices()) l[v] = ColorSet::range(1, 5);
    EXPECT_FALSE(validate_coloring(c5, l, uniform(c5, 2), *yes).has_value());
    EXPECT_FALSE(colorable_ab(c5, 4, 2).has_value());
    EXPECT_TRUE(colorable_ab(PlaneGraph::from_edges({0, 1, 2}, {}), 1, 1).has_value());
}
