#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chooselab/error.hpp"
#include "chooselab/multicolor.hpp"
#include "chooselab/nice_subgraph.hpp"
#include "chooselab/plane_graph.hpp"
#include "chooselab/reduction.hpp"

namespace chooselab {

using Profile = std::map<int, std::pair<int, int>>;  // vertex -> (f, g), units of m

// One executable proof branch: a host fixture, the configuration H inside it, the
// printed (f,g) table, and the scheme that should reduce H to nothing.
struct ClaimVariant {
    std::string label;
    PlaneGraph host;
    std::set<int> h;
    Profile golden;                // values printed for this branch; may cover only part of H
    Scheme scheme;
    std::optional<Scheme> literal;  // the printed sequence, when it differs from `scheme`
    std::string literal_note;
    // Start state used instead of the nice-subgraph profile. Set for the minimum-degree
    // claim and for the branches that colour H directly from lists with demand 4.
    std::optional<Profile> start;
    bool minimality = false;  // branch argues from a colouring of G minus one vertex
};

struct Claim {
    std::string id;
    std::string statement;  // short paraphrase of what is excluded
    std::vector<std::string> depends_on;
    std::vector<ClaimVariant> variants;
    bool minimality_based() const {
        return std::any_of(variants.begin(), variants.end(), [](const ClaimVariant& v) { return v.minimality; });
    }
};

// ---------------------------------------------------------------------------
// Fixture helpers

namespace detail {

constexpr int kFirstStub = 100;

// H on the given edges, padded with pendant stubs so each vertex reaches its host
// degree. Stubs are leaves, so they never count as degree-3 neighbours.
inline PlaneGraph host_with_stubs(const std::map<int, int>& degree, const std::vector<std::pair<int, int>>& edges) {
    std::map<int, int> have;
    std::vector<int> verts;
    for (const auto& [v, d] : degree) {
        verts.push_back(v);
        have[v] = 0;
    }
    for (auto [a, b] : edges) {
        if (!degree.count(a) || !degree.count(b)) throw Error("BadFixture", "edge outside the configuration");
        ++have[a];
        ++have[b];
    }
    std::vector<std::pair<int, int>> all = edges;
    int next = kFirstStub;
    for (const auto& [v, d] : degree) {
        if (have[v] > d) throw Error("BadFixture", "vertex " + std::to_string(v) + " exceeds its degree");
        for (int i = have[v]; i < d; ++i) {
            verts.push_back(next);
            all.emplace_back(v, next++);
        }
    }
    return PlaneGraph::from_edges(verts, all);
}

inline std::set<int> keys(const std::map<int, int>& m) {
    std::set<int> s;
    for (const auto& [k, v] : m) s.insert(k);
    return s;
}

inline Step D(int u) { return Step::del(u); }
inline Step SV(int u, int v, int k = 1) { return Step::save(u, v, k); }
inline Step PR(int u1, int u2, int v) { return Step::pair(u1, u2, v, 1); }

inline ClaimVariant plain(std::string label, const std::map<int, int>& degree,
                          const std::vector<std::pair<int, int>>& edges, Profile golden, Scheme scheme) {
    ClaimVariant v;
    v.label = std::move(label);
    v.host = host_with_stubs(degree, edges);
    v.h = keys(degree);
    v.golden = std::move(golden);
    v.scheme = std::move(scheme);
    return v;
}

inline Profile uniform(std::initializer_list<int> vs, int f, int g) {
    Profile p;
    for (int v : vs) p[v] = {f, g};
    return p;
}

inline Profile merge(std::initializer_list<Profile> parts) {
    Profile out;
    for (const auto& p : parts) out.insert(p.begin(), p.end());
    return out;
}

inline SetDecl decl(std::string name, std::vector<int> inside, std::vector<int> avoids,
                    std::vector<std::string> disjoint_from, std::string tag) {
    SetDecl d;
    d.name = std::move(name);
    d.size = 1;
    d.inside = std::move(inside);
    d.avoids = std::move(avoids);
    d.disjoint_from = std::move(disjoint_from);
    d.tag = std::move(tag);
    return d;
}

// Colouring step that drops names absent from the chosen corner.
inline Step paint(int x, const std::vector<std::string>& names, const std::set<std::string>& present) {
    std::vector<std::string> keep;
    for (const auto& n : names)
        if (present.count(n)) keep.push_back(n);
    return Step::color({{x, keep}});
}

// ---------------------------------------------------------------------------
// Individual claims

inline Claim claim_min_degree() {
    Claim c{"min-degree", "every vertex has degree at least 3", {}, {}};
    for (int d : {0, 1, 2}) {
        std::map<int, int> deg{{1, d}};
        ClaimVariant v = plain("d=" + std::to_string(d), deg, {}, {}, {D(1)});
        // G - v is coloured; each of the d neighbours blocks 4 colours of L(v).
        v.start = Profile{{1, {15 - 4 * d, 4}}};
        if (d == 2) v.golden = {{1, {7, 4}}};
        c.variants.push_back(std::move(v));
    }
    return c;
}

inline Scheme star_generic(int k, bool literal) {
    Scheme s;
    for (int i = 1; i <= k - 2; ++i) {
        s.push_back(SV(0, i));
        if (!literal || i < k - 2) s.push_back(D(i));
    }
    s.push_back(D(0));
    s.push_back(D(k - 1));
    return s;
}

inline Claim claim_star() {
    Claim c{"star", "a k-vertex (k = 3..6) has at most k-2 neighbours of degree 3", {}, {}};
    for (int k = 3; k <= 6; ++k) {
        std::map<int, int> deg{{0, k}};
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= k - 1; ++i) {
            deg[i] = 3;
            e.emplace_back(0, i);
        }
        Profile gold{{0, {11, 4}}};
        for (int i = 1; i <= k - 1; ++i) gold[i] = {7, 4};
        Scheme sc = k < 6 ? star_generic(k, false)
                          : Scheme{PR(1, 2, 0), SV(0, 3), D(3), SV(0, 4), D(4), SV(0, 5), D(5), D(0), D(1), D(2)};
        ClaimVariant v = plain("k=" + std::to_string(k), deg, e, gold, sc);
        // At k=6 the printed order is the pair-save scheme above, so only k=4,5 differ.
        if (k == 4 || k == 5) {
            v.literal = star_generic(k, true);
            v.literal_note = "printed order colours v_{k-2} from u but never deletes it before u";
        }
        c.variants.push_back(std::move(v));
    }
    return c;
}

inline Claim claim_k2_no_3nbr() {
    Claim c{"k2-no-3nbr", "the k-2 degree-3 neighbours of a k-vertex (k = 4..6) have no degree-3 neighbour",
            {"star"}, {}};
    for (int k = 4; k <= 6; ++k) {
        std::map<int, int> deg{{0, k}, {10, 3}};
        std::vector<std::pair<int, int>> e{{1, 10}};
        for (int i = 1; i <= k - 2; ++i) {
            deg[i] = 3;
            e.emplace_back(0, i);
        }
        Profile gold{{10, {7, 4}}, {1, {14 - k, 4}}, {0, {10 - k, 7 - k}}};
        for (int i = 2; i <= k - 2; ++i) gold[i] = {10 - k, 3};
        Scheme sc;
        for (int i = 2; i <= k - 2; ++i) sc.push_back(D(i));
        sc.insert(sc.end(), {SV(1, 10), D(10), D(1), D(0)});
        c.variants.push_back(plain("k=" + std::to_string(k), deg, e, gold, sc));
    }
    return c;
}

inline Claim claim_cycle_44_43() {
    Claim c{"cycle-44-43", "no 4-cycle with one 3-vertex and all other vertices of degree at most 4", {"star"}, {}};
    const std::vector<std::pair<int, int>> cyc{{1, 2}, {2, 3}, {3, 4}, {4, 1}};
    c.variants.push_back(plain("d3=4,d4=4", {{1, 3}, {2, 4}, {3, 4}, {4, 4}}, cyc,
                               {{1, {9, 4}}, {2, {5, 3}}, {3, {5, 2}}, {4, {5, 3}}},
                               {PR(2, 4, 1), D(1), D(2), D(4), D(3)}));
    c.variants.push_back(plain("d3=4,d4=3", {{1, 3}, {2, 4}, {3, 4}, {4, 3}}, cyc,
                               merge({uniform({1, 4}, 10, 4), uniform({2, 3}, 6, 3)}),
                               {PR(2, 4, 1), D(1), D(2), D(4), D(3)}));
    c.variants.push_back(plain("d3=3,d4=4", {{1, 3}, {2, 4}, {3, 3}, {4, 4}}, cyc,
                               merge({uniform({1, 3}, 11, 4), uniform({2, 4}, 7, 4)}),
                               {PR(2, 4, 1), D(1), SV(3, 2), D(2), D(3), D(4)}));
    return c;
}

inline Claim claim_41_next_to_42_53() {
    Claim c{"41-next-to-42-or-53", "no 4-vertex with a degree-3 neighbour is adjacent to a 4_2- or 5_3-vertex",
            {"k2-no-3nbr"}, {}};
    for (int k = 4; k <= 5; ++k) {
        std::map<int, int> deg{{0, 3}, {1, 4}, {2, k}};
        std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}};
        Profile gold = merge({uniform({0, 1}, 6, 3), {{2, {10, 4}}}});
        Scheme sc{D(0)};
        for (int j = 3; j <= k; ++j) {
            deg[j] = 3;
            e.emplace_back(2, j);
            gold[j] = {7, 4};
            sc.push_back(SV(2, j));
            sc.push_back(D(j));
        }
        sc.push_back(D(2));
        sc.push_back(D(1));
        c.variants.push_back(plain("k=" + std::to_string(k), deg, e, gold, sc));
    }
    return c;
}

inline Claim claim_52_no_42_nbr() {
    Claim c{"52-no-42-nbr", "no 5-vertex with two degree-3 neighbours has a 4_2-neighbour", {"k2-no-3nbr"}, {}};
    c.variants.push_back(plain("main", {{1, 5}, {2, 4}, {3, 3}, {4, 3}, {5, 3}, {6, 3}},
                               {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}},
                               merge({{{1, {5, 2}}, {2, {9, 4}}}, uniform({3, 4}, 5, 3), uniform({5, 6}, 7, 4)}),
                               {D(3), D(4), SV(2, 5), D(5), SV(2, 6), D(6), D(2), D(1)}));
    return c;
}

inline Claim claim_cycle_52_334() {
    Claim c{"cycle-52-334", "no (5_{>=2},3,3,4)- or (6_{>=3},3,3,4)-cycle", {"star"}, {}};
    for (int k = 5; k <= 6; ++k) {
        std::map<int, int> deg{{1, k}, {2, 3}, {3, 3}, {4, 4}};
        std::vector<std::pair<int, int>> e{{1, 2}, {2, 3}, {3, 4}, {4, 1}};
        Profile gold{{1, {10 - k, 7 - k}}, {2, {14 - k, 4}}, {3, {10, 4}}, {4, {10 - k, 3}}};
        Scheme sc;
        for (int i = 5; i <= k; ++i) {
            deg[i] = 3;
            e.emplace_back(1, i);
            gold[i] = {10 - k, 3};
            sc.push_back(D(i));
        }
        sc.insert(sc.end(), {PR(2, 4, 3), D(3), D(2), D(4), D(1)});
        c.variants.push_back(plain("k=" + std::to_string(k), deg, e, gold, sc));
    }
    return c;
}

inline Claim claim_cycle_52_344() {
    Claim c{"cycle-52-344", "no (5_{>=2},3,4,4)-cycle", {}, {}};
    const std::map<int, int> deg{{1, 5}, {2, 3}, {3, 4}, {4, 4}, {5, 3}};
    c.variants.push_back(plain("no v3v5", deg, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}},
                               merge({uniform({1, 4}, 4, 2), uniform({3, 5}, 5, 3), {{2, {8, 4}}}}),
                               {D(5), PR(1, 3, 2), D(2), D(1), D(3), D(4)}));
    c.variants.push_back(plain("v3v5", deg, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {3, 5}},
                               merge({uniform({1, 4}, 6, 3), uniform({2, 3, 5}, 10, 4)}),
                               {PR(1, 3, 2), D(2), PR(1, 3, 5), D(5), D(1), D(3), D(4)}));
    return c;
}

// Lists of demand 4 on H, built from a colouring of G minus one vertex; the sets of
// the argument become declared set variables and the three-sets split becomes one
// branch per corner.
inline Claim claim_cycle_4444() {
    Claim c{"cycle-4444", "no (4,4,4,4_{>=1})- or (4,4,4,5_{>=2})-cycle", {"cycle-44-43", "cycle-52-344"}, {}};
    const std::string from_phi = "from the colouring of G - v1";
    for (int k = 4; k <= 5; ++k) {
        for (const std::string corner : {"S", "T", "R"}) {
            for (bool shared : {false, true}) {
                if (k == 4 && shared) continue;
                std::map<int, int> deg{{1, k}, {2, 4}, {3, 4}, {4, 4}, {5, 3}};
                std::vector<std::pair<int, int>> e{{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}};
                if (k == 5) {
                    deg[6] = 3;
                    e.emplace_back(1, 6);
                }
                ClaimVariant v;
                v.label = "k=" + std::to_string(k) + ",corner-" + corner + (k == 5 ? (shared ? ",X5=X6" : ",X5!=X6") : "");
                v.host = host_with_stubs(deg, e);
                v.h = keys(deg);
                v.minimality = true;
                Profile st;
                for (int x : v.h) st[x] = {7, 4};
                st[1] = {11, 4};
                v.start = st;
                v.golden = {};
                const std::set<std::string> present{"A2", "B3", "A3", "B4", "X5", "X6", corner};
                Scheme& s = v.scheme;
                s.push_back(Step::assume(decl("A2", {2}, {3}, {}, from_phi)));
                s.push_back(Step::assume(decl("B3", {3}, {2}, {}, from_phi)));
                s.push_back(Step::assume(decl("A3", {3}, {4}, {"B3"}, from_phi + "; A3 and B3 taken disjoint")));
                s.push_back(Step::assume(decl("B4", {4}, {3}, {}, from_phi)));
                s.push_back(Step::exclude(2, {"A3", "B3"}));
                s.push_back(Step::exclude(4, {"A3", "B3"}));
                if (corner == "S") s.push_back(Step::assume(decl("S", {2}, {1}, {"A2"}, "three-sets split")));
                if (corner == "T") s.push_back(Step::assume(decl("T", {4}, {1}, {"B4"}, "three-sets split")));
                if (corner == "R") s.push_back(Step::assume(decl("R", {1, 2, 4}, {}, {"A2", "B4"}, "three-sets split")));
                std::vector<std::string> xs{"A2", "B4", corner};
                s.push_back(Step::assume(decl("X5", {1}, {5}, xs, "room in L(v1)")));
                std::vector<std::string> x1{"X5"};
                if (k == 5 && !shared) {
                    auto xs6 = xs;
                    xs6.push_back("X5");
                    s.push_back(Step::assume(decl("X6", {1}, {6}, xs6, "room in L(v1)")));
                    x1.push_back("X6");
                }
                if (k == 5 && shared) {
                    // One set serves both: it avoids L(v5) and L(v6).
                    s.back().decl.avoids.push_back(6);
                }
                s.push_back(Step::color({{1, x1}}));
                s.push_back(D(5));
                if (k == 5) s.push_back(D(6));
                s.push_back(paint(2, {"A2", "R", "S"}, present));
                s.push_back(paint(4, {"B4", "R", "T"}, present));
                s.push_back(D(1));
                s.push_back(Step::color({{3, {"A3", "B3"}}}));
                s.push_back(D(2));
                s.push_back(D(4));
                s.push_back(D(3));
                c.variants.push_back(std::move(v));
            }
        }
    }
    return c;
}

inline Claim claim_cycle_53_343() {
    Claim c{"cycle-53-343", "no (5_3,3,4,3)- or (6_4,3,4,3)-cycle", {"star"}, {}};
    for (int k = 5; k <= 6; ++k) {
        std::map<int, int> deg{{1, k}, {2, 3}, {3, 4}, {4, 3}};
        std::vector<std::pair<int, int>> e{{1, 2}, {2, 3}, {3, 4}, {4, 1}};
        Profile gold{{1, {11 - k, 8 - k}}, {2, {15 - k, 4}}, {4, {15 - k, 4}}, {3, {7, 4}}};
        Scheme sc;
        for (int i = 5; i <= k; ++i) {
            deg[i] = 3;
            e.emplace_back(1, i);
            gold[i] = {11 - k, 3};
            sc.push_back(D(i));
        }
        sc.insert(sc.end(), {PR(1, 3, 2), D(2), SV(4, 3), D(3), D(4), D(1)});
        c.variants.push_back(plain("k=" + std::to_string(k), deg, e, gold, sc));
    }
    return c;
}

inline Claim claim_cycle_51_434() {
    Claim c{"cycle-51-434", "no (5_{>=1},4,3,4)-cycle", {}, {}};
    const std::map<int, int> deg{{1, 5}, {2, 4}, {3, 3}, {4, 4}, {5, 3}};
    c.variants.push_back(plain("case1:v3v5", deg, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {3, 5}},
                               merge({{{1, {5, 2}}, {3, {13, 4}}, {5, {9, 4}}}, uniform({2, 4}, 5, 3)}),
                               {PR(2, 5, 3), D(3), D(4), D(5), D(2), D(1)}));
    const std::string from_phi = "from the colouring of G - v3";
    // Two readings of the 9-subset Z of L(v3): as the new list of v3, or as a side set
    // that S and T avoid while L(v3) keeps its other colours.
    for (bool trimmed : {true, false}) {
        for (const std::string corner : {"S", "T", "R"}) {
            ClaimVariant v;
            v.label = std::string("case2:") + (trimmed ? "Z-as-list" : "Z-as-set") + ",corner-" + corner;
            v.host = host_with_stubs(deg, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}});
            v.h = keys(deg);
            v.minimality = true;
            v.start = Profile{{1, {7, 4}}, {2, {7, 4}}, {3, {11, 4}}, {4, {7, 4}}, {5, {7, 4}}};
            const std::set<std::string> present{corner};
            Scheme& s = v.scheme;
            for (int i : {2, 4, 5}) s.push_back(Step::assume(decl("A" + std::to_string(i), {i}, {1}, {}, from_phi)));
            s.push_back(Step::assume(decl("B2", {1}, {2}, {}, from_phi)));
            s.push_back(Step::assume(decl("B4", {1}, {4}, {"B2"}, from_phi + "; B-sets taken disjoint")));
            s.push_back(Step::assume(decl("B5", {1}, {5}, {"B2", "B4"}, from_phi + "; B-sets taken disjoint")));
            std::vector<int> zav;
            if (trimmed) {
                s.push_back(Step::exclude(3, {"A2", "A4"}));
                s.push_back(Step::trim(3, 9));
                zav = {3};
            } else {
                SetDecl z = decl("Z", {3}, {}, {"A2", "A4"}, "9-subset of L(v3) avoiding A2, A4");
                z.size = 9;
                s.push_back(Step::assume(z));
            }
            std::vector<std::string> zdis = trimmed ? std::vector<std::string>{} : std::vector<std::string>{"Z"};
            auto with = [&](std::vector<std::string> a) {
                a.insert(a.end(), zdis.begin(), zdis.end());
                return a;
            };
            if (corner == "S") s.push_back(Step::assume(decl("S", {2}, zav, with({"B4", "B5"}), "three-sets split")));
            if (corner == "T") s.push_back(Step::assume(decl("T", {4}, zav, with({"B2", "B5"}), "three-sets split")));
            if (corner == "R") {
                std::vector<int> rin{2, 4};
                if (trimmed) rin.push_back(3);
                s.push_back(Step::assume(decl("R", rin, {}, {"B2", "B4", "B5"}, "three-sets split")));
            }
            if (corner != "T") s.push_back(paint(2, {"S", "R"}, present));
            if (corner != "S") s.push_back(paint(4, {"T", "R"}, present));
            s.push_back(D(3));
            s.push_back(Step::color({{1, {"B2", "B4", "B5"}}}));
            for (int x : {2, 4, 5, 1}) s.push_back(D(x));
            c.variants.push_back(std::move(v));
        }
    }
    return c;
}

inline Claim claim_cycle_63_434() {
    Claim c{"cycle-63-434", "no (6_{>=3},4,3,4)-cycle", {"cycle-52-334"}, {}};
    ClaimVariant v = plain("main", {{1, 6}, {2, 4}, {3, 3}, {4, 4}, {5, 3}, {6, 3}, {7, 3}},
                           {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {1, 6}, {1, 7}},
                           merge({uniform({1, 3}, 11, 4), uniform({2, 4, 5, 6, 7}, 7, 4)}),
                           {PR(2, 4, 3), D(3), PR(2, 4, 1), SV(1, 5), D(5), SV(1, 6), D(6), SV(1, 7), D(7), D(1),
                            D(2), D(4)});
    // No scheme of depth <= 3 certifies this profile; with one more colour at vertex 1 a
    // depth-4 scheme exists, so this variant is expected to fail.
    c.variants.push_back(std::move(v));
    return c;
}

inline Claim claim_5334_no_41() {
    Claim c{"5-vertex-on-5334-no-41-nbr",
            "a 5-vertex on a (5,3,3,4)-cycle has no 4_{>=1}-neighbour off the cycle", {"star", "k2-no-3nbr"}, {}};
    c.variants.push_back(plain("v6!=v3", {{1, 5}, {2, 3}, {3, 3}, {4, 4}, {5, 4}, {6, 3}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 6}},
                               merge({{{2, {9, 4}}, {3, {10, 4}}}, uniform({1, 5}, 4, 2), uniform({4, 6}, 5, 3)}),
                               {D(6), D(5), PR(2, 4, 3), D(3), D(2), D(4), D(1)}));
    c.variants.push_back(plain("v6=v3", {{1, 5}, {2, 3}, {3, 3}, {4, 4}, {5, 4}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 3}},
                               merge({{{1, {5, 2}}, {2, {9, 4}}, {3, {13, 4}}}, uniform({4, 5}, 5, 3)}),
                               {PR(2, 4, 3), D(3), D(5), D(2), D(4), D(1)}));
    return c;
}

inline Claim claim_path_334_43() {
    Claim c{"path-334-43", "no (3,3,4,4,3)- or (3,3,4,4,4,3)-path", {"star", "k2-no-3nbr", "cycle-44-43"}, {}};
    for (int k = 5; k <= 6; ++k) {
        std::map<int, int> deg;
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= k; ++i) {
            deg[i] = (i <= 2 || i == k) ? 3 : 4;
            if (i > 1) e.emplace_back(i - 1, i);
        }
        Profile gold{{1, {7, 4}}, {2, {10, 4}}, {3, {5, 3}}, {k, {5, 3}}};
        for (int j = 4; j <= k - 1; ++j) gold[j] = {10 - k, 2};
        Scheme sc = k == 5 ? Scheme{D(5), D(4), SV(2, 1), D(1), D(2), D(3)}
                           : Scheme{D(6), D(5), SV(3, 4), D(4), SV(2, 1), D(1), D(2), D(3)};
        c.variants.push_back(plain("k=" + std::to_string(k), deg, e, gold, sc));
    }
    return c;
}

inline Claim claim_path_3434_43() {
    Claim c{"path-3434-43", "no (3,4,3,4,3)- or (3,4,3,4,4,3)-path",
            {"k2-no-3nbr", "cycle-44-43", "41-next-to-42-or-53"}, {}};
    for (int k = 5; k <= 6; ++k) {
        std::map<int, int> deg;
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= k; ++i) {
            deg[i] = (i == 1 || i == 3 || i == k) ? 3 : 4;
            if (i > 1) e.emplace_back(i - 1, i);
        }
        Profile gold = merge({uniform({1, 2}, 6, 3), {{3, {9, 4}}}});
        if (k == 5) {
            gold[4] = gold[5] = {6, 3};
        } else {
            gold[4] = gold[6] = {5, 3};
            gold[5] = {5, 2};
        }
        Scheme sc{D(1)};
        for (int i = k; i >= 5; --i) sc.push_back(D(i));
        sc.insert(sc.end(), {SV(3, 2), D(2), D(3), D(4)});
        c.variants.push_back(plain("k=" + std::to_string(k), deg, e, gold, sc));
    }
    return c;
}

inline Claim claim_path_41x3() {
    Claim c{"path-41-41-41", "no (4_{>=1},4_{>=1},4_{>=1})-path", {"cycle-44-43", "path-334-43"}, {}};
    c.variants.push_back(plain("main", {{1, 4}, {2, 4}, {3, 4}, {4, 3}, {5, 3}, {6, 3}},
                               {{1, 2}, {2, 3}, {1, 4}, {3, 5}, {2, 6}},
                               merge({{{2, {9, 4}}, {6, {7, 4}}}, uniform({1, 3, 4, 5}, 6, 3)}),
                               {D(4), D(5), SV(2, 6), D(6), SV(2, 3), D(3), D(2), D(1)}));
    return c;
}

inline Claim claim_path_3443443() {
    Claim c{"path-3443443", "no (3,4,4,3,4,4,3)-path",
            {"k2-no-3nbr", "cycle-44-43", "path-334-43", "path-41-41-41"}, {}};
    std::map<int, int> deg;
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= 7; ++i) {
        deg[i] = (i == 1 || i == 4 || i == 7) ? 3 : 4;
        if (i > 1) e.emplace_back(i - 1, i);
    }
    c.variants.push_back(plain("main", deg, e,
                               merge({uniform({1, 3, 5, 7}, 5, 3), uniform({2, 6}, 5, 2), {{4, {9, 4}}}}),
                               {D(1), D(2), D(7), D(6), SV(4, 3, 2), D(3), D(4), D(5)}));
    return c;
}

inline Claim claim_path_42_4_41() {
    Claim c{"path-42-4-41", "no (4_2,4,4_{>=1})- or (4_2,5_{>=1},4_{>=1})-path",
            {"star", "k2-no-3nbr", "cycle-44-43", "cycle-51-434", "path-3434-43", "5-vertex-on-5334-no-41-nbr"},
            {}};
    for (int k = 4; k <= 5; ++k) {
        std::map<int, int> deg{{1, 4}, {2, 3}, {3, 3}, {4, k}, {5, 4}, {6, 3}};
        std::vector<std::pair<int, int>> e{{1, 4}, {4, 5}, {1, 2}, {1, 3}, {5, 6}};
        Profile gold = merge({uniform({2, 3}, 7, 4), {{6, {5, 3}}}});
        if (k == 4) {
            gold[1] = {10, 4};
            gold[4] = {5, 3};
            gold[5] = {5, 2};
        } else {
            deg[7] = 3;
            e.emplace_back(4, 7);
            gold[1] = {9, 4};
            gold[4] = gold[5] = {4, 2};
            gold[7] = {5, 3};
        }
        Scheme head;
        for (int i = k + 2; i >= 5; --i) head.push_back(D(i));
        head.insert(head.end(), {SV(1, 2), D(2), SV(1, 3), D(3), D(1)});
        Scheme sc = head, lit = head;
        sc.push_back(D(4));
        lit.push_back(D(2));
        ClaimVariant v = plain("k=" + std::to_string(k), deg, e, gold, sc);
        v.literal = lit;
        v.literal_note = "printed sequence ends by deleting v2 a second time; v4 is never deleted";
        c.variants.push_back(std::move(v));
    }
    return c;
}

inline Claim claim_path_31_52_41() {
    Claim c{"path-31-52-41", "no (3_1,5_{>=2},4_{>=1})-path", {"star", "k2-no-3nbr", "cycle-52-334"}, {}};
    c.variants.push_back(plain("main", {{1, 3}, {2, 5}, {3, 4}, {4, 3}, {5, 3}, {6, 3}},
                               {{1, 2}, {2, 3}, {1, 4}, {2, 5}, {3, 6}},
                               merge({{{1, {9, 4}}, {4, {7, 4}}}, uniform({5, 6}, 5, 3), uniform({2, 3}, 4, 2)}),
                               {D(6), D(3), D(5), SV(1, 4), D(4), D(1), D(2)}));
    return c;
}

inline Claim claim_5343_no_41() {
    Claim c{"5-vertex-on-5343-no-41-nbr", "a 5-vertex on a (5,3,4,3)-cycle has no 4_{>=1}-neighbour",
            {"star", "k2-no-3nbr", "41-next-to-42-or-53"}, {}};
    c.variants.push_back(plain("main", {{1, 5}, {2, 3}, {3, 4}, {4, 3}, {5, 4}, {6, 3}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 6}},
                               merge({{{3, {7, 4}}, {5, {5, 2}}}, uniform({2, 4}, 10, 4), uniform({1, 6}, 5, 3)}),
                               {D(6), D(5), PR(1, 3, 2), D(2), SV(4, 3), D(3), D(4), D(1)}));
    return c;
}

inline Claim claim_cycle_5345_51() {
    Claim c{"cycle-5345-51",
            "on a (5,3,4,5_{>=1})-cycle the 5-vertex next to the 3-vertex has no other degree-3 neighbour",
            {"k2-no-3nbr"}, {}};
    const std::map<int, int> deg{{1, 5}, {2, 3}, {3, 4}, {4, 5}, {5, 3}, {6, 3}};
    const std::vector<std::pair<int, int>> base{{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {4, 6}};
    auto with = [&](std::pair<int, int> extra) {
        auto e = base;
        e.push_back(extra);
        return e;
    };
    c.variants.push_back(plain("case1:v3v5", deg, with({3, 5}),
                               merge({uniform({1, 6}, 5, 3), uniform({2, 5}, 10, 4), {{3, {9, 4}}, {4, {5, 2}}}}),
                               {D(6), PR(1, 3, 2), D(2), PR(1, 3, 5), D(5), D(1), D(3), D(4)}));
    c.variants.push_back(plain("case1:v2v6", deg, with({2, 6}),
                               merge({uniform({1, 4}, 4, 2), uniform({3, 5}, 5, 3), {{2, {12, 4}}, {6, {9, 4}}}}),
                               {D(5), PR(1, 6, 2), D(2), D(1), D(3), D(6), D(4)}));
    c.variants.push_back(plain("case1:v5v6", deg, with({5, 6}),
                               merge({uniform({1, 3}, 5, 3), uniform({2, 6}, 9, 4), {{4, {5, 2}}, {5, {10, 4}}}}),
                               {PR(1, 3, 2), D(2), D(3), PR(1, 6, 5), D(5), D(6), D(1), D(4)}));
    const std::string from_phi = "from the colouring of G - v2";
    for (const std::string corner : {"S", "T", "R"}) {
        ClaimVariant v;
        v.label = "case2:corner-" + corner;
        v.host = host_with_stubs(deg, base);
        v.h = keys(deg);
        v.minimality = true;
        Profile st;
        for (int x : v.h) st[x] = {7, 4};
        st[2] = {11, 4};
        v.start = st;
        const std::set<std::string> present{"A4", "A5", "B1", "B3", "B6", "C3", corner};
        Scheme& s = v.scheme;
        s.push_back(Step::assume(decl("A4", {1}, {4}, {}, from_phi)));
        s.push_back(Step::assume(decl("A5", {1}, {5}, {"A4"}, from_phi + "; A4 and A5 taken disjoint")));
        s.push_back(Step::assume(decl("B1", {4}, {1}, {}, from_phi)));
        s.push_back(Step::assume(decl("B3", {4}, {3}, {"B1"}, from_phi + "; B-sets taken disjoint")));
        s.push_back(Step::assume(decl("B6", {4}, {6}, {"B1", "B3"}, from_phi + "; B-sets taken disjoint")));
        s.push_back(Step::assume(decl("C3", {3}, {4}, {}, from_phi)));
        s.push_back(Step::exclude(2, {"A4", "A5", "C3"}));
        s.push_back(Step::trim(2, 8));
        if (corner == "S")
            s.push_back(Step::assume(decl("S", {1}, {2}, {"B3", "B6", "A4", "A5"}, "three-sets split")));
        if (corner == "T") s.push_back(Step::assume(decl("T", {3}, {2}, {"B1", "B6", "C3"}, "three-sets split")));
        if (corner == "R")
            s.push_back(Step::assume(
                decl("R", {1, 2, 3}, {}, {"B1", "B3", "B6", "A4", "A5", "C3"}, "three-sets split")));
        s.push_back(paint(1, {"A4", "A5", "R", "S"}, present));
        s.push_back(D(5));
        s.push_back(paint(3, {"C3", "R", "T"}, present));
        s.push_back(D(2));
        s.push_back(Step::color({{4, {"B1", "B3", "B6"}}}));
        for (int x : {6, 1, 3, 4}) s.push_back(D(x));
        c.variants.push_back(std::move(v));
    }
    return c;
}

inline Claim claim_5434_no_42() {
    Claim c{"5-vertex-on-5434-no-42-nbr", "the 5-vertex of a (5,4,3,4)-cycle has no 4_2-neighbour",
            {"star", "k2-no-3nbr", "cycle-44-43", "path-3434-43"}, {}};
    c.variants.push_back(plain("case1", {{1, 5}, {2, 4}, {3, 3}, {4, 4}, {5, 4}, {6, 3}, {7, 3}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 6}, {5, 7}},
                               merge({{{1, {5, 2}}}, uniform({2, 4}, 5, 3), uniform({3, 5}, 9, 4),
                                      uniform({6, 7}, 7, 4)}),
                               {PR(2, 4, 3), D(3), D(2), D(4), SV(5, 6), D(6), SV(5, 7), D(7), D(5), D(1)}));
    c.variants.push_back(plain("case2", {{1, 5}, {2, 4}, {3, 3}, {4, 4}, {5, 4}, {6, 3}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 6}, {5, 3}},
                               merge({{{1, {5, 2}}, {3, {13, 4}}, {5, {9, 4}}, {6, {7, 4}}}, uniform({2, 4}, 5, 3)}),
                               {PR(4, 5, 3), D(3), D(4), D(2), SV(5, 6), D(6), D(5), D(1)}));
    return c;
}

inline Claim claim_adjacent_5334_5344() {
    Claim c{"adjacent-5334-5344", "the 5-3 edge of a (5,3,3,4)-cycle lies on no (5,3,4,4)-cycle", {"cycle-44-43"}, {}};
    c.variants.push_back(plain("main", {{1, 5}, {2, 3}, {3, 3}, {4, 4}, {5, 4}, {6, 4}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {2, 5}, {5, 6}, {6, 1}},
                               merge({uniform({1, 6}, 4, 2), uniform({4, 5}, 5, 3), {{2, {12, 4}}, {3, {10, 4}}}}),
                               {SV(4, 1), PR(1, 3, 2), D(2), D(5), D(6), D(1), D(3), D(4)}));
    return c;
}

inline Claim claim_6_two_6334() {
    Claim c{"6-vertex-two-6334", "a 6-vertex lies on at most one of two nonadjacent (6,3,3,4)-cycles",
            {"star", "k2-no-3nbr"}, {}};
    c.variants.push_back(plain("main", {{1, 6}, {2, 3}, {3, 3}, {4, 4}, {5, 3}, {6, 3}, {7, 4}},
                               {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 6}, {6, 7}, {7, 1}},
                               merge({{{1, {5, 2}}}, uniform({2, 5}, 9, 4), uniform({3, 6}, 10, 4),
                                      uniform({4, 7}, 5, 3)}),
                               {PR(2, 4, 3), D(3), D(2), D(4), PR(5, 7, 6), D(6), D(5), D(7), D(1)}));
    return c;
}

}  // namespace detail

// The whole catalog, in dependency order.
inline const std::vector<Claim>& claim_catalog() {
    static const std::vector<Claim> all = [] {
        using namespace detail;
        return std::vector<Claim>{
            claim_min_degree(),    claim_star(),          claim_k2_no_3nbr(),        claim_cycle_44_43(),
            claim_41_next_to_42_53(), claim_52_no_42_nbr(), claim_cycle_52_334(),   claim_cycle_52_344(),
            claim_cycle_4444(),    claim_cycle_53_343(),  claim_cycle_51_434(),      claim_cycle_63_434(),
            claim_5334_no_41(),    claim_path_334_43(),   claim_path_3434_43(),      claim_path_41x3(),
            claim_path_3443443(),  claim_path_42_4_41(),  claim_path_31_52_41(),     claim_5343_no_41(),
            claim_cycle_5345_51(), claim_5434_no_42(),    claim_adjacent_5334_5344(), claim_6_two_6334(),
        };
    }();
    return all;
}

inline const Claim& find_claim(const std::string& id) {
    for (const auto& c : claim_catalog())
        if (c.id == id) return c;
    throw Error("UnknownClaim", id);
}

inline const ClaimVariant& find_variant(const Claim& c, const std::string& label) {
    for (const auto& v : c.variants)
        if (v.label == label) return v;
    throw Error("UnknownVariant", c.id + "/" + label);
}

// ---------------------------------------------------------------------------
// Verification

struct ProfileMismatch {
    int vertex;
    std::pair<int, int> expected;
    std::optional<std::pair<int, int>> got;
};

struct VariantReport {
    std::string label;
    bool triangle_free = true;
    bool nice_checked = false;  // false for custom start profiles
    NiceVerdict nice;
    Profile start;
    std::vector<ProfileMismatch> mismatches;
    std::size_t golden_values = 0;
    SchemeTrace trace;
    std::optional<SchemeTrace> literal_trace;
    std::string literal_note;
    bool minimality = false;
    std::size_t concrete_runs = 0;
    std::size_t concrete_failures = 0;

    bool scheme_passes() const { return trace.fully_passes(); }
    bool passes() const {
        return triangle_free && (!nice_checked || nice.nice) && mismatches.empty() && scheme_passes() &&
               concrete_failures == 0;
    }
};

struct ClaimReport {
    std::string id;
    std::string statement;
    std::vector<std::string> depends_on;
    std::vector<VariantReport> variants;
    bool skipped = false;
    bool passes() const {
        return !skipped && std::all_of(variants.begin(), variants.end(), [](const VariantReport& v) { return v.passes(); });
    }
};

struct VerifyOptions {
    int scale = 1;                      // every size multiplied by this
    std::size_t concrete_samples = 64;  // random list assignments per plain variant
    std::uint64_t seed = 7;
    std::size_t concrete_max_vertices = 7;
};

inline Profile scale_profile(Profile p, int m) {
    for (auto& [v, fg] : p) fg = {fg.first * m, fg.second * m};
    return p;
}

// Random lists of the given sizes over a palette just large enough to force overlaps.
inline ListAssignment random_lists(const Profile& p, std::mt19937_64& rng) {
    int maxf = 0;
    for (const auto& [v, fg] : p) maxf = std::max(maxf, fg.first);
    const int palette = std::min(ColorSet::kMaxColor, maxf + static_cast<int>(rng() % 8));
    std::vector<int> pool;
    for (int c = 0; c < palette; ++c) pool.push_back(c);
    ListAssignment la;
    for (const auto& [v, fg] : p) {
        std::shuffle(pool.begin(), pool.end(), rng);
        la[v] = ColorSet::from_vector({pool.begin(), pool.begin() + fg.first});
    }
    return la;
}

inline PlaneGraph induced(const PlaneGraph& g, const std::set<int>& h) {
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : g.edges())
        if (h.count(a) && h.count(b)) e.emplace_back(a, b);
    return PlaneGraph::from_edges({h.begin(), h.end()}, e);
}

inline SymbolicState start_state(const ClaimVariant& v, const Profile& p) {
    return SymbolicState::make(induced(v.host, v.h), p);
}

inline VariantReport verify_variant(const ClaimVariant& v, const VerifyOptions& opt = {}) {
    VariantReport r;
    r.label = v.label;
    r.minimality = v.minimality;
    r.triangle_free = v.host.triangle_free();
    r.literal_note = v.literal_note;
    Profile computed;
    if (v.start) {
        computed = *v.start;
    } else {
        r.nice_checked = true;
        r.nice = is_nice(v.host, v.h);
        if (r.nice.nice) computed = profile(v.host, v.h).fg;
    }
    for (const auto& [x, fg] : v.golden) {
        ++r.golden_values;
        auto it = computed.find(x);
        if (it == computed.end() || it->second != fg)
            r.mismatches.push_back({x, fg, it == computed.end() ? std::nullopt : std::optional(it->second)});
    }
    if (computed.empty()) return r;
    r.start = scale_profile(computed, opt.scale);
    const Scheme sc = scale_scheme(v.scheme, opt.scale);
    r.trace = run_scheme_symbolic(start_state(v, r.start), sc);
    if (v.literal) r.literal_trace = run_scheme_symbolic(start_state(v, r.start), scale_scheme(*v.literal, opt.scale));
    if (!v.minimality && r.trace.fully_passes() && v.h.size() <= opt.concrete_max_vertices &&
        std::all_of(r.start.begin(), r.start.end(), [](const auto& e) { return e.second.first <= 40; })) {
        std::mt19937_64 rng(opt.seed);
        const PlaneGraph hg = induced(v.host, v.h);
        Demand dem;
        for (const auto& [x, fg] : r.start) dem[x] = fg.second;
        for (std::size_t i = 0; i < opt.concrete_samples; ++i) {
            ListAssignment la = random_lists(r.start, rng);
            ConcreteTrace ct = run_scheme_concrete(hg, la, dem, sc);
            ++r.concrete_runs;
            if (!ct.legal || !ct.exhausted || !ct.coloring) ++r.concrete_failures;
        }
    }
    return r;
}

inline ClaimReport verify_claim(const Claim& c, const VerifyOptions& opt = {}) {
    ClaimReport r{c.id, c.statement, c.depends_on, {}, false};
    for (const auto& v : c.variants) r.variants.push_back(verify_variant(v, opt));
    return r;
}

inline ClaimReport verify_claim(const std::string& id, const VerifyOptions& opt = {}) {
    return verify_claim(find_claim(id), opt);
}

struct CatalogSummary {
    std::vector<ClaimReport> claims;
    std::size_t passed() const {
        return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [](const ClaimReport& c) { return c.passes(); }));
    }
    std::size_t skipped() const {
        return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [](const ClaimReport& c) { return c.skipped; }));
    }
    bool all_pass() const { return passed() + skipped() == claims.size() && skipped() == 0; }
};

inline CatalogSummary verify_all(const VerifyOptions& opt = {}, const std::set<std::string>& exclude = {}) {
    CatalogSummary s;
    for (const auto& c : claim_catalog()) {
        if (exclude.count(c.id)) {
            ClaimReport r{c.id, c.statement, c.depends_on, {}, true};
            s.claims.push_back(r);
            continue;
        }
        s.claims.push_back(verify_claim(c, opt));
    }
    return s;
}

// Edges of the citation graph between claims; the catalog order is a topological order.
inline std::vector<std::pair<std::string, std::string>> claim_dependency_edges() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : claim_catalog())
        for (const auto& d : c.depends_on) out.emplace_back(d, c.id);
    return out;
}

// Vertices of H whose f can drop by one without breaking this variant's scheme.
inline std::vector<int> slack_vertices(const ClaimVariant& v) {
    Profile base = v.start ? *v.start : profile(v.host, v.h).fg;
    std::vector<int> out;
    for (const auto& [x, fg] : base) {
        Profile p = base;
        p[x].first -= 1;
        if (p[x].first < 0) continue;
        if (run_scheme_symbolic(start_state(v, p), v.scheme).fully_passes()) out.push_back(x);
    }
    return out;
}

}  // namespace chooselab
