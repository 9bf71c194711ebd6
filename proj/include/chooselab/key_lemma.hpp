#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chooselab/error.hpp"
#include "chooselab/multicolor.hpp"
#include "chooselab/plane_graph.hpp"

// Brute-force check of the partial colourings that turn a frontier component with
// 7-colour lists and demand 4 into the reduced (f,g) profile, at unit scale.

namespace chooselab {

enum class FrontierCase { P2, P3, P4, K13 };

inline std::string to_string(FrontierCase c) {
    switch (c) {
        case FrontierCase::P2: return "P2";
        case FrontierCase::P3: return "P3";
        case FrontierCase::P4: return "P4";
        case FrontierCase::K13: return "K13";
    }
    return "?";
}

inline FrontierCase parse_frontier_case(const std::string& s) {
    if (s == "P2") return FrontierCase::P2;
    if (s == "P3") return FrontierCase::P3;
    if (s == "P4") return FrontierCase::P4;
    if (s == "K13") return FrontierCase::K13;
    throw Error("UnknownCase", s);
}

// Vertices are 1..n; for K13 the centre is 4.
inline PlaneGraph frontier_case_graph(FrontierCase c) {
    switch (c) {
        case FrontierCase::P2: return PlaneGraph::from_edges({1, 2}, {{1, 2}});
        case FrontierCase::P3: return PlaneGraph::from_edges({1, 2, 3}, {{1, 2}, {2, 3}});
        case FrontierCase::P4: return PlaneGraph::from_edges({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
        case FrontierCase::K13: return PlaneGraph::from_edges({1, 2, 3, 4}, {{1, 4}, {2, 4}, {3, 4}});
    }
    throw Error("UnknownCase", "frontier case");
}

// Reduced (f,g) the construction must reach for each vertex.
inline std::map<int, std::pair<int, int>> frontier_case_targets(FrontierCase c) {
    switch (c) {
        case FrontierCase::P2: return {{1, {6, 3}}, {2, {6, 3}}};
        case FrontierCase::P3: return {{1, {5, 3}}, {2, {5, 2}}, {3, {5, 3}}};
        case FrontierCase::P4: return {{1, {5, 3}}, {2, {4, 2}}, {3, {4, 2}}, {4, {5, 3}}};
        case FrontierCase::K13: return {{1, {4, 3}}, {2, {4, 3}}, {3, {4, 3}}, {4, {4, 1}}};
    }
    return {};
}

namespace detail {

inline ColorSet one(int c) { return ColorSet{c}; }

// Applies psi on the component and checks the reduced sizes against the targets.
inline bool meets_targets(const PlaneGraph& g, const ListAssignment& l, const Coloring& psi,
                          const std::map<int, std::pair<int, int>>& targets) {
    for (int v : g.vertices()) {
        const ColorSet pv = psi.at(v);
        if (!pv.subset_of(l.at(v))) return false;
        for (int w : g.neighbors(v))
            if (!pv.disjoint(psi.at(w))) return false;
    }
    for (int v : g.vertices()) {
        ColorSet rest = l.at(v) - psi.at(v);
        for (int w : g.neighbors(v)) rest -= psi.at(w);
        const auto [f, gg] = targets.at(v);
        if (rest.size() < f || 4 - psi.at(v).size() != gg) return false;
    }
    return true;
}

// Every way of extending `base` to a k-subset of `pool`; stops on the first true.
inline bool for_each_superset(ColorSet base, ColorSet pool, int k, const std::function<bool(ColorSet)>& visit) {
    if (!base.subset_of(pool) || base.size() > k) return false;
    return for_each_combination((pool - base).to_vector(), k - base.size(), 0, base, visit);
}

inline bool construct_p2(const PlaneGraph& g, const ListAssignment& l, const std::map<int, std::pair<int, int>>& t) {
    for (int a : (l.at(1) - l.at(2)).to_vector())
        for (int b : (l.at(2) - l.at(1)).to_vector())
            if (meets_targets(g, l, {{1, one(a)}, {2, one(b)}}, t)) return true;
    return false;
}

inline bool construct_p3(const PlaneGraph& g, const ListAssignment& l, const std::map<int, std::pair<int, int>>& t) {
    const ColorSet l1 = l.at(1), l2 = l.at(2), l3 = l.at(3);
    for (int a : (l1 - l2).to_vector())
        for (int c : (l3 - l2).to_vector())
            for (int b1 : (l2 - l1).to_vector())
                for (int b2 : (l2 - l3).to_vector()) {
                    bool ok = for_each_superset(ColorSet{b1, b2}, l2, 2, [&](ColorSet b) {
                        return meets_targets(g, l, {{1, one(a)}, {2, b}, {3, one(c)}}, t);
                    });
                    if (ok) return true;
                }
    return false;
}

inline bool construct_p4(const PlaneGraph& g, const ListAssignment& l, const std::map<int, std::pair<int, int>>& t) {
    const ColorSet l1 = l.at(1), l2 = l.at(2), l3 = l.at(3), l4 = l.at(4);
    for (int a3 : (l3 - l4).to_vector())
        for (int b2 : (l2 - l1).to_vector()) {
            if (a3 == b2) continue;
            for (int a2 : (l2 - l3).to_vector())
                for (int b3 : (l3 - l2).to_vector()) {
                    bool ok = for_each_superset(ColorSet{a2, b2}, l2 - one(a3), 2, [&](ColorSet bb) {
                        return for_each_superset(ColorSet{a3, b3}, l3 - bb, 2, [&](ColorSet cc) {
                            for (int a1 : (l1 - l2).to_vector())
                                for (int b4 : (l4 - l3).to_vector())
                                    if (meets_targets(g, l, {{1, one(a1)}, {2, bb}, {3, cc}, {4, one(b4)}}, t))
                                        return true;
                            return false;
                        });
                    });
                    if (ok) return true;
                }
        }
    return false;
}

inline bool construct_k13(const PlaneGraph& g, const ListAssignment& l, const std::map<int, std::pair<int, int>>& t) {
    const ColorSet c = l.at(4);
    for (int b1 : (c - l.at(1)).to_vector())
        for (int b2 : (c - l.at(2)).to_vector())
            for (int b3 : (c - l.at(3)).to_vector()) {
                bool ok = for_each_superset(ColorSet{b1, b2, b3}, c, 3, [&](ColorSet bb) {
                    for (int a1 : (l.at(1) - c).to_vector())
                        for (int a2 : (l.at(2) - c).to_vector())
                            for (int a3 : (l.at(3) - c).to_vector())
                                if (meets_targets(g, l, {{1, one(a1)}, {2, one(a2)}, {3, one(a3)}, {4, bb}}, t))
                                    return true;
                    return false;
                });
                if (ok) return true;
            }
    return false;
}

}  // namespace detail

// True when the construction for this case exists on lists `l` (unit scale).
inline bool frontier_construction_exists(FrontierCase c, const ListAssignment& l) {
    const PlaneGraph g = frontier_case_graph(c);
    const auto t = frontier_case_targets(c);
    switch (c) {
        case FrontierCase::P2: return detail::construct_p2(g, l, t);
        case FrontierCase::P3: return detail::construct_p3(g, l, t);
        case FrontierCase::P4: return detail::construct_p4(g, l, t);
        case FrontierCase::K13: return detail::construct_k13(g, l, t);
    }
    return false;
}

struct KeyLemmaReport {
    FrontierCase which = FrontierCase::P2;
    std::string mode;                     // "exhaustive" or "sampled(seed=..., n=...)"
    std::size_t classes = 0;              // list assignments examined
    std::size_t colorable = 0;            // of those, how many admit an (L,4)-colouring of the component
    std::size_t verified = 0;             // colourable ones where the construction was found
    std::vector<ListAssignment> counterexamples;
    bool passed() const { return counterexamples.empty() && verified == colorable; }
};

struct KeyLemmaOptions {
    std::size_t cap = max_cells_cap();
    std::uint64_t seed = 20240601;
    std::size_t samples = 20000;
};

inline KeyLemmaReport verify_key_lemma_case(FrontierCase c, const KeyLemmaOptions& opt = {}) {
    const PlaneGraph g = frontier_case_graph(c);
    std::map<int, int> f;
    Demand d;
    for (int v : g.vertices()) {
        f[v] = 7;
        d[v] = 4;
    }
    KeyLemmaReport rep;
    rep.which = c;
    auto check = [&](const ListAssignment& la) {
        ++rep.classes;
        if (!find_coloring(g, la, d)) return false;
        ++rep.colorable;
        if (frontier_construction_exists(c, la))
            ++rep.verified;
        else if (rep.counterexamples.size() < 5)
            rep.counterexamples.push_back(la);
        return false;
    };
    try {
        enumerate_assignments_canonical(g.vertices(), f, 0, check, opt.cap);
        rep.mode = "exhaustive";
    } catch (const Error& e) {
        if (e.kind() != "TooLarge") throw;
        rep = KeyLemmaReport{};
        rep.which = c;
        std::mt19937_64 rng(opt.seed);
        const int universe = 7 * static_cast<int>(g.vertex_count());
        std::vector<int> pool;
        for (int i = 1; i <= universe; ++i) pool.push_back(i);
        for (std::size_t s = 0; s < opt.samples; ++s) {
            ListAssignment la;
            // Draw overlaps from a small palette so shared colours are common.
            const int width = 7 + static_cast<int>(rng() % static_cast<std::uint64_t>(universe - 6));
            for (int v : g.vertices()) {
                std::vector<int> p(pool.begin(), pool.begin() + width);
                std::shuffle(p.begin(), p.end(), rng);
                la[v] = ColorSet::from_vector({p.begin(), p.begin() + 7});
            }
            check(la);
        }
        rep.mode = "sampled(seed=" + std::to_string(opt.seed) + ", n=" + std::to_string(opt.samples) + ")";
    }
    return rep;
}

}  // namespace chooselab
