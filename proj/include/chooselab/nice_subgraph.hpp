#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chooselab/error.hpp"
#include "chooselab/plane_graph.hpp"

namespace chooselab {

enum class ComponentShape { P1, P2, P3, P4, K13, Other };

inline std::string to_string(ComponentShape c) {
    switch (c) {
        case ComponentShape::P1: return "P1";
        case ComponentShape::P2: return "P2";
        case ComponentShape::P3: return "P3";
        case ComponentShape::P4: return "P4";
        case ComponentShape::K13: return "K13";
        case ComponentShape::Other: return "Other";
    }
    return "Other";
}

struct FrontierComponent {
    std::vector<int> vertices;
    ComponentShape shape = ComponentShape::Other;
};

struct FrontierSplit {
    std::set<int> full;                    // vertices missing at most one host edge
    std::set<int> frontier;                // the rest of H
    std::map<int, std::vector<int>> fadj;  // adjacency of the graph induced on `frontier`
    std::vector<FrontierComponent> components;
};

enum class NiceReason { Nice, EmptyFull, DeficiencyTooLarge, BadComponent };

inline std::string to_string(NiceReason r) {
    switch (r) {
        case NiceReason::Nice: return "Nice";
        case NiceReason::EmptyFull: return "EmptyFull";
        case NiceReason::DeficiencyTooLarge: return "DeficiencyTooLarge";
        case NiceReason::BadComponent: return "BadComponent";
    }
    return "?";
}

struct NiceVerdict {
    bool nice = false;
    NiceReason reason = NiceReason::Nice;
    int witness = -1;  // offending vertex, when there is one
};

struct NiceProfile {
    FrontierSplit split;
    std::map<int, std::pair<int, int>> fg;  // vertex -> (f, g) in units of m
    bool trivially_not_choosable = false;   // some f < g
};

namespace detail {

inline ComponentShape classify_component(const std::vector<int>& comp, const std::map<int, std::vector<int>>& adj) {
    const std::size_t n = comp.size();
    std::size_t edges2 = 0;
    std::vector<int> degs;
    for (int v : comp) {
        degs.push_back(static_cast<int>(adj.at(v).size()));
        edges2 += adj.at(v).size();
    }
    const std::size_t m = edges2 / 2;
    std::sort(degs.begin(), degs.end());
    // A connected graph with n-1 edges is a tree; trees are pinned down by degrees here.
    if (m + 1 != n) return ComponentShape::Other;
    if (n == 1) return ComponentShape::P1;
    if (n == 2) return ComponentShape::P2;
    if (n == 3) return ComponentShape::P3;
    if (n == 4) return degs == std::vector<int>{1, 1, 1, 3} ? ComponentShape::K13 : ComponentShape::P4;
    return ComponentShape::Other;
}

}  // namespace detail

// Vertices of H missing at most one host edge form the "full" part; the rest of H
// induces the frontier graph, split into components.
inline FrontierSplit frontier_split(const PlaneGraph& g, const std::set<int>& h) {
    FrontierSplit out;
    for (int v : h) {
        if (!g.has_vertex(v)) throw Error("UnknownVertex", "vertex " + std::to_string(v));
        if (g.degree_in(v, h) >= g.degree(v) - 1)
            out.full.insert(v);
        else
            out.frontier.insert(v);
    }
    for (int v : out.frontier) {
        auto& a = out.fadj[v];
        for (int w : g.neighbors(v))
            if (out.frontier.count(w)) a.push_back(w);
    }
    std::set<int> seen;
    for (int s : out.frontier) {
        if (seen.count(s)) continue;
        FrontierComponent c;
        std::vector<int> stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            c.vertices.push_back(v);
            for (int w : out.fadj.at(v))
                if (seen.insert(w).second) stack.push_back(w);
        }
        std::sort(c.vertices.begin(), c.vertices.end());
        c.shape = detail::classify_component(c.vertices, out.fadj);
        out.components.push_back(std::move(c));
    }
    return out;
}

inline NiceVerdict is_nice(const PlaneGraph& g, const std::set<int>& h) {
    FrontierSplit s = frontier_split(g, h);
    if (s.full.empty()) return {false, NiceReason::EmptyFull, -1};
    for (int v : h)
        if (g.degree_in(v, h) < g.degree(v) - 2) return {false, NiceReason::DeficiencyTooLarge, v};
    for (const auto& c : s.components)
        if (c.shape == ComponentShape::Other) return {false, NiceReason::BadComponent, c.vertices.front()};
    return {true, NiceReason::Nice, -1};
}

inline NiceProfile profile(const PlaneGraph& g, const std::set<int>& h) {
    NiceVerdict v = is_nice(g, h);
    if (!v.nice)
        throw Error("NotNice", to_string(v.reason) + (v.witness >= 0 ? " at vertex " + std::to_string(v.witness) : ""));
    NiceProfile p;
    p.split = frontier_split(g, h);
    for (const auto& c : p.split.components) {
        for (int x : c.vertices) {
            const int fd = static_cast<int>(p.split.fadj.at(x).size());
            std::pair<int, int> fg;
            switch (c.shape) {
                case ComponentShape::P1: fg = {7, 4}; break;
                case ComponentShape::P2: fg = {6, 3}; break;
                case ComponentShape::P3: fg = {5, fd == 2 ? 2 : 3}; break;
                case ComponentShape::P4: fg = fd == 2 ? std::pair{4, 2} : std::pair{5, 3}; break;
                case ComponentShape::K13: fg = {4, fd == 3 ? 1 : 3}; break;
                case ComponentShape::Other: break;
            }
            p.fg[x] = fg;
        }
    }
    for (int u : p.split.full) {
        int f = 15 - 4 * (g.degree(u) - g.degree_in(u, h));
        for (int w : g.neighbors(u))
            if (p.split.frontier.count(w)) f -= 4 - p.fg.at(w).second;
        p.fg[u] = {f, 4};
    }
    for (const auto& [x, fg] : p.fg)
        if (fg.first < fg.second) p.trivially_not_choosable = true;
    return p;
}

}  // namespace chooselab
