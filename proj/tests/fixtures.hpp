#pragma once

#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "chooselab/plane_graph.hpp"

namespace fixtures {

using chooselab::PlaneGraph;
using Edges = std::vector<std::pair<int, int>>;

// Planar embedding of an edge list (vertex ids may be sparse); nullopt if not planar.
inline std::optional<PlaneGraph> embed(const Edges& edges, std::vector<int> extra_vertices = {}) {
    using namespace boost;
    using G = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>, property<edge_index_t, int>>;
    std::set<int> ids(extra_vertices.begin(), extra_vertices.end());
    for (auto [u, v] : edges) {
        ids.insert(u);
        ids.insert(v);
    }
    std::map<int, int> to_dense;
    std::vector<int> to_id;
    for (int v : ids) {
        to_dense[v] = static_cast<int>(to_id.size());
        to_id.push_back(v);
    }
    G g(to_id.size());
    for (auto [u, v] : edges) add_edge(to_dense[u], to_dense[v], g);
    int k = 0;
    graph_traits<G>::edge_iterator ei, ee;
    for (tie(ei, ee) = boost::edges(g); ei != ee; ++ei) put(edge_index, g, *ei, k++);

    using EdgeVec = std::vector<graph_traits<G>::edge_descriptor>;
    std::vector<EdgeVec> emb(num_vertices(g));
    if (!boyer_myrvold_planarity_test(boyer_myrvold_params::graph = g, boyer_myrvold_params::embedding = &emb[0]))
        return std::nullopt;
    std::map<int, std::vector<int>> rot;
    for (std::size_t v = 0; v < emb.size(); ++v) {
        auto& r = rot[to_id[v]];
        for (const auto& e : emb[v]) {
            const auto a = source(e, g), b = target(e, g);
            r.push_back(to_id[a == v ? b : a]);
        }
    }
    return PlaneGraph::from_rotations(rot);
}

inline Edges cube_edges() {
    Edges e;
    for (int v = 0; v < 8; ++v)
        for (int bit : {1, 2, 4})
            if (!(v & bit)) e.emplace_back(v, v | bit);
    return e;
}

inline Edges dodecahedron_edges() {
    Edges e;
    for (int i = 0; i < 5; ++i) {
        const int j = (i + 1) % 5;
        e.emplace_back(i, j);            // outer pentagon
        e.emplace_back(i, 5 + i);        // spokes out
        e.emplace_back(5 + i, 10 + i);   // zigzag
        e.emplace_back(10 + i, 5 + j);
        e.emplace_back(10 + i, 15 + i);  // spokes in
        e.emplace_back(15 + i, 15 + j);  // inner pentagon
    }
    return e;
}

inline Edges grid_edges(int rows, int cols) {
    Edges e;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return e;
}

// Hexagonal patch ("brick wall"): a grid with alternate vertical rungs removed.
inline Edges brick_edges(int rows, int cols) {
    Edges e;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows && (r + c) % 2 == 0) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return e;
}

// Grid rotations written directly from coordinates (east, north, west, south).
inline PlaneGraph grid_plane(int rows, int cols) {
    std::map<int, std::vector<int>> rot;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            auto& x = rot[id(r, c)];
            if (c + 1 < cols) x.push_back(id(r, c + 1));
            if (r + 1 < rows) x.push_back(id(r + 1, c));
            if (c > 0) x.push_back(id(r, c - 1));
            if (r > 0) x.push_back(id(r - 1, c));
        }
    return PlaneGraph::from_rotations(rot);
}

// Connected random subgraph of a grid, embedded by coordinates.
inline PlaneGraph random_grid_subgraph(int rows, int cols, double keep, std::mt19937_64& rng) {
    const PlaneGraph full = grid_plane(rows, cols);
    std::bernoulli_distribution coin(keep);
    // Spanning tree first so the result stays connected.
    std::set<std::pair<int, int>> chosen;
    std::vector<int> order;
    std::set<int> seen{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        const std::size_t i = pick(rng);
        const int u = frontier[i];
        std::vector<int> fresh;
        for (int w : full.neighbors(u))
            if (!seen.count(w)) fresh.push_back(w);
        if (fresh.empty()) {
            frontier.erase(frontier.begin() + static_cast<long>(i));
            continue;
        }
        std::uniform_int_distribution<std::size_t> pw(0, fresh.size() - 1);
        const int w = fresh[pw(rng)];
        seen.insert(w);
        frontier.push_back(w);
        chosen.insert({std::min(u, w), std::max(u, w)});
    }
    for (auto [u, v] : full.edges())
        if (coin(rng)) chosen.insert({u, v});
    std::map<int, std::vector<int>> rot;
    for (const auto& [u, r] : full.rotations()) {
        auto& x = rot[u];
        for (int w : r)
            if (chosen.count({std::min(u, w), std::max(u, w)})) x.push_back(w);
    }
    return PlaneGraph::from_rotations(rot);
}

// Closes a configuration: embeds it, then joins a new hub to every vertex of the
// longest face and re-embeds. The hub sits inside that face, so planarity is kept.
inline std::optional<PlaneGraph> wheel_closure(const PlaneGraph& g) {
    auto base = embed(g.edges(), g.vertices());
    if (!base) return std::nullopt;
    const auto faces = base->faces();
    if (faces.empty()) return std::nullopt;
    const auto longest = std::max_element(faces.begin(), faces.end(),
                                          [](const auto& a, const auto& b) { return a.degree() < b.degree(); });
    int hub = 0;
    for (int v : g.vertices()) hub = std::max(hub, v + 1);
    Edges e = g.edges();
    for (int v : std::set<int>(longest->walk.begin(), longest->walk.end())) e.emplace_back(hub, v);
    return embed(e);
}

}  // namespace fixtures
