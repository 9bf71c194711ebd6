#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chooselab/error.hpp"
#include "chooselab/multicolor.hpp"
#include "chooselab/plane_graph.hpp"
#include "chooselab/reduction.hpp"

// JSON readers and writers. Graph files hold either
//   {"vertices": [..], "rotations": {"0": [..], ...}}   (embedded)
// or
//   {"edges": [[u, v], ...]}                           (abstract; "vertices" optional)

namespace chooselab {

using nlohmann::json;

namespace detail {

inline int vertex_id(const std::string& key) {
    std::size_t used = 0;
    int v = -1;
    try {
        v = std::stoi(key, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != key.size() || v < 0) throw Error("BadInput", "vertex key '" + key + "' is not a nonnegative integer");
    return v;
}

inline int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw Error("BadInput", what + " must be an integer");
    return j.get<int>();
}

}  // namespace detail

inline PlaneGraph graph_from_json(const json& j) {
    if (!j.is_object()) throw Error("BadInput", "graph must be a JSON object");
    const bool abstract = j.value("abstract", false) || (!j.contains("rotations") && j.contains("edges"));
    if (!abstract) {
        if (!j.contains("rotations") || !j["rotations"].is_object())
            throw Error("BadInput", "embedded graph needs a \"rotations\" object");
        std::map<int, std::vector<int>> rot;
        for (const auto& [k, v] : j["rotations"].items()) {
            std::vector<int>& r = rot[detail::vertex_id(k)];
            if (!v.is_array()) throw Error("BadInput", "rotation of " + k + " must be a list");
            for (const auto& x : v) r.push_back(detail::as_int(x, "neighbour id"));
        }
        if (j.contains("vertices"))
            for (const auto& x : j["vertices"]) rot[detail::as_int(x, "vertex id")];
        return PlaneGraph::from_rotations(rot);
    }
    std::vector<int> verts;
    std::vector<std::pair<int, int>> edges;
    if (j.contains("vertices"))
        for (const auto& x : j["vertices"]) verts.push_back(detail::as_int(x, "vertex id"));
    for (const auto& e : j.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2) throw Error("BadInput", "each edge must be a pair");
        const int u = detail::as_int(e[0], "edge end"), v = detail::as_int(e[1], "edge end");
        edges.emplace_back(u, v);
        verts.push_back(u);
        verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return PlaneGraph::from_edges(verts, edges);
}

inline json graph_to_json(const PlaneGraph& g) {
    json j;
    j["vertices"] = g.vertices();
    if (g.embedded()) {
        json rot = json::object();
        for (const auto& [v, r] : g.rotations()) rot[std::to_string(v)] = r;
        j["rotations"] = rot;
    } else {
        json e = json::array();
        for (auto [u, v] : g.edges()) e.push_back({u, v});
        j["edges"] = e;
    }
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("BadInput", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("BadInput", path + ": " + e.what());
    }
}

inline PlaneGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

// "3" gives every vertex 3; a JSON object {"0": 3, ...} sets each vertex.
inline std::map<int, int> per_vertex_ints(const std::string& spec, const PlaneGraph& g, const std::string& what) {
    std::map<int, int> out;
    const auto first = spec.find_first_not_of(" \t");
    if (first != std::string::npos && spec[first] == '{') {
        json j;
        try {
            j = json::parse(spec);
        } catch (const json::parse_error& e) {
            throw Error("BadInput", what + ": " + e.what());
        }
        for (const auto& [k, v] : j.items()) out[detail::vertex_id(k)] = detail::as_int(v, what);
        for (int v : g.vertices())
            if (!out.count(v)) throw Error("BadInput", what + " has no value for vertex " + std::to_string(v));
        return out;
    }
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(spec, &used);
        if (used != spec.size()) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw Error("BadInput", what + " must be an integer or a JSON object, got '" + spec + "'");
    }
    for (int v : g.vertices()) out[v] = n;
    return out;
}

inline json color_sets_to_json(const std::map<int, ColorSet>& m) {
    json j = json::object();
    for (const auto& [v, s] : m) j[std::to_string(v)] = s.to_vector();
    return j;
}

// Steps: {"op":"del","u":0}, {"op":"save","u":0,"v":1,"k":1}, {"op":"pair","u":0,"u2":2,"v":1,"k":1}.
inline Step step_from_json(const json& j) {
    if (!j.is_object() || !j.contains("op")) throw Error("BadInput", "step needs an \"op\"");
    const std::string op = j["op"].get<std::string>();
    auto field = [&](const char* name) {
        if (!j.contains(name)) throw Error("BadInput", "step '" + op + "' needs \"" + name + "\"");
        return detail::as_int(j[name], name);
    };
    const int k = j.contains("k") ? detail::as_int(j["k"], "k") : 1;
    if (op == "del" || op == "delete") return Step::del(field("u"));
    if (op == "save") return Step::save(field("u"), field("v"), k);
    if (op == "pair" || op == "pair-save") return Step::pair(field("u"), field("u2"), field("v"), k);
    if (op == "trim") return Step::trim(field("u"), k);
    throw Error("BadInput", "unknown step op '" + op + "'");
}

inline Scheme scheme_from_json(const json& j) {
    if (!j.is_array()) throw Error("BadInput", "scheme must be a list of steps");
    Scheme s;
    for (const auto& x : j) s.push_back(step_from_json(x));
    return s;
}

inline json trace_to_json(const SchemeTrace& t) {
    json branches = json::array();
    for (const auto& b : t.branches) {
        json steps = json::array();
        for (const auto& r : b.steps) {
            json s{{"step", r.step},
                   {"inequality", r.inequality},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"verdict", r.legal ? "legal" : "illegal"}};
            if (!r.error.empty()) s["error"] = r.error;
            if (!r.note.empty()) s["note"] = r.note;
            steps.push_back(s);
        }
        branches.push_back({{"label", b.label},
                            {"legal", b.legal},
                            {"exhausted", b.exhausted},
                            {"assumptions", b.assumptions},
                            {"flags", b.flags},
                            {"steps", steps}});
    }
    return {{"legal", t.legal()}, {"exhausted", t.exhausted()}, {"branches", branches}};
}

}  // namespace chooselab
