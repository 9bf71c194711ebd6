#pragma once

#include <array>
#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chooselab/error.hpp"

namespace chooselab {

struct DegreeClass {
    int d = 0;
    int t = 0;  // neighbours of degree exactly 3
    bool operator==(const DegreeClass&) const = default;
};

// One face walk. walk[i] -> walk[i+1] (cyclically) are the darts on the face.
struct Face {
    std::vector<int> walk;
    std::size_t degree() const { return walk.size(); }
};

// A single position of a path/cycle pattern, e.g. "4", "6+", "4-", "4_1", "5_>=2".
struct DegreeConstraint {
    enum class Kind { Exact, AtLeast, AtMost, Class, ClassAtLeast };
    Kind kind = Kind::Exact;
    int k = 0;
    int t = 0;

    bool accepts(const DegreeClass& c) const {
        switch (kind) {
            case Kind::Exact: return c.d == k;
            case Kind::AtLeast: return c.d >= k;
            case Kind::AtMost: return c.d <= k;
            case Kind::Class: return c.d == k && c.t == t;
            case Kind::ClassAtLeast: return c.d == k && c.t >= t;
        }
        return false;
    }

    static DegreeConstraint parse(const std::string& s) {
        auto num = [&](const std::string& x) {
            if (x.empty() || !std::all_of(x.begin(), x.end(), ::isdigit))
                throw Error("BadPattern", "cannot parse degree constraint '" + s + "'");
            return std::stoi(x);
        };
        DegreeConstraint c;
        auto us = s.find('_');
        if (us != std::string::npos) {
            c.k = num(s.substr(0, us));
            std::string rest = s.substr(us + 1);
            if (rest.rfind(">=", 0) == 0) {
                c.kind = Kind::ClassAtLeast;
                c.t = num(rest.substr(2));
            } else {
                c.kind = Kind::Class;
                c.t = num(rest);
            }
            return c;
        }
        if (!s.empty() && s.back() == '+') {
            c.kind = Kind::AtLeast;
            c.k = num(s.substr(0, s.size() - 1));
        } else if (!s.empty() && s.back() == '-') {
            c.kind = Kind::AtMost;
            c.k = num(s.substr(0, s.size() - 1));
        } else {
            c.k = num(s);
        }
        return c;
    }
};

using Pattern = std::vector<DegreeConstraint>;

inline Pattern parse_pattern(const std::vector<std::string>& items) {
    Pattern p;
    for (const auto& s : items) p.push_back(DegreeConstraint::parse(s));
    return p;
}

class PlaneGraph {
public:
    PlaneGraph() = default;

    // Embedded graph from per-vertex cyclic rotations.
    static PlaneGraph from_rotations(const std::map<int, std::vector<int>>& rotations) {
        PlaneGraph g;
        g.embedded_ = true;
        g.rot_ = rotations;
        g.validate();
        return g;
    }

    // Abstract graph from an edge list; the neighbour order carries no meaning.
    static PlaneGraph from_edges(const std::vector<int>& vertices,
                                 const std::vector<std::pair<int, int>>& edges) {
        PlaneGraph g;
        g.embedded_ = false;
        for (int v : vertices) {
            if (v < 0) throw Error("BadVertex", "negative vertex id " + std::to_string(v));
            g.rot_[v];
        }
        for (auto [u, v] : edges) {
            if (u == v) throw Error("SelfLoop", "loop at vertex " + std::to_string(u));
            if (u < 0 || v < 0) throw Error("BadVertex", "negative vertex id in edge list");
            auto& ru = g.rot_[u];
            if (std::find(ru.begin(), ru.end(), v) != ru.end())
                throw Error("DuplicateNeighbor",
                            "edge " + std::to_string(u) + "-" + std::to_string(v) + " listed twice");
            ru.push_back(v);
            g.rot_[v].push_back(u);
        }
        for (auto& [v, r] : g.rot_) std::sort(r.begin(), r.end());
        return g;
    }

    bool embedded() const { return embedded_; }

    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(rot_.size());
        for (const auto& [v, r] : rot_) out.push_back(v);
        return out;
    }

    std::size_t vertex_count() const { return rot_.size(); }

    std::size_t edge_count() const {
        std::size_t s = 0;
        for (const auto& [v, r] : rot_) s += r.size();
        return s / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (const auto& [u, r] : rot_)
            for (int v : r)
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool has_vertex(int u) const { return rot_.count(u) != 0; }

    const std::vector<int>& neighbors(int u) const {
        auto it = rot_.find(u);
        if (it == rot_.end()) throw Error("UnknownVertex", "vertex " + std::to_string(u));
        return it->second;
    }

    int degree(int u) const { return static_cast<int>(neighbors(u).size()); }

    bool adjacent(int u, int v) const {
        const auto& r = neighbors(u);
        return std::find(r.begin(), r.end(), v) != r.end();
    }

    DegreeClass degree_class(int u) const {
        DegreeClass c;
        const auto& r = neighbors(u);
        c.d = static_cast<int>(r.size());
        for (int w : r)
            if (degree(w) == 3) ++c.t;
        return c;
    }

    // Number of neighbours of u inside the vertex set h.
    int degree_in(int u, const std::set<int>& h) const {
        int n = 0;
        for (int w : neighbors(u))
            if (h.count(w)) ++n;
        return n;
    }

    // Successor of x in the rotation at u.
    int rotation_next(int u, int x) const {
        const auto& r = neighbors(u);
        auto it = std::find(r.begin(), r.end(), x);
        if (it == r.end())
            throw Error("NotNeighbor", std::to_string(x) + " is not a neighbour of " + std::to_string(u));
        ++it;
        return it == r.end() ? r.front() : *it;
    }

    // True iff x and y sit next to each other in the cyclic rotation at u.
    bool consecutive(int u, int x, int y) const {
        if (!embedded_) throw Error("NotEmbedded", "consecutive() needs a rotation system");
        return rotation_next(u, x) == y || rotation_next(u, y) == x;
    }

    // Dart-successor face tracing: from dart (u,v) continue with (v,w),
    // w being the successor of u in the rotation at v.
    std::vector<Face> faces() const {
        if (!embedded_) throw Error("NotEmbedded", "face tracing needs a rotation system");
        std::set<std::pair<int, int>> seen;
        std::vector<Face> out;
        for (const auto& [u0, r] : rot_) {
            for (int v0 : r) {
                if (seen.count({u0, v0})) continue;
                Face f;
                int u = u0, v = v0;
                while (!seen.count({u, v})) {
                    seen.insert({u, v});
                    f.walk.push_back(u);
                    int w = rotation_next(v, u);
                    u = v;
                    v = w;
                }
                out.push_back(std::move(f));
            }
        }
        return out;
    }

    bool connected() const {
        if (rot_.empty()) return true;
        std::set<int> seen{rot_.begin()->first};
        std::vector<int> stack{rot_.begin()->first};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : rot_.at(u))
                if (seen.insert(w).second) stack.push_back(w);
        }
        return seen.size() == rot_.size();
    }

    // |V| - |E| + |F|; equals 2 for a connected plane embedding.
    long euler_characteristic() const {
        return static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) +
               static_cast<long>(faces().size());
    }

    bool triangle_free() const {
        for (auto [u, v] : edges())
            for (int w : neighbors(u))
                if (w != v && adjacent(v, w)) return false;
        return true;
    }

    // All simple paths v_1..v_k with class(v_i) accepted by p[i], read in either
    // direction; each reported once, in its lexicographically smaller orientation.
    std::vector<std::vector<int>> match_path(const Pattern& p) const {
        std::set<std::vector<int>> found;
        if (p.empty()) return {};
        auto rp = Pattern(p.rbegin(), p.rend());
        for (const Pattern* pat : std::array<const Pattern*, 2>{&p, &rp}) {
            std::vector<int> cur;
            for (int v : vertices()) extend(*pat, v, cur, false, found);
        }
        return {found.begin(), found.end()};
    }

    // All cycles v_1..v_k v_1 aligned with p. Two aligned readings of the same cycle
    // (rotations/reflections that still satisfy p) are merged to the smallest one.
    std::vector<std::vector<int>> match_cycle(const Pattern& p) const {
        std::set<std::vector<int>> found;
        if (p.size() < 3) return {};
        std::vector<int> cur;
        for (int v : vertices()) extend(p, v, cur, true, found);
        return {found.begin(), found.end()};
    }

    const std::map<int, std::vector<int>>& rotations() const { return rot_; }

private:
    void validate() const {
        for (const auto& [u, r] : rot_) {
            if (u < 0) throw Error("BadVertex", "negative vertex id " + std::to_string(u));
            std::set<int> s;
            for (int v : r) {
                if (v == u) throw Error("SelfLoop", "loop at vertex " + std::to_string(u));
                if (!s.insert(v).second)
                    throw Error("DuplicateNeighbor",
                                "vertex " + std::to_string(v) + " repeated in rotation of " + std::to_string(u));
                auto it = rot_.find(v);
                if (it == rot_.end() || std::find(it->second.begin(), it->second.end(), u) == it->second.end())
                    throw Error("AsymmetricRotation",
                                "edge " + std::to_string(u) + "-" + std::to_string(v) + " missing at " +
                                    std::to_string(v));
            }
        }
    }

    bool accepts(const Pattern& p, std::size_t i, int v) const { return p[i].accepts(degree_class(v)); }

    void extend(const Pattern& p, int v, std::vector<int>& cur, bool cycle,
                std::set<std::vector<int>>& found) const {
        if (std::find(cur.begin(), cur.end(), v) != cur.end()) return;
        if (!accepts(p, cur.size(), v)) return;
        cur.push_back(v);
        if (cur.size() == p.size()) {
            if (!cycle) {
                std::vector<int> rev(cur.rbegin(), cur.rend());
                found.insert(std::min(cur, rev));
            } else if (adjacent(cur.back(), cur.front())) {
                found.insert(canonical_cycle(p, cur));
            }
        } else {
            for (int w : neighbors(v)) extend(p, w, cur, cycle, found);
        }
        cur.pop_back();
    }

    std::vector<int> canonical_cycle(const Pattern& p, const std::vector<int>& c) const {
        std::vector<int> best = c;
        const std::size_t n = c.size();
        for (int dir : {1, -1}) {
            for (std::size_t s = 0; s < n; ++s) {
                std::vector<int> alt(n);
                for (std::size_t i = 0; i < n; ++i) {
                    std::size_t j = dir == 1 ? (s + i) % n : (s + n - i) % n;
                    alt[i] = c[j];
                }
                bool ok = true;
                for (std::size_t i = 0; i < n && ok; ++i) ok = accepts(p, i, alt[i]);
                if (ok) best = std::min(best, alt);
            }
        }
        return best;
    }

    std::map<int, std::vector<int>> rot_;
    bool embedded_ = false;
};

}  // namespace chooselab
