#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chooselab/error.hpp"
#include "chooselab/plane_graph.hpp"

namespace chooselab {

// Colours are integers 0..63 packed into one machine word.
class ColorSet {
public:
    static constexpr int kMaxColor = 63;

    constexpr ColorSet() = default;
    constexpr explicit ColorSet(std::uint64_t bits) : bits_(bits) {}
    ColorSet(std::initializer_list<int> colors) {
        for (int c : colors) insert(c);
    }
    static ColorSet from_vector(const std::vector<int>& colors) {
        ColorSet s;
        for (int c : colors) s.insert(c);
        return s;
    }
    // {lo, lo+1, ..., lo+n-1}
    static ColorSet range(int lo, int n) {
        ColorSet s;
        for (int i = 0; i < n; ++i) s.insert(lo + i);
        return s;
    }

    void insert(int c) {
        if (c < 0 || c > kMaxColor) throw Error("ColorOutOfRange", "colour " + std::to_string(c));
        bits_ |= std::uint64_t{1} << c;
    }
    void erase(int c) { bits_ &= ~(std::uint64_t{1} << c); }
    bool contains(int c) const { return c >= 0 && c <= kMaxColor && ((bits_ >> c) & 1U); }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    std::uint64_t bits() const { return bits_; }

    ColorSet operator|(ColorSet o) const { return ColorSet(bits_ | o.bits_); }
    ColorSet operator&(ColorSet o) const { return ColorSet(bits_ & o.bits_); }
    ColorSet operator-(ColorSet o) const { return ColorSet(bits_ & ~o.bits_); }
    ColorSet& operator|=(ColorSet o) { bits_ |= o.bits_; return *this; }
    ColorSet& operator-=(ColorSet o) { bits_ &= ~o.bits_; return *this; }
    bool subset_of(ColorSet o) const { return (bits_ & ~o.bits_) == 0; }
    bool disjoint(ColorSet o) const { return (bits_ & o.bits_) == 0; }
    bool operator==(const ColorSet&) const = default;
    bool operator<(const ColorSet& o) const { return to_vector() < o.to_vector(); }

    // The n smallest colours of the set.
    ColorSet smallest(int n) const {
        ColorSet out;
        for (int c : to_vector()) {
            if (n-- <= 0) break;
            out.insert(c);
        }
        return out;
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        std::uint64_t b = bits_;
        while (b) {
            v.push_back(std::countr_zero(b));
            b &= b - 1;
        }
        return v;
    }

private:
    std::uint64_t bits_ = 0;
};

using ListAssignment = std::map<int, ColorSet>;
using Demand = std::map<int, int>;
using Coloring = std::map<int, ColorSet>;

struct Violation {
    enum class Kind { SizeShort, NotInList, EdgeConflict };
    Kind kind;
    int u = -1;
    int v = -1;
};

inline std::string to_string(const Violation& v) {
    switch (v.kind) {
        case Violation::Kind::SizeShort: return "SizeShort(" + std::to_string(v.u) + ")";
        case Violation::Kind::NotInList: return "NotInList(" + std::to_string(v.u) + ")";
        case Violation::Kind::EdgeConflict:
            return "EdgeConflict(" + std::to_string(v.u) + "," + std::to_string(v.v) + ")";
    }
    return "?";
}

// First violation in a fixed order (vertex order, then edges), or nothing when C is
// a full (L,g)-colouring. Sizes must match g exactly.
inline std::optional<Violation> validate_coloring(const PlaneGraph& g, const ListAssignment& lists,
                                                  const Demand& demand, const Coloring& c) {
    auto get = [](const auto& m, int v) { auto it = m.find(v); return it == m.end() ? decltype(it->second){} : it->second; };
    for (int v : g.vertices()) {
        ColorSet cv = get(c, v);
        if (cv.size() != get(demand, v)) return Violation{Violation::Kind::SizeShort, v, -1};
        if (!cv.subset_of(get(lists, v))) return Violation{Violation::Kind::NotInList, v, -1};
    }
    for (auto [u, v] : g.edges())
        if (!get(c, u).disjoint(get(c, v))) return Violation{Violation::Kind::EdgeConflict, u, v};
    return std::nullopt;
}

namespace detail {

// Calls visit(subset) for every g-subset of `avail` in lexicographic order of the
// sorted colour sequence; stops as soon as visit returns true.
inline bool for_each_combination(const std::vector<int>& avail, int k, std::size_t start, ColorSet acc,
                                 const std::function<bool(ColorSet)>& visit) {
    if (k == 0) return visit(acc);
    for (std::size_t i = start; i + static_cast<std::size_t>(k) <= avail.size(); ++i) {
        ColorSet next = acc;
        next.insert(avail[i]);
        if (for_each_combination(avail, k - 1, i + 1, next, visit)) return true;
    }
    return false;
}

struct ColoringSearch {
    std::vector<int> ids;
    std::vector<std::vector<int>> adj;
    std::vector<ColorSet> avail;
    std::vector<int> need;
    std::vector<ColorSet> chosen;
    std::vector<bool> done;

    bool solve() {
        int best = -1;
        int best_slack = 0;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (done[i]) continue;
            int slack = avail[i].size() - need[i];
            if (slack < 0) return false;
            if (best < 0 || slack < best_slack) {
                best = static_cast<int>(i);
                best_slack = slack;
            }
        }
        if (best < 0) return true;
        const int b = best;
        done[b] = true;
        bool ok = for_each_combination(avail[b].to_vector(), need[b], 0, ColorSet{}, [&](ColorSet pick) {
            std::vector<ColorSet> saved;
            saved.reserve(adj[b].size());
            for (int w : adj[b]) {
                saved.push_back(avail[w]);
                avail[w] -= pick;
            }
            chosen[b] = pick;
            bool r = solve();
            for (std::size_t j = 0; j < adj[b].size(); ++j) avail[adj[b][j]] = saved[j];
            return r;
        });
        if (!ok) done[b] = false;
        return ok;
    }
};

}  // namespace detail

// Complete backtracking search for an (L,g)-colouring. The branching vertex is the
// one with the least slack |avail| - g (ties broken by smallest id), and its colour
// sets are tried as combinations in lexicographic order.
inline std::optional<Coloring> find_coloring(const PlaneGraph& g, const ListAssignment& lists,
                                             const Demand& demand) {
    detail::ColoringSearch s;
    s.ids = g.vertices();
    std::map<int, int> index;
    for (std::size_t i = 0; i < s.ids.size(); ++i) index[s.ids[i]] = static_cast<int>(i);
    s.adj.resize(s.ids.size());
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        for (int w : g.neighbors(s.ids[i])) s.adj[i].push_back(index.at(w));
        auto li = lists.find(s.ids[i]);
        auto di = demand.find(s.ids[i]);
        s.avail.push_back(li == lists.end() ? ColorSet{} : li->second);
        s.need.push_back(di == demand.end() ? 0 : di->second);
        if (s.need.back() < 0) throw Error("BadDemand", "negative demand at " + std::to_string(s.ids[i]));
    }
    s.chosen.assign(s.ids.size(), ColorSet{});
    s.done.assign(s.ids.size(), false);
    if (!s.solve()) return std::nullopt;
    Coloring c;
    for (std::size_t i = 0; i < s.ids.size(); ++i) c[s.ids[i]] = s.chosen[i];
    return c;
}

inline std::size_t max_cells_cap() {
    if (const char* env = std::getenv("CHOOSELAB_MAX_CELLS")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    return 100'000'000;
}

// One list assignment per colour-renaming class. A class is a vector of Venn-cell
// sizes n_S (S a nonempty vertex subset) with sum_{S containing v} n_S = f(v); the
// cells are laid out as consecutive colour blocks starting at colour 1, in the fixed
// subset order (larger subsets first, ties by bitmask).
//
// `universe_bound` > 0 drops classes using more than that many colours.
// Returns the number of classes visited; throws TooLarge past `cap`.
// `visit` returning true stops the enumeration early.
inline std::size_t enumerate_assignments_canonical(
    const std::vector<int>& vertices, const std::map<int, int>& f, int universe_bound,
    const std::function<bool(const ListAssignment&)>& visit, std::size_t cap = max_cells_cap()) {
    const int n = static_cast<int>(vertices.size());
    if (n > 16) throw Error("TooLarge", "too many vertices for Venn-cell enumeration");
    std::vector<int> rem(n);
    int total_demand = 0;
    for (int i = 0; i < n; ++i) {
        rem[i] = f.at(vertices[i]);
        if (rem[i] < 0) throw Error("BadSize", "negative list size");
        total_demand += rem[i];
    }
    if (total_demand > ColorSet::kMaxColor) throw Error("TooLarge", "more than 63 colours needed");

    std::vector<unsigned> order;
    for (unsigned s = 1; s < (1u << n); ++s) order.push_back(s);
    std::stable_sort(order.begin(), order.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) > std::popcount(b); });

    std::vector<int> cells(order.size(), 0);
    std::size_t count = 0;
    bool stop = false;

    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int used) {
        if (stop) return;
        if (pos == order.size()) {
            for (int i = 0; i < n; ++i)
                if (rem[i] != 0) return;
            if (++count > cap)
                throw Error("TooLarge", "Venn-cell vector count exceeds cap " + std::to_string(cap));
            ListAssignment la;
            for (int i = 0; i < n; ++i) la[vertices[i]] = ColorSet{};
            int next = 1;
            for (std::size_t j = 0; j < order.size(); ++j) {
                for (int c = 0; c < cells[j]; ++c, ++next)
                    for (int i = 0; i < n; ++i)
                        if (order[j] >> i & 1U) la[vertices[i]].insert(next);
            }
            if (visit(la)) stop = true;
            return;
        }
        const unsigned s = order[pos];
        int hi = 1 << 30;
        for (int i = 0; i < n; ++i)
            if (s >> i & 1U) hi = std::min(hi, rem[i]);
        int lo = 0;
        if (std::popcount(s) == 1) lo = hi;  // singleton cells absorb whatever is left
        for (int x = hi; x >= lo; --x) {
            if (universe_bound > 0 && used + x > universe_bound) continue;
            cells[pos] = x;
            for (int i = 0; i < n; ++i)
                if (s >> i & 1U) rem[i] -= x;
            rec(pos + 1, used + x);
            for (int i = 0; i < n; ++i)
                if (s >> i & 1U) rem[i] += x;
            cells[pos] = 0;
            if (stop) return;
        }
    };
    rec(0, 0);
    return count;
}

struct ChoosabilityVerdict {
    bool choosable = false;
    std::size_t classes_checked = 0;
    std::optional<ListAssignment> witness;  // an assignment with no (L,g)-colouring
};

inline ChoosabilityVerdict choosable(const PlaneGraph& g, const std::map<int, int>& f, const Demand& demand,
                                     std::size_t cap = max_cells_cap()) {
    ChoosabilityVerdict out;
    out.choosable = true;
    out.classes_checked = enumerate_assignments_canonical(
        g.vertices(), f, 0,
        [&](const ListAssignment& la) {
            if (!find_coloring(g, la, demand)) {
                out.choosable = false;
                out.witness = la;
                return true;
            }
            return false;
        },
        cap);
    return out;
}

// (a,b)-colourability: every list is {1..a}, every demand is b.
inline std::optional<Coloring> colorable_ab(const PlaneGraph& g, int a, int b) {
    if (a < b || b < 1) throw Error("BadArgument", "need a >= b >= 1");
    ListAssignment la;
    Demand d;
    for (int v : g.vertices()) {
        la[v] = ColorSet::range(1, a);
        d[v] = b;
    }
    return find_coloring(g, la, d);
}

}  // namespace chooselab
