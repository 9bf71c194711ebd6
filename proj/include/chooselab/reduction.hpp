#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "chooselab/error.hpp"
#include "chooselab/multicolor.hpp"
#include "chooselab/plane_graph.hpp"

namespace chooselab {

// ---------------------------------------------------------------------------
// Steps

struct SetDecl {
    std::string name;
    int size = 0;
    std::vector<int> inside;               // declared subset of the current list of each vertex
    std::vector<int> avoids;               // declared disjoint from the current list of each vertex
    std::vector<std::string> disjoint_from;
    std::string tag;                       // justification shown when the set cannot be certified
};

struct Step {
    enum class Op { Delete, Color, Save, PairSave, AssumeSet, Exclude, Trim };
    Op op = Op::Delete;
    int u = -1;
    int u2 = -1;
    int v = -1;
    int k = 1;
    std::map<int, std::vector<std::string>> assign;  // Color, symbolic: vertex -> set names
    std::map<int, ColorSet> colors;                  // Color, concrete: vertex -> colours
    SetDecl decl;                                    // AssumeSet
    std::vector<std::string> sets;                   // Exclude: sets removed from L(u)

    static Step del(int u) { Step s; s.op = Op::Delete; s.u = u; return s; }
    static Step save(int u, int v, int k = 1) { Step s; s.op = Op::Save; s.u = u; s.v = v; s.k = k; return s; }
    static Step pair(int u1, int u2, int v, int k = 1) {
        Step s; s.op = Op::PairSave; s.u = u1; s.u2 = u2; s.v = v; s.k = k; return s;
    }
    static Step color(std::map<int, std::vector<std::string>> a) { Step s; s.op = Op::Color; s.assign = std::move(a); return s; }
    static Step color_concrete(std::map<int, ColorSet> c) { Step s; s.op = Op::Color; s.colors = std::move(c); return s; }
    static Step assume(SetDecl d) { Step s; s.op = Op::AssumeSet; s.decl = std::move(d); return s; }
    // Replace L(u) by L(u) minus the named sets.
    static Step exclude(int u, std::vector<std::string> names) {
        Step s; s.op = Op::Exclude; s.u = u; s.sets = std::move(names); return s;
    }
    // Replace L(u) by some sublist of exactly k colours.
    static Step trim(int u, int k) { Step s; s.op = Op::Trim; s.u = u; s.k = k; return s; }
};

using Scheme = std::vector<Step>;

inline std::string to_string(const Step& s) {
    std::ostringstream o;
    switch (s.op) {
        case Step::Op::Delete: o << "<" << s.u << ">"; break;
        case Step::Op::Save: o << "<" << s.u << "|" << s.v << "," << s.k << ">"; break;
        case Step::Op::PairSave: o << "<{" << s.u << "," << s.u2 << "}|" << s.v << "," << s.k << "*>"; break;
        case Step::Op::Color: {
            o << "<color";
            for (const auto& [x, names] : s.assign) {
                o << " " << x << ":";
                for (std::size_t i = 0; i < names.size(); ++i) o << (i ? "+" : "") << names[i];
            }
            for (const auto& [x, c] : s.colors) {
                o << " " << x << ":{";
                auto v = c.to_vector();
                for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
                o << "}";
            }
            o << ">";
            break;
        }
        case Step::Op::AssumeSet: o << "<assume " << s.decl.name << ">"; break;
        case Step::Op::Exclude: {
            o << "<exclude " << s.u << ":";
            for (std::size_t i = 0; i < s.sets.size(); ++i) o << (i ? "+" : "") << s.sets[i];
            o << ">";
            break;
        }
        case Step::Op::Trim: o << "<trim " << s.u << " to " << s.k << ">"; break;
    }
    return o.str();
}

// Multiplies every size in a scheme by m (list sizes are scaled by the caller).
inline Scheme scale_scheme(Scheme sc, int m) {
    for (auto& s : sc) {
        s.k *= m;
        s.decl.size *= m;
    }
    return sc;
}

// ---------------------------------------------------------------------------
// Three-sets lemma

struct ThreeSets {
    ColorSet s, t, r;
};

// S from A\C, then T from B\C, then R from A∩B∩C, each filled greedily in
// ascending colour order until |S|+|T|+|R| = m. S and T may share colours.
inline ThreeSets three_sets_pick(ColorSet a, ColorSet b, ColorSet c, int m) {
    if (a.size() + b.size() < c.size() + m)
        throw Error("BoundViolated", "|A|+|B| < |C|+m");
    ThreeSets out;
    int left = m;
    out.s = (a - c).smallest(left);
    left -= out.s.size();
    out.t = (b - c).smallest(left);
    left -= out.t.size();
    out.r = (a & b & c).smallest(left);
    left -= out.r.size();
    if (left != 0) throw Error("BoundViolated", "greedy pick fell short; the size bound was misapplied");
    return out;
}

// ---------------------------------------------------------------------------
// Traces

struct StepRecord {
    std::string step;
    std::string inequality;
    long lhs = 0;
    long rhs = 0;
    bool legal = true;
    std::string error;  // empty when legal
    std::string note;
};

struct BranchTrace {
    std::string label;  // e.g. "S" or "R/T" for nested pair-save corners
    std::vector<StepRecord> steps;
    bool legal = true;
    bool exhausted = false;  // every vertex deleted
    std::vector<std::string> assumptions;
    std::vector<std::string> flags;
};

struct SchemeTrace {
    std::vector<BranchTrace> branches;
    bool legal() const {
        return std::all_of(branches.begin(), branches.end(), [](const BranchTrace& b) { return b.legal; });
    }
    bool exhausted() const {
        return std::all_of(branches.begin(), branches.end(), [](const BranchTrace& b) { return b.exhausted; });
    }
    bool fully_passes() const { return legal() && exhausted(); }
    std::set<std::string> assumptions() const {
        std::set<std::string> out;
        for (const auto& b : branches) out.insert(b.assumptions.begin(), b.assumptions.end());
        return out;
    }
    std::set<std::string> flags() const {
        std::set<std::string> out;
        for (const auto& b : branches) out.insert(b.flags.begin(), b.flags.end());
        return out;
    }
    // First illegal record over all branches (branch order), if any.
    std::optional<StepRecord> first_failure() const {
        for (const auto& b : branches)
            for (const auto& r : b.steps)
                if (!r.legal) return r;
        return std::nullopt;
    }
};

// ---------------------------------------------------------------------------
// Symbolic execution (sizes only, in units of m)

struct Bounds {
    int lo = 0;  // lower bound on the current list size
    int hi = 0;  // upper bound on the current list size
    int g = 0;   // remaining demand
};

struct SetVar {
    std::string name;
    int size = 0;
    std::set<int> inside;       // current knowledge; a trim forgets it
    std::set<int> avoids;
    std::set<int> born_inside;  // as declared at creation, never changes
    std::set<int> born_avoids;
    int created = 0;  // event counter value at creation
    int seq = 0;      // creation order among all sets
};

struct SymbolicState {
    std::map<int, std::vector<int>> adj;
    std::map<int, Bounds> live;
    std::map<std::string, SetVar> sets;
    std::set<std::pair<std::string, std::string>> disjoint;
    std::map<int, std::vector<std::pair<std::string, int>>> removed;  // vertex -> (set, event)
    int clock = 0;
    int fresh = 0;

    static SymbolicState make(const PlaneGraph& h, const std::map<int, std::pair<int, int>>& profile) {
        SymbolicState st;
        for (int v : h.vertices()) {
            st.adj[v] = h.neighbors(v);
            auto it = profile.find(v);
            if (it == profile.end()) throw Error("MissingProfile", "no (f,g) for vertex " + std::to_string(v));
            st.live[v] = Bounds{it->second.first, it->second.first, it->second.second};
        }
        return st;
    }

    bool alive(int v) const { return live.count(v) != 0; }

    std::vector<int> live_neighbors(int v) const {
        std::vector<int> out;
        for (int w : adj.at(v))
            if (alive(w)) out.push_back(w);
        return out;
    }

    bool are_disjoint(const std::string& a, const std::string& b) const {
        if (disjoint.count({std::min(a, b), std::max(a, b)})) return true;
        auto ia = sets.find(a), ib = sets.find(b);
        if (ia == sets.end() || ib == sets.end()) return false;
        return implied_disjoint(ia->second, ib->second) || implied_disjoint(ib->second, ia->second);
    }
    // Lists only shrink, so a set drawn from L(y) after X was declared to avoid
    // L(y) cannot meet X.
    static bool implied_disjoint(const SetVar& x, const SetVar& y) {
        if (y.seq < x.seq) return false;
        for (int w : x.born_avoids)
            if (y.born_inside.count(w)) return true;
        return false;
    }
    void declare_disjoint(const std::string& a, const std::string& b) {
        if (a != b) disjoint.insert({std::min(a, b), std::max(a, b)});
    }
    bool was_removed(int w, const std::string& name) const {
        auto it = removed.find(w);
        if (it == removed.end()) return false;
        for (const auto& [n, t] : it->second)
            if (n == name) return true;
        return false;
    }
    // X still lies wholly in the current list of w if it was inside at creation and
    // every set removed from w since then is declared disjoint from X.
    bool still_inside(int w, const SetVar& x) const {
        if (!x.inside.count(w)) return false;
        auto it = removed.find(w);
        if (it == removed.end()) return true;
        for (const auto& [n, t] : it->second)
            if (t >= x.created && !are_disjoint(n, x.name)) return false;
        return true;
    }
};

namespace detail {

inline std::string vname(int v) { return "v" + std::to_string(v); }

// Removes the named sets from the current list of w and updates its bounds.
inline void remove_from_list(SymbolicState& st, int w, Bounds& b, const std::set<std::string>& names) {
    std::vector<std::string> fresh_hits;
    for (const auto& n : names)
        if (!st.was_removed(w, n)) fresh_hits.push_back(n);
    int lo_drop = 0;
    std::vector<const SetVar*> inside_sets;
    for (const auto& n : fresh_hits) {
        const SetVar& sv = st.sets.at(n);
        if (!sv.avoids.count(w)) lo_drop += sv.size;
        if (st.still_inside(w, sv)) inside_sets.push_back(&sv);
    }
    // Upper bound: sizes add up only for pairwise disjoint sets; otherwise the
    // largest one is all that is certainly gone.
    bool pairwise = true;
    for (std::size_t i = 0; i < inside_sets.size() && pairwise; ++i)
        for (std::size_t j = i + 1; j < inside_sets.size() && pairwise; ++j)
            pairwise = st.are_disjoint(inside_sets[i]->name, inside_sets[j]->name);
    int hi_drop = 0;
    for (const auto* sv : inside_sets) hi_drop = pairwise ? hi_drop + sv->size : std::max(hi_drop, sv->size);
    b.lo = std::max(0, b.lo - lo_drop);
    b.hi = std::max(b.lo, b.hi - hi_drop);
    for (const auto& n : fresh_hits) st.removed[w].push_back({n, st.clock});
}

// Applies a partial colouring given as vertex -> set names. Returns the failing
// record on illegality; on success fills `rec` with the tightest list/demand margin.
inline bool symbolic_parcol(SymbolicState& st, const std::map<int, std::vector<std::string>>& phi,
                            StepRecord& rec) {
    for (const auto& [x, names] : phi) {
        if (!st.alive(x)) {
            rec.legal = false;
            rec.error = "DeadVertex(" + std::to_string(x) + ")";
            return false;
        }
        int total = 0;
        for (const auto& n : names) {
            auto it = st.sets.find(n);
            if (it == st.sets.end()) {
                rec.legal = false;
                rec.error = "UnknownSet(" + n + ")";
                return false;
            }
            if (!it->second.inside.count(x)) {
                rec.legal = false;
                rec.error = "SetNotInList(" + n + "," + std::to_string(x) + ")";
                return false;
            }
            total += it->second.size;
        }
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (!st.are_disjoint(names[i], names[j])) {
                    rec.legal = false;
                    rec.error = "UndeclaredOverlap(" + names[i] + "," + names[j] + ")";
                    return false;
                }
        st.live[x].g -= total;
        if (st.live[x].g < 0) {
            rec.legal = false;
            rec.error = "IllegalParCol(" + std::to_string(x) + ")";
            rec.inequality = "g(" + vname(x) + ") >= |phi(" + vname(x) + ")|";
            rec.lhs = st.live[x].g + total;
            rec.rhs = total;
            return false;
        }
    }
    ++st.clock;
    for (auto& [w, b] : st.live) {
        std::set<std::string> hit;
        auto add = [&](int x) {
            auto it = phi.find(x);
            if (it != phi.end()) hit.insert(it->second.begin(), it->second.end());
        };
        add(w);
        for (int x : st.adj.at(w)) add(x);
        remove_from_list(st, w, b, hit);
    }
    long best_margin = 1L << 40;
    for (const auto& [w, b] : st.live) {
        long margin = b.lo - b.g;
        if (margin < 0) {
            rec.legal = false;
            rec.error = "IllegalParCol(" + std::to_string(w) + ")";
            rec.inequality = "lo(" + vname(w) + ") >= g(" + vname(w) + ")";
            rec.lhs = b.lo;
            rec.rhs = b.g;
            return false;
        }
        if (margin < best_margin) {
            best_margin = margin;
            rec.inequality = "lo(" + vname(w) + ") >= g(" + vname(w) + ")";
            rec.lhs = b.lo;
            rec.rhs = b.g;
        }
    }
    return true;
}

inline std::string new_set(SymbolicState& st, const std::string& prefix, int size, std::set<int> inside,
                           std::set<int> avoids) {
    SetVar sv;
    sv.name = prefix + "#" + std::to_string(st.fresh++);
    sv.size = size;
    sv.inside = std::move(inside);
    sv.avoids = std::move(avoids);
    sv.born_inside = sv.inside;
    sv.born_avoids = sv.avoids;
    sv.created = st.clock;
    sv.seq = st.fresh;
    st.sets[sv.name] = sv;
    return sv.name;
}

inline bool symbolic_delete(SymbolicState& st, int u, StepRecord& rec) {
    const Bounds b = st.live.at(u);
    long need = b.g;
    std::string rhs_text = "g(" + vname(u) + ")";
    for (int w : st.live_neighbors(u)) {
        need += st.live.at(w).g;
        rhs_text += " + g(" + vname(w) + ")";
    }
    rec.inequality = "lo(" + vname(u) + ") >= " + rhs_text;
    rec.lhs = b.lo;
    rec.rhs = need;
    if (b.lo < need) {
        rec.legal = false;
        rec.error = "IllegalDelete(" + std::to_string(u) + ", needed=" + std::to_string(need) +
                    ", have=" + std::to_string(b.lo) + ")";
        return false;
    }
    st.live.erase(u);
    return true;
}

inline bool symbolic_assume(SymbolicState& st, const SetDecl& d, BranchTrace& br, StepRecord& rec) {
    if (st.sets.count(d.name)) {
        rec.legal = false;
        rec.error = "DuplicateSet(" + d.name + ")";
        return false;
    }
    for (int x : d.inside)
        if (!st.alive(x)) {
            rec.legal = false;
            rec.error = "DeadVertex(" + std::to_string(x) + ")";
            return false;
        }
    // Cardinality feasibility against each container's upper bound.
    for (int x : d.inside) {
        long packed = d.size;
        for (const auto& other : d.disjoint_from) {
            auto it = st.sets.find(other);
            if (it != st.sets.end() && st.still_inside(x, it->second)) packed += it->second.size;
        }
        if (packed > st.live.at(x).hi) {
            rec.legal = false;
            rec.inequality = "sizes packed into L(" + vname(x) + ") <= hi(" + vname(x) + ")";
            rec.lhs = packed;
            rec.rhs = st.live.at(x).hi;
            rec.error = "InfeasibleDeclaration(" + d.name + ")";
            return false;
        }
    }
    bool certified = false;
    if (d.inside.size() == 1) {
        int x = d.inside.front();
        long room = st.live.at(x).lo;
        for (int y : d.avoids) room -= st.alive(y) ? st.live.at(y).hi : 0;
        // Any declared-disjoint set that may still sit in L(x) eats into the room.
        for (const auto& other : d.disjoint_from) {
            auto it = st.sets.find(other);
            if (it != st.sets.end() && !it->second.avoids.count(x) && !st.was_removed(x, other))
                room -= it->second.size;
        }
        rec.inequality = "room in L(" + vname(x) + ") >= |" + d.name + "|";
        rec.lhs = room;
        rec.rhs = d.size;
        certified = room >= d.size;
    } else {
        rec.inequality = "existence of " + d.name + " (several containers)";
        rec.lhs = 0;
        rec.rhs = d.size;
    }
    SetVar sv;
    sv.name = d.name;
    sv.size = d.size;
    sv.inside.insert(d.inside.begin(), d.inside.end());
    sv.avoids.insert(d.avoids.begin(), d.avoids.end());
    sv.born_inside = sv.inside;
    sv.born_avoids = sv.avoids;
    sv.created = st.clock;
    sv.seq = st.fresh++;
    st.sets[sv.name] = sv;
    for (const auto& other : d.disjoint_from) st.declare_disjoint(d.name, other);
    if (certified) {
        rec.note = "certified";
    } else {
        rec.note = "assumed (" + (d.tag.empty() ? std::string("no justification given") : d.tag) + ")";
        br.assumptions.push_back(d.name + ": " + rec.note);
    }
    return true;
}

inline bool symbolic_exclude(SymbolicState& st, int u, const std::vector<std::string>& names, StepRecord& rec) {
    if (!st.alive(u)) {
        rec.error = "DeadVertex(" + std::to_string(u) + ")";
        return false;
    }
    for (const auto& n : names)
        if (!st.sets.count(n)) {
            rec.error = "UnknownSet(" + n + ")";
            return false;
        }
    ++st.clock;
    Bounds& b = st.live.at(u);
    remove_from_list(st, u, b, {names.begin(), names.end()});
    for (const auto& n : names) st.sets.at(n).avoids.insert(u);
    rec.inequality = "lo(" + vname(u) + ") >= g(" + vname(u) + ")";
    rec.lhs = b.lo;
    rec.rhs = b.g;
    if (b.lo < b.g) {
        rec.error = "IllegalExclude(" + std::to_string(u) + ")";
        return false;
    }
    return true;
}

// Keeps an arbitrary k-subset of L(u). Which colours survive is unknown, so no
// set is known to lie inside the new list any more; avoidance is preserved.
inline bool symbolic_trim(SymbolicState& st, int u, int k, BranchTrace& br, StepRecord& rec) {
    if (!st.alive(u)) {
        rec.error = "DeadVertex(" + std::to_string(u) + ")";
        return false;
    }
    Bounds& b = st.live.at(u);
    rec.inequality = "lo(" + vname(u) + ") >= " + std::to_string(k);
    rec.lhs = b.lo;
    rec.rhs = k;
    if (k > b.hi) {
        rec.error = "InfeasibleTrim(" + std::to_string(u) + ")";
        return false;
    }
    if (k < b.g) {
        rec.inequality = "k >= g(" + vname(u) + ")";
        rec.lhs = k;
        rec.rhs = b.g;
        rec.error = "IllegalTrim(" + std::to_string(u) + ")";
        return false;
    }
    if (b.lo < k) {
        rec.note = "assumed (list of " + vname(u) + " has at least " + std::to_string(k) + " colours)";
        br.assumptions.push_back("trim " + vname(u) + ": " + rec.note);
    }
    b.lo = b.hi = k;
    for (auto& [n, sv] : st.sets) sv.inside.erase(u);
    ++st.clock;
    return true;
}

inline void run_symbolic(SymbolicState st, const Scheme& scheme, std::size_t pos, BranchTrace br,
                         std::vector<BranchTrace>& out) {
    for (; pos < scheme.size(); ++pos) {
        const Step& s = scheme[pos];
        StepRecord rec;
        rec.step = to_string(s);
        auto fail = [&] {
            rec.legal = false;
            br.steps.push_back(rec);
            br.legal = false;
            br.exhausted = st.live.empty();
            out.push_back(br);
        };
        auto require_alive = [&](int x) {
            if (st.alive(x)) return true;
            rec.error = "DeadVertex(" + std::to_string(x) + ")";
            return false;
        };
        switch (s.op) {
            case Step::Op::Delete: {
                if (!require_alive(s.u) || !symbolic_delete(st, s.u, rec)) return fail();
                break;
            }
            case Step::Op::Save: {
                if (!require_alive(s.u) || !require_alive(s.v)) return fail();
                const auto& nu = st.adj.at(s.u);
                if (std::find(nu.begin(), nu.end(), s.v) == nu.end()) {
                    rec.error = "NotAdjacent(" + std::to_string(s.u) + "," + std::to_string(s.v) + ")";
                    return fail();
                }
                const Bounds bu = st.live.at(s.u), bv = st.live.at(s.v);
                rec.inequality = "lo(" + vname(s.u) + ") - hi(" + vname(s.v) + ") >= k";
                rec.lhs = bu.lo - bv.hi;
                rec.rhs = s.k;
                if (bu.lo - bv.hi < s.k) {
                    rec.error = "CannotAvoid(" + std::to_string(s.u) + "," + std::to_string(s.v) + "," +
                                std::to_string(s.k) + ")";
                    return fail();
                }
                StepRecord inner = rec;
                auto x = new_set(st, "save", s.k, {s.u}, {s.v});
                if (!symbolic_parcol(st, {{s.u, {x}}}, inner)) {
                    rec = inner;
                    return fail();
                }
                break;
            }
            case Step::Op::PairSave: {
                if (!require_alive(s.u) || !require_alive(s.u2) || !require_alive(s.v)) return fail();
                const auto& n1 = st.adj.at(s.u);
                const auto& n2 = st.adj.at(s.u2);
                if (std::find(n1.begin(), n1.end(), s.v) == n1.end() ||
                    std::find(n2.begin(), n2.end(), s.v) == n2.end()) {
                    rec.error = "NotCommonNeighbor(" + std::to_string(s.v) + ")";
                    return fail();
                }
                if (std::find(n1.begin(), n1.end(), s.u2) != n1.end())
                    br.flags.push_back("pair-save partners " + std::to_string(s.u) + "," + std::to_string(s.u2) +
                                       " are adjacent");
                const Bounds b1 = st.live.at(s.u), b2 = st.live.at(s.u2), bv = st.live.at(s.v);
                rec.inequality = "lo(" + vname(s.u) + ") + lo(" + vname(s.u2) + ") >= hi(" + vname(s.v) + ") + k";
                rec.lhs = b1.lo + b2.lo;
                rec.rhs = bv.hi + s.k;
                if (rec.lhs < rec.rhs) {
                    rec.error = "PairBoundFails(needed=" + std::to_string(rec.rhs) + ", have=" +
                                std::to_string(rec.lhs) + ")";
                    return fail();
                }
                // Corner splits (s,t,r) = (k,0,0), (0,k,0), (0,0,k).
                for (int corner = 0; corner < 3; ++corner) {
                    SymbolicState cs = st;
                    BranchTrace cb = br;
                    cb.label += (cb.label.empty() ? "" : "/") + std::string(corner == 0 ? "S" : corner == 1 ? "T" : "R");
                    StepRecord crec = rec;
                    crec.note = "corner " + std::string(corner == 0 ? "S" : corner == 1 ? "T" : "R");
                    std::map<int, std::vector<std::string>> phi;
                    if (corner == 0) phi[s.u] = {new_set(cs, "S", s.k, {s.u}, {s.v})};
                    if (corner == 1) phi[s.u2] = {new_set(cs, "T", s.k, {s.u2}, {s.v})};
                    if (corner == 2) {
                        auto r = new_set(cs, "R", s.k, {s.u, s.u2, s.v}, {});
                        phi[s.u] = {r};
                        phi[s.u2] = {r};
                    }
                    StepRecord inner = crec;
                    if (!symbolic_parcol(cs, phi, inner)) {
                        inner.step = crec.step;
                        inner.note = crec.note;
                        inner.legal = false;
                        cb.steps.push_back(inner);
                        cb.legal = false;
                        out.push_back(cb);
                        continue;
                    }
                    cb.steps.push_back(crec);
                    run_symbolic(cs, scheme, pos + 1, cb, out);
                }
                return;
            }
            case Step::Op::Color: {
                StepRecord inner = rec;
                if (!symbolic_parcol(st, s.assign, inner)) {
                    rec = inner;
                    return fail();
                }
                rec = inner;
                break;
            }
            case Step::Op::AssumeSet: {
                if (!symbolic_assume(st, s.decl, br, rec)) return fail();
                break;
            }
            case Step::Op::Exclude: {
                if (!symbolic_exclude(st, s.u, s.sets, rec)) return fail();
                break;
            }
            case Step::Op::Trim: {
                if (!symbolic_trim(st, s.u, s.k, br, rec)) return fail();
                break;
            }
        }
        br.steps.push_back(rec);
    }
    br.exhausted = st.live.empty();
    out.push_back(br);
}

}  // namespace detail

// Runs a scheme on size bounds. Each pair-save forks into its three corner splits;
// a branch halts at its first illegal step.
inline SchemeTrace run_scheme_symbolic(const SymbolicState& start, const Scheme& scheme) {
    SchemeTrace t;
    detail::run_symbolic(start, scheme, 0, BranchTrace{}, t.branches);
    return t;
}

// Evaluates a pair-save at an arbitrary split (s,t,r) and continues the scheme;
// used to confirm that checking the three corners is enough.
inline SchemeTrace run_scheme_symbolic_split(const SymbolicState& start, const Scheme& scheme,
                                             std::size_t pair_index, int s_part, int t_part, int r_part) {
    SymbolicState st = start;
    SchemeTrace out;
    BranchTrace br;
    for (std::size_t pos = 0; pos < scheme.size(); ++pos) {
        const Step& s = scheme[pos];
        if (pos == pair_index && s.op == Step::Op::PairSave) {
            StepRecord rec;
            rec.step = to_string(s);
            const Bounds b1 = st.live.at(s.u), b2 = st.live.at(s.u2), bv = st.live.at(s.v);
            rec.lhs = b1.lo + b2.lo;
            rec.rhs = bv.hi + s.k;
            if (rec.lhs < rec.rhs || s_part + t_part + r_part != s.k) {
                rec.legal = false;
                rec.error = "PairBoundFails";
                br.steps.push_back(rec);
                br.legal = false;
                out.branches.push_back(br);
                return out;
            }
            std::map<int, std::vector<std::string>> phi;
            if (s_part) phi[s.u].push_back(detail::new_set(st, "S", s_part, {s.u}, {s.v}));
            if (t_part) phi[s.u2].push_back(detail::new_set(st, "T", t_part, {s.u2}, {s.v}));
            if (r_part) {
                auto r = detail::new_set(st, "R", r_part, {s.u, s.u2, s.v}, {});
                phi[s.u].push_back(r);
                phi[s.u2].push_back(r);
            }
            for (auto& [x, names] : phi)
                for (auto& a : names)
                    for (auto& b : names) st.declare_disjoint(a, b);
            if (!detail::symbolic_parcol(st, phi, rec)) {
                br.steps.push_back(rec);
                br.legal = false;
                out.branches.push_back(br);
                return out;
            }
            br.steps.push_back(rec);
            // Later pair-saves keep their corner forks.
            Scheme rest(scheme.begin() + static_cast<long>(pos) + 1, scheme.end());
            detail::run_symbolic(st, rest, 0, br, out.branches);
            return out;
        }
        // Steps before the chosen pair-save must not fork.
        if (s.op == Step::Op::PairSave) throw Error("BadArgument", "pair_index must be the first pair-save");
        StepRecord rec;
        rec.step = to_string(s);
        bool ok = true;
        switch (s.op) {
            case Step::Op::Delete: ok = st.alive(s.u) && detail::symbolic_delete(st, s.u, rec); break;
            case Step::Op::Save: {
                ok = st.alive(s.u) && st.alive(s.v) && st.live.at(s.u).lo - st.live.at(s.v).hi >= s.k;
                if (ok) {
                    auto x = detail::new_set(st, "save", s.k, {s.u}, {s.v});
                    ok = detail::symbolic_parcol(st, {{s.u, {x}}}, rec);
                }
                break;
            }
            case Step::Op::Color: ok = detail::symbolic_parcol(st, s.assign, rec); break;
            case Step::Op::AssumeSet: ok = detail::symbolic_assume(st, s.decl, br, rec); break;
            case Step::Op::Exclude: ok = detail::symbolic_exclude(st, s.u, s.sets, rec); break;
            case Step::Op::Trim: ok = detail::symbolic_trim(st, s.u, s.k, br, rec); break;
            case Step::Op::PairSave: break;
        }
        rec.legal = ok;
        br.steps.push_back(rec);
        if (!ok) {
            br.legal = false;
            out.branches.push_back(br);
            return out;
        }
    }
    br.exhausted = st.live.empty();
    out.branches.push_back(br);
    return out;
}

// ---------------------------------------------------------------------------
// Concrete execution (actual colour lists)

struct ConcreteTrace {
    std::vector<StepRecord> steps;
    bool legal = true;
    bool exhausted = false;
    std::vector<std::string> flags;
    std::optional<Coloring> coloring;  // full colouring rebuilt when legal and exhausted
};

class ConcreteState {
public:
    ConcreteState(const PlaneGraph& h, ListAssignment lists, Demand demand)
        : h_(h), orig_lists_(lists), orig_demand_(demand), lists_(std::move(lists)), demand_(std::move(demand)) {
        for (int v : h.vertices()) {
            alive_.insert(v);
            lists_[v];
            demand_[v];
            phi_[v] = ColorSet{};
        }
    }

    const ListAssignment& lists() const { return lists_; }
    const Demand& demand() const { return demand_; }
    bool alive(int v) const { return alive_.count(v) != 0; }

    // Def-2.2 style deletion: u must have room for itself and all live neighbours.
    void deg_del(int u, StepRecord& rec) {
        require_alive(u);
        long need = demand_[u];
        for (int w : h_.neighbors(u))
            if (alive(w)) need += demand_[w];
        rec.inequality = "|L(v" + std::to_string(u) + ")| >= g(u) + sum g(N(u))";
        rec.lhs = lists_[u].size();
        rec.rhs = need;
        if (rec.lhs < need)
            throw Error("IllegalDelete", "u=" + std::to_string(u) + " needed=" + std::to_string(need) +
                                             " have=" + std::to_string(rec.lhs));
        deleted_.push_back({u, lists_[u], demand_[u]});
        alive_.erase(u);
    }

    void par_col(const std::map<int, ColorSet>& phi, StepRecord& rec) {
        for (const auto& [x, c] : phi) {
            require_alive(x);
            if (!c.subset_of(lists_[x])) throw Error("IllegalParCol", "colours not in L(" + std::to_string(x) + ")");
            if (c.size() > demand_[x]) throw Error("IllegalParCol", "over-colouring " + std::to_string(x));
        }
        for (const auto& [x, c] : phi) {
            demand_[x] -= c.size();
            phi_[x] |= c;
        }
        ListAssignment next = lists_;
        for (int w : alive_) {
            auto it = phi.find(w);
            if (it != phi.end()) next[w] -= it->second;
            for (int x : h_.neighbors(w)) {
                auto jt = phi.find(x);
                if (jt != phi.end()) next[w] -= jt->second;
            }
        }
        lists_ = next;
        for (int w : alive_) {
            if (lists_[w].size() < demand_[w]) {
                rec.inequality = "|L'(v" + std::to_string(w) + ")| >= g'(v" + std::to_string(w) + ")";
                rec.lhs = lists_[w].size();
                rec.rhs = demand_[w];
                throw Error("IllegalParCol", "vertex " + std::to_string(w));
            }
        }
    }

    ColorSet save(int u, int v, int k, StepRecord& rec) {
        require_alive(u);
        require_alive(v);
        ColorSet avail = lists_[u] - lists_[v];
        rec.inequality = "|L(u) \\ L(v)| >= k";
        rec.lhs = avail.size();
        rec.rhs = k;
        if (avail.size() < k)
            throw Error("CannotAvoid", std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(k));
        ColorSet pick = avail.smallest(k);
        par_col({{u, pick}}, rec);
        return pick;
    }

    ThreeSets pair_save(int u1, int u2, int v, int k, StepRecord& rec, std::vector<std::string>& flags) {
        require_alive(u1);
        require_alive(u2);
        require_alive(v);
        rec.inequality = "|L(u1)| + |L(u2)| >= |L(v)| + k";
        rec.lhs = lists_[u1].size() + lists_[u2].size();
        rec.rhs = lists_[v].size() + k;
        if (rec.lhs < rec.rhs)
            throw Error("PairBoundFails", "needed=" + std::to_string(rec.rhs) + " have=" + std::to_string(rec.lhs));
        if (h_.adjacent(u1, u2)) flags.push_back("pair-save partners are adjacent");
        ThreeSets p = three_sets_pick(lists_[u1], lists_[u2], lists_[v], k);
        par_col({{u1, p.s | p.r}, {u2, p.t | p.r}}, rec);
        return p;
    }

    bool exhausted() const { return alive_.empty(); }

    // Colours the deleted vertices in reverse deletion order; each one had room
    // for itself and its then-live neighbours when it was removed.
    std::optional<Coloring> rebuild() const {
        if (!alive_.empty()) return std::nullopt;
        Coloring c = phi_;
        for (auto it = deleted_.rbegin(); it != deleted_.rend(); ++it) {
            ColorSet avail = it->list;
            for (int w : h_.neighbors(it->v)) avail -= c[w];
            if (avail.size() < it->demand) return std::nullopt;
            c[it->v] |= avail.smallest(it->demand);
        }
        if (validate_coloring(h_, orig_lists_, orig_demand_, c)) return std::nullopt;
        return c;
    }

private:
    struct Deleted {
        int v;
        ColorSet list;
        int demand;
    };

    void require_alive(int v) const {
        if (!alive(v)) throw Error("DeadVertex", std::to_string(v));
    }

    const PlaneGraph& h_;
    ListAssignment orig_lists_;
    Demand orig_demand_;
    ListAssignment lists_;
    Demand demand_;
    std::set<int> alive_;
    Coloring phi_;
    std::vector<Deleted> deleted_;
};

inline ConcreteTrace run_scheme_concrete(const PlaneGraph& h, const ListAssignment& lists, const Demand& demand,
                                         const Scheme& scheme) {
    ConcreteTrace tr;
    ConcreteState st(h, lists, demand);
    for (const Step& s : scheme) {
        StepRecord rec;
        rec.step = to_string(s);
        try {
            switch (s.op) {
                case Step::Op::Delete: st.deg_del(s.u, rec); break;
                case Step::Op::Save: st.save(s.u, s.v, s.k, rec); break;
                case Step::Op::PairSave: st.pair_save(s.u, s.u2, s.v, s.k, rec, tr.flags); break;
                case Step::Op::Color:
                    if (!s.assign.empty()) throw Error("SymbolicOnly", "set-variable colouring in concrete mode");
                    st.par_col(s.colors, rec);
                    break;
                case Step::Op::AssumeSet:
                case Step::Op::Exclude:
                case Step::Op::Trim: throw Error("SymbolicOnly", "set-variable step in concrete mode");
            }
        } catch (const Error& e) {
            rec.legal = false;
            rec.error = e.what();
            tr.steps.push_back(rec);
            tr.legal = false;
            tr.exhausted = st.exhausted();
            return tr;
        }
        tr.steps.push_back(rec);
    }
    tr.exhausted = st.exhausted();
    if (tr.exhausted) tr.coloring = st.rebuild();
    return tr;
}

}  // namespace chooselab
