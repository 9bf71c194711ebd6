#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chooselab/error.hpp"
#include "chooselab/plane_graph.hpp"

// Charge redistribution on plane graphs: initial charges, the five transfer rules,
// final charges, and audits of the rule tables. All amounts are integer twelfths.

namespace chooselab {

using Charge = std::int64_t;

constexpr Charge kTwelfths = 12;

constexpr Charge frac(int num, int den) { return static_cast<Charge>(num) * kTwelfths / den; }

inline std::string to_twelfths(Charge c) { return std::to_string(c) + "/12"; }

// Reduced fraction, e.g. 14 -> "7/6", -24 -> "-2".
inline std::string to_fraction(Charge c) {
    const Charge g = std::gcd(c < 0 ? -c : c, kTwelfths);
    const Charge num = c / (g == 0 ? 1 : g), den = kTwelfths / (g == 0 ? kTwelfths : g);
    if (c == 0) return "0";
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

inline Charge vertex_charge(int degree) { return (3 * degree - 10) * kTwelfths; }
inline Charge face_charge(int degree) { return (2 * degree - 10) * kTwelfths; }

inline std::string class_name(const DegreeClass& c) { return std::to_string(c.d) + "_" + std::to_string(c.t); }

// ---------------------------------------------------------------------------
// Rule tables

struct RuleHit {
    std::string tag;
    Charge amount = 0;
};

// What a 4-vertex's 3-neighbours look like from one incident 4-face.
struct FourVertexView {
    int threes = 0;
    int lone_t = 0;                // the single 3-neighbour's own count of 3-neighbours
    bool lone_on_face = false;
    bool partner_on_face = false;  // that neighbour's 3-neighbour lies on the face too
    bool consecutive = false;      // two 3-neighbours next to each other in the rotation
    int on_face = 0;               // how many of the two lie on the face

    std::string key() const {
        std::ostringstream o;
        o << "threes=" << threes;
        if (threes == 1)
            o << ",lone_t=" << lone_t << ",on_face=" << lone_on_face << ",partner_on_face=" << partner_on_face;
        if (threes == 2) o << ",consecutive=" << consecutive << ",on_face=" << on_face;
        return o.str();
    }
};

// Every sub-case whose hypothesis holds; a correct table yields exactly one for
// up to two 3-neighbours and none beyond.
inline std::vector<RuleHit> four_vertex_hits(const FourVertexView& s) {
    std::vector<RuleHit> out;
    if (s.threes == 0) out.push_back({"four-vertex-a", frac(1, 2)});
    if (s.threes == 1 && s.lone_t == 0) out.push_back({"four-vertex-b", s.lone_on_face ? frac(1, 2) : frac(1, 3)});
    if (s.threes == 1 && s.lone_t == 1)
        out.push_back({"four-vertex-c", s.lone_on_face && s.partner_on_face ? frac(1, 2) : frac(1, 3)});
    if (s.threes == 2 && !s.consecutive) out.push_back({"four-vertex-d", frac(1, 3)});
    if (s.threes == 2 && s.consecutive)
        out.push_back({"four-vertex-e", s.on_face == 2 ? frac(1, 2) : s.on_face == 1 ? frac(1, 3) : frac(1, 6)});
    return out;
}

inline std::optional<RuleHit> four_vertex_transfer(const FourVertexView& s, const std::string& where = "") {
    auto hits = four_vertex_hits(s);
    if (hits.size() > 1) throw Error("RuleAmbiguity", where + " " + s.key());
    if (hits.empty()) return std::nullopt;
    return hits.front();
}

// Amount a 3-vertex of class 3_t receives from one neighbour of degree `sender_degree`.
inline std::optional<RuleHit> support_three(int receiver_t, int sender_degree) {
    if (receiver_t == 0) return RuleHit{"support-3", frac(1, 3)};
    if (receiver_t == 1 && sender_degree >= 4) return RuleHit{"support-3", frac(1, 2)};
    return std::nullopt;
}

using FaceClasses = std::array<DegreeClass, 4>;

// 1, 2 or 3 for the privileged 4-face shapes around a unique 5+ corner, else 0.
inline int face_type(const FaceClasses& c) {
    int big = -1, count = 0;
    for (int i = 0; i < 4; ++i)
        if (c[i].d >= 5) {
            big = i;
            ++count;
        }
    if (count != 1) return 0;
    const DegreeClass a = c[(big + 1) % 4], b = c[(big + 2) % 4], z = c[(big + 3) % 4];
    const int threes = (a.d == 3) + (b.d == 3) + (z.d == 3);
    const int fours = (a.d == 4) + (b.d == 4) + (z.d == 4);
    if (threes == 2 && fours == 1) return 1;
    if (a.d == 4 && z.d == 4 && b == DegreeClass{3, 1}) return 2;
    static const std::vector<std::array<DegreeClass, 3>> third{
        {{{3, 0}, {4, 1}, {4, 1}}}, {{{3, 0}, {4, 2}, {4, 0}}}, {{{3, 1}, {4, 1}, {4, 0}}}, {{{4, 2}, {3, 0}, {4, 1}}}};
    for (const auto& p : third)
        if ((a == p[0] && b == p[1] && z == p[2]) || (z == p[0] && b == p[1] && a == p[2])) return 3;
    return 0;
}

struct LambdaPattern {
    DegreeClass self;
    std::array<DegreeClass, 3> around;  // the other corners in boundary order

    std::string str() const {
        return "(" + class_name(self) + "," + class_name(around[0]) + "," + class_name(around[1]) + "," +
               class_name(around[2]) + ")";
    }
    LambdaPattern reversed() const { return {self, {around[2], around[1], around[0]}}; }
};

inline LambdaPattern lambda_at(const FaceClasses& c, int i) {
    return {c[i], {c[(i + 1) % 4], c[(i + 2) % 4], c[(i + 3) % 4]}};
}

struct Family {
    std::string tag;
    Charge amount = 0;
    std::vector<std::string> printed;  // entries as written, e.g. "5,3_0,4_1,4_0"
    std::vector<Pattern> entries;
};

namespace detail {

inline Pattern split_pattern(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) items.push_back(tok);
    return parse_pattern(items);
}

inline Family make_family(std::string tag, Charge amount, std::vector<std::string> printed) {
    Family f{std::move(tag), amount, std::move(printed), {}};
    for (const auto& p : f.printed) f.entries.push_back(split_pattern(p));
    return f;
}

inline bool entry_matches(const Pattern& e, const LambdaPattern& l) {
    return e[0].accepts(l.self) && e[1].accepts(l.around[0]) && e[2].accepts(l.around[1]) &&
           e[3].accepts(l.around[2]);
}

}  // namespace detail

// The named families in the order they are consulted; anything unmatched gets 1/2.
inline const std::vector<Family>& families() {
    static const std::vector<Family> all{
        detail::make_family("F1", frac(1, 1),
                            {"5,3,3,5+", "5,3_0,4_1,4_0", "5,3,5+,4_2", "5,3,5+,3", "5,4_1,3_0,4_1", "5_0,4,3,5"}),
        detail::make_family("F5/6", frac(5, 6),
                            {"5,3_0,4_2,5_>=1", "5,3_1,4_1,5_>=1", "5,3,5+,4_1", "5_>=1,4_2,3_0,5", "5_>=1,4_1,3_1,5",
                             "5,4_2,5,4_2", "5,4_0,4_1,4_1", "5,4_1,4_0,4_1", "5,4_0,4_2,4_0", "5,4_2,4_0,5",
                             "5,4_0,4_0,4_2"}),
        detail::make_family("F3/4", frac(3, 4),
                            {"5,3,5,4_0", "5,3,5,5", "5,3_0,4_1,5_>=1", "5,4_1,5,4_2", "5_>=1,4_1,3_0,5"}),
        detail::make_family("F2/3", frac(2, 3),
                            {"5,3_1,4_1,5_0", "5,3_0,4_2,5_0", "5,3,4,6+", "5,4,3,6+", "5,4_0,4_1,4_0", "5,4_0,4_0,4_1",
                             "5,4_1,4,5", "5,4_1,5,4_1", "5,4_2,5,4_0", "5,4_2,5,5", "5,4_2,6+,4_2"}),
        detail::make_family("F7/12", frac(7, 12), {"5,4_1,5,4_0", "5,4_1,5,5"}),
    };
    return all;
}

inline constexpr const char* kCatchAllFamily = "F1/2";
inline constexpr Charge kCatchAllAmount = frac(1, 2);

struct FamilyMatch {
    std::string tag;
    Charge amount = 0;
    std::string entry;  // the printed entry that matched, empty for the catch-all
    bool reversed = false;
};

inline FamilyMatch classify_family(const LambdaPattern& l) {
    const LambdaPattern r = l.reversed();
    for (const auto& fam : families())
        for (std::size_t i = 0; i < fam.entries.size(); ++i) {
            if (detail::entry_matches(fam.entries[i], l)) return {fam.tag, fam.amount, fam.printed[i], false};
            if (detail::entry_matches(fam.entries[i], r)) return {fam.tag, fam.amount, fam.printed[i], true};
        }
    return {kCatchAllFamily, kCatchAllAmount, "", false};
}

// Every family (not just the first) that matches `l` in some orientation.
inline std::set<std::string> matching_families(const LambdaPattern& l) {
    std::set<std::string> out;
    const LambdaPattern r = l.reversed();
    for (const auto& fam : families())
        for (const auto& e : fam.entries)
            if (detail::entry_matches(e, l) || detail::entry_matches(e, r)) out.insert(fam.tag);
    return out;
}

// Transfer from corner i of a 4-face into the face. `four` is consulted only when the
// corner has degree 4. Returns nothing for 3-corners and for 4-vertices outside the table.
inline std::optional<RuleHit> corner_transfer(const FaceClasses& c, int i, const FourVertexView& four,
                                              const std::string& where = "") {
    const DegreeClass me = c[i];
    if (me.d <= 3) return std::nullopt;
    if (me.d == 4) return four_vertex_transfer(four, where);
    if (const int k = face_type(c); k > 0) return RuleHit{"typed-face-" + std::to_string(k), frac(10 - k, 6)};
    if (me.d >= 6) return RuleHit{"six-plus", frac(1, 1)};
    const FamilyMatch m = classify_family(lambda_at(c, i));
    return RuleHit{"family-" + m.tag, m.amount};
}

inline FaceClasses face_classes(const PlaneGraph& g, const Face& f) {
    if (f.degree() != 4) throw Error("NotQuadFace", "face of degree " + std::to_string(f.degree()));
    FaceClasses c;
    for (int i = 0; i < 4; ++i) c[i] = g.degree_class(f.walk[i]);
    return c;
}

inline int face_type(const PlaneGraph& g, const Face& f) {
    return f.degree() == 4 ? face_type(face_classes(g, f)) : 0;
}

// The face read from u, in the face's boundary direction.
inline LambdaPattern lambda(const PlaneGraph& g, int u, const Face& f) {
    const FaceClasses c = face_classes(g, f);
    for (int i = 0; i < 4; ++i)
        if (f.walk[i] == u) return lambda_at(c, i);
    throw Error("NotIncident", "vertex " + std::to_string(u) + " is not on the face");
}

// ---------------------------------------------------------------------------
// Charges on a concrete embedded graph

struct TransferRecord {
    std::string from;
    std::string to;
    Charge amount = 0;
    std::string rule;
    std::string note;

    auto key() const { return std::tie(from, to, rule); }
    bool operator<(const TransferRecord& o) const { return key() < o.key(); }
};

struct LedgerEntry {
    std::string element;  // "v<id>" or "f<index>"
    int degree = 0;
    Charge initial = 0;
    Charge in = 0;
    Charge out = 0;
    Charge final_charge() const { return initial + in - out; }
};

struct ChargeLedger {
    std::vector<Face> faces;
    std::vector<LedgerEntry> entries;
    std::vector<TransferRecord> transfers;
    std::vector<std::string> anomalies;  // configurations no rule covers
    std::vector<std::string> notes;      // interpretation choices that were exercised

    Charge total_initial() const {
        Charge s = 0;
        for (const auto& e : entries) s += e.initial;
        return s;
    }
    Charge total_final() const {
        Charge s = 0;
        for (const auto& e : entries) s += e.final_charge();
        return s;
    }
    bool conserved() const { return total_initial() == total_final() && total_initial() == -20 * kTwelfths; }
    std::vector<std::string> negative() const {
        std::vector<std::string> out;
        for (const auto& e : entries)
            if (e.final_charge() < 0) out.push_back(e.element);
        return out;
    }
};

inline std::string vertex_element(int v) { return "v" + std::to_string(v); }
inline std::string face_element(std::size_t i) { return "f" + std::to_string(i); }

inline void require_plane(const PlaneGraph& g) {
    if (!g.embedded()) throw Error("NotEmbedded", "graph has no rotation system");
    if (!g.connected()) throw Error("NotEmbedded", "graph is not connected");
    if (const long chi = g.euler_characteristic(); chi != 2)
        throw Error("NotEmbedded", "rotation system is not planar (V-E+F = " + std::to_string(chi) + ")");
}

inline ChargeLedger initial_charges(const PlaneGraph& g) {
    require_plane(g);
    ChargeLedger l;
    l.faces = g.faces();
    for (int v : g.vertices()) l.entries.push_back({vertex_element(v), g.degree(v), vertex_charge(g.degree(v)), 0, 0});
    for (std::size_t i = 0; i < l.faces.size(); ++i) {
        const int d = static_cast<int>(l.faces[i].degree());
        l.entries.push_back({face_element(i), d, face_charge(d), 0, 0});
    }
    return l;
}

namespace detail {

inline bool simple_quad(const Face& f) {
    return f.degree() == 4 && std::set<int>(f.walk.begin(), f.walk.end()).size() == 4;
}

inline FourVertexView four_vertex_view(const PlaneGraph& g, int u, const std::set<int>& on_face, bool& exercised) {
    FourVertexView s;
    std::vector<int> threes;
    for (int w : g.neighbors(u))
        if (g.degree(w) == 3) threes.push_back(w);
    s.threes = static_cast<int>(threes.size());
    if (s.threes == 1) {
        const int v = threes.front();
        s.lone_t = g.degree_class(v).t;
        s.lone_on_face = on_face.count(v) > 0;
        if (s.lone_t == 1) {
            for (int w : g.neighbors(v))
                if (g.degree(w) == 3) s.partner_on_face = on_face.count(w) > 0;
            exercised = s.lone_on_face;
        }
    } else if (s.threes == 2) {
        s.consecutive = g.consecutive(u, threes[0], threes[1]);
        s.on_face = static_cast<int>(on_face.count(threes[0]) + on_face.count(threes[1]));
    }
    return s;
}

}  // namespace detail

// Every transfer the rules prescribe, as a canonical sorted list.
inline std::vector<TransferRecord> apply_rules(const PlaneGraph& g, std::vector<std::string>* anomalies = nullptr,
                                               std::vector<std::string>* notes = nullptr) {
    require_plane(g);
    std::vector<TransferRecord> out;
    auto anomaly = [&](const std::string& s) {
        if (anomalies) anomalies->push_back(s);
    };

    for (int u : g.vertices()) {
        if (g.degree(u) != 3) continue;
        const int t = g.degree_class(u).t;
        if (t >= 2) {
            anomaly(vertex_element(u) + ": 3-vertex with " + std::to_string(t) + " 3-neighbours, no support rule");
            continue;
        }
        for (int w : g.neighbors(u))
            if (auto hit = support_three(t, g.degree(w)))
                out.push_back({vertex_element(w), vertex_element(u), hit->amount, hit->tag, "receiver 3_" + std::to_string(t)});
    }

    const auto faces = g.faces();
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const Face& f = faces[fi];
        if (f.degree() != 4) continue;
        if (!detail::simple_quad(f)) {
            anomaly(face_element(fi) + ": 4-walk with a repeated vertex, no face rule applied");
            continue;
        }
        FaceClasses cls;
        for (int i = 0; i < 4; ++i) cls[i] = g.degree_class(f.walk[i]);
        const std::set<int> on_face(f.walk.begin(), f.walk.end());
        for (int i = 0; i < 4; ++i) {
            const int u = f.walk[i];
            FourVertexView view;
            bool exercised = false;
            if (cls[i].d == 4) view = detail::four_vertex_view(g, u, on_face, exercised);
            const std::string where = vertex_element(u) + "->" + face_element(fi);
            auto hit = corner_transfer(cls, i, view, where);
            if (!hit) {
                if (cls[i].d == 4) anomaly(where + ": 4-vertex with " + std::to_string(view.threes) + " 3-neighbours, no rule");
                continue;
            }
            std::string note;
            if (hit->tag.rfind("family-", 0) == 0) note = lambda_at(cls, i).str();
            if (exercised && notes) notes->push_back(where + ": partner-on-face reading of the lone 3_1 sub-case used");
            out.push_back({vertex_element(u), face_element(fi), hit->amount, hit->tag, note});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ChargeLedger final_charges(const PlaneGraph& g) {
    ChargeLedger l = initial_charges(g);
    l.transfers = apply_rules(g, &l.anomalies, &l.notes);
    std::map<std::string, LedgerEntry*> by;
    for (auto& e : l.entries) by[e.element] = &e;
    for (const auto& t : l.transfers) {
        by.at(t.from)->out += t.amount;
        by.at(t.to)->in += t.amount;
    }
    return l;
}

// ---------------------------------------------------------------------------
// Audits

struct Finding {
    std::string key;
    std::string message;
};

struct AuditReport {
    std::string name;
    std::vector<Finding> findings;
    std::map<std::string, std::int64_t> stats;
    std::vector<std::string> info;
    bool passed() const { return findings.empty(); }
};

// Degree classes used when enumerating patterns; 6+ is represented by degree 7.
inline std::vector<DegreeClass> pattern_classes() {
    return {{3, 0}, {3, 1}, {4, 0}, {4, 1}, {4, 2}, {5, 0}, {5, 1}, {5, 2}, {5, 3}, {6, 0}, {7, 0}};
}

inline AuditReport audit_family_partition() {
    AuditReport r{"families", {}, {}, {}};
    const auto cls = pattern_classes();
    std::int64_t total = 0, catch_all = 0;
    for (int st = 0; st <= 3; ++st)
        for (const auto& a : cls)
            for (const auto& b : cls)
                for (const auto& c : cls) {
                    const LambdaPattern l{{5, st}, {a, b, c}};
                    ++total;
                    const auto fams = matching_families(l);
                    if (fams.empty()) ++catch_all;
                    if (fams.size() > 1) {
                        std::string list;
                        for (const auto& f : fams) list += (list.empty() ? "" : ", ") + f;
                        r.findings.push_back({l.str(), "matched by several families: " + list});
                    }
                }
    r.stats["patterns"] = total;
    r.stats["catch_all"] = catch_all;
    r.stats["double_matches"] = static_cast<std::int64_t>(r.findings.size());
    return r;
}

// Every placement of a 4-vertex's 3-neighbours relative to one incident face.
inline std::vector<FourVertexView> four_vertex_views() {
    std::vector<FourVertexView> out;
    out.push_back({});
    for (int lt = 0; lt <= 1; ++lt)
        for (int on = 0; on <= 1; ++on)
            for (int partner = 0; partner <= lt; ++partner) {
                FourVertexView s;
                s.threes = 1;
                s.lone_t = lt;
                s.lone_on_face = on;
                s.partner_on_face = partner;
                out.push_back(s);
            }
    for (int cons = 0; cons <= 1; ++cons)
        for (int on = 0; on <= 2; ++on) {
            if (on == 2 && !cons) continue;  // both face corners beside u are consecutive at u
            FourVertexView s;
            s.threes = 2;
            s.consecutive = cons;
            s.on_face = on;
            out.push_back(s);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Four-face scenarios: one face with its four corners and the off-face 3-neighbours
// of each corner attached as pendant 3-vertices.

struct FaceScenario {
    FaceClasses corners;
    std::vector<int> pendant_parent;
    std::vector<int> pendant_t;
    // Pendants of opposite corners may be a single vertex; when set, the second index is
    // folded into the first.
    std::optional<std::pair<int, int>> merged;
    std::array<bool, 4> consecutive{};  // for 4_2 corners: are the two 3-neighbours consecutive

    int on_face_threes(int i) const { return (corners[(i + 1) % 4].d == 3) + (corners[(i + 3) % 4].d == 3); }

    FourVertexView view(int i) const {
        FourVertexView s;
        s.threes = corners[i].t;
        const int onf = on_face_threes(i);
        if (s.threes == 1) {
            if (onf == 1) {
                const int j = corners[(i + 1) % 4].d == 3 ? (i + 1) % 4 : (i + 3) % 4;
                s.lone_on_face = true;
                s.lone_t = corners[j].t;
                // The lone neighbour's own 3-neighbour is on the face only as the corner opposite i.
                s.partner_on_face = s.lone_t == 1 && corners[(i + 2) % 4].d == 3;
            } else {
                for (std::size_t p = 0; p < pendant_parent.size(); ++p)
                    if (pendant_parent[p] == i) s.lone_t = pendant_t[p];
            }
        } else if (s.threes == 2) {
            s.on_face = onf;
            s.consecutive = onf == 2 ? true : consecutive[i];
        }
        return s;
    }

    std::string key() const {
        std::string k = "(";
        for (int i = 0; i < 4; ++i) k += (i ? "," : "") + (corners[i].d >= 6 ? std::string("6+") : class_name(corners[i]));
        k += ")";
        if (!pendant_parent.empty()) {
            k += " pendants[";
            for (std::size_t p = 0; p < pendant_parent.size(); ++p)
                k += (p ? "," : "") + std::to_string(pendant_parent[p]) + ":3_" + std::to_string(pendant_t[p]);
            k += "]";
        }
        if (merged)
            k += " shared(" + std::to_string(pendant_parent[merged->first]) + "," +
                 std::to_string(pendant_parent[merged->second]) + ")";
        for (int i = 0; i < 4; ++i)
            if (corners[i].d == 4 && corners[i].t == 2 && on_face_threes(i) < 2)
                k += std::string(" c") + std::to_string(i) + (consecutive[i] ? "=consec" : "=apart");
        return k;
    }
};

// Visits every scenario: corner degrees in {3,4,5,6+}, t up to d-2 (6+ carries only its
// on-face 3-neighbours), pendant classes, whether two opposite corners share a pendant,
// and the consecutiveness flag of 4_2 corners.
inline void for_each_face_scenario(const std::function<void(const FaceScenario&)>& visit) {
    const std::vector<DegreeClass> base{{3, 0}, {3, 1}, {4, 0}, {4, 1}, {4, 2}, {5, 0}, {5, 1}, {5, 2}, {5, 3}, {7, -1}};
    FaceScenario s;
    std::vector<int> parents, flag_corners;

    auto emit_flags = [&] {
        const std::size_t nf = flag_corners.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << nf); ++mask) {
            s.consecutive = {};
            for (std::size_t b = 0; b < nf; ++b) s.consecutive[flag_corners[b]] = (mask >> b) & 1;
            visit(s);
        }
    };
    auto first_pendant = [&](int corner) {
        for (std::size_t p = 0; p < parents.size(); ++p)
            if (parents[p] == corner) return static_cast<int>(p);
        return -1;
    };
    auto emit_merges = [&] {
        s.merged.reset();
        for (std::size_t p = 0; p < parents.size(); ++p)
            if (s.pendant_t[p] < (s.corners[parents[p]].d == 3 ? 1 : 0)) return;
        emit_flags();
        // Two shared pendants would cross outside the face, so at most one pair shares.
        for (int i = 0; i < 2; ++i) {
            const int a = first_pendant(i), b = first_pendant(i + 2);
            if (a < 0 || b < 0 || s.pendant_t[a] != s.pendant_t[b]) continue;
            const int three_parents = (s.corners[i].d == 3) + (s.corners[i + 2].d == 3);
            if (s.pendant_t[a] < three_parents) continue;
            s.merged = std::make_pair(a, b);
            emit_flags();
            s.merged.reset();
        }
    };
    std::function<void(std::size_t)> pend = [&](std::size_t p) {
        if (p == parents.size()) return emit_merges();
        for (int t = 0; t <= 1; ++t) {
            s.pendant_t[p] = t;
            pend(p + 1);
        }
    };
    std::function<void(int)> corners = [&](int i) {
        if (i < 4) {
            for (DegreeClass c : base) {
                s.corners[i] = c;
                corners(i + 1);
            }
            return;
        }
        const FaceClasses saved = s.corners;
        for (int j = 0; j < 4; ++j) {
            if (s.corners[j].d >= 6)
                s.corners[j].t = s.on_face_threes(j);
            else if (s.corners[j].t < s.on_face_threes(j)) {
                s.corners = saved;
                return;
            }
        }
        parents.clear();
        flag_corners.clear();
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < s.corners[j].t - s.on_face_threes(j); ++k) parents.push_back(j);
        for (int j = 0; j < 4; ++j)
            if (s.corners[j].d == 4 && s.corners[j].t == 2 && s.on_face_threes(j) < 2) flag_corners.push_back(j);
        s.pendant_parent = parents;
        s.pendant_t.assign(parents.size(), 0);
        pend(0);
        s.corners = saved;
    };
    corners(0);
}

namespace detail {

// Small labelled graph: the face corners followed by pendants.
struct LocalGraph {
    std::vector<DegreeClass> cls;
    std::vector<std::vector<int>> adj;

    explicit LocalGraph(const FaceScenario& s) {
        for (int i = 0; i < 4; ++i) cls.push_back(s.corners[i]);
        adj.assign(4, {});
        for (int i = 0; i < 4; ++i) {
            adj[i].push_back((i + 1) % 4);
            adj[i].push_back((i + 3) % 4);
        }
        std::vector<int> node(s.pendant_parent.size(), -1);
        for (std::size_t p = 0; p < s.pendant_parent.size(); ++p) {
            if (s.merged && static_cast<int>(p) == s.merged->second) continue;
            node[p] = static_cast<int>(cls.size());
            cls.push_back({3, s.pendant_t[p]});
            adj.emplace_back();
        }
        if (s.merged) node[s.merged->second] = node[s.merged->first];
        for (std::size_t p = 0; p < s.pendant_parent.size(); ++p) {
            adj[node[p]].push_back(s.pendant_parent[p]);
            adj[s.pendant_parent[p]].push_back(node[p]);
        }
    }

    // Simple paths (or cycles when `closed`) whose classes follow the pattern.
    bool has_walk(const Pattern& p, bool closed) const {
        std::vector<int> path;
        std::vector<char> used(cls.size(), 0);
        std::function<bool(int)> go = [&](int v) {
            if (!p[path.size()].accepts(cls[v])) return false;
            path.push_back(v);
            used[v] = 1;
            bool ok = false;
            if (path.size() == p.size()) {
                ok = !closed || std::find(adj[v].begin(), adj[v].end(), path.front()) != adj[v].end();
            } else {
                for (int w : adj[v])
                    if (!used[w] && go(w)) {
                        ok = true;
                        break;
                    }
            }
            path.pop_back();
            used[v] = 0;
            return ok;
        };
        for (int v = 0; v < static_cast<int>(cls.size()); ++v)
            if (go(v)) return true;
        return false;
    }
};

}  // namespace detail

struct FourFaceExclusion {
    std::string claim;
    std::string description;
    std::vector<Pattern> paths;
    std::vector<Pattern> cycles;
};

inline FourFaceExclusion exclusion(std::string claim, std::string description, std::vector<std::string> paths,
                                   std::vector<std::string> cycles) {
    FourFaceExclusion e{std::move(claim), std::move(description), {}, {}};
    for (const auto& p : paths) e.paths.push_back(detail::split_pattern(p));
    for (const auto& c : cycles) e.cycles.push_back(detail::split_pattern(c));
    return e;
}

// Claim consequences that can be read off one face and its pendant 3-neighbours.
inline std::vector<FourFaceExclusion> default_four_face_exclusions() {
    return {
        exclusion("star", "no (3,3,3)-path", {"3,3,3"}, {}),
        exclusion("k2-no-3nbr", "a k_{k-2}-vertex has no 3_1-neighbour; no (3,3,4,3)-path",
                  {"4_2,3_1", "5_3,3_1", "6_4,3_1", "3,3,4,3"}, {}),
        exclusion("cycle-44-43", "no (4-,4-,4-,3)-cycle", {}, {"4-,4-,4-,3"}),
        exclusion("41-next-to-42-or-53", "no 4_{>=1} adjacent to a 4_2 or 5_3", {"4_>=1,4_2", "4_>=1,5_3"}, {}),
        exclusion("52-no-42-nbr", "no 5_{>=2} with a 4_2-neighbour", {"5_>=2,4_2"}, {}),
        exclusion("cycle-52-334", "no (5_{>=2},3,3,4)- or (6_{>=3},3,3,4)-cycle", {}, {"5_>=2,3,3,4", "6_>=3,3,3,4"}),
        exclusion("cycle-52-344", "no (5_{>=2},3,4,4)-cycle", {}, {"5_>=2,3,4,4"}),
        exclusion("cycle-4444", "no (4,4,4,4_{>=1})- or (4,4,4,5_{>=2})-cycle", {}, {"4,4,4,4_>=1", "4,4,4,5_>=2"}),
        exclusion("cycle-53-343", "no (5_3,3,4,3)- or (6_4,3,4,3)-cycle", {}, {"5_3,3,4,3", "6_4,3,4,3"}),
        exclusion("cycle-51-434", "no (5_{>=1},4,3,4)-cycle", {}, {"5_>=1,4,3,4"}),
        exclusion("cycle-63-434", "no (6_{>=3},4,3,4)-cycle", {}, {"6_>=3,4,3,4"}),
        exclusion("path-334-43", "no (3,3,4,4,3)- or (3,3,4,4,4,3)-path", {"3,3,4,4,3", "3,3,4,4,4,3"}, {}),
        exclusion("path-3434-43", "no (3,4,3,4,3)- or (3,4,3,4,4,3)-path", {"3,4,3,4,3", "3,4,3,4,4,3"}, {}),
        exclusion("path-41-41-41", "no (4_{>=1},4_{>=1},4_{>=1})-path", {"4_>=1,4_>=1,4_>=1"}, {}),
        exclusion("path-3443443", "no (3,4,4,3,4,4,3)-path", {"3,4,4,3,4,4,3"}, {}),
        exclusion("path-42-4-41", "no (4_2,4,4_{>=1})- or (4_2,5_{>=1},4_{>=1})-path",
                  {"4_2,4,4_>=1", "4_2,5_>=1,4_>=1"}, {}),
        exclusion("path-31-52-41", "no (3_1,5_{>=2},4_{>=1})-path", {"3_1,5_>=2,4_>=1"}, {}),
        exclusion("cycle-5345-51", "on a (5,3,4,5_{>=1})-cycle the first 5-vertex has no other 3-neighbour", {},
                  {"5_>=2,3,4,5_>=1"}),
        exclusion("5-vertex-on-5434-no-42-nbr", "a 5-vertex on a (5,4,3,4)-cycle has no 4_2-neighbour", {},
                  {"5,4_2,3,4"}),
    };
}

inline std::optional<std::string> excluded_by(const FaceScenario& s, const std::vector<FourFaceExclusion>& ex) {
    const detail::LocalGraph g(s);
    for (const auto& e : ex) {
        for (const auto& p : e.paths)
            if (g.has_walk(p, false)) return e.claim;
        for (const auto& c : e.cycles)
            if (g.has_walk(c, true)) return e.claim;
    }
    return std::nullopt;
}

struct ScenarioTransfers {
    std::array<Charge, 4> amount{};
    std::array<std::string, 4> rule;
    Charge total() const { return amount[0] + amount[1] + amount[2] + amount[3]; }
};

inline ScenarioTransfers scenario_transfers(const FaceScenario& s) {
    ScenarioTransfers out;
    for (int i = 0; i < 4; ++i) {
        auto hit = corner_transfer(s.corners, i, s.view(i), s.key());
        out.amount[i] = hit ? hit->amount : 0;
        out.rule[i] = hit ? hit->tag : "none";
    }
    return out;
}

inline AuditReport sweep_4face(const std::vector<FourFaceExclusion>& exclusions = default_four_face_exclusions()) {
    AuditReport r{"four-face", {}, {}, {}};
    std::int64_t total = 0, survivors = 0;
    std::map<std::string, std::int64_t> by_claim;
    Charge best = -1;
    std::string best_key;
    for_each_face_scenario([&](const FaceScenario& s) {
        ++total;
        if (auto c = excluded_by(s, exclusions)) {
            ++by_claim[*c];
            return;
        }
        ++survivors;
        const ScenarioTransfers t = scenario_transfers(s);
        if (best < 0 || t.total() < best) {
            best = t.total();
            best_key = s.key();
        }
        if (t.total() < 2 * kTwelfths) {
            std::string detail;
            for (int i = 0; i < 4; ++i) detail += (i ? " + " : "") + to_fraction(t.amount[i]) + " [" + t.rule[i] + "]";
            r.findings.push_back({s.key(), "total " + to_fraction(t.total()) + " < 2: " + detail});
        }
    });
    r.stats["scenarios"] = total;
    r.stats["survivors"] = survivors;
    r.stats["min_total_twelfths"] = best;
    for (const auto& [c, n] : by_claim) r.stats["excluded_by:" + c] = n;
    r.info.push_back("minimum total " + to_fraction(best) + " at " + best_key);
    return r;
}

// Smallest transfer seen for each floor of the observation list.
struct ObservationFloors {
    Charge four = -1;        // any 4-vertex
    Charge five_plus = -1;   // degree >= 5
    Charge six_plus = -1;    // degree >= 6
    Charge two_threes = -1;  // degree >= 5 with two 3-corners on the face, after exclusions
};

inline ObservationFloors observation_floors(std::vector<Finding>* findings = nullptr) {
    ObservationFloors fl;
    auto lower = [](Charge& slot, Charge v) { slot = slot < 0 ? v : std::min(slot, v); };
    for (const auto& v : four_vertex_views()) {
        const auto hits = four_vertex_hits(v);
        if (hits.size() != 1 && findings)
            findings->push_back({v.key(), std::to_string(hits.size()) + " four-vertex sub-cases apply"});
        for (const auto& h : hits) lower(fl.four, h.amount);
    }
    const auto excl = default_four_face_exclusions();
    for_each_face_scenario([&](const FaceScenario& s) {
        const ScenarioTransfers t = scenario_transfers(s);
        int threes = 0;
        for (const auto& c : s.corners) threes += c.d == 3;
        bool checked_exclusions = false, excluded = false;
        for (int i = 0; i < 4; ++i) {
            const int d = s.corners[i].d;
            if (d >= 5) lower(fl.five_plus, t.amount[i]);
            if (d >= 6) lower(fl.six_plus, t.amount[i]);
            if (d >= 5 && threes >= 2) {
                if (!checked_exclusions) {
                    excluded = excluded_by(s, excl).has_value();
                    checked_exclusions = true;
                }
                if (!excluded) lower(fl.two_threes, t.amount[i]);
            }
        }
    });
    return fl;
}

inline AuditReport audit_transfer_observations() {
    AuditReport r{"observations", {}, {}, {}};
    const ObservationFloors fl = observation_floors(&r.findings);
    auto floor_check = [&](const std::string& name, Charge seen, Charge want) {
        r.stats["floor:" + name] = seen;
        if (seen < want)
            r.findings.push_back({name, "minimum " + to_fraction(seen) + " is below " + to_fraction(want)});
    };
    floor_check("degree>=4", fl.four, frac(1, 6));
    floor_check("degree>=5", fl.five_plus, frac(1, 2));
    floor_check("degree>=6", fl.six_plus, frac(1, 1));
    floor_check("degree>=5,two-3-corners", fl.two_threes, frac(1, 1));

    // Beyond the three 3-neighbours a 4-vertex can have, no sub-case may fire.
    for (int k = 3; k <= 4; ++k) {
        FourVertexView v;
        v.threes = k;
        if (!four_vertex_hits(v).empty()) r.findings.push_back({v.key(), "a four-vertex sub-case fires"});
    }

    // A 5-vertex whose face neighbours are 4_0 or 5+ and whose opposite corner is 4+.
    const auto cls = pattern_classes();
    for (int st = 0; st <= 3; ++st)
        for (const auto& a : cls)
            for (const auto& b : cls)
                for (const auto& c : cls) {
                    auto side_ok = [](DegreeClass x) { return x.d >= 5 || (x.d == 4 && x.t == 0); };
                    if (!side_ok(a) || !side_ok(c) || b.d < 4) continue;
                    const FaceClasses f{DegreeClass{5, st}, a, b, c};
                    const Charge got = corner_transfer(f, 0, {})->amount;
                    Charge want = frac(1, 2);
                    const bool pinned = a == DegreeClass{4, 0} && c == DegreeClass{4, 0} && b.d == 4 && b.t >= 1;
                    if (pinned) want = b.t == 2 ? frac(5, 6) : frac(2, 3);
                    const std::string k = lambda_at(f, 0).str();
                    if (pinned && got != want)
                        r.findings.push_back({k, "pinned amount " + to_fraction(want) + " but rules give " + to_fraction(got)});
                    if (!pinned && got > want)
                        r.findings.push_back({k, "expected at most 1/2, rules give " + to_fraction(got)});
                }
    return r;
}

// Worst-case bound for a 6+ vertex, step by step and in closed form.
struct VertexStats {
    int d = 6, r0 = 0, r1 = 0, r2 = 0, r3 = 0, alpha = 0, beta = 0;
};

inline Charge bound_rule_sum(const VertexStats& s) {
    const int rest = s.d - s.r0 - s.r1 - s.r2 - s.r3;
    return vertex_charge(s.d) - (frac(3, 2) * (s.r0 + s.r1) + frac(4, 3) * s.r2 + frac(7, 6) * s.r3 +
                                 frac(1, 1) * rest + frac(1, 2) * s.alpha + frac(1, 3) * s.beta);
}

inline Charge bound_regrouped(const VertexStats& s) {
    return (2 * s.d - 10) * kTwelfths - frac(1, 2) * (s.r0 + s.r1) - frac(1, 3) * s.r2 - frac(1, 6) * s.r3 -
           frac(1, 2) * (s.alpha + s.beta) + frac(1, 6) * s.beta;
}

inline Charge bound_substituted(const VertexStats& s) {
    return (2 * s.d - 10) * kTwelfths - frac(1, 2) * (s.r0 + s.r1) - frac(1, 3) * s.r2 - frac(1, 6) * s.r3 -
           frac(1, 2) * (s.d - (s.r1 + 2 * s.r2 + s.r3)) + frac(2, 6) * s.r0;
}

inline Charge bound_closed_form(int d, int r0, int r2, int r3) {
    return frac(3, 2) * d - 10 * kTwelfths - frac(1, 6) * r0 + frac(2, 3) * r2 + frac(1, 3) * r3;
}

inline AuditReport audit_inequality_6plus(int d_max = 12) {
    if (d_max < 6) throw Error("BadArgument", "d_max must be at least 6");
    AuditReport r{"ineq6plus", {}, {}, {}};
    std::int64_t tuples = 0, negative_d6 = 0;
    Charge tight_d7 = -1;
    for (int d = 6; d <= d_max; ++d)
        for (int r0 = 0; r0 <= d; ++r0)
            for (int r1 = 0; r0 + r1 <= d; ++r1)
                for (int r2 = 0; r0 + r1 + r2 <= d; ++r2) {
                    if (r0 + r1 + r2 > d / 2) continue;
                    for (int r3 = 0; r0 + r1 + r2 + r3 <= d; ++r3) {
                        const int cap = d - (r1 + 2 * r2 + r3);
                        if (cap < 0) continue;
                        for (int beta = 2 * r0; beta <= cap; ++beta)
                            for (int alpha = 0; alpha + beta <= cap; ++alpha) {
                                const VertexStats s{d, r0, r1, r2, r3, alpha, beta};
                                ++tuples;
                                const Charge a = bound_rule_sum(s), b = bound_regrouped(s), c = bound_substituted(s),
                                             z = bound_closed_form(d, r0, r2, r3);
                                std::ostringstream k;
                                k << "d=" << d << " r=(" << r0 << "," << r1 << "," << r2 << "," << r3 << ") alpha=" << alpha
                                  << " beta=" << beta;
                                if (a != b) r.findings.push_back({k.str(), "regrouping changes the value"});
                                if (b < c) r.findings.push_back({k.str(), "substitution step is not a lower bound"});
                                if (c != z) r.findings.push_back({k.str(), "closed form differs from derivation"});
                                if (d >= 7 && z < 0) r.findings.push_back({k.str(), "negative bound for degree >= 7"});
                                if (d == 6 && z < 0) ++negative_d6;
                                if (d == 7 && r0 == 3 && r1 == 0 && r2 == 0 && r3 == 0) tight_d7 = z;
                            }
                    }
                }
    r.stats["tuples"] = tuples;
    r.stats["negative_at_degree_6"] = negative_d6;
    r.stats["degree7_r0_3_twelfths"] = tight_d7;
    if (tight_d7 != 0)
        r.findings.push_back({"d=7 r0=3", "tight case should be exactly 0, got " + to_fraction(tight_d7)});
    return r;
}

// ---------------------------------------------------------------------------
// Golden table of the displayed charge arithmetic

enum class SourceKind {
    Family,            // patterns whose family amount is the cited value
    FourVertex,        // key: a, b-on, b-off, c-both, c-other, d, e-both, e-one, e-none
    TypedFace,         // param: face type
    SixPlus,
    SupportThree,      // param: receiver t
    Floor,             // key: degree4, degree5, degree6, two-threes
    FamilyCap,         // key: all, after-F1, after-F5/6, after-F3/4, catch-all
    TypedExcess,       // param: face type; typed amount minus the 6+ amount
    NeighbourOutflow,  // param: number of 3-neighbours; largest support they can draw
    LineRef,           // key: another line's id
    Threshold,         // a case-split constant, recorded but not rule-derived
};

struct AmountSource {
    SourceKind kind = SourceKind::Threshold;
    std::string key;
    int param = 0;
    std::vector<std::string> patterns;
};

struct LedgerItem {
    Charge amount = 0;
    int count = 1;
    AmountSource source;
};

struct LedgerLine {
    std::string id;
    Charge base = 0;
    int sign = 1;  // +1 when items flow in, -1 when they flow out
    std::vector<LedgerItem> items;
    Charge claimed = 0;
    std::string anchor_note;  // where the printed rule citation differs from the rule that fires

    Charge recomputed() const {
        Charge s = base;
        for (const auto& it : items) s += sign * it.count * it.amount;
        return s;
    }
};

namespace detail {

inline AmountSource fam(std::vector<std::string> p) { return {SourceKind::Family, "", 0, std::move(p)}; }
inline AmountSource fv(std::string k) { return {SourceKind::FourVertex, std::move(k), 0, {}}; }
inline AmountSource typed(int k) { return {SourceKind::TypedFace, "", k, {}}; }
inline AmountSource six() { return {SourceKind::SixPlus, "", 0, {}}; }
inline AmountSource sup(int t) { return {SourceKind::SupportThree, "", t, {}}; }
inline AmountSource flr(std::string k) { return {SourceKind::Floor, std::move(k), 0, {}}; }
inline AmountSource cap(std::string k) { return {SourceKind::FamilyCap, std::move(k), 0, {}}; }
inline AmountSource excess(int k) { return {SourceKind::TypedExcess, "", k, {}}; }
inline AmountSource outflow(int n) { return {SourceKind::NeighbourOutflow, "", n, {}}; }
inline AmountSource ref(std::string id) { return {SourceKind::LineRef, std::move(id), 0, {}}; }
inline AmountSource threshold() { return {SourceKind::Threshold, "", 0, {}}; }

inline LedgerItem it(int n, int d, AmountSource s, int count = 1) { return {frac(n, d), count, std::move(s)}; }

inline LedgerLine face_line(std::string id, std::vector<LedgerItem> items, std::string note = "") {
    return {std::move(id), face_charge(4), 1, std::move(items), 0, std::move(note)};
}
inline LedgerLine vertex_line(std::string id, int degree, std::vector<LedgerItem> items, Charge claimed,
                              std::string note = "") {
    return {std::move(id), vertex_charge(degree), -1, std::move(items), claimed, std::move(note)};
}
inline LedgerLine reduced_line(std::string id, Charge base, std::vector<LedgerItem> items, Charge claimed) {
    return {std::move(id), base, -1, std::move(items), claimed, ""};
}
inline LedgerLine support_line(std::string id, std::vector<LedgerItem> items) {
    return {std::move(id), vertex_charge(3), 1, std::move(items), 0, ""};
}
inline LedgerLine sum_line(std::string id, std::vector<LedgerItem> items, Charge claimed, std::string note = "") {
    return {std::move(id), 0, 1, std::move(items), claimed, std::move(note)};
}

}  // namespace detail

inline const std::vector<LedgerLine>& case_ledger() {
    using namespace detail;
    static const std::vector<LedgerLine> lines{
        // 4-faces
        face_line("face/all-5plus", {it(1, 2, flr("degree5"), 4)}),
        face_line("face/all-4", {it(1, 2, fv("a"), 4)}),
        face_line("face/three-5plus/one-6plus", {it(1, 2, flr("degree5"), 2), it(1, 1, flr("degree6"))}),
        face_line("face/three-5/other-3", {it(3, 4, fam({"5,3,5,5"}), 2), it(1, 2, flr("degree5"))}),
        face_line("face/three-5/other-4_0", {it(1, 2, fv("a")), it(1, 2, flr("degree5"), 3)}),
        face_line("face/three-5/other-4_1",
                  {it(1, 3, fv("b-off")), it(7, 12, fam({"5,4_1,5,5"}), 2), it(1, 2, flr("degree5"))}),
        face_line("face/three-5/other-4_2",
                  {it(1, 6, fv("e-none")), it(2, 3, fam({"5,4_2,5,5"}), 2), it(1, 2, flr("degree5"))}),
        face_line("face/adjacent-big/two-3s", {it(1, 1, flr("two-threes"), 2)}),
        face_line("face/adjacent-big/two-6plus", {it(1, 1, flr("degree6"), 2)}),
        face_line("face/adjacent-big/3-corner/31-or-42/first-6plus",
                  {it(1, 3, fv("c-other")), it(2, 3, fam({"5,4,3,6+"})), it(1, 1, six())}),
        face_line("face/adjacent-big/3-corner/31-or-42/second-6plus",
                  {it(1, 3, fv("c-other")), it(2, 3, fam({"5,3,4,6+"})), it(1, 1, six())}),
        face_line("face/adjacent-big/3-corner/31-or-42/5ge1",
                  {it(1, 3, fv("c-other")), it(5, 6, fam({"5,3_1,4_1,5_>=1", "5,3_0,4_2,5_>=1"})),
                   it(5, 6, fam({"5_>=1,4_2,3_0,5", "5_>=1,4_1,3_1,5"}))}),
        face_line("face/adjacent-big/3-corner/31-or-42/5_0",
                  {it(1, 3, fv("c-other")), it(2, 3, fam({"5_0,3_1,4_1,5_0", "5_0,3_0,4_2,5_0"})),
                   it(1, 1, fam({"5_0,4,3,5"}))}),
        face_line("face/adjacent-big/3-corner/30-41/6plus",
                  {it(1, 2, fv("b-on")), it(1, 2, flr("degree5")), it(1, 1, flr("degree6"))}),
        face_line("face/adjacent-big/3-corner/30-41/5ge1",
                  {it(1, 2, fv("b-on")), it(3, 4, fam({"5,3_0,4_1,5_>=1"})), it(3, 4, fam({"5_>=1,4_1,3_0,5"}))}),
        face_line("face/adjacent-big/3-corner/30-41/5_0",
                  {it(1, 2, fv("b-on")), it(1, 2, flr("degree5")), it(1, 1, fam({"5_0,4,3,5"}))}),
        sum_line("face/adjacent-big/4-corner/big-pair-floor", {it(1, 2, flr("degree5")), it(1, 1, flr("degree6"))},
                 frac(3, 2)),
        face_line("face/adjacent-big/4-corner/6plus/with-4_0",
                  {it(1, 2, fv("a")), it(1, 2, flr("degree5")), it(1, 1, flr("degree6"))}),
        face_line("face/adjacent-big/4-corner/both-4_0", {it(1, 2, fv("a"), 2), it(1, 2, flr("degree5"), 2)}),
        face_line("face/adjacent-big/4-corner/4_2-and-4_0",
                  {it(1, 2, fv("a")), it(1, 2, flr("degree5")), it(1, 6, fv("e-none")),
                   it(5, 6, fam({"5,4_2,4_0,5"}))}),
        face_line("face/adjacent-big/4-corner/4_1-and-4_1", {it(1, 3, fv("b-off"), 2), it(2, 3, fam({"5,4_1,4,5"}), 2)}),
        face_line("face/adjacent-big/4-corner/4_1-and-4_0",
                  {it(1, 2, fv("a")), it(1, 2, flr("degree5")), it(1, 3, fv("b-off")), it(2, 3, fam({"5,4_1,4,5"}))}),
        face_line("face/opposite-big/two-3s", {it(1, 1, flr("two-threes"), 2)}),
        face_line("face/opposite-big/two-6plus", {it(1, 1, flr("degree6"), 2)}),
        face_line("face/opposite-big/3-corner/4_2", {it(1, 1, fam({"5,3,5+,4_2"}), 2)}),
        face_line("face/opposite-big/3-corner/4_1", {it(1, 3, fv("b-off")), it(5, 6, fam({"5,3,5+,4_1"}), 2)}),
        face_line("face/opposite-big/3-corner/4_0/6plus",
                  {it(1, 2, fv("a")), it(1, 2, flr("degree5")), it(1, 1, flr("degree6"))}),
        face_line("face/opposite-big/3-corner/4_0/both-5", {it(1, 2, fv("a")), it(3, 4, fam({"5,3,5,4_0"}), 2)}),
        face_line("face/opposite-big/4-corners/no-3nbrs", {it(1, 2, fv("a"), 2), it(1, 2, flr("degree5"), 2)}),
        sum_line("face/opposite-big/4-corners/small-pair-floor", {it(1, 3, fv("b-off")), it(1, 6, fv("e-none"))},
                 frac(1, 2)),
        face_line("face/opposite-big/4-corners/6plus",
                  {it(1, 3, fv("b-off")), it(1, 6, fv("e-none")), it(1, 2, flr("degree5")), it(1, 1, flr("degree6"))}),
        face_line("face/opposite-big/4-corners/4_1-4_1", {it(1, 3, fv("b-off"), 2), it(2, 3, fam({"5,4_1,5,4_1"}), 2)}),
        face_line("face/opposite-big/4-corners/4_1-4_0",
                  {it(1, 3, fv("b-off")), it(1, 2, fv("a")), it(7, 12, fam({"5,4_1,5,4_0"}), 2)}),
        face_line("face/opposite-big/4-corners/4_2-4_1",
                  {it(1, 3, fv("b-off")), it(1, 6, fv("e-none")), it(3, 4, fam({"5,4_1,5,4_2"}), 2)},
                  "the 1/6 is cited to the no-3-neighbour sub-case; the consecutive-pair sub-case gives it"),
        face_line("face/opposite-big/4-corners/4_2-4_0",
                  {it(1, 6, fv("e-none")), it(1, 2, fv("a")), it(2, 3, fam({"5,4_2,5,4_0"}), 2)},
                  "the 1/6 is cited to the no-3-neighbour sub-case; the consecutive-pair sub-case gives it"),
        face_line("face/opposite-big/4-corners/4_2-4_2/both-5",
                  {it(1, 6, fv("e-none"), 2), it(5, 6, fam({"5,4_2,5,4_2"}), 2)}),
        face_line("face/opposite-big/4-corners/4_2-4_2/6plus",
                  {it(1, 6, fv("e-none"), 2), it(1, 1, six()), it(2, 3, fam({"5,4_2,6+,4_2"}))}),
        face_line("face/one-big/two-3s", {it(1, 2, fv("c-both")), it(3, 2, typed(1))},
                  "the typed amount is attributed to the third corner; it is the 5+ corner that sends it"),
        face_line("face/one-big/one-3/middle-3_1", {it(1, 3, fv("c-other"), 2), it(4, 3, typed(2))}),
        face_line("face/one-big/one-3/middle-3_0/no-extra", {it(1, 2, fv("b-on"), 2), it(1, 1, fam({"5,4_1,3_0,4_1"}))}),
        sum_line("face/one-big/one-3/middle-3_0/one-extra/pair", {it(1, 2, fv("b-on")), it(1, 3, fv("d"))}, frac(5, 6)),
        face_line("face/one-big/one-3/middle-3_0/one-extra",
                  {it(5, 6, ref("face/one-big/one-3/middle-3_0/one-extra/pair")), it(7, 6, typed(3))}),
        face_line("face/one-big/one-3/side-3/4-has-extra", {it(1, 2, fv("a")), it(1, 3, fv("d")), it(7, 6, typed(3))}),
        face_line("face/one-big/one-3/side-3/4-alone",
                  {it(1, 2, fv("a")), it(1, 2, fv("b-on")), it(1, 1, fam({"5,3_0,4_1,4_0"}))}),
        face_line("face/one-big/one-3/side-3/far-4-has-3nbr", {it(1, 3, fv("b-off")), it(1, 2, fv("b-on")), it(7, 6, typed(3))}),
        face_line("face/one-big/one-3/side-3/3-has-3nbr", {it(1, 3, fv("c-other")), it(1, 2, fv("a")), it(7, 6, typed(3))}),
        sum_line("face/one-big/all-4/one-4_2/sum", {it(1, 6, fv("e-none")), it(1, 2, fv("a"), 2)}, frac(7, 6)),
        face_line("face/one-big/all-4/one-4_2",
                  {it(7, 6, ref("face/one-big/all-4/one-4_2/sum")), it(5, 6, fam({"5,4_0,4_2,4_0", "5,4_0,4_0,4_2"}))}),
        face_line("face/one-big/all-4/all-4_0", {it(1, 2, fv("a"), 3), it(1, 2, flr("degree5"))}),
        sum_line("face/one-big/all-4/two-4_0/sum", {it(1, 3, fv("b-off")), it(1, 2, fv("a"), 2)}, frac(4, 3)),
        face_line("face/one-big/all-4/two-4_0",
                  {it(4, 3, ref("face/one-big/all-4/two-4_0/sum")), it(2, 3, fam({"5,4_0,4_0,4_1", "5,4_0,4_1,4_0"}))}),
        sum_line("face/one-big/all-4/one-4_0/sum", {it(1, 3, fv("b-off"), 2), it(1, 2, fv("a"))}, frac(7, 6)),
        face_line("face/one-big/all-4/one-4_0",
                  {it(7, 6, ref("face/one-big/all-4/one-4_0/sum")), it(5, 6, fam({"5,4_1,4_0,4_1", "5,4_1,4_1,4_0"}))}),

        // 3-vertices
        support_line("three/one-3nbr", {it(1, 2, sup(1), 2)}),
        support_line("three/no-3nbr", {it(1, 3, sup(0), 3)}),

        // 4-vertices
        vertex_line("four/no-3nbr", 4, {it(1, 2, fv("a"), 4)}, 0),
        sum_line("four/one-3_0/faces", {it(1, 2, fv("b-on"), 2), it(1, 3, fv("b-off"), 2)}, frac(5, 3)),
        vertex_line("four/one-3_0", 4, {it(1, 3, sup(0)), it(5, 3, ref("four/one-3_0/faces"))}, 0),
        sum_line("four/one-3_1/faces", {it(1, 2, fv("c-both")), it(1, 3, fv("c-other"), 3)}, frac(3, 2),
                 "cited to the non-consecutive-pair sub-case; the lone 3_1 sub-case gives these amounts"),
        vertex_line("four/one-3_1", 4, {it(1, 2, sup(1)), it(3, 2, ref("four/one-3_1/faces"))}, 0),
        sum_line("four/two-apart/faces", {it(1, 3, fv("d"), 4)}, frac(4, 3),
                 "cited to the lone 3_1 sub-case; the non-consecutive-pair sub-case gives 1/3"),
        sum_line("four/two-consecutive/faces", {it(1, 2, fv("e-both")), it(1, 3, fv("e-one"), 2), it(1, 6, fv("e-none"))},
                 frac(4, 3)),
        vertex_line("four/two-3nbrs", 4, {it(1, 3, sup(0), 2), it(4, 3, ref("four/two-apart/faces"))}, 0),

        // 6-vertices
        sum_line("six/5343-face/bound", {it(3, 2, typed(1)), it(1, 1, six(), 2), it(1, 3, sup(0), 2)}, frac(25, 6),
                 "the two neighbouring faces are cited to the 5-vertex family rule; for a 6-vertex the 6+ rule applies"),
        vertex_line("six/5343-face/no-extra", 6,
                    {it(25, 6, ref("six/5343-face/bound")), it(4, 3, typed(2), 2), it(7, 6, typed(3))}, 0),
        vertex_line("six/5343-face/extra-next", 6,
                    {it(25, 6, ref("six/5343-face/bound")), it(1, 1, six(), 2), it(4, 3, typed(2)), it(1, 2, sup(1))}, 0),
        sum_line("six/5343-face/extra-far/pair", {it(7, 6, typed(3), 2)}, frac(7, 3)),
        vertex_line("six/5343-face/extra-far", 6,
                    {it(25, 6, ref("six/5343-face/bound")), it(1, 1, six()), it(7, 3, ref("six/5343-face/extra-far/pair")),
                     it(1, 2, sup(1))},
                    0),
        vertex_line("six/no-5343/base", 6, {it(1, 1, six(), 6)}, frac(2, 1)),
        sum_line("six/no-5343/four-3_0", {it(1, 3, sup(0), 4)}, frac(4, 3)),
        reduced_line("six/no-5343/one-5334", frac(2, 1), {it(1, 2, excess(1)), it(1, 3, excess(2)), it(1, 1, outflow(2))},
                     frac(1, 6)),
        reduced_line("six/no-5343/no-5334", frac(2, 1), {it(1, 3, excess(2)), it(3, 2, outflow(3))}, frac(1, 6)),

        // 7+ vertices, tight case of the closed form
        vertex_line("seven/tight", 7,
                    {it(3, 2, typed(1), 3), it(1, 1, six(), 4), it(1, 3, sup(0), 6), it(1, 2, sup(1))}, 0),

        // 5-vertices
        sum_line("five/5343/face-and-3nbrs", {it(3, 2, typed(1)), it(1, 3, sup(0), 2)}, frac(13, 6)),
        sum_line("five/5343/far-pair", {it(1, 2, cap("catch-all")), it(5, 6, cap("after-F1"))}, frac(4, 3)),
        vertex_line("five/5343", 5, {it(13, 6, ref("five/5343/face-and-3nbrs")), it(4, 3, ref("five/5343/far-pair"), 2)},
                    frac(1, 6)),
        sum_line("five/5334/face-and-3nbr", {it(3, 2, typed(1)), it(1, 2, sup(1))}, frac(2, 1)),
        sum_line("five/5334/middle-pair", {it(5, 6, fam({"5,4_0,4_2,4_0"})), it(2, 3, fam({"5,4_0,4_1,4_0"}))},
                 frac(3, 2)),
        vertex_line("five/5334", 5,
                    {it(2, 1, ref("five/5334/face-and-3nbr")), it(1, 1, cap("all")), it(1, 2, cap("catch-all")),
                     it(3, 2, ref("five/5334/middle-pair"))},
                    0),
        vertex_line("five/5434/two-31", 5,
                    {it(4, 3, typed(2), 2), it(2, 3, fam({"5,4_1,5,4_1"})), it(5, 6, cap("after-F1"), 2)}, 0),
        vertex_line("five/5434/one-31", 5, {it(4, 3, typed(2)), it(5, 6, cap("after-F1"), 2), it(1, 1, cap("all"), 2)}, 0),
        vertex_line("five/5434/no-typed", 5, {it(1, 1, cap("all"), 5)}, 0),
        vertex_line("five/5434/one-42-30", 5, {it(7, 6, typed(3)), it(5, 6, cap("after-F1")), it(1, 1, cap("all"), 3)}, 0),
        vertex_line("five/5434/two-42-30", 5, {it(7, 6, typed(3), 2), it(5, 6, cap("after-F1"), 2), it(1, 1, cap("all"))},
                    0),
        sum_line("five/5344/3_1-side", {it(1, 2, sup(1)), it(1, 1, cap("all"))}, frac(3, 2)),
        sum_line("five/5344/3_0-side", {it(1, 3, sup(0)), it(7, 6, typed(3))}, frac(3, 2)),
        vertex_line("five/5344/some-2/3", 5,
                    {it(7, 6, typed(3)), it(3, 2, ref("five/5344/3_1-side")), it(5, 6, cap("after-F1"), 2),
                     it(2, 3, cap("after-F3/4"))},
                    0),
        vertex_line("five/5344/side-at-most-4/3", 5,
                    {it(7, 6, typed(3)), it(4, 3, threshold()), it(5, 6, cap("after-F1"), 3)}, 0),
        vertex_line("five/5344/typed-at-most-1", 5,
                    {it(1, 1, cap("all")), it(3, 2, ref("five/5344/3_1-side")), it(5, 6, cap("after-F1"), 3)}, 0),
        vertex_line("five/no-3nbr", 5, {it(1, 1, cap("all"), 5)}, 0),
        vertex_line("five/one-3nbr", 5, {it(1, 2, sup(1)), it(1, 1, cap("all"), 2), it(5, 6, cap("after-F1"), 3)}, 0),
        vertex_line("five/two-3nbrs/both-3_0", 5, {it(1, 3, sup(0), 2), it(1, 1, cap("all")), it(5, 6, cap("after-F1"), 4)},
                    0),
        vertex_line("five/two-3nbrs/adjacent", 5,
                    {it(1, 1, outflow(2)), it(1, 2, cap("catch-all"), 2), it(1, 1, cap("all"), 3)}, 0),
        sum_line("five/two-3nbrs/apart/first-side", {it(1, 1, cap("all")), it(5, 6, cap("after-F1")), it(1, 2, sup(1))},
                 frac(7, 3)),
        sum_line("five/two-3nbrs/apart/second-side-3_0", {it(5, 6, cap("after-F1"), 2), it(1, 3, sup(0))}, frac(2, 1)),
        vertex_line("five/two-3nbrs/apart/second-3_0", 5,
                    {it(7, 3, ref("five/two-3nbrs/apart/first-side")), it(2, 1, ref("five/two-3nbrs/apart/second-side-3_0")),
                     it(1, 2, cap("catch-all"))},
                    frac(1, 6)),
        sum_line("five/two-3nbrs/apart/neighbour-and-face", {it(1, 1, cap("all")), it(1, 2, sup(1))}, frac(3, 2)),
        sum_line("five/two-3nbrs/apart/side",
                 {it(3, 2, ref("five/two-3nbrs/apart/neighbour-and-face")), it(3, 4, cap("after-F5/6"))}, frac(9, 4)),
        vertex_line("five/two-3nbrs/apart/second-3_1", 5,
                    {it(9, 4, ref("five/two-3nbrs/apart/side"), 2), it(1, 2, cap("catch-all"))}, 0),
        vertex_line("five/three-3nbrs/spread", 5, {it(1, 3, sup(0), 3), it(1, 1, cap("all")), it(3, 4, cap("after-F5/6"), 4)},
                    0, "the support to the three 3-neighbours is cited to the 4-vertex rule"),
        vertex_line("five/three-3nbrs/clustered", 5,
                    {it(1, 3, sup(0), 3), it(1, 1, cap("all"), 2), it(3, 4, cap("after-F5/6"), 2), it(1, 2, cap("catch-all"))},
                    0),
    };
    return lines;
}

namespace detail {

inline std::vector<DegreeClass> classes_for(const DegreeConstraint& c, bool self) {
    std::vector<DegreeClass> out;
    const std::vector<DegreeClass> pool =
        self ? std::vector<DegreeClass>{{5, 0}, {5, 1}, {5, 2}, {5, 3}} : pattern_classes();
    for (const auto& x : pool)
        if (c.accepts(x)) out.push_back(x);
    return out;
}

// Family amounts over every concrete face the pattern describes, skipping typed faces.
inline std::set<Charge> family_amounts(const std::string& pattern) {
    const Pattern p = split_pattern(pattern);
    std::set<Charge> out;
    for (const auto& s : classes_for(p[0], true))
        for (const auto& a : classes_for(p[1], false))
            for (const auto& b : classes_for(p[2], false))
                for (const auto& c : classes_for(p[3], false)) {
                    const FaceClasses f{s, a, b, c};
                    if (face_type(f) != 0) continue;
                    out.insert(classify_family(lambda_at(f, 0)).amount);
                }
    return out;
}

inline FourVertexView view_for(const std::string& k) {
    FourVertexView s;
    if (k == "a") return s;
    if (k.rfind("b-", 0) == 0) {
        s.threes = 1;
        s.lone_on_face = k == "b-on";
    } else if (k.rfind("c-", 0) == 0) {
        s.threes = 1;
        s.lone_t = 1;
        s.lone_on_face = s.partner_on_face = k == "c-both";
    } else if (k == "d") {
        s.threes = 2;
    } else if (k.rfind("e-", 0) == 0) {
        s.threes = 2;
        s.consecutive = true;
        s.on_face = k == "e-both" ? 2 : k == "e-one" ? 1 : 0;
    } else {
        throw Error("BadLedger", "unknown four-vertex key " + k);
    }
    return s;
}

inline Charge typed_amount(int k) {
    static const std::map<int, FaceClasses> canon{
        {1, {DegreeClass{5, 2}, {3, 0}, {4, 2}, {3, 0}}},
        {2, {DegreeClass{5, 0}, {4, 1}, {3, 1}, {4, 1}}},
        {3, {DegreeClass{5, 1}, {3, 0}, {4, 1}, {4, 1}}},
    };
    return corner_transfer(canon.at(k), 0, {})->amount;
}

inline Charge family_cap(const std::string& key) {
    if (key == "catch-all") return kCatchAllAmount;
    std::size_t skip = 0;
    if (key == "after-F1") skip = 1;
    else if (key == "after-F5/6") skip = 2;
    else if (key == "after-F3/4") skip = 3;
    else if (key != "all") throw Error("BadLedger", "unknown family cap " + key);
    Charge best = kCatchAllAmount;
    for (std::size_t i = skip; i < families().size(); ++i) best = std::max(best, families()[i].amount);
    return best;
}

}  // namespace detail

// Re-derives one cited amount; returns an explanation of the mismatch, if any.
inline std::optional<std::string> check_source(const LedgerItem& item, const ObservationFloors& fl,
                                               const std::map<std::string, Charge>& claimed_by_id) {
    using detail::family_amounts;
    const AmountSource& s = item.source;
    auto mismatch = [&](Charge got) -> std::optional<std::string> {
        if (got == item.amount) return std::nullopt;
        return "cited " + to_fraction(item.amount) + " but rules give " + to_fraction(got);
    };
    switch (s.kind) {
        case SourceKind::Family:
            for (const auto& p : s.patterns) {
                const auto amounts = family_amounts(p);
                if (amounts.size() != 1) {
                    std::string list;
                    for (Charge a : amounts) list += (list.empty() ? "" : ",") + to_fraction(a);
                    return "(" + p + ") has no single family amount: {" + list + "}";
                }
                if (auto m = mismatch(*amounts.begin())) return "(" + p + ") " + *m;
            }
            return std::nullopt;
        case SourceKind::FourVertex: {
            auto hit = four_vertex_transfer(detail::view_for(s.key));
            return mismatch(hit ? hit->amount : 0);
        }
        case SourceKind::TypedFace: return mismatch(detail::typed_amount(s.param));
        case SourceKind::SixPlus:
            return mismatch(corner_transfer({DegreeClass{7, 0}, {4, 0}, {4, 0}, {4, 0}}, 0, {})->amount);
        case SourceKind::SupportThree: {
            auto hit = support_three(s.param, 4);
            return mismatch(hit ? hit->amount : 0);
        }
        case SourceKind::Floor: {
            const std::map<std::string, Charge> m{
                {"degree4", fl.four}, {"degree5", fl.five_plus}, {"degree6", fl.six_plus}, {"two-threes", fl.two_threes}};
            return mismatch(m.at(s.key));
        }
        case SourceKind::FamilyCap: return mismatch(detail::family_cap(s.key));
        case SourceKind::TypedExcess:
            return mismatch(detail::typed_amount(s.param) -
                            corner_transfer({DegreeClass{7, 0}, {4, 0}, {4, 0}, {4, 0}}, 0, {})->amount);
        case SourceKind::NeighbourOutflow: {
            Charge best = 0;
            for (int a = 0; a <= s.param; ++a)
                for (int b = 0; a + b <= s.param; ++b)
                    best = std::max(best, a * support_three(1, 4)->amount + b * support_three(0, 4)->amount);
            return mismatch(best);
        }
        case SourceKind::LineRef: {
            auto it = claimed_by_id.find(s.key);
            if (it == claimed_by_id.end()) return "refers to unknown line " + s.key;
            return mismatch(it->second);
        }
        case SourceKind::Threshold: return std::nullopt;
    }
    return std::nullopt;
}

inline AuditReport audit_case_ledger(const std::vector<LedgerLine>& lines = case_ledger()) {
    AuditReport r{"case-ledger", {}, {}, {}};
    const ObservationFloors fl = observation_floors();
    std::map<std::string, Charge> claimed;
    for (const auto& l : lines) claimed[l.id] = l.claimed;
    std::int64_t items = 0, derived = 0;
    for (const auto& l : lines) {
        if (l.recomputed() != l.claimed)
            r.findings.push_back({l.id, "sum is " + to_fraction(l.recomputed()) + ", table claims " + to_fraction(l.claimed)});
        for (const auto& item : l.items) {
            ++items;
            if (item.source.kind != SourceKind::Threshold) ++derived;
            if (auto m = check_source(item, fl, claimed)) r.findings.push_back({l.id, *m});
        }
        if (!l.anchor_note.empty()) r.info.push_back(l.id + ": " + l.anchor_note);
    }
    r.stats["lines"] = static_cast<std::int64_t>(lines.size());
    r.stats["items"] = items;
    r.stats["rule_derived_items"] = derived;
    return r;
}

}  // namespace chooselab
