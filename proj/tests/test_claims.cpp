#include <gtest/gtest.h>

#include "chooselab/claims.hpp"

using namespace chooselab;

namespace {

const ClaimVariant& variant(const std::string& id, const std::string& label) {
    for (const auto& v : find_claim(id).variants)
        if (v.label == label) return v;
    throw std::runtime_error("no variant " + label);
}

std::optional<std::size_t> first_pair(const Scheme& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].op == Step::Op::PairSave) return i;
    return std::nullopt;
}

Profile computed_profile(const ClaimVariant& v) { return v.start ? *v.start : profile(v.host, v.h).fg; }

}  // namespace

TEST(Catalog, ListsKnownClaims) {
    const auto& cat = claim_catalog();
    EXPECT_GE(cat.size(), 24u);
    std::set<std::string> ids;
    for (const auto& c : cat) EXPECT_TRUE(ids.insert(c.id).second) << "duplicate id " << c.id;
    EXPECT_TRUE(ids.count("star"));
    EXPECT_TRUE(ids.count("path-3443443"));
    EXPECT_TRUE(ids.count("min-degree"));
}

TEST(Catalog, UnknownIdRaises) {
    try {
        find_claim("no-such-claim");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "UnknownClaim");
    }
}

TEST(Catalog, DependenciesPointBackwards) {
    std::map<std::string, std::size_t> pos;
    const auto& cat = claim_catalog();
    for (std::size_t i = 0; i < cat.size(); ++i) pos[cat[i].id] = i;
    for (const auto& [from, to] : claim_dependency_edges()) {
        ASSERT_TRUE(pos.count(from)) << from;
        EXPECT_LT(pos.at(from), pos.at(to)) << from << " -> " << to;
    }
}

TEST(Catalog, EveryFixtureIsTriangleFree) {
    for (const auto& c : claim_catalog())
        for (const auto& v : c.variants) EXPECT_TRUE(v.host.triangle_free()) << c.id << " " << v.label;
}

TEST(BuildClaim, StarAtKThree) {
    const auto& v = variant("star", "k=3");
    EXPECT_EQ(v.h.size(), 3u);
    EXPECT_EQ(v.host.vertex_count(), 3u + 1u + 4u);  // one stub on the centre, two on each leaf
    EXPECT_EQ(v.scheme.size(), 4u);
    EXPECT_EQ(computed_profile(v), (Profile{{0, {11, 4}}, {1, {7, 4}}, {2, {7, 4}}}));
}

TEST(BuildClaim, FourCycleWithTwoFours) {
    const auto p = computed_profile(variant("cycle-44-43", "d3=4,d4=4"));
    EXPECT_EQ(p.at(1), std::make_pair(9, 4));
    EXPECT_EQ(p.at(2), std::make_pair(5, 3));
    EXPECT_EQ(p.at(3), std::make_pair(5, 2));
    EXPECT_EQ(p.at(4), std::make_pair(5, 3));
}

TEST(BuildClaim, FiveVertexOnCycleHasSixVertexFixture) {
    const auto& v = variant("5-vertex-on-5334-no-41-nbr", "v6!=v3");
    EXPECT_EQ(v.h.size(), 6u);
    EXPECT_EQ(computed_profile(v).at(2), std::make_pair(9, 4));
}

TEST(GoldenProfiles, EveryPrintedValueMatches) {
    std::size_t values = 0;
    for (const auto& c : claim_catalog())
        for (const auto& v : c.variants) {
            const auto r = verify_variant(v);
            values += r.golden_values;
            EXPECT_TRUE(r.mismatches.empty()) << c.id << " " << v.label;
        }
    EXPECT_GE(values, 60u);
}

TEST(VerifyClaim, StarRepairedPassesLiteralFails) {
    const auto r = verify_claim("star");
    ASSERT_EQ(r.variants.size(), 4u);
    EXPECT_TRUE(r.passes());
    for (const auto& v : r.variants) {
        if (v.label == "k=3" || v.label == "k=6") {
            EXPECT_FALSE(v.literal_trace.has_value());
            continue;
        }
        ASSERT_TRUE(v.literal_trace.has_value()) << v.label;
        EXPECT_FALSE(v.literal_trace->fully_passes()) << v.label;
    }
    const auto f = r.variants[1].literal_trace->first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->rhs, 10);
    EXPECT_EQ(f->lhs, 9);
}

TEST(VerifyClaim, MinimumDegreePasses) {
    const auto r = verify_claim("min-degree");
    EXPECT_TRUE(r.passes());
    for (const auto& v : r.variants) EXPECT_GT(v.concrete_runs, 0u);
}

TEST(VerifyClaim, LoweredListPinpointsTheDeletion) {
    const auto& v = variant("star", "k=3");
    Profile p = computed_profile(v);
    p[1].first -= 1;
    const auto t = run_scheme_symbolic(start_state(v, p), v.scheme);
    EXPECT_FALSE(t.legal());
    const auto f = t.first_failure();
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->step, "<1>");
    EXPECT_NE(f->error.find("IllegalDelete"), std::string::npos);
}

// Each variant has at least one vertex whose list cannot shrink by one unit. The
// minimum-degree claim has three units to spare and is left out.
TEST(VerifyClaim, EveryPassingVariantHasATightVertex) {
    for (const auto& c : claim_catalog())
        for (const auto& v : c.variants) {
            if (c.id == "min-degree") continue;
            if (!run_scheme_symbolic(start_state(v, computed_profile(v)), v.scheme).fully_passes()) continue;
            const auto slack = slack_vertices(v);
            EXPECT_LT(slack.size(), computed_profile(v).size()) << c.id << " " << v.label;
        }
}

TEST(VerifyClaim, AssumptionsOnlyInMinimalityBranches) {
    for (const auto& c : claim_catalog())
        for (const auto& v : c.variants) {
            const auto r = verify_variant(v);
            if (!v.minimality) {
                EXPECT_TRUE(r.trace.assumptions().empty()) << c.id << " " << v.label;
            }
        }
}

TEST(VerifyClaim, ConcreteRunsAgreeWithSymbolicVerdicts) {
    VerifyOptions opt;
    opt.concrete_samples = 32;
    for (const auto& c : claim_catalog())
        for (const auto& v : c.variants) EXPECT_EQ(verify_variant(v, opt).concrete_failures, 0u) << c.id << " " << v.label;
}

TEST(VerifyAll, ExcludedClaimIsSkipped) {
    const auto s = verify_all({}, {"star"});
    const auto it = std::find_if(s.claims.begin(), s.claims.end(), [](const ClaimReport& r) { return r.id == "star"; });
    ASSERT_NE(it, s.claims.end());
    EXPECT_TRUE(it->skipped);
    EXPECT_FALSE(it->passes());
    EXPECT_EQ(s.skipped(), 1u);
}

// Property: every verdict is unchanged when all sizes are doubled or tripled.
TEST(VerifyAll, ScaleDoesNotChangeVerdicts) {
    const auto base = verify_all();
    for (int m : {2, 3}) {
        VerifyOptions opt;
        opt.scale = m;
        opt.concrete_samples = 0;
        const auto scaled = verify_all(opt);
        ASSERT_EQ(scaled.claims.size(), base.claims.size());
        for (std::size_t i = 0; i < base.claims.size(); ++i)
            for (std::size_t j = 0; j < base.claims[i].variants.size(); ++j) {
                const auto& a = base.claims[i].variants[j];
                const auto& b = scaled.claims[i].variants[j];
                EXPECT_EQ(a.scheme_passes(), b.scheme_passes()) << base.claims[i].id << " " << a.label << " m=" << m;
                if (a.literal_trace) {
                    EXPECT_EQ(a.literal_trace->fully_passes(), b.literal_trace->fully_passes()) << base.claims[i].id;
                }
            }
    }
}

// Property: for the first pair-save of each scheme, checking every integer split
// of k = 1..3 gives the same verdict as checking the three corners.
TEST(PairSaveProperty, CornersDecideAllSplits) {
    std::size_t compared = 0;
    for (const auto& c : claim_catalog())
        for (const auto& v : c.variants) {
            const auto idx = first_pair(v.scheme);
            if (!idx) continue;
            for (int k = 1; k <= 3; ++k) {
                const Profile p = scale_profile(computed_profile(v), k);
                const Scheme sc = scale_scheme(v.scheme, k);
                const bool corners = run_scheme_symbolic(start_state(v, p), sc).fully_passes();
                bool all = true;
                for (int s = 0; s <= k; ++s)
                    for (int t = 0; s + t <= k; ++t)
                        all = all && run_scheme_symbolic_split(start_state(v, p), sc, *idx, s, t, k - s - t).fully_passes();
                EXPECT_EQ(all, corners) << c.id << " " << v.label << " k=" << k;
                ++compared;
            }
        }
    EXPECT_GT(compared, 20u);
}
