#include "ue2/gh_e2.hpp"

#include <gtest/gtest.h>

using namespace ue2;

namespace {

SpaceModel sp(const std::string& n, int D = 10) { return builtin_space(n, 2, D); }

}  // namespace

TEST(WResolution, BaseChangeKeepsDimensions)
{
    CotripleResolution R(sp("S2", 8).cohomology, 2, 8);
    for (int k = 1; k <= 2; ++k) {
        WResolution W(R, k);
        for (int s = 0; s <= 2; ++s)
            for (int d = 0; d <= 8; ++d)
                EXPECT_EQ(W.dim(s, d), R.level(s).dim(d));
    }
    WResolution W1(R, 1);
    EXPECT_EQ(rank(W1.face_matrix(1, 0, 6)), rank(R.face_matrix(1, 0, 6)));
}

TEST(WResolution, FrobeniusSemilinear)
{
    CotripleResolution R(sp("S2", 8).cohomology, 2, 8);
    auto v = WResolution(R, 2).check_semilinear(8);
    EXPECT_TRUE(v.ok) << (v.problems.empty() ? "" : v.problems.front());
    EXPECT_TRUE(WResolution(R, 3).check_semilinear(6, 9).ok);
    EXPECT_THROW(WResolution(R, kMaxTowerLevel + 1), TowerExhausted);
}

TEST(DescendComplex, LevelOneIsTheSameComplex)
{
    AdamsData a = adams_data(sp("S2"), sp("S1"), 2, 4, 10);
    auto full = cosimplicial_der_complex(*a.resolution, a.targets[3], 2, false);
    DescendedComplex d1 = descend_complex(full, 1);
    EXPECT_TRUE(d1.problems.empty());
    for (int s = 0; s < full.length(); ++s)
        EXPECT_EQ(d1.delta[s], full.differential(s));
    DescendedComplex d3 = descend_complex(full, 3);
    EXPECT_TRUE(d3.problems.empty());
    EXPECT_EQ(CochainComplex(2, d3.delta).cohomology(), full.cohomology());
}

TEST(GhE2, AgreesWithAdamsOnSpheres)
{
    GhRun r = gh_run(sp("S2"), sp("S1"), 2, 6, 10, 3);
    EXPECT_TRUE(r.ok()) << r.to_text();
    Chart a = adams_chart(sp("S2"), sp("S1"), 2, 6, 10);
    EXPECT_TRUE(compare_charts(a, r.chart).ok);
    EXPECT_EQ(r.chart.kind, "gh");
    EXPECT_EQ(r.chart.tower_level, 3);
    ASSERT_TRUE(r.chart.fringe.has_value());
    EXPECT_EQ(r.chart.fringe->flag, "dims-only");
}

TEST(GhE2, FreeSourceCollapses)
{
    for (const char* x : {"K1", "K2"}) {
        Chart c = gh_chart(sp(x), sp("point"), 2, 5, 10, 2);
        for (auto& e : c.entries)
            if (e.s > 0)
                EXPECT_EQ(e.dim, 0) << x;
    }
}

TEST(GhE2, EmptyWindow)
{
    Chart c = gh_chart(sp("S2"), sp("point"), 0, 0, 10, 2);
    EXPECT_TRUE(c.entries.empty());
}

TEST(CompareCharts, IdenticalAndDiffering)
{
    Chart a = adams_chart(sp("S2"), sp("point"), 1, 4, 10);
    CompareReport same = compare_charts(a, a);
    EXPECT_TRUE(same.ok);
    EXPECT_TRUE(same.diffs.empty());
    Chart b = a;
    b.entries[2].dim += 1;
    CompareReport diff = compare_charts(a, b);
    EXPECT_FALSE(diff.ok);
    ASSERT_EQ(diff.diffs.size(), 1u);
    EXPECT_EQ(diff.diffs[0].s, b.entries[2].s);
    EXPECT_EQ(diff.diffs[0].t, b.entries[2].t);
    EXPECT_NE(diff.to_json().find("\"diff\""), std::string::npos);
    Chart c = a;
    c.t_max = 5;
    EXPECT_THROW(compare_charts(a, c), WindowMismatch);
}

TEST(Saturation, SphereWitnessesWithinLevelThree)
{
    SaturationReport r = d1_saturation_report(sp("S2"), sp("point"), 2, 4, 10, 1, 3);
    EXPECT_TRUE(r.ok) << r.to_text();
    for (auto& c : r.cells)
        EXPECT_LE(c.witness_level, 3);
}

TEST(Saturation, VacuousWhenNothingToKill)
{
    SaturationReport r = d1_saturation_report(sp("S2"), sp("point"), 0, 1, 10, 1, 2);
    EXPECT_TRUE(r.ok);
    for (auto& c : r.cells)
        EXPECT_EQ(c.reps, 0);
}

TEST(Saturation, ShortScheduleIsInconclusive)
{
    SaturationReport r = d1_saturation_report(sp("S2"), sp("point"), 1, 3, 10, 1, 1);
    EXPECT_TRUE(r.inconclusive);
    EXPECT_FALSE(r.ok);
}
