#include "ue2/adams_e2.hpp"

#include <gtest/gtest.h>

using namespace ue2;

namespace {

SpaceModel sp(const std::string& n, int D = 10) { return builtin_space(n, 2, D); }

}  // namespace

TEST(AdamsE2, SphereBottomRow)
{
    for (int n = 1; n <= 3; ++n) {
        Chart c = adams_chart(sp("S" + std::to_string(n)), sp("point"), 1, 5, 10);
        for (int t = 1; t <= 5; ++t)
            EXPECT_EQ(c.dim(0, t).value(), t == n ? 1 : 0) << "n=" << n << " t=" << t;
    }
}

TEST(AdamsE2, FreeSourceCollapses)
{
    for (const char* x : {"K1", "K2"})
        for (const char* y : {"point", "S1"}) {
            Chart c = adams_chart(sp(x), sp(y), 2, 5, 10);
            for (auto& e : c.entries)
                if (e.s > 0)
                    EXPECT_EQ(e.dim, 0) << x << " " << y << " s=" << e.s << " t=" << e.t;
        }
}

TEST(AdamsE2, WindowShape)
{
    Chart c = adams_chart(sp("S2"), sp("S1"), 2, 4, 10);
    EXPECT_EQ(c.entries.size(), 3u * 4u);
    for (auto& e : c.entries) {
        EXPECT_GE(e.t, 1);
        EXPECT_GE(e.dim, 0);
    }
    EXPECT_FALSE(c.dim(0, 0).has_value());
    EXPECT_FALSE(c.dim(3, 1).has_value());
    EXPECT_EQ(c.kind, "adams");
    Chart empty = adams_chart(sp("S2"), sp("point"), 0, 0, 10);
    EXPECT_TRUE(empty.entries.empty());
}

TEST(AdamsE2, RefusesSmallTruncation)
{
    EXPECT_THROW(adams_chart(sp("S2", 8), sp("S2", 8), 1, 7, 8), TruncationTooSmall);
    EXPECT_THROW(adams_chart(sp("S2"), sp("K1"), 1, 3, 10), TruncationTooSmall);
    EXPECT_NO_THROW(adams_chart(sp("S2", 9), sp("S2", 9), 1, 7, 9));
}

TEST(AdamsE2, IndependentOfTruncation)
{
    for (auto [x, y] : {std::pair{"S2", "S1"}, {"S1xS1", "point"}, {"K2", "point"}}) {
        Chart a = adams_chart(sp(x, 8), sp(y, 8), 2, 5, 8);
        Chart b = adams_chart(sp(x, 10), sp(y, 10), 2, 5, 10);
        EXPECT_EQ(a.entries, b.entries) << x << " " << y;
    }
}

TEST(AdamsE2, SuspensionTarget)
{
    FTModule M = suspension_target(sp("S1"), 3);
    ASSERT_EQ(M.dim(), 2);
    EXPECT_EQ(M.basis()[0].deg, 3);
    EXPECT_EQ(M.basis()[1].deg, 4);
    EXPECT_TRUE(M.action_table().empty());
    EXPECT_FALSE(M.has_products());
}

TEST(AdamsE2, HomSetCounts)
{
    // i -> 0 or i
    EXPECT_EQ(hom_set_cardinality(sp("S2"), sp("S2")), 2);
    // x -> 0 or s: x^2 = Sq^1 x goes to s^2 = 0 = Sq^1 s
    EXPECT_EQ(hom_set_cardinality(sp("K1", 6), sp("S1", 6)), 2);
    // i -> x would need x^2 = 0
    EXPECT_EQ(hom_set_cardinality(sp("S1", 6), sp("K1", 6)), 1);
    // nothing but the zero map into a point
    EXPECT_EQ(hom_set_cardinality(sp("S1xS1", 6), sp("point", 6)), 1);
    FringeCell f = fringe_cell(sp("S2"), sp("S2"), "hom-set");
    EXPECT_EQ(f.card, 2);
    EXPECT_EQ(f.dim, 1);
}

TEST(AdamsE2, NormalizedMatchesFull)
{
    AdamsData a = adams_data(sp("S2"), sp("S1"), 2, 5, 10);
    for (int t = 1; t <= 5; ++t)
        EXPECT_EQ(a.complexes[t - 1].cohomology(),
                  cosimplicial_der_complex(*a.resolution, a.targets[t], 2, false).cohomology());
}
