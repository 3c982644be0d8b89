#include "ue2/resolution.hpp"
#include "ue2/spaces.hpp"

#include <gtest/gtest.h>

using namespace ue2;

TEST(Spaces, Sphere)
{
    SpaceModel S = sphere(2, 2, 6);
    ASSERT_EQ(S.cohomology.dim(), 1);
    EXPECT_EQ(S.cohomology.basis()[0].deg, 2);
    EXPECT_TRUE(S.cohomology.product(0, 0).empty());
    for (int s = 1; s <= 4; ++s)
        EXPECT_TRUE(S.cohomology.act_primitive(Letter{s, 0}, 0).empty());
    EXPECT_TRUE(S.finite);
}

TEST(Spaces, EilenbergMacLaneOne)
{
    SpaceModel K = eilenberg_maclane(2, 1, 6);
    const FTModule& A = K.cohomology;
    EXPECT_EQ(A.dim(), 6);
    for (int d = 1; d <= 6; ++d)
        EXPECT_EQ(A.dim_in(d), 1);
    const int x = A.indices_in(1).front();
    EXPECT_EQ(A.act_primitive(Letter{1, 0}, x), A.product(x, x));
    EXPECT_FALSE(A.product(x, x).empty());
    EXPECT_FALSE(K.finite);
    EXPECT_TRUE(A.validate().ok);
}

TEST(Spaces, TorusIsExterior)
{
    SpaceModel T = builtin_space("S1xS1", 2, 6);
    const FTModule& A = T.cohomology;
    EXPECT_EQ(A.dim_in(1), 2);
    EXPECT_EQ(A.dim_in(2), 1);
    EXPECT_EQ(A.dim(), 3);
    auto ones = A.indices_in(1);
    EXPECT_TRUE(A.product(ones[0], ones[0]).empty());
    EXPECT_FALSE(A.product(ones[0], ones[1]).empty());
    EXPECT_TRUE(A.validate().ok);
}

TEST(Spaces, NamesAndErrors)
{
    EXPECT_EQ(builtin_space("K(F_2,2)", 2, 6).cohomology, builtin_space("K2", 2, 6).cohomology);
    EXPECT_EQ(builtin_space("sphere(3)", 2, 6).cohomology, builtin_space("S3", 2, 6).cohomology);
    EXPECT_EQ(builtin_space("pt", 2, 6).cohomology.dim(), 0);
    EXPECT_THROW(builtin_space("RP2", 2, 6), UnknownSpace);
    EXPECT_THROW(builtin_space("S1xS1xS1", 2, 6), UnknownSpace);
    // a product of free algebras is free
    SpaceModel KK = builtin_space("K1xK2", 2, 6);
    ASSERT_TRUE(KK.free_generators.has_value());
    EXPECT_EQ(*KK.free_generators, (std::vector<int>{1, 2}));
}

TEST(Resolution, LevelZeroIsTheFreeAlgebra)
{
    SpaceModel S = sphere(2, 2, 8);
    CotripleResolution R(S.cohomology, 2, 8);
    EXPECT_EQ(R.level(0).hilbert(), hilbert_free(2, {2}, 8));
    // the augmentation sends the generator to the class
    const FreeAlgebra& R0 = R.level(0);
    EXPECT_EQ(R.face(0, 0).on_mono(R0.mono_of_gen(R0.base_gen(0))), (SparseVec{{0, 1}}));
}

TEST(Resolution, SimplicialIdentities)
{
    for (const char* name : {"S2", "K1", "K2", "S1xS1", "S1xS2"}) {
        SpaceModel X = builtin_space(name, 2, 6);
        CotripleResolution R(X.cohomology, 3, 6);
        auto v = R.check_simplicial(6);
        EXPECT_TRUE(v.ok) << name << ": " << (v.problems.empty() ? "" : v.problems.front());
    }
    SpaceModel S = builtin_space("S2", 3, 12);
    CotripleResolution R3(S.cohomology, 2, 12);
    EXPECT_TRUE(R3.check_simplicial(12).ok);
}

TEST(Resolution, ExtraDegeneracyForFreeAlgebras)
{
    for (int n : {1, 2}) {
        FreeAlgebra g(2, {n}, 7);
        CotripleResolution R(g.to_ft({"i"}), 3, 7);
        auto v = R.check_extra_degeneracy(g, 7);
        EXPECT_TRUE(v.ok) << "n=" << n << ": " << (v.problems.empty() ? "" : v.problems.front());
    }
}

TEST(Resolution, TopLevelFacesAreConsistent)
{
    SpaceModel S = sphere(2, 2, 6);
    CotripleResolution R(S.cohomology, 1, 6);
    const auto top = R.base_degrees(2);
    EXPECT_EQ(int(top.size()), R.level(1).num_monos());
    for (int i = 0; i <= 2; ++i)
        EXPECT_EQ(R.face_base_images(2, i).size(), top.size());
    EXPECT_THROW(R.base_degrees(3), std::out_of_range);
}

TEST(Resolution, Preconditions)
{
    FTModule bad(2, 4);
    bad.add_basis("a", 1);
    EXPECT_THROW(CotripleResolution(bad, 1, 4), std::invalid_argument);  // no product table
    SpaceModel S = sphere(2, 2, 4);
    EXPECT_THROW(CotripleResolution(S.cohomology, 1, 6), std::invalid_argument);  // beyond the truncation
}
