#include "ue2/unstable_mod.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ue2;

TEST(UnstableMod, FreeModuleDimsMatchBruteForce)
{
    for (int n = 1; n <= 4; ++n)
        for (int d = 0; d <= 12; ++d)
            EXPECT_EQ(int(free_a_basis(2, {Generator{"x", n}}, d).size()), oracle::free_module_dim(2, n, d))
                << "n=" << n << " d=" << d;
    for (int n = 1; n <= 3; ++n)
        for (int d = 0; d <= 22; ++d)
            EXPECT_EQ(int(free_a_basis(3, {Generator{"x", n}}, d).size()), oracle::free_module_dim(3, n, d))
                << "p=3 n=" << n << " d=" << d;
}

TEST(UnstableMod, AdmissibleWordsMatchBruteForce)
{
    for (int p : {2, 3})
        for (int d = 0; d <= 16; ++d)
            for (int e = 0; e <= 4; ++e)
                EXPECT_EQ(int(admissible_words(p, Flavor::A, d, e).size()), int(oracle::admissible_words(p, d, e).size()))
                    << "p=" << p << " d=" << d << " e=" << e;
}

TEST(UnstableMod, TwoGeneratorsAddUp)
{
    for (int d = 0; d <= 10; ++d)
        EXPECT_EQ(int(free_a_basis(2, {Generator{"x", 1}, Generator{"y", 3}}, d).size()),
                  oracle::free_module_dim(2, 1, d) + oracle::free_module_dim(2, 3, d));
}

TEST(UnstableMod, FreeModuleActionIsUnstable)
{
    FreeAModule F(2, {Generator{"x", 2}}, 12);
    FreeElem x{{FreeBasisElem{0, {}}, 1}};
    EXPECT_TRUE(F.act(parse_op("A:Sq[3]", 2), x).empty());
    EXPECT_TRUE(F.act(parse_op("A:Sq[1,1]", 2), x).empty());
    EXPECT_EQ(F.act(parse_op("A:Sq[2,2]", 2), x), F.act(parse_op("A:Sq[3,1]", 2), x));
    EXPECT_FALSE(F.act(parse_op("A:Sq[2]", 2), x).empty());
}

TEST(UnstableMod, ValidateCatchesInstability)
{
    FTModule M(2, 6);
    int a = M.add_basis("a", 1);
    int b = M.add_basis("b", 3);
    EXPECT_TRUE(M.validate().ok);
    M.set_action(Letter{2, 0}, a, SparseVec{{b, 1}});
    EXPECT_FALSE(M.validate().ok);
}

TEST(UnstableMod, ValidateCatchesAdem)
{
    // Sq^1 Sq^1 must vanish
    FTModule M(2, 6);
    int a = M.add_basis("a", 1);
    int b = M.add_basis("b", 2);
    int c = M.add_basis("c", 3);
    M.set_action(Letter{1, 0}, a, SparseVec{{b, 1}});
    M.set_action(Letter{1, 0}, b, SparseVec{{c, 1}});
    EXPECT_FALSE(M.validate().ok);
}

TEST(UnstableMod, TextRoundTrip)
{
    FTModule M(2, 6);
    int a = M.add_basis("a", 2);
    int b = M.add_basis("b", 3);
    M.set_action(Letter{1, 0}, a, SparseVec{{b, 1}});
    FTModule back = FTModule::from_text(M.to_text());
    EXPECT_EQ(back, M);
    EXPECT_EQ(back.to_text(), M.to_text());
}

TEST(UnstableMod, SmallExactnessWindow)
{
    ExactnessReport r = exactness_report(2, {Generator{"x", 1}}, FreeBWindow{6, 6, 6});
    EXPECT_TRUE(r.injective_all);
    EXPECT_TRUE(r.composite_zero_all);
    EXPECT_TRUE(r.saturated_all);
    EXPECT_TRUE(r.saturated_equal_all);
    for (auto& row : r.rows)
        EXPECT_EQ(row.free_a_dim, oracle::free_module_dim(2, 1, row.degree));
}

// A deliberately tiny window cannot saturate; it must say so instead of claiming equality.
TEST(UnstableMod, TinyWindowIsNotSaturated)
{
    ExactnessReport r = exactness_report(2, {Generator{"x", 2}}, FreeBWindow{8, 1, 1});
    EXPECT_FALSE(r.saturated_all && r.saturated_equal_all);
}
