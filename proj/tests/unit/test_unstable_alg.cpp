#include "ue2/unstable_alg.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ue2;

TEST(UnstableAlg, HilbertMatchesPartitionCount)
{
    for (int n = 1; n <= 3; ++n) {
        auto h = hilbert_free(2, {n}, 12);
        auto want = oracle::free_algebra_dims(n, 12);
        ASSERT_EQ(h.size(), want.size());
        for (size_t d = 0; d < h.size(); ++d)
            EXPECT_EQ(h[d], want[d]) << "n=" << n << " d=" << d;
    }
}

TEST(UnstableAlg, KnownSeries)
{
    EXPECT_EQ(hilbert_free(2, {1}, 6), (std::vector<int>{1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(hilbert_free(2, {2}, 7), (std::vector<int>{1, 0, 1, 1, 1, 2, 2, 2}));
    // K(Z/3, 1): exterior on u times polynomial on beta u
    EXPECT_EQ(hilbert_free(3, {1}, 6), (std::vector<int>{1, 1, 1, 1, 1, 1, 1}));
}

TEST(UnstableAlg, TwoGeneratorsMultiply)
{
    auto a = hilbert_free(2, {1}, 10), b = hilbert_free(2, {2}, 10), ab = hilbert_free(2, {1, 2}, 10);
    for (int d = 0; d <= 10; ++d) {
        int c = 0;
        for (int i = 0; i <= d; ++i)
            c += a[i] * b[d - i];
        EXPECT_EQ(ab[d], c);
    }
}

TEST(UnstableAlg, TopOperationIsTheSquare)
{
    FreeAlgebra g(2, {2}, 10);
    const int x = g.mono_of_gen(g.base_gen(0));
    SparseVec xv{{x, 1}};
    EXPECT_EQ(g.act_letter(Letter{2, 0}, xv), g.power(xv, 2));
    const int y = g.mono_of_gen(g.gen_index(sq_word({1}), 0));
    SparseVec yv{{y, 1}};
    EXPECT_EQ(g.act_letter(Letter{3, 0}, yv), g.power(yv, 2));
    EXPECT_TRUE(g.act_letter(Letter{4, 0}, yv).empty());
}

TEST(UnstableAlg, ToFtValidates)
{
    for (int n : {1, 2}) {
        FreeAlgebra g(2, {n}, 8);
        FTModule A = g.to_ft({"i"});
        auto v = A.validate();
        EXPECT_TRUE(v.ok) << (v.problems.empty() ? "" : v.problems.front());
        EXPECT_EQ(A.dim(), g.num_monos());
    }
    FTModule B = FreeAlgebra(3, {2}, 12).to_ft({"i"});
    EXPECT_TRUE(B.validate().ok);
}

TEST(UnstableAlg, MonadUnitThenMultIsIdentity)
{
    FreeAlgebra g(2, {1}, 6);
    FreeAlgebra gg = free_on_underlying(g);
    for (int d = 1; d <= 6; ++d)
        EXPECT_EQ(monad_mult(gg, g, d) * monad_unit(gg, d), FpMatrix::identity(2, g.dim(d)));
}

TEST(UnstableAlg, AlgebraMapsCheck)
{
    FreeAlgebra g(2, {1}, 8);
    FreeAlgebra h(2, {1}, 8);
    AlgebraMap id(g, h, {SparseVec{{h.mono_of_gen(h.base_gen(0)), 1}}});
    EXPECT_TRUE(id.check().ok);
    for (int d = 0; d <= 8; ++d)
        EXPECT_EQ(id.matrix(d), FpMatrix::identity(2, g.dim(d)));
}

TEST(UnstableAlg, SemilinearScalarRule)
{
    FreeAlgebra g(2, {2}, 8);
    const int x = g.mono_of_gen(g.base_gen(0));
    TowerElem lam = tower_gen(2, 2);
    TowerVec v{{x, lam}};
    TowerVec r = act_semilinear(g, sq_word({1}), v, 2);
    TowerVec plain = act_semilinear(g, sq_word({1}), TowerVec{{x, tower_one(2, 2)}}, 2);
    ASSERT_EQ(r.size(), plain.size());
    for (auto& [k, c] : plain)
        EXPECT_EQ(r.at(k), frobenius(lam) * c);
}
