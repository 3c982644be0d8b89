#include "ue2/steenrod.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <array>

using namespace ue2;

namespace {

OpElement A2(std::initializer_list<int> s) { return OpElement::word(2, Flavor::A, sq_word(s)); }

oracle::Poly to_oracle(const F2Poly& q)
{
    oracle::Poly r;
    for (auto& m : q)
        r[m] = 1;
    return r;
}

// H^*(BZ/p x BZ/p) at an odd prime: u_i exterior in degree 1, v_i = beta u_i polynomial.
using BMono = std::array<int, 4>;  // e1, k1, e2, k2
using BPoly = std::map<BMono, long long>;

void badd(BPoly& a, const BMono& m, long long c, int p)
{
    long long& x = a[m];
    x = ((x + c) % p + p) % p;
    if (x == 0)
        a.erase(m);
}

BPoly apply_P(int p, int s, const BPoly& x)
{
    BPoly r;
    for (auto& [m, c] : x)
        for (int s1 = 0; s1 <= s; ++s1) {
            long long c1 = oracle::binom(m[1], s1) % p, c2 = oracle::binom(m[3], s - s1) % p;
            if (c1 * c2 % p)
                badd(r, BMono{m[0], m[1] + s1 * (p - 1), m[2], m[3] + (s - s1) * (p - 1)}, c * c1 * c2, p);
        }
    return r;
}

BPoly apply_beta(int p, const BPoly& x)
{
    BPoly r;
    for (auto& [m, c] : x) {
        if (m[0])
            badd(r, BMono{0, m[1] + 1, m[2], m[3]}, c, p);
        if (m[2])
            badd(r, BMono{m[0], m[1], 0, m[3] + 1}, m[0] ? -c : c, p);
    }
    return r;
}

BPoly apply_word(int p, const Word& w, BPoly x)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        x = apply_P(p, it->s, x);
        if (it->eps)
            x = apply_beta(p, x);
    }
    return x;
}

BPoly apply_op(const OpElement& op, const BPoly& x)
{
    BPoly r;
    for (auto& [w, c] : op.terms())
        for (auto& [m, v] : apply_word(op.p(), w, x))
            badd(r, m, v * c, op.p());
    return r;
}

}  // namespace

TEST(Steenrod, KnownRelations)
{
    EXPECT_TRUE(adem_rewrite(A2({1, 1})).is_zero());
    EXPECT_EQ(format_op(adem_rewrite(A2({2, 2}))), "Sq[3,1]");
    EXPECT_EQ(format_op(adem_rewrite(A2({4, 2, 1}))), "Sq[4,2,1]");
    EXPECT_EQ(format_op(adem_rewrite(A2({1, 2}))), "Sq[3]");
    EXPECT_EQ(format_op(adem_rewrite(A2({2, 3}))), "Sq[4,1] + Sq[5]");
    // P^1 P^1 = 2 P^2 at p = 3
    EXPECT_EQ(format_op(adem_rewrite(parse_op("A:P[1,1]", 3))), "2*P[2]");
    EXPECT_TRUE(adem_rewrite(parse_op("A:P[b0,b0]", 3)).is_zero());
}

TEST(Steenrod, ParseAndFormat)
{
    EXPECT_EQ(format_op(parse_op("A:Sq[3,1] + Sq[2]", 2)), format_op(parse_op("Sq[2] + Sq[3,1]", 2)));
    EXPECT_THROW(parse_op("A:Sq[3,", 2), ParseError);
    EXPECT_THROW(parse_op("A:P[1]", 2), ParseError);
    EXPECT_THROW(parse_op("A:Sq[-1]", 2), ParseError);
    EXPECT_NO_THROW(parse_op("B:Sq[-1,0]", 2));
    EXPECT_EQ(format_op(parse_op("0", 2)), "0");
}

TEST(Steenrod, ExcessAndAdmissibility)
{
    EXPECT_EQ(excess(2, sq_word({4, 2, 1})), 1);
    EXPECT_TRUE(is_admissible(2, sq_word({4, 2, 1})));
    EXPECT_FALSE(is_admissible(2, sq_word({2, 2})));
    EXPECT_EQ(word_degree(3, Word{Letter{1, 1}, Letter{1, 0}}), 9);
    // beta P^1 at p = 3: 2*1 + 1 = 3
    EXPECT_EQ(excess(3, Word{Letter{1, 1}}), 3);
}

// Rewriting preserves the action on F_2[x, y] (compared with a direct Cartan oracle)
// and always lands on admissible words.
TEST(Steenrod, RewriteAgreesWithPolynomialOracle)
{
    std::vector<F2Poly> qs;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 3; ++b)
            if (a + b > 0)
                qs.push_back(F2Poly{{a, b}});
    for (int s1 = 1; s1 <= 6; ++s1)
        for (int s2 = 1; s2 <= 6; ++s2) {
            OpElement w = A2({s1, s2});
            OpElement r = adem_rewrite(w);
            for (auto& [word, c] : r.terms())
                EXPECT_TRUE(is_admissible(2, word));
            for (auto& q : qs) {
                auto want = oracle::sq_word({s1, s2}, to_oracle(q));
                EXPECT_EQ(to_oracle(act_polynomial(r, q, 64)), want);
                EXPECT_EQ(to_oracle(act_polynomial(w, q, 64)), want);
            }
        }
}

TEST(Steenrod, DegreeCap)
{
    EXPECT_THROW(act_polynomial(sq_word({4}), F2Poly{{4, 0}}, 6), DegreeCapExceeded);
}

TEST(Steenrod, OddPrimeRewriteAgreesWithLensSpaceOracle)
{
    const int p = 3;
    std::vector<BPoly> xs;
    for (int e1 = 0; e1 <= 1; ++e1)
        for (int k1 = 0; k1 <= 3; ++k1)
            for (int e2 = 0; e2 <= 1; ++e2)
                for (int k2 = 0; k2 <= 2; ++k2)
                    xs.push_back(BPoly{{BMono{e1, k1, e2, k2}, 1}});
    std::vector<Letter> letters;
    for (int s = 0; s <= 4; ++s)
        for (int e = 0; e <= 1; ++e)
            if (s || e)
                letters.push_back(Letter{s, uint8_t(e)});
    int checked = 0;
    for (auto l1 : letters)
        for (auto l2 : letters) {
            OpElement w = OpElement::word(p, Flavor::A, Word{l1, l2});
            OpElement r = adem_rewrite(w);
            for (auto& [word, c] : r.terms())
                EXPECT_TRUE(is_admissible(p, word)) << format_word(p, word);
            for (auto& x : xs)
                EXPECT_EQ(apply_op(r, x), apply_op(w, x)) << format_op(w);
            ++checked;
        }
    EXPECT_GT(checked, 50);
}

TEST(Steenrod, MultiplyIsAssociative)
{
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c) {
                auto l = multiply(multiply(A2({a}), A2({b})), A2({c}));
                auto r = multiply(A2({a}), multiply(A2({b}), A2({c})));
                EXPECT_EQ(l, r);
            }
}

// A = B / (1 - Sq^0): after setting Sq^0 = 1 and dropping negative indices, the
// B-normal form agrees with the A-normal form.
TEST(Steenrod, BReducesToA)
{
    BWindow win{12, 8, 12};
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
            OpElement wb = OpElement::word(2, Flavor::B, sq_word({a, b}));
            OpElement rb = adem_rewrite(wb, win);
            OpElement reduced(2, Flavor::A);
            for (auto& [w, c] : rb.terms()) {
                Word kept;
                bool neg = false;
                for (auto l : w) {
                    if (l.s < 0)
                        neg = true;
                    else if (l.s > 0)
                        kept.push_back(l);
                }
                if (!neg)
                    reduced.add(kept, c);
            }
            Word w;
            for (int s : {a, b})
                if (s > 0)
                    w.push_back(Letter{s, 0});
            OpElement wa = OpElement::word(2, Flavor::A, w);
            EXPECT_EQ(adem_rewrite(reduced), adem_rewrite(wa)) << a << "," << b;
        }
}

TEST(Steenrod, BSqZeroIsNotTheUnit)
{
    OpElement x = adem_rewrite(OpElement::word(2, Flavor::B, sq_word({0})), BWindow{4, 4, 4});
    EXPECT_NE(x, OpElement::unit(2, Flavor::B));
}

TEST(Steenrod, BWindowExhaustion)
{
    EXPECT_THROW(adem_rewrite(OpElement::word(2, Flavor::B, sq_word({1, 3})), BWindow{0, 2, 0}), WindowExhausted);
}
