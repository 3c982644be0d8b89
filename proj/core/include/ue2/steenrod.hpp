#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ue2 {

enum class Flavor : uint8_t { A, B };

// beta^eps P^s (Sq^s at p = 2, where eps is always 0).
struct Letter
{
    int s = 0;
    uint8_t eps = 0;
    auto operator<=>(const Letter&) const = default;
};

// Left-to-right composition: {L1, L2} acts as L1 after L2.
using Word = std::vector<Letter>;

Word sq_word(std::initializer_list<int> s);

int letter_degree(int p, Letter l);
int word_degree(int p, const Word& w);
int excess(int p, const Word& w);
// s_{k-1} >= p s_k + eps_k for every adjacent pair.
bool is_admissible(int p, const Word& w);

struct BWindow
{
    int K = 8;       // indices must lie in [-K, upper]
    int L = 16;      // maximal word length
    int upper = -1;  // defaults to K
    int top() const { return upper < 0 ? K : upper; }
};

class WindowExhausted : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Terms = std::map<Word, int>;

// F_p-linear combination of words of one flavor.
class OpElement
{
public:
    OpElement() = default;
    OpElement(int p, Flavor f) : p_(p), flavor_(f) {}
    static OpElement word(int p, Flavor f, Word w, int c = 1);
    static OpElement unit(int p, Flavor f) { return word(p, f, {}); }

    int p() const { return p_; }
    Flavor flavor() const { return flavor_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Word& w, int c);
    void add(const OpElement& o, int c = 1);

    bool operator==(const OpElement&) const = default;

private:
    int p_ = 2;
    Flavor flavor_ = Flavor::A;
    Terms terms_;
};

// Adem rewriting to the admissible basis, memoized per instance. Flavor A
// treats P^0 as the unit; flavor B keeps every integer index and enforces the
// window. Instances are not safe for concurrent use.
class SteenrodAlgebra
{
public:
    SteenrodAlgebra(int p, Flavor f, BWindow w = {});

    int p() const { return p_; }
    Flavor flavor() const { return flavor_; }
    const BWindow& window() const { return window_; }

    // Drops P^0 letters in flavor A, merging a bare Bockstein into its right neighbour.
    // Returns false if the word is zero (two adjacent Bocksteins).
    bool normalize(Word& w) const;
    OpElement rewrite(const Word& w);
    OpElement rewrite(const OpElement& x);
    OpElement multiply(const OpElement& a, const OpElement& b);
    // Normal form of l * r with r admissible.
    const Terms& prepend(Letter l, const Word& r);
    // Expansion of an inadmissible pair l1 l2 as a sum of two-letter words.
    Terms adem_pair(Letter l1, Letter l2) const;

    size_t memo_size() const { return memo_.size(); }

private:
    void check_window(const Word& w) const;

    int p_;
    Flavor flavor_;
    BWindow window_;
    std::map<std::pair<Letter, Word>, Terms> memo_;
    int depth_ = 0;
};

OpElement adem_rewrite(const OpElement& x, BWindow w = {});
OpElement multiply(const OpElement& a, const OpElement& b, BWindow w = {});

int binomial_mod(int p, long long n, long long k);

// Text syntax: "A:Sq[3,1]", "B:P[b2,1]", sums "Sq[3,1] + 2*P[1]".
OpElement parse_op(std::string_view text, int p);
std::string format_word(int p, const Word& w);
std::string format_op(const OpElement& x);

// Polynomials over F_2 as sets of exponent vectors.
using Monomial = std::vector<int>;
using F2Poly = std::set<Monomial>;

class DegreeCapExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Action of Sq^w on F_2[x_1..x_m] via the Cartan formula.
F2Poly act_polynomial(const Word& w, const F2Poly& q, int degree_cap);
F2Poly act_polynomial(const OpElement& x, const F2Poly& q, int degree_cap);

}  // namespace ue2
