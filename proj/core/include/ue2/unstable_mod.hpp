#pragma once

#include "ue2/linalg.hpp"
#include "ue2/steenrod.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ue2 {

// Sparse vector: basis index -> nonzero coefficient.
using SparseVec = std::map<int, int>;

void sv_add(int p, SparseVec& acc, const SparseVec& v, int c = 1);
void sv_add(int p, SparseVec& acc, int idx, int c);

struct BasisElem
{
    std::string name;
    int deg = 0;
    bool operator==(const BasisElem&) const = default;
};

struct GradedVS
{
    int p = 2;
    std::vector<BasisElem> basis;

    int dim() const { return int(basis.size()); }
    int dim_in(int d) const;
    std::vector<int> indices_in(int d) const;
    int top_degree() const;
};

// Builds a graded vector space with one class per listed degree, named x0, x1, ...
GradedVS graded_vs(int p, const std::vector<int>& degrees);

struct ValidationReport
{
    bool ok = true;
    std::vector<std::string> problems;
    void fail(std::string s)
    {
        ok = false;
        problems.push_back(std::move(s));
    }
};

// Finite-type unstable module over the Steenrod algebra, truncated at degree D.
// Primitive operations are Sq^i (p = 2) or P^i and the Bockstein (odd p); the
// letter {s, 1} acts as beta P^s. An optional product table turns it into an
// unstable algebra (reduced: no unit is stored).
class FTModule
{
public:
    FTModule() = default;
    FTModule(int p, int D) : p_(p), D_(D) {}

    int p() const { return p_; }
    int truncation() const { return D_; }
    const std::vector<BasisElem>& basis() const { return basis_; }
    int dim() const { return int(basis_.size()); }
    int dim_in(int d) const;
    std::vector<int> indices_in(int d) const;
    int index_of(const std::string& name) const;
    int top_degree() const;
    GradedVS underlying() const { return GradedVS{p_, basis_}; }

    int add_basis(std::string name, int deg);
    // op is a primitive letter: {i, 0} for Sq^i / P^i, {0, 1} for the Bockstein.
    void set_action(Letter op, int src, SparseVec v);
    void set_product(int a, int b, SparseVec v);
    void enable_products() { has_products_ = true; }
    bool has_products() const { return has_products_; }

    SparseVec act_primitive(Letter op, int src) const;
    SparseVec act_letter(Letter l, const SparseVec& v) const;
    SparseVec act_word(const Word& w, const SparseVec& v) const;
    SparseVec act(const OpElement& op, const SparseVec& v) const;
    SparseVec product(int a, int b) const;
    SparseVec product(const SparseVec& a, const SparseVec& b) const;
    // p-th power of a homogeneous element.
    SparseVec power_p(const SparseVec& v) const;

    const std::map<std::pair<Letter, int>, SparseVec>& action_table() const { return act_; }
    const std::map<std::pair<int, int>, SparseVec>& product_table() const { return mul_; }

    // Instability, Adem relations on the window, and (for algebras) associativity,
    // graded commutativity, Cartan formula and the top-operation rule.
    ValidationReport validate() const;

    std::string to_text() const;
    static FTModule from_text(const std::string& text);

    bool operator==(const FTModule&) const = default;

private:
    int p_ = 2;
    int D_ = 0;
    std::vector<BasisElem> basis_;
    std::map<std::pair<Letter, int>, SparseVec> act_;
    std::map<std::pair<int, int>, SparseVec> mul_;  // stored for a <= b
    bool has_products_ = false;
};

std::string op_name(int p, Letter op);
std::string format_sparse(const SparseVec& v, const std::vector<BasisElem>& basis);

// Admissible words of the given flavor and degree with excess <= max_excess,
// length <= max_len, and indices >= min_index (flavor B only).
std::vector<Word> admissible_words(int p, Flavor f, int degree, int max_excess, int max_len = 64, int min_index = 1);

struct Generator
{
    std::string name;
    int deg = 0;
};

struct FreeBasisElem
{
    int gen = 0;
    Word word;
    auto operator<=>(const FreeBasisElem&) const = default;
};

using FreeElem = std::map<FreeBasisElem, int>;

std::vector<FreeBasisElem> free_a_basis(int p, const std::vector<Generator>& gens, int d);

struct FreeBWindow
{
    int D = 8;
    int L = 4;
    int K = 4;
};

std::vector<FreeBasisElem> free_b_basis_window(int p, const std::vector<Generator>& gens, int d, const FreeBWindow& w);

std::string format_free_elem(int p, const FreeElem& x, const std::vector<Generator>& gens);

// Free unstable module over A on generators, truncated at degree D.
class FreeAModule
{
public:
    FreeAModule(int p, std::vector<Generator> gens, int D);
    int p() const { return p_; }
    const std::vector<Generator>& gens() const { return gens_; }
    int truncation() const { return D_; }
    std::vector<FreeBasisElem> basis(int d) const { return free_a_basis(p_, gens_, d); }
    FreeElem act(const OpElement& op, const FreeElem& x) const;

private:
    int p_;
    std::vector<Generator> gens_;
    int D_;
    mutable SteenrodAlgebra alg_;
};

// Windowed free unstable module over B.
class FreeBModuleWindow
{
public:
    FreeBModuleWindow(int p, std::vector<Generator> gens, FreeBWindow w);
    int p() const { return p_; }
    const FreeBWindow& window() const { return w_; }
    const std::vector<Generator>& gens() const { return gens_; }
    std::vector<FreeBasisElem> basis(int d) const { return free_b_basis_window(p_, gens_, d, w_); }
    // Rewrites and drops excess-violating summands; throws WindowExhausted if a
    // summand falls outside the index window.
    FreeElem act(const OpElement& op, const FreeElem& x) const;
    FreeElem act_word(const Word& w, const FreeBasisElem& e) const;

private:
    int p_;
    std::vector<Generator> gens_;
    FreeBWindow w_;
    mutable SteenrodAlgebra alg_;
};

struct WindowMatrix
{
    int degree = 0;
    std::vector<FreeBasisElem> source;
    std::vector<FreeBasisElem> target;
    FpMatrix m;  // target x source
};

// 1 - P^0 from the length <= L window to the length <= L+1 window, in degree d.
WindowMatrix one_minus_p0_window(int p, const std::vector<Generator>& gens, const FreeBWindow& w, int d);
// q from the length <= L window of F(V) onto F_0(V), in degree d.
WindowMatrix quotient_q_window(int p, const std::vector<Generator>& gens, const FreeBWindow& w, int d);
// The element of F_0(V) that q assigns to one windowed basis element.
FreeElem quotient_q(int p, const std::vector<Generator>& gens, const FreeBasisElem& e);

struct ExactnessRow
{
    int degree = 0;
    int source_dim = 0;
    int rank = 0;
    bool injective = false;
    bool composite_zero = false;
    int coker_dim = 0;      // windowed cokernel at L
    int coker_next = 0;     // same at L + 1
    int free_a_dim = 0;
    bool saturated = false;
    bool coker_bound = false;   // coker_dim >= free_a_dim
    bool coker_equal = false;   // saturated and equal
};

struct ExactnessReport
{
    int p = 2;
    FreeBWindow window;
    int slack = 1;
    std::vector<ExactnessRow> rows;
    bool injective_all = true;
    bool composite_zero_all = true;
    bool saturated_all = true;
    bool saturated_equal_all = true;
    std::string to_text() const;
};

// Windowed cokernels take preimages from the length <= L + slack source window;
// slack < 0 picks max(1, top generator degree - 1). Saturation compares with the
// (L + 1, slack + 1) window.
ExactnessReport exactness_report(int p, const std::vector<Generator>& gens, const FreeBWindow& w, int slack = -1);

}  // namespace ue2
