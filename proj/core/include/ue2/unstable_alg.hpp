#pragma once

#include "ue2/fp_tower.hpp"
#include "ue2/linalg.hpp"
#include "ue2/steenrod.hpp"
#include "ue2/unstable_mod.hpp"

#include <map>
#include <memory>
#include <vector>

namespace ue2 {

// Free unstable algebra G(W) over A on a graded vector space W with basis in
// degrees >= 1, truncated at degree D. The basis of G(W) consists of the
// positive-degree monomials in the polynomial generators Sq^J w (e(J) < |w|; at
// odd p also e(J) = |w| with a leading Bockstein). Odd-degree generators are
// exterior at odd p.
class FreeAlgebra
{
public:
    struct Gen
    {
        Word J;
        int base = 0;
        int deg = 0;
    };
    // (generator id, exponent), sorted by generator id
    using Mono = std::vector<std::pair<int, int>>;

    FreeAlgebra(int p, std::vector<int> base_degrees, int D);

    int p() const { return p_; }
    int truncation() const { return D_; }
    const std::vector<int>& base_degrees() const { return base_deg_; }

    const std::vector<Gen>& gens() const { return gens_; }
    int gen_index(const Word& J, int base) const;
    int base_gen(int base) const { return base_gen_.at(base); }

    int num_monos() const { return int(monos_.size()); }
    const Mono& mono(int id) const { return monos_[id]; }
    int mono_degree(int id) const { return mono_deg_[id]; }
    int mono_of_gen(int g) const { return gen_mono_.at(g); }
    // -1 if the monomial is not a basis element (e.g. above the truncation).
    int mono_id(const Mono& m) const;
    const std::vector<int>& basis(int d) const;
    int dim(int d) const { return d < 0 || d > D_ ? 0 : int(basis(d).size()); }
    std::vector<int> hilbert() const;
    // Position of a monomial within basis(mono_degree(id)).
    int position(int id) const { return position_[id]; }

    SparseVec mono_product(int a, int b) const;
    SparseVec product(const SparseVec& a, const SparseVec& b) const;
    SparseVec power(const SparseVec& a, int e) const;

    // Sq^K applied to the generator of the base element w, K admissible.
    SparseVec admissible_on_base(const Word& K, int w) const;
    // Sq^J (any word) applied to the generator of the base element w.
    SparseVec word_on_base(const Word& J, int w) const;
    SparseVec act_letter(Letter l, const SparseVec& v) const;
    SparseVec act_word(const Word& w, const SparseVec& v) const;
    SparseVec act(const OpElement& op, const SparseVec& v) const;

    std::string format_mono(int id) const;
    std::string format(const SparseVec& v) const;

    // Converts the truncated algebra into an FT algebra with action and product tables.
    FTModule to_ft(const std::vector<std::string>& base_names) const;

private:
    SparseVec primitive_on_mono(Letter op, int m) const;
    SparseVec primitive_on_gen(Letter op, int g) const;
    void enumerate_monos();

    int p_;
    std::vector<int> base_deg_;
    int D_;
    std::vector<Gen> gens_;
    std::map<std::pair<Word, int>, int> gen_index_;
    std::vector<int> base_gen_;
    std::vector<Mono> monos_;
    std::vector<int> mono_deg_;
    std::vector<int> position_;
    std::map<Mono, int> mono_index_;
    std::vector<std::vector<int>> by_degree_;
    std::vector<int> gen_mono_;
    mutable SteenrodAlgebra alg_;
    mutable std::map<std::pair<Letter, int>, SparseVec> memo_mono_;
    mutable std::map<std::pair<Letter, int>, SparseVec> memo_gen_;
};

// Basis of G on one generator in each listed degree.
std::vector<int> hilbert_free(int p, const std::vector<int>& gen_degrees, int D);

// A map out of a free algebra, determined by the images of the base elements.
// The target is another free algebra or an FT algebra.
class AlgebraMap
{
public:
    AlgebraMap(const FreeAlgebra& src, const FreeAlgebra& dst, std::vector<SparseVec> base_images);
    AlgebraMap(const FreeAlgebra& src, const FTModule& dst, std::vector<SparseVec> base_images);

    SparseVec on_gen(int g) const;
    SparseVec on_mono(int m) const;
    SparseVec apply(const SparseVec& v) const;
    const std::vector<SparseVec>& base_images() const { return images_; }
    const FreeAlgebra& source() const { return *src_; }
    // Matrix from basis(d) of the source to the degree-d basis of the target.
    FpMatrix matrix(int d) const;
    // Checks multiplicativity and compatibility with every operation on the window.
    ValidationReport check() const;

private:
    const FreeAlgebra* src_;
    const FreeAlgebra* dst_free_ = nullptr;
    const FTModule* dst_ft_ = nullptr;
    std::vector<SparseVec> images_;
    mutable std::map<int, SparseVec> memo_gen_;
    mutable std::map<int, SparseVec> memo_mono_;
};

FpMatrix alg_map_apply(const AlgebraMap& f, int d);

// Unit W -> U G(W) as the matrix from W_d to G(W)_d.
FpMatrix monad_unit(const FreeAlgebra& g, int d);
// Multiplication G(U G(W)) -> G(W) in degree d; gg must be built on the
// monomial basis of g.
FpMatrix monad_mult(const FreeAlgebra& gg, const FreeAlgebra& g, int d);
// The free algebra on the positive-degree monomial basis of g.
FreeAlgebra free_on_underlying(const FreeAlgebra& g);

// Tower-coefficient elements of G(W) over F_{p^{k!}}.
using TowerVec = std::map<int, TowerElem>;
// Sq^J with the Frobenius-semilinear scalar rule P^i(l a) = f(l) P^i a.
TowerVec act_semilinear(const FreeAlgebra& g, const Word& J, const TowerVec& v, int level);

}  // namespace ue2
