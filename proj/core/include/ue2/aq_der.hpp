#pragma once

#include "ue2/fp_tower.hpp"
#include "ue2/resolution.hpp"
#include "ue2/unstable_alg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ue2 {

// B ⋉ M for a reduced algebra B (unit implicit) and a B-module M. The action
// b·m is given by a table; an empty table means positive degrees act by zero.
struct SquareZero
{
    struct Elem
    {
        int unit = 0;
        SparseVec b;
        SparseVec m;
        bool operator==(const Elem&) const = default;
    };

    const FTModule* B = nullptr;
    const FTModule* M = nullptr;
    std::map<std::pair<int, int>, SparseVec> action;  // (b index, m index) -> M

    SparseVec act(const SparseVec& b, const SparseVec& m) const;
    // (u,b,m)(u',b',m') = (uu', ub' + u'b + bb', um' + u'm + b m' + (-1)^{|m||b'|} b' m)
    Elem mul(const Elem& x, const Elem& y) const;
    Elem projection(const Elem& x) const { return Elem{x.unit, x.b, {}}; }
};

// Der(G(W), M) ≅ Hom(W, M): basis pairs (base element of W, basis element of M)
// in equal degrees.
class DerSpace
{
public:
    struct Basis
    {
        int base = 0;
        int m = 0;
    };

    DerSpace(int p, std::vector<int> base_degrees, const FTModule& M);

    int p() const { return p_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<Basis>& basis() const { return basis_; }
    const std::vector<int>& base_degrees() const { return base_deg_; }
    const FTModule& target() const { return *M_; }
    // Index of (base, m), or -1.
    int index(int base, int m) const;

    // Value of the derivation with coordinates f on the monomial `mono` of g
    // (g must be built on these base degrees). phi is the augmentation into
    // sz.B; nullptr means the trivial augmentation.
    SparseVec value(const std::vector<uint8_t>& f, const FreeAlgebra& g, int mono,
                    const SquareZero* sz = nullptr, const AlgebraMap* phi = nullptr) const;

private:
    int p_;
    std::vector<int> base_deg_;
    const FTModule* M_;
    std::vector<Basis> basis_;
    std::map<std::pair<int, int>, int> index_;
};

class NontrivialAction : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Requires positive operations to act trivially on M.
DerSpace der_free(const FreeAlgebra& g, const FTModule& M);

// Precomposition Der(G2, M) -> Der(G1, M) with the algebra map G1 -> G2 given by
// the images (in G2) of the base generators of G1.
FpMatrix induced_on_der(const DerSpace& src_der, const DerSpace& dst_der, const FreeAlgebra& g2,
                        const std::vector<SparseVec>& base_images, const SquareZero* sz = nullptr,
                        const AlgebraMap* phi = nullptr);
FpMatrix induced_on_der(const AlgebraMap& f, const DerSpace& src_der, const DerSpace& dst_der,
                        const FreeAlgebra& g2, const SquareZero* sz = nullptr, const AlgebraMap* phi = nullptr);

class CochainError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// C^0 -> C^1 -> ... ; d[s] : C^s -> C^{s+1}. The constructor asserts d∘d = 0.
class CochainComplex
{
public:
    CochainComplex(int p, std::vector<FpMatrix> d);

    int p() const { return p_; }
    int length() const { return int(d_.size()); }
    int dim(int s) const { return s < length() ? d_[s].cols() : d_.back().rows(); }
    const FpMatrix& differential(int s) const { return d_.at(s); }
    // H^s for 0 <= s < length().
    std::vector<int> cohomology() const;

private:
    int p_;
    std::vector<FpMatrix> d_;
};

// The cochain complex s -> Der(R_s, M), s = 0..s_max, with the alternating
// coface differential. The normalized version restricts to the joint kernel of
// the codegeneracies.
CochainComplex cosimplicial_der_complex(const CotripleResolution& R, const FTModule& M, int s_max, bool normalized);
// Dimensions D^0..D^{s_max}.
std::vector<int> cosimplicial_D(const CotripleResolution& R, const FTModule& M, int s_max, bool normalized = true);

// Levelwise descent: the Frobenius-semilinear endomorphism 1 - P^0 of
// Hom(V, M) ⊗ F_{p^{k!}}, coordinatewise lambda -> lambda - lambda^p.
struct DescentDegree
{
    int degree = 0;
    int hom_dim = 0;   // dim_{F_p} Hom(V_d, M_d)
    int d0 = 0;        // F_p-dimension of the kernel
    int d1 = 0;        // F_p-dimension of the cokernel
};

struct DescentResult
{
    int p = 2;
    int level = 1;
    std::vector<DescentDegree> degrees;
    int d0 = 0;
    int d1 = 0;
    // Trailing terms of the two-term complex vanish by construction.
    int higher = 0;
    KernelCokernel kc;  // on the whole Hom space, blockwise over entries
    std::string to_text() const;
};

DescentResult descent_two_term(const GradedVS& V, const GradedVS& M, int level);

struct WitnessRecord
{
    int entry = 0;               // coordinate of Hom(V, M)
    std::vector<uint8_t> rep;    // cokernel representative (F_p-coordinates at the start level)
    int solved_at = 0;           // tower level of the Artin-Schreier solution, 0 if none
};

struct DescentReport
{
    bool ok = true;
    bool inconclusive = false;
    int p = 2;
    int start_level = 1;
    int max_level = 1;
    int der_dim = 0;                    // dim Der over F_p
    std::vector<int> d0_by_level;       // levels start..max
    bool inverse_pair_ok = false;
    std::vector<WitnessRecord> witnesses;
    std::vector<std::string> problems;
    std::string to_text() const;
};

// Checks that D^0 agrees with the F_p-derivations (with an explicit inverse pair of
// maps at every level) and that every D^1 representative at start_level is killed
// by an Artin-Schreier solution at some level <= max_level.
DescentReport descent_verify(const GradedVS& V, const GradedVS& M, int start_level, int max_level);

// Bar construction on E(1 - P^0) for V = F_p[-n], restricted to positive-degree
// generators of the B-window. Source generators have length <= L; the target is
// generated by the source words and every word met by their images.
struct BarReport
{
    int p = 2;
    int n = 1;
    int D = 4;
    int L = 4;
    int K = 8;
    int s_max = 3;
    // homology[s][d] for 0 <= s < s_max (top degree needs the next bar term), d <= D
    std::vector<std::vector<int>> homology;
    std::vector<int> expected;   // hilbert of the free unstable algebra
    bool concentrated = false;   // H_s = 0 for s > 0
    bool degree0_matches = false;
    bool saturated = false;      // same answer with L + 1
    bool ok() const { return concentrated && degree0_matches && saturated; }
    std::string to_text() const;
};

BarReport bar_homology_check(int p, int n, int D, int L, int K, int s_max = 3);

}  // namespace ue2
