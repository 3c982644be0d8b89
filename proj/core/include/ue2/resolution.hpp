#pragma once

#include "ue2/unstable_alg.hpp"

#include <memory>
#include <vector>

namespace ue2 {

// The simplicial free resolution R_s = G(U R_{s-1}), R_{-1} = A, of a reduced
// FT unstable algebra A. Base element w of R_s is a basis index of A for s = 0
// and a monomial id of R_{s-1} otherwise. Faces d_i : R_s -> R_{s-1}, i = 0..s,
// and degeneracies s_j : R_s -> R_{s+1}, j = 0..s, are algebra maps.
class CotripleResolution
{
public:
    CotripleResolution(const FTModule& A, int s_max, int D);

    int p() const { return p_; }
    int s_max() const { return s_max_; }
    int truncation() const { return D_; }
    const FTModule& augmented() const { return A_; }
    const FreeAlgebra& level(int s) const { return *R_.at(s); }

    const AlgebraMap& face(int s, int i) const { return *faces_.at(s).at(i); }
    const AlgebraMap& degeneracy(int s, int j) const { return *degens_.at(s).at(j); }

    // Degrees of the base elements of R_s, for 0 <= s <= s_max + 1. Level
    // s_max + 1 is never materialized: only its base and faces are.
    std::vector<int> base_degrees(int s) const;
    // Images under d_i of the base generators of R_s, 1 <= s <= s_max + 1.
    const std::vector<SparseVec>& face_base_images(int s, int i) const;
    // Images under s_j : R_s -> R_{s+1} of the base generators of R_s.
    const std::vector<SparseVec>& degeneracy_base_images(int s, int j) const { return degeneracy(s, j).base_images(); }

    // Matrices on degree-d bases; for s = 0 the face lands in A.
    FpMatrix face_matrix(int s, int i, int d) const { return face(s, i).matrix(d); }
    FpMatrix degeneracy_matrix(int s, int j, int d) const { return degeneracy(s, j).matrix(d); }

    // Every simplicial identity as a matrix equality in degrees <= max_degree.
    ValidationReport check_simplicial(int max_degree) const;

    // When A is the free algebra g (A == g.to_ft(...)), the extra degeneracies
    // h_{-1} : A -> R_0 and h_k : R_k -> R_{k+1} with d_{k+1} h_k = id and
    // d_i h_k = h_{k-1} d_i for i <= k; checked as matrices.
    ValidationReport check_extra_degeneracy(const FreeAlgebra& g, int max_degree) const;

    // Dimensions of R_s per degree.
    std::vector<std::vector<int>> dims() const;

private:
    int p_;
    int s_max_;
    int D_;
    FTModule A_;
    std::vector<std::unique_ptr<FreeAlgebra>> R_;
    std::vector<std::vector<std::unique_ptr<AlgebraMap>>> faces_;
    std::vector<std::vector<std::unique_ptr<AlgebraMap>>> degens_;
    mutable std::vector<std::vector<SparseVec>> top_faces_;
};

}  // namespace ue2
