#include "ue2/resolution.hpp"

#include <fmt/format.h>

namespace ue2 {

CotripleResolution::CotripleResolution(const FTModule& A, int s_max, int D)
    : p_(A.p()), s_max_(s_max), D_(D), A_(A)
{
    if (!A.has_products())
        throw std::invalid_argument("resolution needs an algebra (product table)");
    if (D > A.truncation())
        throw std::invalid_argument(fmt::format("resolution truncation {} exceeds the input truncation {}", D, A.truncation()));
    for (auto& b : A.basis())
        if (b.deg < 1)
            throw std::invalid_argument("the input must be reduced (classes in degrees >= 1)");
    // levels
    for (int s = 0; s <= s_max; ++s) {
        std::vector<int> degs;
        if (s == 0) {
            for (auto& b : A.basis())
                if (b.deg <= D)
                    degs.push_back(b.deg);
                else
                    degs.push_back(D + 1);  // never reached; keeps indices aligned
        } else {
            const FreeAlgebra& prev = *R_[s - 1];
            for (int id = 0; id < prev.num_monos(); ++id)
                degs.push_back(prev.mono_degree(id));
        }
        R_.push_back(std::make_unique<FreeAlgebra>(p_, degs, D));
    }
    // faces
    faces_.resize(static_cast<size_t>(s_max + 1));
    for (int s = 0; s <= s_max; ++s) {
        const FreeAlgebra& src = *R_[s];
        const int nb = int(src.base_degrees().size());
        for (int i = 0; i <= s; ++i) {
            std::vector<SparseVec> images(static_cast<size_t>(nb));
            for (int w = 0; w < nb; ++w) {
                if (src.base_degrees()[w] > D)
                    continue;
                if (i == 0) {
                    images[w] = SparseVec{{w, 1}};
                } else {
                    // eta of d_{i-1}(w), w a monomial of R_{s-1}
                    SparseVec dw = faces_[s - 1][i - 1]->on_mono(w);
                    const FreeAlgebra& tgt = *R_[s - 1];
                    for (auto& [m, c] : dw)
                        sv_add(p_, images[w], tgt.mono_of_gen(tgt.base_gen(m)), c);
                }
            }
            if (s == 0)
                faces_[s].push_back(std::make_unique<AlgebraMap>(src, A_, std::move(images)));
            else
                faces_[s].push_back(std::make_unique<AlgebraMap>(src, *R_[s - 1], std::move(images)));
        }
    }
    // degeneracies s_j : R_k -> R_{k+1}
    degens_.resize(static_cast<size_t>(s_max));
    for (int k = 0; k + 1 <= s_max; ++k) {
        const FreeAlgebra& src = *R_[k];
        const FreeAlgebra& tgt = *R_[k + 1];
        const int nb = int(src.base_degrees().size());
        for (int j = 0; j <= k; ++j) {
            std::vector<SparseVec> images(static_cast<size_t>(nb));
            for (int w = 0; w < nb; ++w) {
                if (src.base_degrees()[w] > D)
                    continue;
                if (j == 0) {
                    const int m = src.mono_of_gen(src.base_gen(w));
                    images[w] = SparseVec{{tgt.mono_of_gen(tgt.base_gen(m)), 1}};
                } else {
                    SparseVec sw = degens_[k - 1][j - 1]->on_mono(w);
                    for (auto& [m, c] : sw)
                        sv_add(p_, images[w], tgt.mono_of_gen(tgt.base_gen(m)), c);
                }
            }
            degens_[k].push_back(std::make_unique<AlgebraMap>(src, tgt, std::move(images)));
        }
    }
}

std::vector<std::vector<int>> CotripleResolution::dims() const
{
    std::vector<std::vector<int>> r;
    for (auto& R : R_)
        r.push_back(R->hilbert());
    return r;
}

ValidationReport CotripleResolution::check_simplicial(int max_degree) const
{
    // Column by column: each side applied to every basis monomial. Dense
    // matrices of the upper levels do not fit in memory.
    ValidationReport rep;
    max_degree = std::min(max_degree, D_);
    using Map = const AlgebraMap&;
    auto comp = [](Map f, Map g, int m) { return f.apply(g.on_mono(m)); };
    auto check = [&](const FreeAlgebra& src, int d, const std::string& what, auto&& lhs, auto&& rhs) {
        for (int m : src.basis(d))
            if (lhs(m) != rhs(m)) {
                rep.fail(what);
                return;
            }
    };
    for (int d = 1; d <= max_degree; ++d) {
        // d_i d_j = d_{j-1} d_i, i < j, on R_s, s >= 1
        for (int s = 1; s <= s_max_; ++s)
            for (int j = 1; j <= s; ++j)
                for (int i = 0; i < j; ++i)
                    check(level(s), d, fmt::format("d{} d{} != d{} d{} on R_{} in degree {}", i, j, j - 1, i, s, d),
                          [&](int m) { return comp(face(s - 1, i), face(s, j), m); },
                          [&](int m) { return comp(face(s - 1, j - 1), face(s, i), m); });
        for (int k = 0; k + 1 <= s_max_; ++k) {
            for (int j = 0; j <= k; ++j) {
                for (int i = 0; i <= k + 1; ++i) {
                    auto lhs = [&](int m) { return comp(face(k + 1, i), degeneracy(k, j), m); };
                    if (i == j || i == j + 1) {
                        check(level(k), d, fmt::format("d{} s{} != id on R_{} in degree {}", i, j, k, d), lhs,
                              [](int m) { return SparseVec{{m, 1}}; });
                    } else if (i < j) {
                        // d_i s_j = s_{j-1} d_i
                        check(level(k), d, fmt::format("d{} s{} != s{} d{} on R_{} in degree {}", i, j, j - 1, i, k, d),
                              lhs, [&](int m) { return comp(degeneracy(k - 1, j - 1), face(k, i), m); });
                    } else {
                        // d_i s_j = s_j d_{i-1}
                        check(level(k), d, fmt::format("d{} s{} != s{} d{} on R_{} in degree {}", i, j, j, i - 1, k, d),
                              lhs, [&](int m) { return comp(degeneracy(k - 1, j), face(k, i - 1), m); });
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i, i <= j
            if (k + 2 <= s_max_)
                for (int j = 0; j <= k; ++j)
                    for (int i = 0; i <= j; ++i)
                        check(level(k), d, fmt::format("s{} s{} != s{} s{} on R_{} in degree {}", i, j, j + 1, i, k, d),
                              [&](int m) { return comp(degeneracy(k + 1, i), degeneracy(k, j), m); },
                              [&](int m) { return comp(degeneracy(k + 1, j + 1), degeneracy(k, i), m); });
        }
    }
    return rep;
}

}  // namespace ue2

namespace ue2 {

std::vector<int> CotripleResolution::base_degrees(int s) const
{
    if (s < 0 || s > s_max_ + 1)
        throw std::out_of_range("resolution level out of range");
    if (s <= s_max_)
        return R_[s]->base_degrees();
    std::vector<int> r;
    const FreeAlgebra& top = *R_[s_max_];
    for (int id = 0; id < top.num_monos(); ++id)
        r.push_back(top.mono_degree(id));
    return r;
}

const std::vector<SparseVec>& CotripleResolution::face_base_images(int s, int i) const
{
    if (s < 1 || s > s_max_ + 1 || i < 0 || i > s)
        throw std::out_of_range("face index out of range");
    if (s <= s_max_)
        return faces_[s][i]->base_images();
    if (top_faces_.empty()) {
        const FreeAlgebra& top = *R_[s_max_];
        top_faces_.resize(static_cast<size_t>(s + 1));
        for (int k = 0; k <= s; ++k) {
            auto& images = top_faces_[k];
            images.resize(static_cast<size_t>(top.num_monos()));
            for (int v = 0; v < top.num_monos(); ++v) {
                if (k == 0) {
                    images[v] = SparseVec{{v, 1}};
                    continue;
                }
                for (auto& [m, c] : faces_[s_max_][k - 1]->on_mono(v))
                    sv_add(p_, images[v], top.mono_of_gen(top.base_gen(m)), c);
            }
        }
    }
    return top_faces_[i];
}

ValidationReport CotripleResolution::check_extra_degeneracy(const FreeAlgebra& g, int max_degree) const
{
    ValidationReport rep;
    if (g.num_monos() < int(A_.basis().size()) || g.p() != p_)
        throw std::invalid_argument("the presentation does not match the resolved algebra");
    max_degree = std::min(max_degree, D_);
    // h_{-1}: base w of g goes to the R_0 generator on the A-class of w
    const FreeAlgebra& R0 = *R_[0];
    std::vector<SparseVec> hm1(g.base_degrees().size());
    for (int w = 0; w < int(hm1.size()); ++w)
        if (g.base_degrees()[w] <= D_)
            hm1[w] = SparseVec{{R0.mono_of_gen(R0.base_gen(g.mono_of_gen(g.base_gen(w)))), 1}};
    std::vector<std::unique_ptr<AlgebraMap>> h;
    AlgebraMap h_minus(g, R0, std::move(hm1));
    for (int k = 0; k + 1 <= s_max_; ++k) {
        const FreeAlgebra& src = *R_[k];
        const FreeAlgebra& tgt = *R_[k + 1];
        std::vector<SparseVec> images(src.base_degrees().size());
        for (int w = 0; w < int(images.size()); ++w) {
            if (src.base_degrees()[w] > D_)
                continue;
            SparseVec inner = k == 0 ? h_minus.on_mono(w) : h[k - 1]->on_mono(w);
            for (auto& [m, c] : inner)
                sv_add(p_, images[w], tgt.mono_of_gen(tgt.base_gen(m)), c);
        }
        h.push_back(std::make_unique<AlgebraMap>(src, tgt, std::move(images)));
    }
    for (int d = 1; d <= max_degree; ++d) {
        // d_0 h_{-1} = id on A
        for (int m : g.basis(d))
            if (face(0, 0).apply(h_minus.on_mono(m)) != SparseVec{{m, 1}}) {
                rep.fail(fmt::format("d0 h(-1) != id in degree {}", d));
                break;
            }
        for (int k = 0; k + 1 <= s_max_; ++k) {
            const AlgebraMap& hk = *h[k];
            const AlgebraMap& hprev = k == 0 ? h_minus : *h[k - 1];
            for (int m : level(k).basis(d))
                if (face(k + 1, k + 1).apply(hk.on_mono(m)) != SparseVec{{m, 1}}) {
                    rep.fail(fmt::format("d{} h{} != id in degree {}", k + 1, k, d));
                    break;
                }
            for (int i = 0; i <= k; ++i)
                for (int m : level(k).basis(d))
                    if (face(k + 1, i).apply(hk.on_mono(m)) != hprev.apply(face(k, i).on_mono(m))) {
                        rep.fail(fmt::format("d{} h{} != h{} d{} in degree {}", i, k, k - 1, i, d));
                        break;
                    }
        }
    }
    return rep;
}

}  // namespace ue2
