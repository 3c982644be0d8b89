#include "ue2/aq_der.hpp"

#include <fmt/format.h>

namespace ue2 {

SparseVec SquareZero::act(const SparseVec& b, const SparseVec& m) const
{
    SparseVec r;
    const int p = M->p();
    for (auto& [i, ci] : b)
        for (auto& [j, cj] : m) {
            auto it = action.find({i, j});
            if (it != action.end())
                sv_add(p, r, it->second, ci * cj);
        }
    return r;
}

SquareZero::Elem SquareZero::mul(const Elem& x, const Elem& y) const
{
    const int p = M->p();
    Elem r;
    r.unit = Fp::mul(p, x.unit, y.unit);
    sv_add(p, r.b, y.b, x.unit);
    sv_add(p, r.b, x.b, y.unit);
    if (!x.b.empty() && !y.b.empty())
        sv_add(p, r.b, B->product(x.b, y.b));
    sv_add(p, r.m, y.m, x.unit);
    sv_add(p, r.m, x.m, y.unit);
    sv_add(p, r.m, act(x.b, y.m));
    // m b' = (-1)^{|m||b'|} b' m
    for (auto& [j, cj] : x.m)
        for (auto& [i, ci] : y.b) {
            const bool odd = p != 2 && (M->basis()[j].deg % 2) && (B->basis()[i].deg % 2);
            sv_add(p, r.m, act(SparseVec{{i, ci}}, SparseVec{{j, cj}}), odd ? p - 1 : 1);
        }
    return r;
}

DerSpace::DerSpace(int p, std::vector<int> base_degrees, const FTModule& M)
    : p_(p), base_deg_(std::move(base_degrees)), M_(&M)
{
    std::map<int, std::vector<int>> by_deg;
    for (int i = 0; i < M.dim(); ++i)
        by_deg[M.basis()[i].deg].push_back(i);
    for (int w = 0; w < int(base_deg_.size()); ++w) {
        auto it = by_deg.find(base_deg_[w]);
        if (it == by_deg.end())
            continue;
        for (int m : it->second) {
            index_[{w, m}] = int(basis_.size());
            basis_.push_back(Basis{w, m});
        }
    }
}

int DerSpace::index(int base, int m) const
{
    auto it = index_.find({base, m});
    return it == index_.end() ? -1 : it->second;
}

namespace {

// Linear part of a derivation on a monomial: terms coefficient * phi(rest) * D(gen).
struct LeibnizTerm
{
    int gen = 0;
    int coeff = 1;
    bool unit = true;  // rest is empty
    SparseVec rest;    // phi(rest) in B when !unit
};

std::vector<LeibnizTerm> leibniz_terms(const FreeAlgebra& g, int mono, const AlgebraMap* phi, const FTModule* B)
{
    std::vector<LeibnizTerm> out;
    const auto& mm = g.mono(mono);
    std::vector<int> factors;
    for (auto [gen, e] : mm)
        for (int k = 0; k < e; ++k)
            factors.push_back(gen);
    if (factors.size() == 1) {
        out.push_back(LeibnizTerm{factors[0], 1, true, {}});
        return out;
    }
    if (!phi)
        return out;
    const int p = g.p();
    for (size_t k = 0; k < factors.size(); ++k) {
        SparseVec rest;
        bool first = true;
        int later = 0;
        for (size_t j = 0; j < factors.size(); ++j) {
            if (j == k)
                continue;
            if (j > k)
                later += g.gens()[factors[j]].deg;
            SparseVec x = phi->on_gen(factors[j]);
            rest = first ? x : B->product(rest, x);
            first = false;
            if (rest.empty())
                break;
        }
        if (rest.empty())
            continue;
        const bool odd = p != 2 && (g.gens()[factors[k]].deg % 2) && (later % 2);
        out.push_back(LeibnizTerm{factors[k], odd ? p - 1 : 1, false, std::move(rest)});
    }
    return out;
}

}  // namespace

SparseVec DerSpace::value(const std::vector<uint8_t>& f, const FreeAlgebra& g, int mono, const SquareZero* sz,
                          const AlgebraMap* phi) const
{
    SparseVec r;
    for (auto& t : leibniz_terms(g, mono, phi, sz ? sz->B : nullptr)) {
        const auto& gen = g.gens()[t.gen];
        SparseVec fu;
        for (auto [i, b] : index_)
            if (i.first == gen.base && f[b])
                fu[i.second] = f[b];
        SparseVec d = M_->act_word(gen.J, fu);
        if (!t.unit)
            d = sz->act(t.rest, d);
        sv_add(p_, r, d, t.coeff);
    }
    return r;
}

DerSpace der_free(const FreeAlgebra& g, const FTModule& M)
{
    if (!M.action_table().empty())
        throw NontrivialAction("der_free: operations must act trivially on the target module");
    if (M.p() != g.p())
        throw std::invalid_argument("der_free: prime mismatch");
    return DerSpace(g.p(), g.base_degrees(), M);
}

FpMatrix induced_on_der(const DerSpace& src_der, const DerSpace& dst_der, const FreeAlgebra& g2,
                        const std::vector<SparseVec>& base_images, const SquareZero* sz, const AlgebraMap* phi)
{
    const int p = g2.p();
    const FTModule& M = dst_der.target();
    if (&src_der.target() != &M)
        throw std::invalid_argument("induced_on_der: different target modules");
    if (phi && !sz)
        throw std::invalid_argument("induced_on_der: an augmentation needs the square-zero data");
    FpMatrix out(p, src_der.dim(), dst_der.dim());
    // rows grouped by source base element
    std::map<int, std::vector<int>> rows_of_base;
    for (int r = 0; r < src_der.dim(); ++r)
        rows_of_base[src_der.basis()[r].base].push_back(r);
    std::map<int, std::vector<int>> m_of_deg;
    for (int i = 0; i < M.dim(); ++i)
        m_of_deg[M.basis()[i].deg].push_back(i);
    for (auto& [v, rows] : rows_of_base) {
        const SparseVec& img = base_images.at(v);
        for (auto& [mono, c] : img) {
            for (auto& t : leibniz_terms(g2, mono, phi, sz ? sz->B : nullptr)) {
                const auto& gen = g2.gens()[t.gen];
                const int du = g2.base_degrees()[gen.base];
                auto mit = m_of_deg.find(du);
                if (mit == m_of_deg.end())
                    continue;
                for (int m : mit->second) {
                    const int col = dst_der.index(gen.base, m);
                    if (col < 0)
                        continue;
                    SparseVec val = M.act_word(gen.J, SparseVec{{m, 1}});
                    if (!t.unit)
                        val = sz->act(t.rest, val);
                    for (auto& [m2, c2] : val) {
                        const int row = src_der.index(v, m2);
                        if (row < 0)
                            throw std::logic_error("induced_on_der: value outside the source Der space");
                        out(row, col) = uint8_t(Fp::add(p, out(row, col), Fp::mul(p, Fp::mul(p, c, t.coeff), c2)));
                    }
                }
            }
        }
    }
    return out;
}

FpMatrix induced_on_der(const AlgebraMap& f, const DerSpace& src_der, const DerSpace& dst_der, const FreeAlgebra& g2,
                        const SquareZero* sz, const AlgebraMap* phi)
{
    return induced_on_der(src_der, dst_der, g2, f.base_images(), sz, phi);
}

CochainComplex::CochainComplex(int p, std::vector<FpMatrix> d) : p_(p), d_(std::move(d))
{
    if (d_.empty())
        throw CochainError("empty cochain complex");
    for (size_t s = 0; s + 1 < d_.size(); ++s) {
        if (d_[s + 1].cols() != d_[s].rows())
            throw CochainError(fmt::format("differential shapes do not compose at s = {}", s + 1));
        if (d_[s].rows() && d_[s].cols() && d_[s + 1].rows() && !(d_[s + 1] * d_[s]).is_zero())
            throw CochainError(fmt::format("d^2 != 0 at s = {}", s));
    }
}

std::vector<int> CochainComplex::cohomology() const
{
    std::vector<int> h;
    int prev = 0;
    for (auto& m : d_) {
        const int r = rank(m);
        h.push_back(m.cols() - r - prev);
        prev = r;
    }
    return h;
}

CochainComplex cosimplicial_der_complex(const CotripleResolution& R, const FTModule& M, int s_max, bool normalized)
{
    if (s_max > R.s_max())
        throw std::invalid_argument("cosimplicial complex beyond the resolution");
    const int p = R.p();
    std::vector<DerSpace> X;
    for (int s = 0; s <= s_max + 1; ++s)
        X.emplace_back(p, R.base_degrees(s), M);
    std::vector<FpMatrix> delta;
    for (int s = 0; s <= s_max; ++s) {
        FpMatrix acc(p, X[s + 1].dim(), X[s].dim());
        for (int i = 0; i <= s + 1; ++i) {
            FpMatrix m = induced_on_der(X[s + 1], X[s], R.level(s), R.face_base_images(s + 1, i));
            if (i % 2)
                acc = acc - m;
            else
                acc = acc + m;
        }
        delta.push_back(std::move(acc));
    }
    if (!normalized)
        return CochainComplex(p, std::move(delta));
    // basis of N^s as columns
    std::vector<FpMatrix> N;
    for (int s = 0; s <= s_max; ++s) {
        if (s == 0) {
            N.push_back(FpMatrix::identity(p, X[0].dim()));
            continue;
        }
        FpMatrix stacked(p, 0, X[s].dim());
        for (int j = 0; j < s; ++j)
            stacked = stacked.vstack(induced_on_der(X[s - 1], X[s], R.level(s), R.degeneracy_base_images(s - 1, j)));
        N.push_back(kernel_basis(stacked).transpose());
    }
    std::vector<FpMatrix> nd;
    for (int s = 0; s <= s_max; ++s) {
        FpMatrix img = delta[s] * N[s];
        if (s < s_max)
            nd.push_back(solve_matrix(N[s + 1], img));
        else
            nd.push_back(std::move(img));
    }
    return CochainComplex(p, std::move(nd));
}

std::vector<int> cosimplicial_D(const CotripleResolution& R, const FTModule& M, int s_max, bool normalized)
{
    return cosimplicial_der_complex(R, M, s_max, normalized).cohomology();
}

namespace {

// Hom(V, M) entries in the order of der_free: V basis, then M basis of equal degree.
std::vector<std::pair<int, int>> hom_entries(const GradedVS& V, const GradedVS& M)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < V.dim(); ++v)
        for (int m = 0; m < M.dim(); ++m)
            if (V.basis[v].deg == M.basis[m].deg)
                e.push_back({v, m});
    return e;
}

TowerElem minus_one(int p, int level) { return tower_scalar(p, level, p - 1); }

}  // namespace

DescentResult descent_two_term(const GradedVS& V, const GradedVS& M, int level)
{
    if (V.p != M.p)
        throw std::invalid_argument("descent: prime mismatch");
    const int p = V.p;
    if (level < 1 || level > kMaxTowerLevel)
        throw TowerExhausted();
    DescentResult r;
    r.p = p;
    r.level = level;
    const auto entries = hom_entries(V, M);
    const int N = int(entries.size());
    auto one = SemilinearMap::scalar(p, level, 1, tower_one(p, level), minus_one(p, level));
    const KernelCokernel per_entry = semilinear_kernel_cokernel(one);
    std::map<int, int> count;
    for (auto [v, m] : entries)
        ++count[V.basis[v].deg];
    for (auto [d, c] : count) {
        r.degrees.push_back(DescentDegree{d, c, c * per_entry.kernel_dim, c * per_entry.cokernel_dim});
        r.d0 += c * per_entry.kernel_dim;
        r.d1 += c * per_entry.cokernel_dim;
    }
    r.kc = semilinear_kernel_cokernel(SemilinearMap::scalar(p, level, N, tower_one(p, level), minus_one(p, level)));
    if (r.kc.kernel_dim != r.d0 || r.kc.cokernel_dim != r.d1)
        throw std::logic_error("descent: blockwise and global kernel dimensions disagree");
    return r;
}

std::string DescentResult::to_text() const
{
    std::string s = fmt::format("descent p={} level={}\n", p, level);
    s += "degree hom D0 D1\n";
    for (auto& d : degrees)
        s += fmt::format("{} {} {} {}\n", d.degree, d.hom_dim, d.d0, d.d1);
    s += fmt::format("total D0={} D1={} D2+={}\n", d0, d1, higher);
    return s;
}

DescentReport descent_verify(const GradedVS& V, const GradedVS& M, int start_level, int max_level)
{
    const int p = V.p;
    DescentReport rep;
    rep.p = p;
    rep.start_level = start_level;
    rep.max_level = max_level;
    auto fail = [&](std::string s) {
        rep.ok = false;
        rep.problems.push_back(std::move(s));
    };
    // F_p-side derivations out of the free algebra on V into M
    int top = std::max({1, V.top_degree(), M.top_degree()});
    std::vector<int> vdeg;
    for (auto& b : V.basis)
        vdeg.push_back(b.deg);
    FTModule Mft(p, top);
    for (auto& b : M.basis)
        Mft.add_basis(b.name, b.deg);
    std::vector<int> vpos;
    for (int d : vdeg)
        if (d < 1)
            throw std::invalid_argument("descent: V must live in positive degrees");
    FreeAlgebra G(p, vdeg, top);
    const DerSpace der = der_free(G, Mft);
    rep.der_dim = der.dim();
    const auto entries = hom_entries(V, M);
    if (int(entries.size()) != der.dim())
        throw std::logic_error("descent: Hom entries disagree with the derivation basis");

    bool pair_ok = true;
    for (int k = start_level; k <= max_level; ++k) {
        DescentResult r = descent_two_term(V, M, k);
        rep.d0_by_level.push_back(r.d0);
        if (r.d0 != der.dim())
            fail(fmt::format("level {}: D0 has dimension {} but Der has {}", k, r.d0, der.dim()));
        const int q = factorial_degree(k);
        const int N = der.dim();
        // Phi: Der -> Hom ⊗ F_q, e_i -> e_i ⊗ 1
        FpMatrix Phi(p, N * q, N);
        const auto one = flatten({tower_one(p, k)});
        for (int i = 0; i < N; ++i)
            for (int c = 0; c < q; ++c)
                Phi(i * q + c, i) = one[c];
        const FpMatrix T = SemilinearMap::scalar(p, k, N, tower_one(p, k), minus_one(p, k)).fp_matrix();
        if (!(T * Phi).is_zero())
            fail(fmt::format("level {}: image of Der is not in the kernel", k));
        const FpMatrix K = r.kc.kernel.transpose();  // columns: kernel basis
        // Psi: kernel -> Der, reading off the prime-field coordinate of every entry
        FpMatrix Psi(p, N, K.cols());
        for (int j = 0; j < K.cols(); ++j)
            for (int i = 0; i < N; ++i) {
                std::vector<uint8_t> blk(static_cast<size_t>(q));
                for (int c = 0; c < q; ++c)
                    blk[c] = K(i * q + c, j);
                auto e = unflatten(p, k, blk);
                if (!in_prime_field(e[0]))
                    fail(fmt::format("level {}: kernel vector has an entry outside F_p", k));
                Psi(i, j) = e[0].c[0];
            }
        if (N == 0)
            continue;
        const FpMatrix C = solve_matrix(K, Phi);  // Phi in kernel coordinates
        if (!(Psi * C == FpMatrix::identity(p, N)) || !(C * Psi == FpMatrix::identity(p, K.cols()))) {
            pair_ok = false;
            fail(fmt::format("level {}: the comparison maps are not mutually inverse", k));
        }
    }
    rep.inverse_pair_ok = pair_ok;

    // D^1 witnesses
    if (max_level <= start_level) {
        rep.inconclusive = true;
        rep.problems.push_back("tower schedule too short: saturation needs at least two levels");
    }
    const DescentResult base = descent_two_term(V, M, start_level);
    const int q = factorial_degree(start_level);
    for (int r = 0; r < base.kc.cokernel.rows(); ++r) {
        WitnessRecord w;
        w.rep.assign(base.kc.cokernel.row(r).begin(), base.kc.cokernel.row(r).end());
        int solved = 0;
        bool dead = true;
        for (int i = 0; i < int(entries.size()); ++i) {
            std::vector<uint8_t> blk(w.rep.begin() + i * q, w.rep.begin() + (i + 1) * q);
            if (std::all_of(blk.begin(), blk.end(), [](uint8_t x) { return x == 0; }))
                continue;
            w.entry = i;
            TowerElem b = unflatten(p, start_level, blk)[0];
            try {
                ArtinSchreierSolution sol = artin_schreier_solve(b);
                // x - x^p = b, checked at the witness level
                if (!(sol.x - pow(sol.x, static_cast<unsigned long long>(p)) == embed(b, sol.level)))
                    fail("Artin-Schreier witness does not solve its equation");
                solved = std::max(solved, sol.level);
                if (sol.level > max_level)
                    dead = false;
            } catch (const TowerExhausted&) {
                dead = false;
            }
        }
        w.solved_at = dead ? std::max(solved, start_level) : 0;
        if (!dead)
            rep.inconclusive = true;
        rep.witnesses.push_back(std::move(w));
    }
    if (rep.inconclusive)
        rep.ok = false;
    return rep;
}

std::string DescentReport::to_text() const
{
    std::string s = fmt::format("descent verify p={} levels {}..{}\n", p, start_level, max_level);
    s += fmt::format("der_dim {}\n", der_dim);
    for (size_t i = 0; i < d0_by_level.size(); ++i)
        s += fmt::format("level {} D0 {}\n", start_level + int(i), d0_by_level[i]);
    s += fmt::format("inverse_pair {}\n", inverse_pair_ok ? "ok" : "FAIL");
    for (auto& w : witnesses)
        s += w.solved_at ? fmt::format("D1 entry {} dies at level {}\n", w.entry, w.solved_at)
                         : fmt::format("D1 entry {} survives through level {}\n", w.entry, max_level);
    for (auto& pr : problems)
        s += fmt::format("problem: {}\n", pr);
    s += fmt::format("result {}\n", ok ? "pass" : inconclusive ? "inconclusive" : "FAIL");
    return s;
}

}  // namespace ue2
