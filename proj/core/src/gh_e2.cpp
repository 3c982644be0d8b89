#include "ue2/gh_e2.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include <random>

namespace ue2 {

namespace {

TowerElem minus_one(int p, int level) { return tower_scalar(p, level, p - 1); }

std::vector<TowerElem> apply_fp(const FpMatrix& m, const std::vector<TowerElem>& v, int p, int level)
{
    std::vector<TowerElem> r(static_cast<size_t>(m.rows()), tower_zero(p, level));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j))
                r[i] = r[i] + scale(v[j], m(i, j));
    return r;
}

FpMatrix solve_or_empty(const FpMatrix& K, const FpMatrix& B)
{
    if (K.cols() == 0)
        return FpMatrix(K.p(), 0, B.cols());
    return solve_matrix(K, B);
}

}  // namespace

WResolution::WResolution(const CotripleResolution& R, int level) : R_(&R), level_(level)
{
    if (level < 1 || level > kMaxTowerLevel)
        throw TowerExhausted();
}

TowerMatrix WResolution::face_matrix(int s, int i, int d) const
{
    return TowerMatrix::from_fp(R_->face_matrix(s, i, d), level_);
}

SemilinearMap WResolution::p0(int s, int d) const
{
    return SemilinearMap::scalar(p(), level_, dim(s, d), tower_zero(p(), level_), tower_one(p(), level_));
}

ValidationReport WResolution::check_semilinear(int max_degree, uint64_t seed) const
{
    ValidationReport rep;
    std::mt19937_64 rng(seed);
    const int p = this->p();
    for (int s = 0; s <= R_->s_max(); ++s)
        for (int d = 1; d <= std::min(max_degree, R_->truncation()); ++d) {
            const int n = dim(s, d);
            if (n == 0)
                continue;
            const SemilinearMap P = p0(s, d);
            std::vector<TowerElem> v(static_cast<size_t>(n));
            for (auto& x : v)
                x = tower_random(p, level_, rng);
            const TowerElem lambda = tower_random(p, level_, rng);
            std::vector<TowerElem> lv;
            for (auto& x : v)
                lv.push_back(lambda * x);
            auto lhs = P.apply(lv);
            auto rhs = P.apply(v);
            for (auto& x : rhs)
                x = frobenius(lambda) * x;
            if (lhs != rhs)
                rep.fail(fmt::format("level {} degree {}: P0 is not semilinear", s, d));
            // the same rule through the algebra's own operation on its generators
            const FreeAlgebra& g = R_->level(s);
            for (int gi = 0; gi < int(g.gens().size()); ++gi) {
                if (g.gens()[gi].deg != d)
                    continue;
                const int m = g.mono_of_gen(gi);
                const Word P0{Letter{0, 0}};
                auto lhs1 = act_semilinear(g, P0, TowerVec{{m, lambda}}, level_);
                auto rhs1 = act_semilinear(g, P0, TowerVec{{m, tower_one(p, level_)}}, level_);
                for (auto& [k, x] : rhs1)
                    x = frobenius(lambda) * x;
                std::erase_if(rhs1, [](const auto& kv) { return kv.second.is_zero(); });
                if (lhs1 != rhs1)
                    rep.fail(fmt::format("level {} generator {}: P0 is not semilinear", s, gi));
            }
            if (s == 0)
                continue;
            for (int i = 0; i <= s; ++i) {
                const FpMatrix F = R_->face_matrix(s, i, d);
                if (apply_fp(F, P.apply(v), p, level_) != p0(s - 1, d).apply(apply_fp(F, v, p, level_)))
                    rep.fail(fmt::format("d_{} on level {} degree {} does not commute with P0", i, s, d));
            }
        }
    return rep;
}

DescendedComplex descend_complex(const CochainComplex& fp, int level, const std::vector<DescentResult>* levelwise)
{
    const int p = fp.p();
    const int q = factorial_degree(level);
    const int L = fp.length();
    DescendedComplex dc;
    dc.level = level;
    const auto one = flatten({tower_one(p, level)});
    for (int s = 0; s <= L; ++s) {
        const int n = fp.dim(s);
        KernelCokernel kc;
        if (levelwise && s < int(levelwise->size())) {
            kc = (*levelwise)[s].kc;
        } else {
            kc = semilinear_kernel_cokernel(SemilinearMap::scalar(p, level, n, tower_one(p, level), minus_one(p, level)));
        }
        FpMatrix K = n == 0 ? FpMatrix(p, 0, 0) : kc.kernel.transpose();
        if (K.rows() != n * q)
            throw std::logic_error("descent kernel has the wrong ambient dimension");
        FpMatrix Phi(p, n * q, n);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < q; ++c)
                Phi(i * q + c, i) = one[c];
        FpMatrix Psi(p, n, K.cols());
        for (int j = 0; j < K.cols(); ++j)
            for (int i = 0; i < n; ++i) {
                std::vector<uint8_t> blk(static_cast<size_t>(q));
                for (int c = 0; c < q; ++c)
                    blk[c] = K(i * q + c, j);
                auto e = unflatten(p, level, blk);
                if (!in_prime_field(e[0]))
                    dc.problems.push_back(fmt::format("s={}: a D0 vector has an entry outside F_p", s));
                Psi(i, j) = e[0].c[0];
            }
        FpMatrix C = solve_or_empty(K, Phi);
        if (!(Psi * C == FpMatrix::identity(p, n)) || !(C * Psi == FpMatrix::identity(p, K.cols())))
            dc.problems.push_back(fmt::format("s={}: comparison maps are not mutually inverse", s));
        dc.kernels.push_back(std::move(K));
        dc.phi.push_back(std::move(C));
        dc.psi.push_back(std::move(Psi));
    }
    for (int s = 0; s < L; ++s) {
        const FpMatrix& d = fp.differential(s);
        const FpMatrix& K0 = dc.kernels[s];
        const FpMatrix& K1 = dc.kernels[s + 1];
        // (d ⊗ 1) applied to the kernel basis
        FpMatrix Y(p, d.rows() * q, K0.cols());
        for (int a = 0; a < d.rows(); ++a)
            for (int b = 0; b < d.cols(); ++b) {
                const int x = d(a, b);
                if (!x)
                    continue;
                for (int c = 0; c < q; ++c)
                    for (int j = 0; j < K0.cols(); ++j)
                        if (K0(b * q + c, j))
                            Y(a * q + c, j) = uint8_t((Y(a * q + c, j) + x * K0(b * q + c, j)) % p);
            }
        FpMatrix delta(p, K1.cols(), K0.cols());
        try {
            delta = solve_or_empty(K1, Y);
        } catch (const std::exception&) {
            dc.problems.push_back(fmt::format("s={}: the differential leaves D0", s));
        }
        if (!(dc.phi[s + 1] * d == delta * dc.phi[s]))
            dc.problems.push_back(fmt::format("s={}: comparison is not a cochain map", s));
        dc.delta.push_back(std::move(delta));
    }
    return dc;
}

GhRun gh_run(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D, int tower_max)
{
    if (tower_max < 1 || tower_max > kMaxTowerLevel)
        throw TowerExhausted();
    const int p = X.p();
    GhRun run;
    run.tower_max = tower_max;
    AdamsData a = adams_data(X, Y, s_max, t_max, D);
    const CotripleResolution& R = *a.resolution;
    auto fail = [&](bool& flag, std::string s) {
        flag = false;
        run.problems.push_back(std::move(s));
    };

    for (int k = 2; k <= tower_max; ++k) {
        auto v = WResolution(R, k).check_semilinear(R.truncation());
        if (!v.ok)
            for (auto& pr : v.problems)
                fail(run.semilinear_ok, fmt::format("tower level {}: {}", k, pr));
    }

    std::vector<CochainComplex> fp;
    for (int t = 1; t <= t_max; ++t)
        fp.push_back(cosimplicial_der_complex(R, a.targets[t], s_max, false));

    for (int k = 1; k <= tower_max; ++k) {
        std::vector<std::vector<int>> dims(static_cast<size_t>(s_max + 1), std::vector<int>(static_cast<size_t>(t_max), 0));
        for (int t = 1; t <= t_max; ++t) {
            const CochainComplex& C = fp[t - 1];
            std::vector<DescentResult> levelwise;
            for (int s = 0; s <= C.length(); ++s)
                levelwise.push_back(
                    descent_two_term(graded_vs(p, R.base_degrees(s)), a.targets[t].underlying(), k));
            DescendedComplex dc = descend_complex(C, k, &levelwise);
            for (auto& pr : dc.problems)
                fail(run.comparison_ok, fmt::format("level {} t={}: {}", k, t, pr));
            if (k == 1)
                for (int s = 0; s < C.length(); ++s)
                    if (!(dc.delta[s] == C.differential(s)))
                        fail(run.base_change_ok, fmt::format("t={} s={}: level 1 differs from F_p", t, s));
            CochainComplex G(p, dc.delta);
            auto h = G.cohomology();
            for (int s = 0; s <= s_max; ++s)
                dims[s][t - 1] = h[s];

            // s = 0: the Adams cocycles go onto the D0 cocycles
            const CochainComplex& A = a.complexes[t - 1];
            if (A.dim(0) != C.dim(0)) {
                fail(run.s0_iso_ok, fmt::format("t={}: normalized and full degree-0 terms differ", t));
            } else if (A.dim(0) > 0) {
                FpMatrix Z = kernel_basis(A.differential(0)).transpose();
                FpMatrix img = dc.phi[0] * Z;
                const int zg = dc.delta.empty() ? img.cols() : dc.kernels[0].cols() - rank(dc.delta[0]);
                if ((!dc.delta.empty() && !(dc.delta[0] * img).is_zero()) || rank(img) != zg)
                    fail(run.s0_iso_ok, fmt::format("level {} t={}: s=0 cocycles do not correspond", k, t));
            }
        }
        if (!run.dims_by_level.empty() && run.dims_by_level.back() != dims)
            fail(run.level_stable, fmt::format("dimensions change between tower levels {} and {}", k - 1, k));
        run.dims_by_level.push_back(std::move(dims));
    }

    Chart& c = run.chart;
    c.p = p;
    c.kind = "gh";
    c.s_max = s_max;
    c.t_max = t_max;
    c.D = D;
    c.tower_level = tower_max;
    for (int s = 0; s <= s_max; ++s)
        for (int t = 1; t <= t_max; ++t)
            c.entries.push_back(ChartEntry{s, t, run.dims_by_level.back()[s][t - 1]});
    c.fringe = fringe_cell(X, Y, "dims-only");
    return run;
}

Chart gh_chart(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D, int tower_max)
{
    GhRun r = gh_run(X, Y, s_max, t_max, D, tower_max);
    if (!r.ok())
        throw std::runtime_error("gh pipeline self-check failed: " + r.problems.front());
    return r.chart;
}

std::string GhRun::to_text() const
{
    std::string s = fmt::format("gh run, tower levels 1..{}\n", tower_max);
    s += fmt::format("base change {}\n", base_change_ok ? "ok" : "FAIL");
    s += fmt::format("explicit comparison {}\n", comparison_ok ? "ok" : "FAIL");
    s += fmt::format("s=0 column {}\n", s0_iso_ok ? "ok" : "FAIL");
    s += fmt::format("level stability {}\n", level_stable ? "ok" : "FAIL");
    s += fmt::format("semilinear P0 {}\n", semilinear_ok ? "ok" : "FAIL");
    for (auto& pr : problems)
        s += "problem: " + pr + "\n";
    return s;
}

CompareReport compare_charts(const Chart& a, const Chart& b)
{
    if (a.p != b.p || a.s_max != b.s_max || a.t_max != b.t_max)
        throw WindowMismatch(fmt::format("charts differ in prime or window: p {} vs {}, window ({},{}) vs ({},{})", a.p,
                                         b.p, a.s_max, a.t_max, b.s_max, b.t_max));
    CompareReport r;
    for (int s = 0; s <= a.s_max; ++s)
        for (int t = 1; t <= a.t_max; ++t) {
            const int x = a.dim(s, t).value_or(0), y = b.dim(s, t).value_or(0);
            if (x != y)
                r.diffs.push_back(CellDiff{s, t, x, y});
        }
    if (a.fringe && b.fringe && a.fringe->dim != b.fringe->dim)
        r.fringe_differs = true;
    r.ok = r.diffs.empty() && !r.fringe_differs;
    return r;
}

std::string CompareReport::to_text() const
{
    std::string s = ok ? "charts agree\n" : "charts differ\n";
    for (auto& d : diffs)
        s += fmt::format("(s={}, t={}): {} vs {}\n", d.s, d.t, d.a, d.b);
    if (fringe_differs)
        s += "(0,0) fringe differs\n";
    return s;
}

std::string CompareReport::to_json() const
{
    nlohmann::ordered_json j;
    j["ok"] = ok;
    j["diff"] = nlohmann::ordered_json::array();
    for (auto& d : diffs)
        j["diff"].push_back({{"s", d.s}, {"t", d.t}, {"a", d.a}, {"b", d.b}});
    j["fringe_differs"] = fringe_differs;
    return j.dump(2) + "\n";
}

SaturationReport d1_saturation_report(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D,
                                      int rep_level, int max_level)
{
    const int p = X.p();
    SaturationReport r;
    r.p = p;
    r.rep_level = rep_level;
    r.max_level = max_level;
    if (max_level <= rep_level) {
        r.inconclusive = true;
        r.problems.push_back("tower schedule too short: saturation needs at least two levels");
    }
    AdamsData a = adams_data(X, Y, s_max, t_max, D);
    const CotripleResolution& R = *a.resolution;
    const int q = factorial_degree(rep_level);
    for (int s = 0; s <= s_max; ++s)
        for (int t = 1; t <= t_max; ++t) {
            DescentResult dr = descent_two_term(graded_vs(p, R.base_degrees(s)), a.targets[t].underlying(), rep_level);
            SaturationCell cell{s, t, int(dr.kc.cokernel.cols()) / q, dr.kc.cokernel_dim, 0, true};
            for (int i = 0; i < dr.kc.cokernel.rows(); ++i) {
                auto row = dr.kc.cokernel.row(i);
                std::vector<uint8_t> v(row.begin(), row.end());
                auto elems = unflatten(p, rep_level, v);
                for (auto& b : elems) {
                    if (b.is_zero())
                        continue;
                    try {
                        ArtinSchreierSolution sol = artin_schreier_solve(b);
                        if (!(sol.x - pow(sol.x, static_cast<unsigned long long>(p)) == embed(b, sol.level))) {
                            r.ok = false;
                            r.problems.push_back(fmt::format("s={} t={}: witness fails its equation", s, t));
                        }
                        cell.witness_level = std::max(cell.witness_level, sol.level);
                        if (sol.level > max_level)
                            cell.dead = false;
                    } catch (const TowerExhausted&) {
                        cell.dead = false;
                    }
                }
            }
            if (!cell.dead)
                r.inconclusive = true;
            r.cells.push_back(cell);
        }
    if (r.inconclusive)
        r.ok = false;
    return r;
}

std::string SaturationReport::to_text() const
{
    std::string s = fmt::format("D1 saturation p={} representatives at level {}, schedule up to {}\n", p, rep_level,
                                max_level);
    for (auto& c : cells)
        s += fmt::format("s={} t={} hom={} reps={} {}\n", c.s, c.t, c.hom_dim, c.reps,
                         c.reps == 0 ? std::string("vacuous")
                         : c.dead    ? fmt::format("dead by level {}", c.witness_level)
                                     : std::string("survives"));
    for (auto& pr : problems)
        s += "problem: " + pr + "\n";
    s += ok ? "pass\n" : inconclusive ? "inconclusive\n" : "fail\n";
    return s;
}

}  // namespace ue2
