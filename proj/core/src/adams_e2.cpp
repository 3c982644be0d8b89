#include "ue2/adams_e2.hpp"

#include <fmt/format.h>

#include <cmath>

namespace ue2 {

int required_truncation(const SpaceModel& Y, int t_max)
{
    if (!Y.finite)
        throw TruncationTooSmall(fmt::format("target {} has unbounded cohomology", Y.name));
    return t_max + std::max(0, Y.cohomology.top_degree());
}

FTModule suspension_target(const SpaceModel& Y, int t)
{
    const FTModule& H = Y.cohomology;
    const int top = std::max(0, H.top_degree());
    FTModule M(H.p(), t + top);
    M.add_basis(fmt::format("s{}", t), t);
    for (auto& b : H.basis())
        M.add_basis(fmt::format("s{}{}", t, b.name), t + b.deg);
    for (auto& [key, v] : H.action_table()) {
        SparseVec shifted;
        for (auto& [i, c] : v)
            shifted[i + 1] = c;
        M.set_action(key.first, key.second + 1, shifted);
    }
    return M;
}

AdamsData adams_data(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D)
{
    if (X.p() != Y.p())
        throw std::invalid_argument("spaces at different primes");
    if (s_max < 0 || t_max < 0)
        throw std::invalid_argument("negative window");
    const int need = required_truncation(Y, t_max);
    if (D < need)
        throw TruncationTooSmall(fmt::format("truncation D = {} is below t_max + top degree of Y = {}", D, need));
    if (X.truncation() < need)
        throw TruncationTooSmall(fmt::format("cohomology of {} is only known through degree {}", X.name, X.truncation()));
    AdamsData a;
    a.resolution = std::make_unique<CotripleResolution>(X.cohomology, s_max, std::max(1, need));
    a.targets.push_back(FTModule(X.p(), 0));
    for (int t = 1; t <= t_max; ++t) {
        a.targets.push_back(suspension_target(Y, t));
        a.complexes.push_back(cosimplicial_der_complex(*a.resolution, a.targets.back(), s_max, true));
    }
    return a;
}

long long hom_set_cardinality(const SpaceModel& X, const SpaceModel& Y, long long cap)
{
    const int p = X.p();
    const FTModule& A = X.cohomology;
    const FTModule& B = Y.cohomology;
    const int D = std::min(A.truncation(), B.truncation());
    // free parameters: the matrix of a degree-preserving linear map
    std::vector<std::pair<int, int>> params;
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < B.dim(); ++b)
            if (A.basis()[a].deg == B.basis()[b].deg && A.basis()[a].deg <= D)
                params.push_back({a, b});
    long long total = 1;
    for (size_t i = 0; i < params.size(); ++i) {
        total *= p;
        if (total > cap)
            return -1;
    }
    std::vector<Letter> ops;
    const int max_s = p == 2 ? D : D / (2 * (p - 1));
    for (int s = 1; s <= max_s; ++s)
        ops.push_back(Letter{s, 0});
    if (p != 2)
        ops.push_back(Letter{0, 1});
    long long count = 0;
    std::vector<int> c(params.size(), 0);
    for (long long code = 0; code < total; ++code) {
        long long x = code;
        for (size_t i = 0; i < params.size(); ++i) {
            c[i] = int(x % p);
            x /= p;
        }
        auto phi = [&](const SparseVec& v) {
            SparseVec r;
            for (size_t i = 0; i < params.size(); ++i)
                if (c[i]) {
                    auto it = v.find(params[i].first);
                    if (it != v.end())
                        sv_add(p, r, params[i].second, it->second * c[i]);
                }
            return r;
        };
        bool ok = true;
        for (int a = 0; a < A.dim() && ok; ++a) {
            const int da = A.basis()[a].deg;
            if (da > D)
                continue;
            const SparseVec av{{a, 1}};
            for (auto op : ops) {
                if (da + letter_degree(p, op) > D)
                    continue;
                if (phi(A.act_primitive(op, a)) != B.act_letter(op, phi(av))) {
                    ok = false;
                    break;
                }
            }
            for (int a2 = a; a2 < A.dim() && ok; ++a2) {
                if (da + A.basis()[a2].deg > D)
                    continue;
                if (phi(A.product(a, a2)) != B.product(phi(av), phi(SparseVec{{a2, 1}})))
                    ok = false;
            }
        }
        if (ok)
            ++count;
    }
    return count;
}

FringeCell fringe_cell(const SpaceModel& X, const SpaceModel& Y, const std::string& flag)
{
    FringeCell f;
    f.flag = flag;
    f.card = hom_set_cardinality(X, Y);
    if (f.card > 0) {
        int d = 0;
        long long v = f.card;
        while (v >= X.p()) {
            v /= X.p();
            ++d;
        }
        f.dim = d;
    } else {
        f.dim = -1;
    }
    return f;
}

Chart adams_chart(const SpaceModel& X, const SpaceModel& Y, int s_max, int t_max, int D)
{
    Chart c;
    c.p = X.p();
    c.kind = "adams";
    c.s_max = s_max;
    c.t_max = t_max;
    c.D = D;
    AdamsData a = adams_data(X, Y, s_max, t_max, D);
    for (int s = 0; s <= s_max; ++s)
        for (int t = 1; t <= t_max; ++t)
            c.entries.push_back(ChartEntry{s, t, 0});
    for (int t = 1; t <= t_max; ++t) {
        auto h = a.complexes[t - 1].cohomology();
        for (int s = 0; s <= s_max; ++s)
            c.entries[size_t(s) * t_max + (t - 1)].dim = h[s];
    }
    c.fringe = fringe_cell(X, Y, "hom-set");
    return c;
}

}  // namespace ue2
