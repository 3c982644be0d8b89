#include "ue2/spaces.hpp"

#include <fmt/format.h>

#include <regex>

namespace ue2 {

SpaceModel sphere(int p, int n, int D)
{
    if (n < 1)
        throw std::invalid_argument("sphere dimension must be >= 1");
    SpaceModel X;
    X.name = fmt::format("S{}", n);
    X.cohomology = FTModule(p, D);
    X.cohomology.enable_products();
    if (n <= D)
        X.cohomology.add_basis(fmt::format("i{}", n), n);
    return X;
}

SpaceModel eilenberg_maclane(int p, int n, int D)
{
    if (n < 1)
        throw std::invalid_argument("Eilenberg-MacLane degree must be >= 1");
    SpaceModel X;
    X.name = fmt::format("K{}", n);
    X.cohomology = FreeAlgebra(p, {n}, D).to_ft({fmt::format("i{}", n)});
    X.finite = false;
    X.free_generators = std::vector<int>{n};
    return X;
}

SpaceModel point(int p, int D)
{
    SpaceModel X;
    X.name = "point";
    X.cohomology = FTModule(p, D);
    X.cohomology.enable_products();
    return X;
}

namespace {

// Unreduced index: 0 is the unit, i + 1 the reduced basis element i.
struct Unreduced
{
    const FTModule& m;
    int deg(int u) const { return u == 0 ? 0 : m.basis()[u - 1].deg; }
    SparseVec act(Letter op, int u) const
    {
        if (u == 0)
            return op.s == 0 && !op.eps ? SparseVec{{0, 1}} : SparseVec{};
        if (op.s == 0 && !op.eps)
            return SparseVec{{u, 1}};
        SparseVec r;
        for (auto& [i, c] : m.act_primitive(op, u - 1))
            r[i + 1] = c;
        return r;
    }
    SparseVec mul(int a, int b) const
    {
        if (a == 0)
            return SparseVec{{b, 1}};
        if (b == 0)
            return SparseVec{{a, 1}};
        if (deg(a) + deg(b) > m.truncation())
            return {};
        SparseVec r;
        for (auto& [i, c] : m.product(a - 1, b - 1))
            r[i + 1] = c;
        return r;
    }
};

}  // namespace

SpaceModel product(const SpaceModel& X, const SpaceModel& Y)
{
    const int p = X.p();
    if (Y.p() != p)
        throw std::invalid_argument("product of spaces at different primes");
    const int D = std::min(X.truncation(), Y.truncation());
    SpaceModel Z;
    Z.name = fmt::format("{}x{}", X.name, Y.name);
    Z.finite = X.finite && Y.finite;
    if (X.free_generators && Y.free_generators) {
        std::vector<int> gens = *X.free_generators;
        gens.insert(gens.end(), Y.free_generators->begin(), Y.free_generators->end());
        std::vector<std::string> names;
        for (size_t i = 0; i < gens.size(); ++i)
            names.push_back(fmt::format("{}{}", i < X.free_generators->size() ? "a" : "b", gens[i]));
        Z.cohomology = FreeAlgebra(p, gens, D).to_ft(names);
        Z.free_generators = gens;
        return Z;
    }
    const Unreduced ux{X.cohomology}, uy{Y.cohomology};
    const int nx = X.cohomology.dim() + 1, ny = Y.cohomology.dim() + 1;
    // basis of the tensor product without 1 (x) 1
    std::map<std::pair<int, int>, int> idx;
    FTModule& H = Z.cohomology;
    H = FTModule(p, D);
    H.enable_products();
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
            if (a == 0 && b == 0)
                continue;
            const int d = ux.deg(a) + uy.deg(b);
            if (d > D)
                continue;
            pairs.push_back({a, b});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [&](auto& l, auto& r) {
        return ux.deg(l.first) + uy.deg(l.second) < ux.deg(r.first) + uy.deg(r.second);
    });
    for (auto [a, b] : pairs) {
        std::string name;
        if (b == 0)
            name = X.cohomology.basis()[a - 1].name;
        else if (a == 0)
            name = Y.cohomology.basis()[b - 1].name;
        else
            name = X.cohomology.basis()[a - 1].name + "|" + Y.cohomology.basis()[b - 1].name;
        if (H.index_of(name) >= 0)
            name = fmt::format("{}'", name);
        idx[{a, b}] = H.add_basis(name, ux.deg(a) + uy.deg(b));
    }
    auto tensor = [&](const SparseVec& u, const SparseVec& v, int c0) {
        SparseVec r;
        for (auto& [a, ca] : u)
            for (auto& [b, cb] : v) {
                auto it = idx.find({a, b});
                if (it != idx.end())
                    sv_add(p, r, it->second, ca * cb * c0);
            }
        return r;
    };
    std::vector<Letter> ops;
    const int max_s = p == 2 ? D : D / (2 * (p - 1));
    for (int s = 1; s <= max_s; ++s)
        ops.push_back(Letter{s, 0});
    if (p != 2)
        ops.push_back(Letter{0, 1});
    for (auto [a, b] : pairs) {
        const int src = idx.at({a, b});
        const int d = ux.deg(a) + uy.deg(b);
        for (auto op : ops) {
            if (d + letter_degree(p, op) > D)
                continue;
            SparseVec r;
            if (op.eps) {
                sv_add(p, r, tensor(ux.act(op, a), SparseVec{{b, 1}}, 1));
                sv_add(p, r, tensor(SparseVec{{a, 1}}, uy.act(op, b), ux.deg(a) % 2 ? p - 1 : 1));
            } else {
                for (int i = 0; i <= op.s; ++i)
                    sv_add(p, r, tensor(ux.act(Letter{i, 0}, a), uy.act(Letter{op.s - i, 0}, b), 1));
            }
            if (!r.empty())
                H.set_action(op, src, r);
        }
    }
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i; j < pairs.size(); ++j) {
            auto [a, b] = pairs[i];
            auto [a2, b2] = pairs[j];
            if (ux.deg(a) + uy.deg(b) + ux.deg(a2) + uy.deg(b2) > D)
                continue;
            const int sign = (p != 2 && (uy.deg(b) % 2) && (ux.deg(a2) % 2)) ? p - 1 : 1;
            SparseVec r = tensor(ux.mul(a, a2), uy.mul(b, b2), sign);
            if (!r.empty())
                H.set_product(idx.at({a, b}), idx.at({a2, b2}), r);
        }
    return Z;
}

SpaceModel builtin_space(const std::string& name_in, int p, int D)
{
    std::string name;
    for (char c : name_in)
        if (!std::isspace(static_cast<unsigned char>(c)))
            name += c;
    static const std::regex sphere_re(R"(^(?:S(\d+)|sphere\((\d+)\))$)");
    static const std::regex em_re(R"(^(?:K(\d+)|K\(F_(\d+),(\d+)\))$)");
    std::smatch m;
    if (name == "point" || name == "pt")
        return point(p, D);
    if (std::regex_match(name, m, sphere_re))
        return sphere(p, std::stoi(m[1].matched ? m[1].str() : m[2].str()), D);
    if (std::regex_match(name, m, em_re)) {
        if (m[1].matched)
            return eilenberg_maclane(p, std::stoi(m[1].str()), D);
        if (std::stoi(m[2].str()) != p)
            throw UnknownSpace(fmt::format("space {} is not at the prime {}", name_in, p));
        return eilenberg_maclane(p, std::stoi(m[3].str()), D);
    }
    // product: split at an 'x' whose both sides parse
    for (size_t i = 1; i + 1 < name.size(); ++i) {
        if (name[i] != 'x')
            continue;
        const std::string l = name.substr(0, i), r = name.substr(i + 1);
        if (l.find('x') != std::string::npos || r.find('x') != std::string::npos)
            continue;
        try {
            return product(builtin_space(l, p, D), builtin_space(r, p, D));
        } catch (const UnknownSpace&) {
            continue;
        }
    }
    throw UnknownSpace(fmt::format("unknown space '{}'", name_in));
}

}  // namespace ue2
