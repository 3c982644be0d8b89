#include "ue2/unstable_alg.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace ue2 {

namespace {

bool is_generator_word(int p, const Word& J, int dw)
{
    const int e = excess(p, J);
    if (e < dw)
        return true;
    return p != 2 && e == dw && !J.empty() && J[0].eps;
}

}  // namespace

FreeAlgebra::FreeAlgebra(int p, std::vector<int> base_degrees, int D)
    : p_(p), base_deg_(std::move(base_degrees)), D_(D), alg_(p, Flavor::A)
{
    struct Cand
    {
        int deg;
        int base;
        Word J;
    };
    std::vector<Cand> cands;
    std::map<std::pair<int, int>, std::vector<Word>> words_cache;  // (degree, max excess)
    for (int w = 0; w < int(base_deg_.size()); ++w) {
        const int dw = base_deg_[w];
        if (dw < 1)
            throw std::invalid_argument("free algebra generators must have positive degree");
        if (dw > D_)
            continue;
        for (int n = 0; n + dw <= D_; ++n) {
            auto key = std::make_pair(n, dw);
            auto it = words_cache.find(key);
            if (it == words_cache.end())
                it = words_cache.emplace(key, admissible_words(p_, Flavor::A, n, dw)).first;
            for (auto& J : it->second)
                if (is_generator_word(p_, J, dw))
                    cands.push_back(Cand{n + dw, w, J});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return std::tie(a.deg, a.base, a.J) < std::tie(b.deg, b.base, b.J);
    });
    base_gen_.assign(base_deg_.size(), -1);
    for (auto& c : cands) {
        int id = int(gens_.size());
        gens_.push_back(Gen{c.J, c.base, c.deg});
        gen_index_[{c.J, c.base}] = id;
        if (c.J.empty())
            base_gen_[c.base] = id;
    }
    enumerate_monos();
}

void FreeAlgebra::enumerate_monos()
{
    std::vector<Mono> all;
    Mono cur;
    const int ng = int(gens_.size());
    // depth-first over generators in increasing id (hence non-decreasing degree)
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        for (int g = start; g < ng; ++g) {
            const int dg = gens_[g].deg;
            if (dg > remaining)
                break;
            const int max_e = (p_ != 2 && dg % 2) ? 1 : remaining / dg;
            for (int e = 1; e <= max_e; ++e) {
                cur.push_back({g, e});
                all.push_back(cur);
                self(self, g + 1, remaining - e * dg);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, D_);
    auto deg_of = [&](const Mono& m) {
        int d = 0;
        for (auto [g, e] : m)
            d += gens_[g].deg * e;
        return d;
    };
    std::vector<std::pair<int, Mono>> keyed;
    keyed.reserve(all.size());
    for (auto& m : all)
        keyed.push_back({deg_of(m), std::move(m)});
    std::sort(keyed.begin(), keyed.end());
    by_degree_.assign(size_t(D_ + 1), {});
    for (auto& [d, m] : keyed) {
        int id = int(monos_.size());
        position_.push_back(int(by_degree_[d].size()));
        by_degree_[d].push_back(id);
        mono_index_[m] = id;
        monos_.push_back(std::move(m));
        mono_deg_.push_back(d);
    }
    gen_mono_.resize(gens_.size());
    for (int g = 0; g < ng; ++g)
        gen_mono_[g] = mono_index_.at(Mono{{g, 1}});
}

int FreeAlgebra::gen_index(const Word& J, int base) const
{
    auto it = gen_index_.find({J, base});
    return it == gen_index_.end() ? -1 : it->second;
}

int FreeAlgebra::mono_id(const Mono& m) const
{
    auto it = mono_index_.find(m);
    return it == mono_index_.end() ? -1 : it->second;
}

const std::vector<int>& FreeAlgebra::basis(int d) const
{
    static const std::vector<int> empty;
    if (d < 0 || d > D_)
        return empty;
    return by_degree_[d];
}

std::vector<int> FreeAlgebra::hilbert() const
{
    std::vector<int> h(size_t(D_ + 1), 0);
    h[0] = 1;
    for (int d = 1; d <= D_; ++d)
        h[d] = int(by_degree_[d].size());
    return h;
}

SparseVec FreeAlgebra::mono_product(int a, int b) const
{
    const int d = mono_deg_[a] + mono_deg_[b];
    if (d > D_)
        throw std::out_of_range(fmt::format("product of degree {} above truncation {}", d, D_));
    const Mono& x = monos_[a];
    const Mono& y = monos_[b];
    Mono r;
    int sign = 1;
    if (p_ != 2) {
        // moving the odd generators of y past the larger odd generators of x
        int odd_in_x_after = 0;
        for (auto [g, e] : x)
            if (gens_[g].deg % 2)
                odd_in_x_after += e;
        size_t i = 0;
        int odd_x_seen = 0;
        for (auto [g, e] : y) {
            while (i < x.size() && x[i].first < g) {
                if (gens_[x[i].first].deg % 2)
                    odd_x_seen += x[i].second;
                ++i;
            }
            if (gens_[g].deg % 2) {
                if (i < x.size() && x[i].first == g)
                    return {};
                if ((odd_in_x_after - odd_x_seen) % 2)
                    sign = -sign;
            }
        }
    }
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first))
            r.push_back(x[i++]);
        else if (i == x.size() || y[j].first < x[i].first)
            r.push_back(y[j++]);
        else {
            r.push_back({x[i].first, x[i].second + y[j].second});
            ++i;
            ++j;
        }
    }
    int id = mono_id(r);
    if (id < 0)
        throw std::logic_error("product monomial missing from the basis");
    return SparseVec{{id, sign == 1 ? 1 : p_ - 1}};
}

SparseVec FreeAlgebra::product(const SparseVec& a, const SparseVec& b) const
{
    SparseVec r;
    for (auto& [i, ci] : a)
        for (auto& [j, cj] : b)
            sv_add(p_, r, mono_product(i, j), ci * cj);
    return r;
}

SparseVec FreeAlgebra::power(const SparseVec& a, int e) const
{
    SparseVec r = a;
    for (int k = 1; k < e; ++k)
        r = product(r, a);
    return r;
}

SparseVec FreeAlgebra::admissible_on_base(const Word& K, int w) const
{
    const int dw = base_deg_.at(w);
    const int e = excess(p_, K);
    if (e > dw)
        return {};
    if (is_generator_word(p_, K, dw)) {
        int g = gen_index(K, w);
        if (g < 0)
            throw std::out_of_range(fmt::format("generator {} on base {} above truncation", format_word(p_, K), w));
        return SparseVec{{gen_mono_[g], 1}};
    }
    // top operation: p-th power of the rest
    Word rest(K.begin() + 1, K.end());
    return power(admissible_on_base(rest, w), p_);
}

SparseVec FreeAlgebra::word_on_base(const Word& J, int w) const
{
    SparseVec r;
    OpElement rw = alg_.rewrite(J);
    for (auto& [K, c] : rw.terms())
        sv_add(p_, r, admissible_on_base(K, w), c);
    return r;
}

SparseVec FreeAlgebra::primitive_on_gen(Letter op, int g) const
{
    auto key = std::make_pair(op, g);
    auto it = memo_gen_.find(key);
    if (it != memo_gen_.end())
        return it->second;
    Word w{op};
    w.insert(w.end(), gens_[g].J.begin(), gens_[g].J.end());
    SparseVec r = word_on_base(w, gens_[g].base);
    memo_gen_.emplace(key, r);
    return r;
}

SparseVec FreeAlgebra::primitive_on_mono(Letter op, int m) const
{
    auto key = std::make_pair(op, m);
    auto it = memo_mono_.find(key);
    if (it != memo_mono_.end())
        return it->second;
    const Mono& mm = monos_[m];
    SparseVec r;
    const int g = mm[0].first;
    if (mm.size() == 1 && mm[0].second == 1) {
        r = primitive_on_gen(op, g);
    } else {
        Mono rest = mm;
        if (--rest[0].second == 0)
            rest.erase(rest.begin());
        const int x = gen_mono_[g];
        const int y = mono_id(rest);
        const SparseVec xv{{x, 1}}, yv{{y, 1}};
        if (op.eps) {
            sv_add(p_, r, product(primitive_on_mono(op, x), yv));
            sv_add(p_, r, product(xv, primitive_on_mono(op, y)), gens_[g].deg % 2 ? p_ - 1 : 1);
        } else {
            for (int i = 0; i <= op.s; ++i) {
                SparseVec a = i ? primitive_on_mono(Letter{i, 0}, x) : xv;
                if (a.empty())
                    continue;
                SparseVec b = op.s - i ? primitive_on_mono(Letter{op.s - i, 0}, y) : yv;
                if (b.empty())
                    continue;
                sv_add(p_, r, product(a, b));
            }
        }
    }
    memo_mono_.emplace(key, r);
    return r;
}

SparseVec FreeAlgebra::act_letter(Letter l, const SparseVec& v) const
{
    SparseVec cur = v;
    if (l.s != 0) {
        SparseVec next;
        for (auto& [m, c] : cur)
            sv_add(p_, next, primitive_on_mono(Letter{l.s, 0}, m), c);
        cur = std::move(next);
    }
    if (l.eps) {
        SparseVec next;
        for (auto& [m, c] : cur)
            sv_add(p_, next, primitive_on_mono(Letter{0, 1}, m), c);
        cur = std::move(next);
    }
    return cur;
}

SparseVec FreeAlgebra::act_word(const Word& w, const SparseVec& v) const
{
    SparseVec cur = v;
    for (size_t k = w.size(); k-- > 0 && !cur.empty();)
        cur = act_letter(w[k], cur);
    return cur;
}

SparseVec FreeAlgebra::act(const OpElement& op, const SparseVec& v) const
{
    SparseVec r;
    for (auto& [w, c] : op.terms())
        sv_add(p_, r, act_word(w, v), c);
    return r;
}

std::string FreeAlgebra::format_mono(int id) const
{
    std::string s;
    for (auto [g, e] : monos_[id]) {
        if (!s.empty())
            s += '.';
        const Gen& gen = gens_[g];
        if (!gen.J.empty())
            s += format_word(p_, gen.J);
        s += fmt::format("w{}", gen.base);
        if (e > 1)
            s += fmt::format("^{}", e);
    }
    return s;
}

std::string FreeAlgebra::format(const SparseVec& v) const
{
    if (v.empty())
        return "0";
    std::string s;
    for (auto& [m, c] : v) {
        if (!s.empty())
            s += " + ";
        if (c != 1)
            s += fmt::format("{}*", c);
        s += format_mono(m);
    }
    return s;
}

FTModule FreeAlgebra::to_ft(const std::vector<std::string>& base_names) const
{
    FTModule m(p_, D_);
    m.enable_products();
    std::vector<int> idx(monos_.size());
    for (int id = 0; id < num_monos(); ++id) {
        std::string name;
        for (auto [g, e] : monos_[id]) {
            if (!name.empty())
                name += '.';
            const Gen& gen = gens_[g];
            if (!gen.J.empty())
                name += format_word(p_, gen.J);
            name += gen.base < int(base_names.size()) ? base_names[gen.base] : fmt::format("w{}", gen.base);
            if (e > 1)
                name += fmt::format("^{}", e);
        }
        idx[id] = m.add_basis(name, mono_deg_[id]);
    }
    std::vector<Letter> ops;
    const int max_s = p_ == 2 ? D_ : D_ / (2 * (p_ - 1));
    for (int s = 1; s <= max_s; ++s)
        ops.push_back(Letter{s, 0});
    if (p_ != 2)
        ops.push_back(Letter{0, 1});
    for (int id = 0; id < num_monos(); ++id)
        for (auto op : ops) {
            if (mono_deg_[id] + letter_degree(p_, op) > D_)
                continue;
            SparseVec v = primitive_on_mono(op, id);
            SparseVec t;
            for (auto& [k, c] : v)
                t[idx[k]] = c;
            if (!t.empty())
                m.set_action(op, idx[id], t);
        }
    for (int a = 0; a < num_monos(); ++a)
        for (int b = a; b < num_monos(); ++b) {
            if (mono_deg_[a] + mono_deg_[b] > D_)
                continue;
            SparseVec v = mono_product(a, b);
            SparseVec t;
            for (auto& [k, c] : v)
                t[idx[k]] = c;
            if (!t.empty())
                m.set_product(idx[a], idx[b], t);
        }
    return m;
}

std::vector<int> hilbert_free(int p, const std::vector<int>& gen_degrees, int D)
{
    return FreeAlgebra(p, gen_degrees, D).hilbert();
}

AlgebraMap::AlgebraMap(const FreeAlgebra& src, const FreeAlgebra& dst, std::vector<SparseVec> base_images)
    : src_(&src), dst_free_(&dst), images_(std::move(base_images))
{
    if (images_.size() != src.base_degrees().size())
        throw std::invalid_argument("algebra map: wrong number of base images");
}

AlgebraMap::AlgebraMap(const FreeAlgebra& src, const FTModule& dst, std::vector<SparseVec> base_images)
    : src_(&src), dst_ft_(&dst), images_(std::move(base_images))
{
    if (images_.size() != src.base_degrees().size())
        throw std::invalid_argument("algebra map: wrong number of base images");
}

SparseVec AlgebraMap::on_gen(int g) const
{
    auto it = memo_gen_.find(g);
    if (it != memo_gen_.end())
        return it->second;
    const auto& gen = src_->gens()[g];
    SparseVec r = dst_free_ ? dst_free_->act_word(gen.J, images_[gen.base]) : dst_ft_->act_word(gen.J, images_[gen.base]);
    memo_gen_.emplace(g, r);
    return r;
}

SparseVec AlgebraMap::on_mono(int m) const
{
    auto it = memo_mono_.find(m);
    if (it != memo_mono_.end())
        return it->second;
    SparseVec r;
    bool first = true;
    for (auto [g, e] : src_->mono(m)) {
        SparseVec x = on_gen(g);
        for (int k = 0; k < e; ++k) {
            if (first) {
                r = x;
                first = false;
            } else {
                r = dst_free_ ? dst_free_->product(r, x) : dst_ft_->product(r, x);
            }
            if (r.empty())
                break;
        }
        if (r.empty())
            break;
    }
    memo_mono_.emplace(m, r);
    return r;
}

SparseVec AlgebraMap::apply(const SparseVec& v) const
{
    const int p = src_->p();
    SparseVec r;
    for (auto& [m, c] : v)
        sv_add(p, r, on_mono(m), c);
    return r;
}

FpMatrix AlgebraMap::matrix(int d) const
{
    const auto& sb = src_->basis(d);
    const int p = src_->p();
    if (dst_free_) {
        FpMatrix m(p, dst_free_->dim(d), int(sb.size()));
        for (int j = 0; j < int(sb.size()); ++j)
            for (auto& [k, c] : on_mono(sb[j]))
                m(dst_free_->position(k), j) = uint8_t(c);
        return m;
    }
    auto tb = dst_ft_->indices_in(d);
    std::map<int, int> pos;
    for (int i = 0; i < int(tb.size()); ++i)
        pos[tb[i]] = i;
    FpMatrix m(p, int(tb.size()), int(sb.size()));
    for (int j = 0; j < int(sb.size()); ++j)
        for (auto& [k, c] : on_mono(sb[j]))
            m(pos.at(k), j) = uint8_t(c);
    return m;
}

ValidationReport AlgebraMap::check() const
{
    ValidationReport rep;
    const int p = src_->p(), D = src_->truncation();
    std::vector<Letter> ops;
    const int max_s = p == 2 ? D : D / (2 * (p - 1));
    for (int s = 1; s <= max_s; ++s)
        ops.push_back(Letter{s, 0});
    if (p != 2)
        ops.push_back(Letter{0, 1});
    auto tact = [&](Letter l, const SparseVec& v) { return dst_free_ ? dst_free_->act_letter(l, v) : dst_ft_->act_letter(l, v); };
    auto tmul = [&](const SparseVec& a, const SparseVec& b) { return dst_free_ ? dst_free_->product(a, b) : dst_ft_->product(a, b); };
    for (int m = 0; m < src_->num_monos(); ++m) {
        const SparseVec mv{{m, 1}};
        for (auto op : ops) {
            if (src_->mono_degree(m) + letter_degree(p, op) > D)
                continue;
            if (apply(src_->act_letter(op, mv)) != tact(op, on_mono(m)))
                rep.fail(fmt::format("map does not commute with {} on {}", op_name(p, op), src_->format_mono(m)));
        }
        for (int g = 0; g < int(src_->gens().size()); ++g) {
            const int gm = src_->mono_of_gen(g);
            if (src_->mono_degree(gm) + src_->mono_degree(m) > D)
                continue;
            if (apply(src_->mono_product(gm, m)) != tmul(on_mono(gm), on_mono(m)))
                rep.fail(fmt::format("map is not multiplicative on {} * {}", src_->format_mono(gm), src_->format_mono(m)));
        }
    }
    return rep;
}

FpMatrix alg_map_apply(const AlgebraMap& f, int d) { return f.matrix(d); }

FpMatrix monad_unit(const FreeAlgebra& g, int d)
{
    std::vector<int> ws;
    for (int w = 0; w < int(g.base_degrees().size()); ++w)
        if (g.base_degrees()[w] == d)
            ws.push_back(w);
    FpMatrix m(g.p(), g.dim(d), int(ws.size()));
    for (int j = 0; j < int(ws.size()); ++j)
        m(g.position(g.mono_of_gen(g.base_gen(ws[j]))), j) = 1;
    return m;
}

FreeAlgebra free_on_underlying(const FreeAlgebra& g)
{
    std::vector<int> degs;
    for (int id = 0; id < g.num_monos(); ++id)
        degs.push_back(g.mono_degree(id));
    return FreeAlgebra(g.p(), degs, g.truncation());
}

FpMatrix monad_mult(const FreeAlgebra& gg, const FreeAlgebra& g, int d)
{
    if (int(gg.base_degrees().size()) != g.num_monos())
        throw std::invalid_argument("monad_mult: outer algebra is not built on the inner basis");
    std::vector<SparseVec> images;
    for (int id = 0; id < g.num_monos(); ++id)
        images.push_back(SparseVec{{id, 1}});
    AlgebraMap mu(gg, g, std::move(images));
    return mu.matrix(d);
}

TowerVec act_semilinear(const FreeAlgebra& g, const Word& J, const TowerVec& v, int level)
{
    const int p = g.p();
    TowerVec r;
    for (auto& [m, lam] : v) {
        TowerElem fl = embed(lam, level);
        for (size_t k = 0; k < J.size(); ++k)
            fl = frobenius(fl);
        for (auto& [k, c] : g.act_word(J, SparseVec{{m, 1}})) {
            TowerElem add = scale(fl, c);
            auto it = r.find(k);
            if (it == r.end())
                r.emplace(k, add);
            else
                it->second = it->second + add;
        }
    }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.is_zero() ? r.erase(it) : std::next(it);
    (void)p;
    return r;
}

}  // namespace ue2
