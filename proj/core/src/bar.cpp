#include "ue2/aq_der.hpp"

#include <fmt/format.h>

namespace ue2 {

namespace {

bool generator_word(int p, const Word& J, int n)
{
    const int e = excess(p, J);
    if (e < n)
        return true;
    return p != 2 && e == n && !J.empty() && J[0].eps;
}

// Graded-commutative polynomial algebra on generators of positive degree,
// truncated at D. Odd-degree generators are exterior at odd p.
class PolyAlgebra
{
public:
    using Mono = std::vector<std::pair<int, int>>;

    PolyAlgebra(int p, std::vector<int> gen_deg, int D) : p_(p), deg_(std::move(gen_deg)), D_(D)
    {
        by_degree_.assign(size_t(D + 1), {});
        Mono cur;
        add(cur, 0);
        auto rec = [&](auto&& self, int start, int used) -> void {
            for (int g = start; g < int(deg_.size()); ++g) {
                const int dg = deg_[g];
                if (used + dg > D_)
                    continue;
                const int max_e = (p_ != 2 && dg % 2) ? 1 : (D_ - used) / dg;
                for (int e = 1; e <= max_e; ++e) {
                    cur.push_back({g, e});
                    add(cur, used + e * dg);
                    self(self, g + 1, used + e * dg);
                    cur.pop_back();
                }
            }
        };
        rec(rec, 0, 0);
    }

    int unit() const { return 0; }
    int degree(int id) const { return mdeg_[id]; }
    const std::vector<int>& basis(int d) const { return by_degree_.at(d); }
    int gen_mono(int g) const { return index_.at(Mono{{g, 1}}); }

    SparseVec mul(int a, int b) const
    {
        const Mono& x = monos_[a];
        const Mono& y = monos_[b];
        if (mdeg_[a] + mdeg_[b] > D_)
            throw std::out_of_range("bar: product above the truncation");
        int sign = 1;
        if (p_ != 2) {
            // sign of sorting the odd generators of y past those of x
            for (auto [g, e] : y) {
                if (deg_[g] % 2 == 0)
                    continue;
                for (auto [h, f] : x) {
                    if (deg_[h] % 2 == 0)
                        continue;
                    if (h == g)
                        return {};
                    if (h > g && f % 2)
                        sign = -sign;
                }
            }
        }
        Mono r;
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
        return SparseVec{{index_.at(r), sign == 1 ? 1 : p_ - 1}};
    }

    SparseVec mul(const SparseVec& a, const SparseVec& b) const
    {
        SparseVec r;
        for (auto& [i, ci] : a)
            for (auto& [j, cj] : b)
                sv_add(p_, r, mul(i, j), ci * cj);
        return r;
    }

    SparseVec power(const SparseVec& a, int e) const
    {
        SparseVec r{{unit(), 1}};
        for (int k = 0; k < e; ++k)
            r = mul(r, a);
        return r;
    }

    const Mono& mono(int id) const { return monos_[id]; }

private:
    void add(const Mono& m, int d)
    {
        index_[m] = int(monos_.size());
        by_degree_[d].push_back(int(monos_.size()));
        monos_.push_back(m);
        mdeg_.push_back(d);
    }

    int p_;
    std::vector<int> deg_;
    int D_;
    std::vector<Mono> monos_;
    std::vector<int> mdeg_;
    std::map<Mono, int> index_;
    std::vector<std::vector<int>> by_degree_;
};

struct WindowAlgebra
{
    std::vector<Word> words;
    std::map<Word, int> index;
    std::unique_ptr<PolyAlgebra> poly;
};

WindowAlgebra window_algebra(int p, int n, int D, int len, int K)
{
    WindowAlgebra w;
    for (int d = 1; d <= D; ++d)
        for (auto& J : admissible_words(p, Flavor::B, d - n, n, len, -K))
            if (generator_word(p, J, n)) {
                w.index[J] = int(w.words.size());
                w.words.push_back(J);
            }
    return w;
}

void finish(WindowAlgebra& w, int p, int n, int D)
{
    std::vector<int> degs;
    for (auto& J : w.words)
        degs.push_back(word_degree(p, J) + n);
    w.poly = std::make_unique<PolyAlgebra>(p, degs, D);
}

// Generator words met when expanding K applied to the class.
void collect_words(int p, int n, const Word& K, WindowAlgebra& S)
{
    const int e = excess(p, K);
    if (e > n)
        return;
    if (generator_word(p, K, n)) {
        if (!S.index.count(K)) {
            S.index[K] = int(S.words.size());
            S.words.push_back(K);
        }
        return;
    }
    collect_words(p, n, Word(K.begin() + 1, K.end()), S);
}

// Element of the target algebra represented by the word K applied to the class.
SparseVec word_element(int p, int n, const WindowAlgebra& S, const Word& K)
{
    const int e = excess(p, K);
    if (e > n)
        return {};
    if (generator_word(p, K, n))
        return SparseVec{{S.poly->gen_mono(S.index.at(K)), 1}};
    Word rest(K.begin() + 1, K.end());
    return S.poly->power(word_element(p, n, S, rest), p);
}

using Tensor = std::vector<int>;  // s source monomials followed by one target monomial

std::vector<std::vector<int>> bar_homology(int p, int n, int D, int L, int K, int s_max)
{
    WindowAlgebra R = window_algebra(p, n, D, L, K);
    finish(R, p, n, D);
    // target: the source words together with every word their images meet
    WindowAlgebra S = window_algebra(p, n, D, L, K);
    SteenrodAlgebra alg(p, Flavor::B, BWindow{K, L + 3, K + D + 2});
    std::vector<OpElement> shifted;
    for (auto& J : R.words) {
        Word J0 = J;
        J0.push_back(Letter{0, 0});
        shifted.push_back(alg.rewrite(J0));
        for (auto& [W, c] : shifted.back().terms())
            collect_words(p, n, W, S);
    }
    finish(S, p, n, D);
    // f on generators: y = J x -> J x - J P^0 x
    std::vector<SparseVec> f_gen(R.words.size());
    for (size_t g = 0; g < R.words.size(); ++g) {
        sv_add(p, f_gen[g], word_element(p, n, S, R.words[g]));
        for (auto& [W, c] : shifted[g].terms())
            sv_add(p, f_gen[g], word_element(p, n, S, W), p - c);
    }
    std::map<int, SparseVec> f_memo;
    auto f_mono = [&](int m) -> SparseVec {
        auto it = f_memo.find(m);
        if (it != f_memo.end())
            return it->second;
        SparseVec r{{S.poly->unit(), 1}};
        for (auto [g, e] : R.poly->mono(m))
            for (int k = 0; k < e; ++k)
                r = S.poly->mul(r, f_gen[g]);
        f_memo.emplace(m, r);
        return r;
    };

    // bases of B_s in each total degree
    std::vector<std::vector<std::map<Tensor, int>>> basis(size_t(s_max + 2), std::vector<std::map<Tensor, int>>(size_t(D + 1)));
    for (int s = 0; s <= s_max + 1; ++s) {
        Tensor cur;
        auto rec = [&](auto&& self, int k, int used) -> void {
            if (k == s) {
                for (int d = used; d <= D; ++d)
                    for (int m : S.poly->basis(d - used)) {
                        cur.push_back(m);
                        auto& mp = basis[s][d];
                        mp.emplace(cur, int(mp.size()));
                        cur.pop_back();
                    }
                return;
            }
            for (int d = 1; used + d <= D; ++d)
                for (int m : R.poly->basis(d)) {
                    cur.push_back(m);
                    self(self, k + 1, used + d);
                    cur.pop_back();
                }
        };
        rec(rec, 0, 0);
    }
    // d_s : B_s -> B_{s-1}
    auto differential = [&](int s, int d) {
        const auto& src = basis[s][d];
        const auto& dst = basis[s - 1][d];
        FpMatrix m(p, int(dst.size()), int(src.size()));
        for (auto& [t, col] : src) {
            auto add_term = [&](const Tensor& u, const SparseVec& last, int c) {
                Tensor v = u;
                v.push_back(0);
                for (auto& [x, cx] : last) {
                    v.back() = x;
                    const int row = dst.at(v);
                    m(row, col) = uint8_t(Fp::add(p, m(row, col), Fp::reduce(p, (long long)c * cx)));
                }
            };
            for (int i = 1; i <= s - 1; ++i) {
                SparseVec prod = R.poly->mul(t[i - 1], t[i]);
                for (auto& [x, cx] : prod) {
                    Tensor u;
                    for (int k = 0; k < s; ++k) {
                        if (k == i - 1)
                            u.push_back(x);
                        else if (k != i)
                            u.push_back(t[k]);
                    }
                    const int sign = i % 2 ? p - 1 : 1;
                    add_term(u, SparseVec{{t[s], 1}}, Fp::mul(p, sign, cx));
                }
            }
            Tensor u(t.begin(), t.begin() + (s - 1));
            add_term(u, S.poly->mul(f_mono(t[s - 1]), SparseVec{{t[s], 1}}), s % 2 ? p - 1 : 1);
        }
        return m;
    };
    std::vector<std::vector<int>> H(size_t(s_max + 1), std::vector<int>(size_t(D + 1), 0));
    for (int d = 0; d <= D; ++d) {
        std::vector<int> rk(size_t(s_max + 2), 0);  // rank of d_s, s >= 1
        for (int s = 1; s <= s_max + 1; ++s) {
            FpMatrix m = differential(s, d);
            if (s >= 2) {
                FpMatrix prev = differential(s - 1, d);
                if (prev.rows() && m.cols() && !(prev * m).is_zero())
                    throw CochainError(fmt::format("bar: d^2 != 0 at s = {}, degree {}", s, d));
            }
            rk[s] = rank(m);
        }
        for (int s = 0; s <= s_max; ++s)
            H[s][d] = int(basis[s][d].size()) - (s ? rk[s] : 0) - rk[s + 1];
    }
    return H;
}

}  // namespace

BarReport bar_homology_check(int p, int n, int D, int L, int K, int s_max)
{
    if (n < 1 || D < 0 || L < 0 || K < 0 || s_max < 0)
        throw std::invalid_argument("bar: bad window");
    BarReport r;
    r.p = p;
    r.n = n;
    r.D = D;
    r.L = L;
    r.K = K;
    r.s_max = s_max;
    r.homology = bar_homology(p, n, D, L, K, s_max);
    r.expected = hilbert_free(p, {n}, D);
    r.concentrated = true;
    for (int s = 1; s <= s_max; ++s)
        for (int x : r.homology[s])
            if (x)
                r.concentrated = false;
    r.degree0_matches = r.homology[0] == r.expected;
    r.saturated = L > 0 && bar_homology(p, n, D, L + 1, K, s_max) == r.homology;
    return r;
}

std::string BarReport::to_text() const
{
    std::string s = fmt::format("bar p={} n={} D={} L={} K={}\n", p, n, D, L, K);
    for (size_t k = 0; k < homology.size(); ++k) {
        s += fmt::format("H_{}:", k);
        for (int x : homology[k])
            s += fmt::format(" {}", x);
        s += '\n';
    }
    s += "free:";
    for (int x : expected)
        s += fmt::format(" {}", x);
    s += '\n';
    s += fmt::format("concentrated {} degree0 {} saturated {}\n", concentrated ? "yes" : "no",
                     degree0_matches ? "yes" : "no", saturated ? "yes" : "no");
    return s;
}

}  // namespace ue2
