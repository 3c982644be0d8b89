#pragma once

// Brute-force reference computations, written without the library's algorithms.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline int binom2(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    return (k & ~n) == 0 ? 1 : 0;  // Lucas at p = 2
}

inline long long binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// F_2[x_1..x_m] as exponent vectors with coefficient 1.
using Mono = std::vector<int>;
using Poly = std::map<Mono, int>;

inline void add2(Poly& p, const Mono& m)
{
    if (p.erase(m) == 0)
        p[m] = 1;
}

// Sq^i on a monomial: sum over i_1 + ... + i_m = i of prod binom(a_j, i_j).
inline Poly sq_mono(int i, const Mono& a)
{
    Poly out;
    Mono cur(a.size());
    std::function<void(size_t, int, int)> rec = [&](size_t j, int left, int coef) {
        if (j == a.size()) {
            if (left == 0 && coef)
                add2(out, cur);
            return;
        }
        for (int k = 0; k <= std::min(left, a[j]); ++k) {
            cur[j] = a[j] + k;
            rec(j + 1, left - k, coef & binom2(a[j], k));
        }
    };
    rec(0, i, 1);
    return out;
}

// Sq^{s_1} ... Sq^{s_k} applied right to left.
inline Poly sq_word(const std::vector<int>& word, const Poly& q)
{
    Poly cur = q;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        Poly next;
        for (auto& [m, c] : cur)
            for (auto& [m2, c2] : sq_mono(*it, m))
                add2(next, m2);
        cur = std::move(next);
    }
    return cur;
}

// All sequences of (eps, s) letters of total degree d (at p = 2 letters are Sq^s,
// eps = 0, s >= 1). At odd p a letter is beta^eps P^s of degree 2s(p-1) + eps, and
// a letter must be nontrivial.
struct L
{
    int eps = 0;
    int s = 0;
};

inline int letter_deg(int p, L l) { return p == 2 ? l.s : 2 * l.s * (p - 1) + l.eps; }

inline void all_sequences(int p, int d, std::vector<L>& cur, std::vector<std::vector<L>>& out)
{
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    for (int eps = 0; eps <= (p == 2 ? 0 : 1); ++eps)
        for (int s = (p == 2 ? 1 : 0); letter_deg(p, L{eps, s}) <= d; ++s) {
            if (p != 2 && s == 0 && eps == 0)
                continue;
            cur.push_back(L{eps, s});
            all_sequences(p, d - letter_deg(p, L{eps, s}), cur, out);
            cur.pop_back();
        }
}

inline bool admissible(int p, const std::vector<L>& w)
{
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (p == 2 && w[i].s < 2 * w[i + 1].s)
            return false;
        if (p != 2 && w[i].s < p * w[i + 1].s + w[i + 1].eps)
            return false;
    }
    return true;
}

inline int excess(int p, const std::vector<L>& w)
{
    if (w.empty())
        return 0;
    if (p == 2) {
        int e = w[0].s;
        for (size_t i = 1; i < w.size(); ++i)
            e -= w[i].s;
        return e;
    }
    int e = 2 * w[0].s + w[0].eps;
    for (size_t i = 1; i < w.size(); ++i)
        e -= letter_deg(p, w[i]);
    return e;
}

// Admissible words of degree d with excess <= e_max, by enumerating every sequence.
inline std::vector<std::vector<L>> admissible_words(int p, int d, int e_max)
{
    std::vector<std::vector<L>> all, out;
    std::vector<L> cur;
    all_sequences(p, d, cur, all);
    for (auto& w : all)
        if (admissible(p, w) && excess(p, w) <= e_max)
            out.push_back(w);
    return out;
}

// Dimension of the free unstable module on one class of degree n, in degree d.
inline int free_module_dim(int p, int n, int d)
{
    if (d < n)
        return 0;
    return int(admissible_words(p, d - n, n).size());
}

// p = 2: the free unstable algebra on one class of degree n is polynomial on the
// classes Sq^I i_n with e(I) < n. Hilbert series by counting multisets.
inline std::vector<long long> free_algebra_dims(int n, int D)
{
    std::vector<int> gens;
    for (int d = n; d <= D; ++d)
        for (auto& w : admissible_words(2, d - n, n - 1)) {
            (void)w;
            gens.push_back(d);
        }
    std::vector<long long> h(static_cast<size_t>(D + 1), 0);
    h[0] = 1;
    for (int g : gens)
        for (int d = g; d <= D; ++d)
            h[d] += h[d - g];
    return h;
}

inline std::vector<int> random_degrees(std::mt19937_64& rng, int count, int max_degree)
{
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::vector<int> r;
    for (int i = 0; i < count; ++i)
        r.push_back(deg(rng));
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace oracle
