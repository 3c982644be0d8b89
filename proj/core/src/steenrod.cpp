#include "ue2/steenrod.hpp"

#include "ue2/linalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace ue2 {

Word sq_word(std::initializer_list<int> s)
{
    Word w;
    for (int x : s)
        w.push_back(Letter{x, 0});
    return w;
}

int letter_degree(int p, Letter l)
{
    return p == 2 ? l.s : 2 * l.s * (p - 1) + l.eps;
}

int word_degree(int p, const Word& w)
{
    int d = 0;
    for (auto l : w)
        d += letter_degree(p, l);
    return d;
}

int excess(int p, const Word& w)
{
    if (w.empty())
        return 0;
    int e = p == 2 ? w[0].s : 2 * w[0].s + w[0].eps;
    for (size_t k = 1; k < w.size(); ++k)
        e -= letter_degree(p, w[k]);
    return e;
}

bool is_admissible(int p, const Word& w)
{
    for (size_t k = 1; k < w.size(); ++k)
        if (w[k - 1].s < p * w[k].s + w[k].eps)
            return false;
    return true;
}

int binomial_mod(int p, long long n, long long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    int r = 1;
    while (n > 0 || k > 0) {
        long long nd = n % p, kd = k % p;
        if (kd > nd)
            return 0;
        // small binomial by the multiplicative formula mod p
        long long num = 1, den = 1;
        for (long long i = 0; i < kd; ++i) {
            num = num * ((nd - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        r = int(r * num % p * Fp::inv(p, int(den)) % p);
        n /= p;
        k /= p;
    }
    return r;
}

OpElement OpElement::word(int p, Flavor f, Word w, int c)
{
    OpElement x(p, f);
    x.add(w, c);
    return x;
}

void OpElement::add(const Word& w, int c)
{
    c = Fp::reduce(p_, c);
    if (!c)
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second = Fp::add(p_, it->second, c);
        if (!it->second)
            terms_.erase(it);
    }
}

void OpElement::add(const OpElement& o, int c)
{
    for (auto& [w, a] : o.terms_)
        add(w, a * c);
}

SteenrodAlgebra::SteenrodAlgebra(int p, Flavor f, BWindow w) : p_(p), flavor_(f), window_(w)
{
    if (!is_small_prime(p))
        throw std::invalid_argument(fmt::format("not a supported prime: {}", p));
}

bool SteenrodAlgebra::normalize(Word& w) const
{
    if (flavor_ == Flavor::B)
        return true;
    Word out;
    bool pending_beta = false;
    for (auto l : w) {
        if (p_ == 2)
            l.eps = 0;
        if (pending_beta) {
            if (l.eps)
                return false;
            l.eps = 1;
            pending_beta = false;
        }
        if (l.s == 0) {
            if (l.eps)
                pending_beta = true;
            continue;
        }
        if (l.s < 0)
            throw std::invalid_argument("negative operation index in flavor A");
        out.push_back(l);
    }
    if (pending_beta)
        out.push_back(Letter{0, 1});
    w = std::move(out);
    return true;
}

void SteenrodAlgebra::check_window(const Word& w) const
{
    if (flavor_ != Flavor::B)
        return;
    if (int(w.size()) > window_.L)
        throw WindowExhausted(fmt::format("word {} exceeds length bound {}", format_word(p_, w), window_.L));
    for (auto l : w)
        if (l.s < -window_.K || l.s > window_.top())
            throw WindowExhausted(fmt::format("word {} leaves index window [-{},{}]", format_word(p_, w), window_.K, window_.top()));
}

Terms SteenrodAlgebra::adem_pair(Letter l1, Letter l2) const
{
    Terms out;
    const int p = p_;
    const long long a = l1.s, b = l2.s;
    const bool lower_only = flavor_ == Flavor::A;
    auto put = [&](Word w, int c) {
        c = Fp::reduce(p, c);
        if (!c)
            return;
        auto& slot = out[w];
        slot = Fp::add(p, slot, c);
        if (!slot)
            out.erase(w);
    };
    if (p == 2) {
        // Sq^a Sq^b = sum_j C(b-j-1, a-2j) Sq^{a+b-j} Sq^j,  a < 2b
        long long jlo = a - b + 1, jhi = a >= 0 ? a / 2 : -((-a + 1) / 2);
        if (lower_only)
            jlo = std::max(jlo, 0LL);
        for (long long j = jlo; j <= jhi; ++j)
            if (binomial_mod(2, b - j - 1, a - 2 * j))
                put(Word{Letter{int(a + b - j), 0}, Letter{int(j), 0}}, 1);
        return out;
    }
    auto sgn = [](long long e) { return (e % 2 == 0) ? 1 : -1; };
    auto floordiv = [](long long x, long long y) { return x >= 0 ? x / y : -((-x + y - 1) / y); };
    const long long jhi = floordiv(a, p);
    long long jlo = a - (p - 1) * b - 2;
    if (lower_only)
        jlo = std::max(jlo, 0LL);
    // Prefix a Bockstein onto the first letter; a doubled Bockstein vanishes.
    auto with_beta = [&](Word w, int c) {
        if (l1.eps) {
            if (w[0].eps)
                return;
            w[0].eps = 1;
        }
        put(std::move(w), c);
    };
    if (!l2.eps) {
        // P^a P^b, a < pb
        for (long long j = jlo; j <= jhi; ++j) {
            int c = binomial_mod(p, (p - 1) * (b - j) - 1, a - p * j);
            if (c)
                with_beta(Word{Letter{int(a + b - j), 0}, Letter{int(j), 0}}, sgn(a + j) * c);
        }
    } else {
        // P^a beta P^b, a <= pb
        for (long long j = jlo; j <= jhi; ++j) {
            int c1 = binomial_mod(p, (p - 1) * (b - j), a - p * j);
            if (c1)
                with_beta(Word{Letter{int(a + b - j), 1}, Letter{int(j), 0}}, sgn(a + j) * c1);
            int c2 = binomial_mod(p, (p - 1) * (b - j) - 1, a - p * j - 1);
            if (c2)
                with_beta(Word{Letter{int(a + b - j), 0}, Letter{int(j), 1}}, sgn(a + j + 1) * c2);
        }
    }
    return out;
}

const Terms& SteenrodAlgebra::prepend(Letter l, const Word& r)
{
    auto key = std::make_pair(l, r);
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    struct DepthGuard
    {
        int& d;
        explicit DepthGuard(int& x) : d(x) { ++d; }
        ~DepthGuard() { --d; }
    } guard(depth_);
    if (depth_ > 4096)
        throw WindowExhausted("Adem rewriting did not terminate within the recursion bound");
    Terms out;
    auto put = [&](const Word& w, int c) {
        c = Fp::reduce(p_, c);
        if (!c)
            return;
        auto& slot = out[w];
        slot = Fp::add(p_, slot, c);
        if (!slot)
            out.erase(w);
    };
    Word lw{l};
    lw.insert(lw.end(), r.begin(), r.end());
    check_window(lw);
    if (flavor_ == Flavor::A && l.s == 0) {
        Word w = lw;
        if (normalize(w))
            put(w, 1);
    } else if (r.empty() || l.s >= p_ * r[0].s + r[0].eps) {
        put(lw, 1);
    } else {
        Word rest(r.begin() + 1, r.end());
        for (auto& [pair, c] : adem_pair(l, r[0])) {
            Letter m1 = pair[0], m2 = pair[1];
            // prepend(m2, rest) may grow memo_; copy before iterating.
            Terms inner = prepend(m2, rest);
            for (auto& [w, c2] : inner) {
                Terms outer = prepend(m1, w);
                for (auto& [w2, c3] : outer)
                    put(w2, c * c2 * c3);
            }
        }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

OpElement SteenrodAlgebra::rewrite(const Word& w0)
{
    Word w = w0;
    OpElement res(p_, flavor_);
    if (!normalize(w))
        return res;
    check_window(w);
    if (is_admissible(p_, w)) {
        res.add(w, 1);
        return res;
    }
    // Rewrite right to left: the suffix is kept admissible.
    Terms cur{{Word{}, 1}};
    for (size_t i = w.size(); i-- > 0;) {
        Terms next;
        for (auto& [r, c] : cur) {
            Terms t = prepend(w[i], r);
            for (auto& [r2, c2] : t) {
                auto& slot = next[r2];
                slot = Fp::add(p_, slot, Fp::mul(p_, c, c2));
                if (!slot)
                    next.erase(r2);
            }
        }
        cur = std::move(next);
    }
    for (auto& [r, c] : cur)
        res.add(r, c);
    return res;
}

OpElement SteenrodAlgebra::rewrite(const OpElement& x)
{
    OpElement res(p_, flavor_);
    for (auto& [w, c] : x.terms())
        res.add(rewrite(w), c);
    return res;
}

OpElement SteenrodAlgebra::multiply(const OpElement& a, const OpElement& b)
{
    if (a.flavor() != b.flavor() || a.p() != b.p())
        throw std::invalid_argument("multiply: flavor or prime mismatch");
    OpElement res(p_, flavor_);
    for (auto& [wa, ca] : a.terms())
        for (auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            res.add(rewrite(w), ca * cb);
        }
    return res;
}

OpElement adem_rewrite(const OpElement& x, BWindow w)
{
    SteenrodAlgebra alg(x.p(), x.flavor(), w);
    return alg.rewrite(x);
}

OpElement multiply(const OpElement& a, const OpElement& b, BWindow w)
{
    SteenrodAlgebra alg(a.p(), a.flavor(), w);
    return alg.multiply(a, b);
}

namespace {

struct Cursor
{
    std::string_view s;
    size_t i = 0;
    void ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool eat(std::string_view t)
    {
        ws();
        if (s.substr(i, t.size()) == t) {
            i += t.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(std::string_view what) const
    {
        throw ParseError(fmt::format("parse error at offset {} in '{}': {}", i, s, what));
    }
    long long integer()
    {
        ws();
        size_t st = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+'))
            ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == digits)
            fail("expected integer");
        return std::stoll(std::string(s.substr(st, i - st)));
    }
};

}  // namespace

OpElement parse_op(std::string_view text, int p)
{
    Cursor cur{text};
    Flavor f = Flavor::A;
    if (cur.eat("A:"))
        f = Flavor::A;
    else if (cur.eat("B:"))
        f = Flavor::B;
    SteenrodAlgebra alg(p, f);
    OpElement res(p, f);
    cur.ws();
    if (cur.eat("0")) {
        cur.ws();
        if (cur.i != text.size())
            cur.fail("trailing characters after 0");
        return res;
    }
    for (;;) {
        long long coef = 1;
        cur.ws();
        if (cur.i < text.size() && std::isdigit(static_cast<unsigned char>(text[cur.i]))) {
            coef = cur.integer();
            if (!cur.eat("*"))
                cur.fail("expected '*' after coefficient");
        }
        bool sq = cur.eat("Sq[");
        if (!sq && !cur.eat("P["))
            cur.fail("expected Sq[ or P[");
        if (sq && p != 2)
            cur.fail("Sq syntax requires p = 2");
        if (!sq && p == 2)
            cur.fail("P syntax requires an odd prime");
        Word w;
        if (!cur.eat("]")) {
            for (;;) {
                Letter l;
                if (cur.eat("b")) {
                    if (p == 2)
                        cur.fail("Bockstein prefix requires an odd prime");
                    l.eps = 1;
                }
                l.s = int(cur.integer());
                if (f == Flavor::A && l.s < 0)
                    cur.fail("negative index in flavor A");
                w.push_back(l);
                if (cur.eat("]"))
                    break;
                if (!cur.eat(","))
                    cur.fail("expected ',' or ']'");
            }
        }
        if (alg.normalize(w))
            res.add(w, int(Fp::reduce(p, coef)));
        cur.ws();
        if (cur.i == text.size())
            break;
        if (!cur.eat("+"))
            cur.fail("expected '+'");
    }
    return res;
}

std::string format_word(int p, const Word& w)
{
    std::string s = p == 2 ? "Sq[" : "P[";
    for (size_t k = 0; k < w.size(); ++k) {
        if (k)
            s += ',';
        if (w[k].eps)
            s += 'b';
        s += std::to_string(w[k].s);
    }
    s += ']';
    return s;
}

std::string format_op(const OpElement& x)
{
    if (x.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : x.terms()) {
        if (!first)
            s += " + ";
        first = false;
        if (c != 1)
            s += fmt::format("{}*", c);
        s += format_word(x.p(), w);
    }
    return s;
}

namespace {

int poly_degree(const Monomial& m)
{
    int d = 0;
    for (int e : m)
        d += e;
    return d;
}

void toggle(F2Poly& q, const Monomial& m)
{
    auto [it, inserted] = q.insert(m);
    if (!inserted)
        q.erase(it);
}

// Sq^k on a monomial: sum over j with |j| = k of prod C(a_i, j_i) x^{a+j}.
void sq_monomial(int k, const Monomial& a, size_t i, Monomial& cur, int remaining, F2Poly& out)
{
    if (i == a.size()) {
        if (remaining == 0)
            toggle(out, cur);
        return;
    }
    for (int j = 0; j <= std::min(remaining, a[i]); ++j) {
        if ((a[i] & j) != j)  // Lucas: C(a, j) odd iff j is a bit-subset of a
            continue;
        cur[i] = a[i] + j;
        sq_monomial(k, a, i + 1, cur, remaining - j, out);
    }
}

}  // namespace

F2Poly act_polynomial(const Word& w, const F2Poly& q, int degree_cap)
{
    F2Poly cur = q;
    for (size_t idx = w.size(); idx-- > 0;) {
        int k = w[idx].s;
        if (k < 0)
            throw std::invalid_argument("act_polynomial: negative square");
        F2Poly next;
        for (auto& m : cur) {
            if (poly_degree(m) + k > degree_cap)
                throw DegreeCapExceeded(fmt::format("degree {} exceeds cap {}", poly_degree(m) + k, degree_cap));
            Monomial c = m;
            sq_monomial(k, m, 0, c, k, next);
        }
        cur = std::move(next);
    }
    return cur;
}

F2Poly act_polynomial(const OpElement& x, const F2Poly& q, int degree_cap)
{
    if (x.p() != 2 || x.flavor() != Flavor::A)
        throw std::invalid_argument("act_polynomial requires p = 2 and flavor A");
    F2Poly res;
    for (auto& [w, c] : x.terms())
        if (c % 2)
            for (auto& m : act_polynomial(w, q, degree_cap))
                toggle(res, m);
    return res;
}

}  // namespace ue2
