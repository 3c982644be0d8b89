#include "ue2/fp_tower.hpp"

#include <fmt/format.h>

#include <map>
#include <mutex>
#include <sstream>
#include <string_view>

namespace ue2 {

namespace detail {
extern const std::string_view kTowerPolynomialTable;
}

namespace {

struct LevelData
{
    FieldDescriptor fd;
    FpMatrix frob;   // columns: coordinates of (x^j)^p
    bool frob_ready = false;
    FpMatrix embed;  // level -> level + 1
    bool embed_ready = false;
};

struct TowerCache
{
    std::mutex mu;
    std::map<std::pair<int, int>, LevelData> levels;
    bool table_loaded = false;
    std::map<std::pair<int, int>, std::vector<uint8_t>> table;  // (p, degree) -> poly
};

TowerCache& cache()
{
    static TowerCache c;
    return c;
}

void load_table(TowerCache& c)
{
    if (c.table_loaded)
        return;
    std::istringstream in{std::string(detail::kTowerPolynomialTable)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        int p, deg;
        if (!(ls >> p >> deg))
            continue;
        std::vector<uint8_t> poly;
        int x;
        while (ls >> x)
            poly.push_back(uint8_t(x));
        if (int(poly.size()) != deg + 1 || poly.back() != 1)
            throw std::runtime_error(fmt::format("malformed tower polynomial for p={} degree={}", p, deg));
        c.table[{p, deg}] = std::move(poly);
    }
    c.table_loaded = true;
}

LevelData& level_data_locked(TowerCache& c, int p, int level)
{
    if (level < 1 || level > kMaxTowerLevel)
        throw TowerExhausted();
    auto key = std::make_pair(p, level);
    auto it = c.levels.find(key);
    if (it != c.levels.end())
        return it->second;
    load_table(c);
    int deg = factorial_degree(level);
    auto t = c.table.find({p, deg});
    if (t == c.table.end())
        throw std::runtime_error(fmt::format("no defining polynomial for p={} level={}", p, level));
    LevelData ld;
    ld.fd = FieldDescriptor{p, level, deg, t->second};
    return c.levels.emplace(key, std::move(ld)).first->second;
}

void check_same(const TowerElem& a, const TowerElem& b)
{
    if (a.p != b.p || a.level != b.level)
        throw std::invalid_argument("tower elements at different levels");
}

TowerElem mul_raw(const TowerElem& a, const TowerElem& b, const std::vector<uint8_t>& f)
{
    const int p = a.p, n = int(a.c.size());
    std::vector<int> prod(size_t(2 * n - 1), 0);
    for (int i = 0; i < n; ++i) {
        if (!a.c[i])
            continue;
        for (int j = 0; j < n; ++j)
            prod[i + j] += a.c[i] * b.c[j];
    }
    for (auto& x : prod)
        x %= p;
    for (int d = 2 * n - 2; d >= n; --d) {
        int coef = prod[d];
        if (!coef)
            continue;
        prod[d] = 0;
        // x^n = -sum f_i x^i
        for (int i = 0; i < n; ++i)
            if (f[i])
                prod[d - n + i] = (prod[d - n + i] + (p - f[i]) * coef) % p;
    }
    TowerElem r{p, a.level, std::vector<uint8_t>(size_t(n))};
    for (int i = 0; i < n; ++i)
        r.c[i] = uint8_t(prod[i]);
    return r;
}

const FieldDescriptor& fd_of(const TowerElem& a) { return field_descriptor(a.p, a.level); }

const FpMatrix& frob_matrix(int p, int level)
{
    auto& c = cache();
    {
        std::lock_guard lk(c.mu);
        auto& ld = level_data_locked(c, p, level);
        if (ld.frob_ready)
            return ld.frob;
    }
    const int n = factorial_degree(level);
    FpMatrix m(p, n, n);
    TowerElem xj = tower_one(p, level);
    TowerElem x = tower_gen(p, level);
    for (int j = 0; j < n; ++j) {
        TowerElem y = pow(xj, (unsigned long long)p);
        for (int i = 0; i < n; ++i)
            m(i, j) = y.c[i];
        xj = xj * x;
    }
    std::lock_guard lk(c.mu);
    auto& ld = level_data_locked(c, p, level);
    if (!ld.frob_ready) {
        ld.frob = std::move(m);
        ld.frob_ready = true;
    }
    return ld.frob;
}

TowerElem apply_fp(const FpMatrix& m, const TowerElem& x, int level)
{
    auto v = m.apply(x.c);
    return TowerElem{x.p, level, std::move(v)};
}

// Root of the level-k defining polynomial inside level k + 1.
TowerElem find_root(int p, int level)
{
    const auto& f = field_descriptor(p, level).poly;
    const int n = factorial_degree(level);
    const int up = level + 1;
    const int m = factorial_degree(up) / n;
    auto eval = [&](const TowerElem& g) {
        TowerElem acc = tower_zero(p, up);
        for (int i = n; i >= 0; --i)
            acc = acc * g + tower_scalar(p, up, f[i]);
        return acc;
    };
    if (n == 1) {
        TowerElem r = tower_scalar(p, up, Fp::neg(p, f[0]));
        return r;
    }
    std::mt19937_64 rng(0x5eed0000ULL + uint64_t(p) * 131 + uint64_t(level));
    for (int attempt = 0; attempt < 64; ++attempt) {
        TowerElem y = tower_random(p, up, rng);
        if (y.is_zero())
            continue;
        // norm to the degree-n subfield: prod_i y^{p^{n i}}
        TowerElem beta = tower_one(p, up);
        TowerElem yi = y;
        for (int i = 0; i < m; ++i) {
            beta = beta * yi;
            for (int r = 0; r < n; ++r)
                yi = frobenius(yi);
        }
        TowerElem g = beta;
        const TowerElem one = tower_one(p, up);
        for (;;) {
            if (eval(g).is_zero())
                return g;
            if (g == one)
                break;
            g = g * beta;
        }
    }
    throw std::runtime_error(fmt::format("failed to embed level {} into level {} at p={}", level, up, p));
}

}  // namespace

int factorial_degree(int level)
{
    int d = 1;
    for (int i = 2; i <= level; ++i)
        d *= i;
    return d;
}

const FieldDescriptor& field_descriptor(int p, int level)
{
    auto& c = cache();
    std::lock_guard lk(c.mu);
    return level_data_locked(c, p, level).fd;
}

bool TowerElem::is_zero() const
{
    for (auto x : c)
        if (x)
            return false;
    return true;
}

TowerElem tower_zero(int p, int level)
{
    return TowerElem{p, level, std::vector<uint8_t>(size_t(field_descriptor(p, level).degree), 0)};
}

TowerElem tower_scalar(int p, int level, int a)
{
    TowerElem r = tower_zero(p, level);
    r.c[0] = uint8_t(Fp::reduce(p, a));
    return r;
}

TowerElem tower_one(int p, int level) { return tower_scalar(p, level, 1); }

TowerElem tower_gen(int p, int level)
{
    TowerElem r = tower_zero(p, level);
    if (r.c.size() == 1) {
        // level 1 is F_p = F_p[x]/(x); x is 0
        return r;
    }
    r.c[1] = 1;
    return r;
}

TowerElem tower_random(int p, int level, std::mt19937_64& rng)
{
    TowerElem r = tower_zero(p, level);
    std::uniform_int_distribution<int> d(0, p - 1);
    for (auto& x : r.c)
        x = uint8_t(d(rng));
    return r;
}

TowerElem operator+(const TowerElem& a, const TowerElem& b)
{
    check_same(a, b);
    TowerElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = uint8_t(Fp::add(a.p, a.c[i], b.c[i]));
    return r;
}

TowerElem operator-(const TowerElem& a, const TowerElem& b)
{
    check_same(a, b);
    TowerElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = uint8_t(Fp::sub(a.p, a.c[i], b.c[i]));
    return r;
}

TowerElem operator-(const TowerElem& a)
{
    TowerElem r = a;
    for (auto& x : r.c)
        x = uint8_t(Fp::neg(a.p, x));
    return r;
}

TowerElem operator*(const TowerElem& a, const TowerElem& b)
{
    check_same(a, b);
    return mul_raw(a, b, fd_of(a).poly);
}

TowerElem scale(const TowerElem& a, int s)
{
    TowerElem r = a;
    s = Fp::reduce(a.p, s);
    for (auto& x : r.c)
        x = uint8_t(Fp::mul(a.p, x, s));
    return r;
}

TowerElem pow(const TowerElem& a, unsigned long long e)
{
    TowerElem r = tower_one(a.p, a.level), b = a;
    const auto& f = fd_of(a).poly;
    while (e) {
        if (e & 1)
            r = mul_raw(r, b, f);
        e >>= 1;
        if (e)
            b = mul_raw(b, b, f);
    }
    return r;
}

TowerElem inverse(const TowerElem& a)
{
    if (a.is_zero())
        throw std::domain_error("inverse of zero tower element");
    const int n = int(a.c.size());
    // Solve (mult by a) y = 1.
    FpMatrix m(a.p, n, n);
    TowerElem xj = tower_one(a.p, a.level), x = tower_gen(a.p, a.level);
    for (int j = 0; j < n; ++j) {
        TowerElem col = a * xj;
        for (int i = 0; i < n; ++i)
            m(i, j) = col.c[i];
        xj = xj * x;
    }
    auto one = tower_one(a.p, a.level);
    auto y = solve(m, one.c);
    return TowerElem{a.p, a.level, *y};
}

TowerElem frobenius(const TowerElem& x)
{
    if (x.c.size() == 1)
        return x;
    return apply_fp(frob_matrix(x.p, x.level), x, x.level);
}

const FpMatrix& embedding_matrix(int p, int level)
{
    auto& c = cache();
    {
        std::lock_guard lk(c.mu);
        auto& ld = level_data_locked(c, p, level);
        if (ld.embed_ready)
            return ld.embed;
        level_data_locked(c, p, level + 1);
    }
    TowerElem r = find_root(p, level);
    const int n = factorial_degree(level), N = factorial_degree(level + 1);
    FpMatrix m(p, N, n);
    TowerElem rj = tower_one(p, level + 1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < N; ++i)
            m(i, j) = rj.c[i];
        rj = rj * r;
    }
    std::lock_guard lk(c.mu);
    auto& ld = level_data_locked(c, p, level);
    if (!ld.embed_ready) {
        ld.embed = std::move(m);
        ld.embed_ready = true;
    }
    return ld.embed;
}

TowerElem embed(const TowerElem& x, int level)
{
    if (level < x.level)
        throw std::invalid_argument("embed: target level below source level");
    if (level > kMaxTowerLevel)
        throw TowerExhausted();
    TowerElem y = x;
    while (y.level < level)
        y = apply_fp(embedding_matrix(y.p, y.level), y, y.level + 1);
    return y;
}

bool in_prime_field(const TowerElem& x)
{
    for (size_t i = 1; i < x.c.size(); ++i)
        if (x.c[i])
            return false;
    return true;
}

FpMatrix one_minus_frobenius_matrix(int p, int level)
{
    const int n = factorial_degree(level);
    if (n == 1)
        return FpMatrix(p, 1, 1);
    return FpMatrix::identity(p, n) - frob_matrix(p, level);
}

ArtinSchreierSolution artin_schreier_solve(const TowerElem& b)
{
    for (int lv = b.level; lv <= kMaxTowerLevel; ++lv) {
        TowerElem bb = embed(b, lv);
        auto x = solve(one_minus_frobenius_matrix(b.p, lv), bb.c);
        if (x)
            return {TowerElem{b.p, lv, std::move(*x)}, lv};
    }
    throw TowerExhausted();
}

SemilinearMap SemilinearMap::scalar(int p, int level, int dim, TowerElem a, TowerElem b)
{
    SemilinearMap t;
    t.p_ = p;
    t.level_ = level;
    t.dim_ = dim;
    t.scalar_ = true;
    t.a_ = embed(a, level);
    t.b_ = embed(b, level);
    return t;
}

SemilinearMap SemilinearMap::general(int p, int level, std::vector<std::vector<TowerElem>> l0,
                                     std::vector<std::vector<TowerElem>> l1)
{
    const size_t m = l0.size();
    if (l1.size() != m)
        throw std::invalid_argument("semilinear map: dimension mismatch");
    for (size_t i = 0; i < m; ++i)
        if (l0[i].size() != m || l1[i].size() != m)
            throw std::invalid_argument("semilinear map: dimension mismatch");
    SemilinearMap t;
    t.p_ = p;
    t.level_ = level;
    t.dim_ = int(m);
    t.scalar_ = false;
    for (auto* mat : {&l0, &l1})
        for (auto& row : *mat)
            for (auto& e : row)
                e = embed(e, level);
    t.l0_ = std::move(l0);
    t.l1_ = std::move(l1);
    return t;
}

std::vector<TowerElem> SemilinearMap::apply(const std::vector<TowerElem>& v) const
{
    if (int(v.size()) != dim_)
        throw std::invalid_argument("semilinear map: vector length mismatch");
    std::vector<TowerElem> r;
    r.reserve(v.size());
    if (scalar_) {
        for (auto& x : v)
            r.push_back(a_ * x + b_ * frobenius(x));
        return r;
    }
    std::vector<TowerElem> fv;
    for (auto& x : v)
        fv.push_back(frobenius(x));
    for (int i = 0; i < dim_; ++i) {
        TowerElem acc = tower_zero(p_, level_);
        for (int j = 0; j < dim_; ++j)
            acc = acc + l0_[i][j] * v[j] + l1_[i][j] * fv[j];
        r.push_back(acc);
    }
    return r;
}

FpMatrix SemilinearMap::fp_matrix() const
{
    const int n = factorial_degree(level_);
    const int N = dim_ * n;
    FpMatrix m(p_, N, N);
    std::vector<TowerElem> v(size_t(dim_), tower_zero(p_, level_));
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < n; ++j) {
            v[i].c[j] = 1;
            auto img = flatten(apply(v));
            for (int r = 0; r < N; ++r)
                m(r, i * n + j) = img[r];
            v[i].c[j] = 0;
        }
    }
    return m;
}

namespace {

KernelCokernel kc_of(const FpMatrix& a)
{
    KernelCokernel kc;
    kc.kernel = kernel_basis(a);
    kc.kernel_dim = kc.kernel.rows();
    std::vector<int> piv;
    rref(a.transpose(), &piv);
    std::vector<bool> used(size_t(a.rows()), false);
    for (int c : piv)
        used[c] = true;
    // Standard vectors off the pivot coordinates of rref(a^T) span a complement of the image.
    kc.cokernel = FpMatrix(a.p(), a.rows() - int(piv.size()), a.rows());
    int r = 0;
    for (int i = 0; i < a.rows(); ++i)
        if (!used[i])
            kc.cokernel(r++, i) = 1;
    kc.cokernel_dim = kc.cokernel.rows();
    return kc;
}

}  // namespace

KernelCokernel semilinear_kernel_cokernel(const SemilinearMap& t)
{
    if (t.dim() == 0) {
        KernelCokernel kc;
        kc.kernel = FpMatrix(t.p(), 0, 0);
        kc.cokernel = FpMatrix(t.p(), 0, 0);
        return kc;
    }
    if (!t.is_scalar())
        return kc_of(t.fp_matrix());
    // a + b Frob acts on each coordinate by the same block
    const int n = factorial_degree(t.level()), m = t.dim();
    KernelCokernel blk = kc_of(SemilinearMap::scalar(t.p(), t.level(), 1, t.scalar_a(), t.scalar_b()).fp_matrix());
    KernelCokernel kc;
    kc.kernel = FpMatrix(t.p(), blk.kernel_dim * m, n * m);
    kc.cokernel = FpMatrix(t.p(), blk.cokernel_dim * m, n * m);
    for (int i = 0; i < m; ++i) {
        for (int r = 0; r < blk.kernel_dim; ++r)
            for (int j = 0; j < n; ++j)
                kc.kernel(i * blk.kernel_dim + r, i * n + j) = blk.kernel(r, j);
        for (int r = 0; r < blk.cokernel_dim; ++r)
            for (int j = 0; j < n; ++j)
                kc.cokernel(i * blk.cokernel_dim + r, i * n + j) = blk.cokernel(r, j);
    }
    kc.kernel_dim = kc.kernel.rows();
    kc.cokernel_dim = kc.cokernel.rows();
    return kc;
}

std::vector<uint8_t> flatten(const std::vector<TowerElem>& v)
{
    std::vector<uint8_t> r;
    for (auto& x : v)
        r.insert(r.end(), x.c.begin(), x.c.end());
    return r;
}

std::vector<TowerElem> unflatten(int p, int level, const std::vector<uint8_t>& c)
{
    const int n = factorial_degree(level);
    if (c.size() % size_t(n))
        throw std::invalid_argument("unflatten: length not a multiple of the field degree");
    std::vector<TowerElem> r;
    for (size_t i = 0; i < c.size(); i += size_t(n))
        r.push_back(TowerElem{p, level, std::vector<uint8_t>(c.begin() + long(i), c.begin() + long(i) + n)});
    return r;
}

TowerMatrix::TowerMatrix(int p, int level, int rows, int cols)
    : p_(p), level_(level), rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), tower_zero(p, level))
{
}

TowerMatrix TowerMatrix::from_fp(const FpMatrix& m, int level)
{
    TowerMatrix t(m.p(), level, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            t(i, j) = tower_scalar(m.p(), level, m(i, j));
    return t;
}

int rank(const TowerMatrix& m0)
{
    TowerMatrix m = m0;
    int row = 0;
    for (int c = 0; c < m.cols_ && row < m.rows_; ++c) {
        int sel = -1;
        for (int i = row; i < m.rows_; ++i)
            if (!m(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0)
            continue;
        for (int j = 0; j < m.cols_; ++j)
            std::swap(m(sel, j), m(row, j));
        TowerElem iv = inverse(m(row, c));
        for (int i = row + 1; i < m.rows_; ++i) {
            if (m(i, c).is_zero())
                continue;
            TowerElem f = m(i, c) * iv;
            for (int j = c; j < m.cols_; ++j)
                m(i, j) = m(i, j) - f * m(row, j);
        }
        ++row;
    }
    return row;
}

}  // namespace ue2
