#include "ue2/linalg.hpp"

#include <algorithm>
#include <bit>

namespace ue2 {

int Fp::pow(int p, int a, long long e)
{
    long long r = 1, b = reduce(p, a);
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return int(r);
}

int Fp::inv(int p, int a)
{
    if (a % p == 0)
        throw LinAlgError("inverse of zero");
    return pow(p, a, p - 2);
}

bool is_small_prime(int p)
{
    if (p < 2 || p > 251)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

FpMatrix FpMatrix::identity(int p, int n)
{
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool FpMatrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](uint8_t x) { return x == 0; });
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const
{
    if (cols_ != rhs.rows_ || p_ != rhs.p_)
        throw LinAlgError("matrix product shape mismatch");
    FpMatrix r(p_, rows_, rhs.cols_);
    std::vector<int> acc(size_t(rhs.cols_));
    for (int i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int k = 0; k < cols_; ++k) {
            int a = (*this)(i, k);
            if (!a)
                continue;
            auto br = rhs.row(k);
            for (int j = 0; j < rhs.cols_; ++j)
                acc[j] += a * br[j];
        }
        for (int j = 0; j < rhs.cols_; ++j)
            r(i, j) = uint8_t(acc[j] % p_);
    }
    return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw LinAlgError("matrix sum shape mismatch");
    FpMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = uint8_t(Fp::add(p_, a_[i], rhs.a_[i]));
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw LinAlgError("matrix difference shape mismatch");
    FpMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = uint8_t(Fp::sub(p_, a_[i], rhs.a_[i]));
    return r;
}

std::vector<uint8_t> FpMatrix::apply(std::span<const uint8_t> v) const
{
    if (int(v.size()) != cols_)
        throw LinAlgError("vector length mismatch");
    std::vector<uint8_t> r(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        int acc = 0;
        auto ri = row(i);
        for (int j = 0; j < cols_; ++j)
            acc += ri[j] * v[j];
        r[i] = uint8_t(acc % p_);
    }
    return r;
}

FpMatrix FpMatrix::hstack(const FpMatrix& rhs) const
{
    if (rows_ != rhs.rows_)
        throw LinAlgError("hstack row mismatch");
    FpMatrix r(p_, rows_, cols_ + rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        std::copy_n(row(i).begin(), cols_, r.row(i).begin());
        std::copy_n(rhs.row(i).begin(), rhs.cols_, r.row(i).begin() + cols_);
    }
    return r;
}

FpMatrix FpMatrix::vstack(const FpMatrix& rhs) const
{
    if (cols_ != rhs.cols_)
        throw LinAlgError("vstack column mismatch");
    FpMatrix r(p_, rows_ + rhs.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(rhs.a_.begin(), rhs.a_.end(), r.a_.begin() + a_.size());
    return r;
}

FpMatrix FpMatrix::select_rows(const std::vector<int>& idx) const
{
    FpMatrix r(p_, int(idx.size()), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        std::copy_n(row(idx[i]).begin(), cols_, r.row(int(i)).begin());
    return r;
}

FpMatrix FpMatrix::select_cols(const std::vector<int>& idx) const
{
    FpMatrix r(p_, rows_, int(idx.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j)
            r(i, int(j)) = (*this)(i, idx[j]);
    return r;
}

namespace {

// Bit-packed elimination for p = 2.
int rank_f2(const FpMatrix& m)
{
    const int words = (m.cols() + 63) / 64;
    std::vector<uint64_t> bits(size_t(m.rows()) * words, 0);
    for (int i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        for (int j = 0; j < m.cols(); ++j)
            if (r[j])
                bits[size_t(i) * words + j / 64] |= uint64_t(1) << (j % 64);
    }
    int rk = 0;
    for (int w = 0; w < words && rk < m.rows(); ++w) {
        for (int b = 0; b < 64 && rk < m.rows(); ++b) {
            const uint64_t mask = uint64_t(1) << b;
            int piv = -1;
            for (int i = rk; i < m.rows(); ++i)
                if (bits[size_t(i) * words + w] & mask) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            if (piv != rk)
                std::swap_ranges(bits.begin() + size_t(piv) * words, bits.begin() + size_t(piv + 1) * words,
                                 bits.begin() + size_t(rk) * words);
            const uint64_t* pr = bits.data() + size_t(rk) * words;
            for (int i = rk + 1; i < m.rows(); ++i) {
                uint64_t* ri = bits.data() + size_t(i) * words;
                if (ri[w] & mask)
                    for (int k = w; k < words; ++k)
                        ri[k] ^= pr[k];
            }
            ++rk;
        }
    }
    return rk;
}

}  // namespace

FpMatrix rref(const FpMatrix& m, std::vector<int>* pivots)
{
    const int p = m.p();
    FpMatrix r = m;
    std::vector<int> piv;
    int row = 0;
    for (int c = 0; c < r.cols() && row < r.rows(); ++c) {
        int sel = -1;
        for (int i = row; i < r.rows(); ++i)
            if (r(i, c)) {
                sel = i;
                break;
            }
        if (sel < 0)
            continue;
        if (sel != row)
            std::swap_ranges(r.row(sel).begin(), r.row(sel).end(), r.row(row).begin());
        int iv = Fp::inv(p, r(row, c));
        if (iv != 1)
            for (auto& x : r.row(row))
                x = uint8_t(x * iv % p);
        auto pr = r.row(row);
        for (int i = 0; i < r.rows(); ++i) {
            if (i == row || !r(i, c))
                continue;
            int f = p - r(i, c);
            auto ri = r.row(i);
            for (int j = c; j < r.cols(); ++j)
                if (pr[j])
                    ri[j] = uint8_t((ri[j] + f * pr[j]) % p);
        }
        piv.push_back(c);
        ++row;
    }
    if (pivots)
        *pivots = std::move(piv);
    return r;
}

int rank(const FpMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    if (m.p() == 2)
        return rank_f2(m);
    std::vector<int> piv;
    // Eliminate on the smaller side.
    if (m.rows() > m.cols())
        rref(m.transpose(), &piv);
    else
        rref(m, &piv);
    return int(piv.size());
}

FpMatrix kernel_basis(const FpMatrix& m)
{
    std::vector<int> piv;
    FpMatrix r = rref(m, &piv);
    const int p = m.p();
    std::vector<bool> is_piv(size_t(m.cols()), false);
    for (int c : piv)
        is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_piv[c])
            free_cols.push_back(c);
    FpMatrix k(p, int(free_cols.size()), m.cols());
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        k(int(f), fc) = 1;
        for (size_t i = 0; i < piv.size(); ++i)
            k(int(f), piv[i]) = uint8_t(Fp::neg(p, r(int(i), fc)));
    }
    return k;
}

std::optional<std::vector<uint8_t>> solve(const FpMatrix& m, std::span<const uint8_t> b)
{
    if (int(b.size()) != m.rows())
        throw LinAlgError("solve: right-hand side length mismatch");
    FpMatrix aug(m.p(), m.rows(), 1);
    for (int i = 0; i < m.rows(); ++i)
        aug(i, 0) = b[i];
    std::vector<int> piv;
    FpMatrix r = rref(m.hstack(aug), &piv);
    std::vector<uint8_t> x(size_t(m.cols()), 0);
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == m.cols())
            return std::nullopt;
        x[piv[i]] = r(int(i), m.cols());
    }
    return x;
}

FpMatrix solve_matrix(const FpMatrix& m, const FpMatrix& b)
{
    if (b.rows() != m.rows())
        throw LinAlgError("solve_matrix: row mismatch");
    std::vector<int> piv;
    FpMatrix r = rref(m.hstack(b), &piv);
    FpMatrix x(m.p(), m.cols(), b.cols());
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= m.cols())
            throw LinAlgError("solve_matrix: inconsistent system");
        for (int j = 0; j < b.cols(); ++j)
            x(piv[i], j) = r(int(i), m.cols() + j);
    }
    return x;
}

}  // namespace ue2
