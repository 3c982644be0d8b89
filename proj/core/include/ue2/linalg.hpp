#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ue2 {

// Arithmetic mod a small prime. Values are kept in [0, p).
struct Fp {
    static int add(int p, int a, int b) { int c = a + b; return c >= p ? c - p : c; }
    static int sub(int p, int a, int b) { int c = a - b; return c < 0 ? c + p : c; }
    static int neg(int p, int a) { return a == 0 ? 0 : p - a; }
    static int mul(int p, int a, int b) { return (a * b) % p; }
    static int inv(int p, int a);
    static int pow(int p, int a, long long e);
    static int reduce(int p, long long a) { long long r = a % p; return int(r < 0 ? r + p : r); }
};

bool is_small_prime(int p);

class FpMatrix
{
public:
    FpMatrix() = default;
    FpMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), 0) {}

    static FpMatrix identity(int p, int n);

    int p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    uint8_t operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    uint8_t& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    std::span<const uint8_t> row(int i) const { return {a_.data() + size_t(i) * cols_, size_t(cols_)}; }
    std::span<uint8_t> row(int i) { return {a_.data() + size_t(i) * cols_, size_t(cols_)}; }

    bool is_zero() const;
    FpMatrix transpose() const;
    FpMatrix operator*(const FpMatrix& rhs) const;
    FpMatrix operator+(const FpMatrix& rhs) const;
    FpMatrix operator-(const FpMatrix& rhs) const;
    std::vector<uint8_t> apply(std::span<const uint8_t> v) const;
    FpMatrix hstack(const FpMatrix& rhs) const;
    FpMatrix vstack(const FpMatrix& rhs) const;
    FpMatrix select_rows(const std::vector<int>& idx) const;
    FpMatrix select_cols(const std::vector<int>& idx) const;

    bool operator==(const FpMatrix& rhs) const = default;

private:
    int p_ = 2;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<uint8_t> a_;
};

// Reduced row echelon form; pivots receives the pivot column of each nonzero row.
FpMatrix rref(const FpMatrix& m, std::vector<int>* pivots = nullptr);
int rank(const FpMatrix& m);
// Rows of the result form a basis of {v : m v = 0}.
FpMatrix kernel_basis(const FpMatrix& m);
// Some v with m v = b, or nullopt if the system is inconsistent.
std::optional<std::vector<uint8_t>> solve(const FpMatrix& m, std::span<const uint8_t> b);
// Solves m X = B column by column; throws if any column is inconsistent.
FpMatrix solve_matrix(const FpMatrix& m, const FpMatrix& b);

class LinAlgError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ue2
