#pragma once

#include "ue2/linalg.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace ue2 {

constexpr int kMaxTowerLevel = 4;

class TowerExhausted : public std::runtime_error
{
public:
    TowerExhausted() : std::runtime_error("tower exhausted") {}
};

struct FieldDescriptor
{
    int p = 2;
    int level = 1;
    int degree = 1;               // level!
    std::vector<uint8_t> poly;    // monic, constant term first, length degree + 1
};

// Element of F_{p^{k!}} in the power basis of the level-k defining polynomial.
struct TowerElem
{
    int p = 2;
    int level = 1;
    std::vector<uint8_t> c;

    bool is_zero() const;
    bool operator==(const TowerElem&) const = default;
    auto operator<=>(const TowerElem&) const = default;
};

int factorial_degree(int level);
const FieldDescriptor& field_descriptor(int p, int level);

TowerElem tower_zero(int p, int level);
TowerElem tower_one(int p, int level);
TowerElem tower_scalar(int p, int level, int a);
TowerElem tower_gen(int p, int level);  // the class of x
TowerElem tower_random(int p, int level, std::mt19937_64& rng);

TowerElem operator+(const TowerElem& a, const TowerElem& b);
TowerElem operator-(const TowerElem& a, const TowerElem& b);
TowerElem operator-(const TowerElem& a);
TowerElem operator*(const TowerElem& a, const TowerElem& b);
TowerElem scale(const TowerElem& a, int s);
TowerElem pow(const TowerElem& a, unsigned long long e);
TowerElem inverse(const TowerElem& a);

TowerElem frobenius(const TowerElem& x);
// Embed x into a level >= x.level along the fixed chain.
TowerElem embed(const TowerElem& x, int level);
// Matrix over F_p of the embedding from level k to level k + 1.
const FpMatrix& embedding_matrix(int p, int level);
// x lies in the image of F_p (all higher coordinates vanish).
bool in_prime_field(const TowerElem& x);

struct ArtinSchreierSolution
{
    TowerElem x;
    int level = 1;
};

// Solves x - x^p = b at the smallest tower level admitting a solution.
ArtinSchreierSolution artin_schreier_solve(const TowerElem& b);
// F_p-matrix of 1 - Frobenius on level k.
FpMatrix one_minus_frobenius_matrix(int p, int level);

// Frobenius-semilinear map on (F_{p^{k!}})^m: T(v) = L0 v + L1 frob(v), with L0, L1
// given as m x m matrices of tower elements. The scalar form a + b Frob acts
// coordinatewise and is handled blockwise.
class SemilinearMap
{
public:
    static SemilinearMap scalar(int p, int level, int dim, TowerElem a, TowerElem b);
    static SemilinearMap general(int p, int level, std::vector<std::vector<TowerElem>> l0,
                                 std::vector<std::vector<TowerElem>> l1);

    int p() const { return p_; }
    int level() const { return level_; }
    int dim() const { return dim_; }
    bool is_scalar() const { return scalar_; }
    const TowerElem& scalar_a() const { return a_; }
    const TowerElem& scalar_b() const { return b_; }
    std::vector<TowerElem> apply(const std::vector<TowerElem>& v) const;
    // The map as an F_p-linear endomorphism of F_p^{dim * level!}.
    FpMatrix fp_matrix() const;

private:
    int p_ = 2, level_ = 1, dim_ = 0;
    bool scalar_ = true;
    TowerElem a_, b_;
    std::vector<std::vector<TowerElem>> l0_, l1_;
};

struct KernelCokernel
{
    int kernel_dim = 0;
    int cokernel_dim = 0;
    FpMatrix kernel;     // rows: F_p-coordinate vectors of a kernel basis
    FpMatrix cokernel;   // rows: F_p-coordinate vectors spanning a complement of the image
};

KernelCokernel semilinear_kernel_cokernel(const SemilinearMap& t);

// Coordinates of a vector of tower elements, flattened over F_p.
std::vector<uint8_t> flatten(const std::vector<TowerElem>& v);
std::vector<TowerElem> unflatten(int p, int level, const std::vector<uint8_t>& c);

// Dense matrix over a tower level, with a plain Gaussian elimination.
class TowerMatrix
{
public:
    TowerMatrix(int p, int level, int rows, int cols);
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    TowerElem& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const TowerElem& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    static TowerMatrix from_fp(const FpMatrix& m, int level);

private:
    int p_, level_, rows_, cols_;
    std::vector<TowerElem> a_;
    friend int rank(const TowerMatrix&);
};

int rank(const TowerMatrix& m);

}  // namespace ue2
