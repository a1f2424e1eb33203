#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sympball/errors.hpp"

namespace sympball {

/// Pair of relative/absolute tolerances used by all approximate checks.
/// Defaults leave headroom for O(n^3) rounding accumulation at the sizes
/// this library targets (2n <= 20).
struct Tolerance {
    double rel{1e-9};
    double abs{1e-12};
};

/// Dense real matrix, 64-bit entries in row-major order.
///
/// The universal carrier for everything in this library. Construction
/// validates shape and rejects non-finite entries.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    const std::vector<double>& entries() const noexcept { return entries_; }

    bool all_finite() const noexcept;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& m, double s);
double norm_max(const Matrix& m);
double norm_fro(const Matrix& m);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }
inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
inline Matrix operator*(double s, const Matrix& m) { return scale(m, s); }

std::vector<double> matvec(const Matrix& m, const std::vector<double>& v);
double quadratic_form(const Matrix& q, const std::vector<double>& z);

bool is_symmetric(const Matrix& m, const Tolerance& tol = {});

/// Eigendecomposition of a symmetric matrix: M = V diag(lambda) V^T,
/// eigenvalues ascending, V orthogonal (eigenvectors in columns).
struct SymEig {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

SymEig sym_eig(const Matrix& m, const Tolerance& tol = {});

/// Symmetric positive definite square root: returns X with X*X = M.
Matrix sqrt_pd(const Matrix& m, const Tolerance& tol = {});

/// Inverse with a condition-number guard: throws Singular when the ratio
/// of extreme singular values exceeds 1e12.
Matrix inv(const Matrix& m, const Tolerance& tol = {});

double det(const Matrix& m);

/// True iff the minimum eigenvalue is >= -(abs + rel * max-norm of M).
bool is_psd(const Matrix& m, const Tolerance& tol = {});

/// Orthonormal basis of the column span (modified Gram-Schmidt, two
/// passes). Columns whose residual drops below rel_tol times their own
/// norm are dropped; throws RankDeficient when nothing survives.
Matrix orthonormal_columns(const Matrix& m, double rel_tol = 1e-8);

} // namespace sympball
