#include "sympball/matrix.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Dense>

namespace sympball {

namespace {

constexpr double kMaxConditionNumber = 1e12;

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return m;
}

void require_symmetric(const Matrix& m, const Tolerance& tol, const char* op) {
    if (!m.is_square())
        throw NotSymmetric(std::string(op) + ": matrix is not square");
    if (!is_symmetric(m, tol))
        throw NotSymmetric(std::string(op) + ": matrix is not symmetric within tolerance");
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
    if (rows_ < 1 || cols_ < 1)
        throw InvalidMatrix("matrix dimensions must be at least 1x1");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ < 1 || cols_ < 1)
        throw InvalidMatrix("matrix dimensions must be at least 1x1");
    if (entries_.size() != rows_ * cols_)
        throw InvalidMatrix("entry count does not match rows*cols");
    if (!all_finite())
        throw InvalidMatrix("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ < 1 || cols_ < 1)
        throw InvalidMatrix("matrix dimensions must be at least 1x1");
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InvalidMatrix("ragged initializer list");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    if (!all_finite())
        throw InvalidMatrix("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const noexcept {
    for (double v : entries_)
        if (!std::isfinite(v))
            return false;
    return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matmul: inner dimensions disagree");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = m(i, j);
    return t;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("add: shapes disagree");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("sub: shapes disagree");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix scale(const Matrix& m, double s) {
    Matrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            c(i, j) = s * m(i, j);
    return c;
}

double norm_max(const Matrix& m) {
    double v = 0.0;
    for (double e : m.entries())
        v = std::max(v, std::abs(e));
    return v;
}

double norm_fro(const Matrix& m) {
    double v = 0.0;
    for (double e : m.entries())
        v += e * e;
    return std::sqrt(v);
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
    if (m.cols() != v.size())
        throw DimensionMismatch("matvec: shapes disagree");
    std::vector<double> r(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double quadratic_form(const Matrix& q, const std::vector<double>& z) {
    const std::vector<double> qz = matvec(q, z);
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        s += qz[i] * z[i];
    return s;
}

bool is_symmetric(const Matrix& m, const Tolerance& tol) {
    if (!m.is_square())
        return false;
    double dev = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            dev = std::max(dev, std::abs(m(i, j) - m(j, i)));
    return dev <= tol.abs + tol.rel * norm_max(m);
}

SymEig sym_eig(const Matrix& m, const Tolerance& tol) {
    require_symmetric(m, tol, "sym_eig");
    Eigen::MatrixXd e = to_eigen(m);
    e = 0.5 * (e + e.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e);
    if (solver.info() != Eigen::Success)
        throw EigFailed("sym_eig: eigensolver did not converge");
    SymEig out{std::vector<double>(m.rows()), from_eigen(solver.eigenvectors())};
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

Matrix sqrt_pd(const Matrix& m, const Tolerance& tol) {
    const SymEig eig = sym_eig(m, tol);
    const double floor = tol.abs + tol.rel * norm_max(m);
    if (eig.eigenvalues.front() <= floor)
        throw NotPositiveDefinite("sqrt_pd: matrix is not positive definite");
    const std::size_t n = m.rows();
    Matrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.eigenvectors(i, k) * std::sqrt(eig.eigenvalues[k]) *
                     eig.eigenvectors(j, k);
            x(i, j) = s;
            x(j, i) = s;
        }
    return x;
}

Matrix inv(const Matrix& m, const Tolerance&) {
    if (!m.is_square())
        throw DimensionMismatch("inv: matrix is not square");
    Eigen::MatrixXd e = to_eigen(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(e.rows() - 1);
    if (smax == 0.0 || smin * kMaxConditionNumber < smax)
        throw Singular("inv: matrix is singular or too ill-conditioned");
    return from_eigen(e.inverse());
}

double det(const Matrix& m) {
    if (!m.is_square())
        throw DimensionMismatch("det: matrix is not square");
    return to_eigen(m).determinant();
}

bool is_psd(const Matrix& m, const Tolerance& tol) {
    const SymEig eig = sym_eig(m, tol);
    return eig.eigenvalues.front() >= -(tol.abs + tol.rel * norm_max(m));
}

Matrix orthonormal_columns(const Matrix& m, double rel_tol) {
    std::vector<std::vector<double>> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<double> w(m.rows());
        double original = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            w[i] = m(i, j);
            original += w[i] * w[i];
        }
        original = std::sqrt(original);
        if (original == 0.0)
            continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) {
                double c = 0.0;
                for (std::size_t i = 0; i < m.rows(); ++i)
                    c += u[i] * w[i];
                for (std::size_t i = 0; i < m.rows(); ++i)
                    w[i] -= c * u[i];
            }
        double nrm = 0.0;
        for (double x : w)
            nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm <= rel_tol * original)
            continue;
        for (double& x : w)
            x /= nrm;
        basis.push_back(std::move(w));
    }
    if (basis.empty())
        throw RankDeficient("orthonormal_columns: the columns span nothing");
    Matrix b(m.rows(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            b(i, j) = basis[j][i];
    return b;
}

} // namespace sympball
