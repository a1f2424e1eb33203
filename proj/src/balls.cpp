#include "sympball/balls.hpp"

#include <cmath>
#include <numbers>

namespace sympball {

namespace {

double ball_volume(std::size_t n_dof, double radius) {
    return std::pow(std::numbers::pi * radius * radius, static_cast<double>(n_dof)) /
           std::tgamma(static_cast<double>(n_dof) + 1.0);
}

std::size_t dof_of(const Matrix& s, const char* op) {
    if (!s.is_square() || s.rows() % 2 != 0)
        throw DimensionMismatch(std::string(op) + ": matrix must be 2n x 2n");
    return s.rows() / 2;
}

// Exactness statistic from the already-partitioned M = (S S^T)^{-1}:
// X = -(M/M_BB)^{-1} M_AB M_BB^{-1}, compared against ||M^{-1}||.
ExactnessResult exactness_core(const PartitionedMatrix& pm, const Matrix& schur_b,
                               double m_inv_norm, const Tolerance& tol) {
    const Matrix x =
        scale(matmul(inv(schur_b), matmul(pm.AB, inv(pm.BB))), -1.0);
    ExactnessResult r{};
    r.X_norm = norm_max(x);
    r.X_rel = r.X_norm / m_inv_norm;
    r.exact = r.X_rel <= kExactRelTol;
    r.borderline = !r.exact && r.X_rel <= kBorderlineRelTol;
    if (r.exact) {
        // The Schur complement must itself be symplectic, being (S_A S_A^T)^{-1}.
        if (!is_symplectic(schur_b, pm.part.n_A, Tolerance{1e-5, 1e-7}))
            throw NotSymplectic(
                "exactness_check: exact case failed the symplectic structure of M/M_BB");
        const Matrix sbsb = inv(schur(pm, Block::A, tol)); // = S_B S_B^T
        const WilliamsonDecomposition wd = williamson(sbsb, pm.part.n_B, tol);
        for (double lam : wd.lambda)
            if (std::abs(lam - 1.0) > 1e-5)
                throw NotSymplectic(
                    "exactness_check: exact case has a non-unit symplectic eigenvalue on the B block");
        r.S_B = sqrt_pd(sbsb, tol);
    }
    return r;
}

} // namespace

ProjectionAnalysis analyze_split(const Matrix& s, std::size_t n_A, double radius,
                                 const Tolerance& tol) {
    const std::size_t n = dof_of(s, "analyze_split");
    if (!is_symplectic(s, n, tol))
        throw NotSymplectic("analyze_split: input matrix is not symplectic");
    if (n_A < 1 || n_A > n)
        throw DimensionMismatch("analyze_split: n_A must satisfy 1 <= n_A <= n");
    if (!(radius > 0.0))
        throw DimensionMismatch("analyze_split: radius must be positive");

    const Matrix ssT = matmul(s, transpose(s));
    const Matrix m = inv(ssT);

    ProjectionAnalysis a{
        s,  {}, true, false, 0.0, 0.0, std::nullopt,
        Ellipsoid::ball(2 * n_A, radius), Ellipsoid::ball(2 * n_A, radius),
        0.0, ball_volume(n_A, radius), std::nullopt};

    if (n_A == n) {
        // Empty B block: the projection is the symplectic ball itself.
        a.lambda_A = symplectic_spectrum(m, n, tol);
        a.projected = Ellipsoid{2 * n, m, radius, std::vector<double>(2 * n, 0.0)};
        a.inscribed = a.projected;
        a.vol_projected = volume(a.projected);
        return a;
    }

    const BlockPartition part(n_A, n - n_A);
    const PartitionedMatrix pm = partition(m, part);
    const Matrix schur_b = schur(pm, Block::B, tol); // M/M_BB, on the A block

    const WilliamsonDecomposition wd = williamson(schur_b, n_A, tol);
    a.lambda_A = wd.lambda;

    const ExactnessResult ex = exactness_core(pm, schur_b, norm_max(ssT), tol);
    a.exact = ex.exact;
    a.borderline = ex.borderline;
    a.X_norm = ex.X_norm;
    a.X_rel = ex.X_rel;
    a.S_B = ex.S_B;

    // S_A is defined only up to a symplectic rotation; in the exact case
    // report the gauge-free SPD square root of (M/M_BB)^{-1}, otherwise the
    // Williamson factor as computed: M/M_BB = (S_A^{-1})^T D_A S_A^{-1}.
    a.S_A = ex.exact ? sqrt_pd(inv(schur_b), tol) : inv(wd.S);

    a.projected = Ellipsoid{2 * n_A, schur_b, radius, std::vector<double>(2 * n_A, 0.0)};
    a.inscribed = Ellipsoid{2 * n_A, inv(matmul(a.S_A, transpose(a.S_A))), radius,
                            std::vector<double>(2 * n_A, 0.0)};
    a.vol_projected = volume(a.projected);
    return a;
}

ExactnessResult exactness_check(const Matrix& s, std::size_t n_A, const Tolerance& tol) {
    const std::size_t n = dof_of(s, "exactness_check");
    if (!is_symplectic(s, n, tol))
        throw NotSymplectic("exactness_check: input matrix is not symplectic");
    if (n_A < 1 || n_A > n)
        throw DimensionMismatch("exactness_check: n_A must satisfy 1 <= n_A <= n");
    if (n_A == n)
        return ExactnessResult{true, false, 0.0, 0.0, std::nullopt};

    const Matrix ssT = matmul(s, transpose(s));
    const Matrix m = inv(ssT);
    const BlockPartition part(n_A, n - n_A);
    const PartitionedMatrix pm = partition(m, part);
    const Matrix schur_b = schur(pm, Block::B, tol);
    return exactness_core(pm, schur_b, norm_max(ssT), tol);
}

ProjectionAnalysis analyze_subspace(const Matrix& s, const ComplexSubspace& v,
                                    double radius, const Tolerance& tol) {
    const std::size_t n = dof_of(s, "analyze_subspace");
    if (v.ambient_n != n)
        throw DimensionMismatch("analyze_subspace: subspace lives in a different ambient space");
    const Matrix u = unitary_reduction(v, tol);
    ProjectionAnalysis a = analyze_split(matmul(transpose(u), s), v.k, radius, tol);

    // Orthonormal symplectic basis of V: the image of the A-block axes.
    Matrix basis(2 * n, 2 * v.k);
    for (std::size_t c = 0; c < v.k; ++c)
        for (std::size_t i = 0; i < 2 * n; ++i) {
            basis(i, c) = u(i, c);
            basis(i, v.k + c) = u(i, n + c);
        }
    a.subspace_basis = std::move(basis);
    return a;
}

double image_complexity_defect(const Matrix& s, const ComplexSubspace& v) {
    const std::size_t n = dof_of(s, "complexity_of_image");
    if (v.ambient_n != n)
        throw DimensionMismatch("complexity_of_image: subspace lives in a different ambient space");
    const Matrix image = matmul(transpose(s), v.basis);
    const Matrix b = orthonormal_columns(image);
    if (b.cols() != 2 * v.k)
        throw RankDeficient("complexity_of_image: image span lost rank");
    const Matrix p = matmul(b, transpose(b));
    const Matrix j = standard_J(n);
    return norm_max(sub(matmul(p, j), matmul(j, p)));
}

bool complexity_of_image(const Matrix& s, const ComplexSubspace& v, const Tolerance& tol) {
    return image_complexity_defect(s, v) <= tol.abs + tol.rel;
}

} // namespace sympball
