#pragma once

#include <optional>
#include <vector>

#include "sympball/projection.hpp"
#include "sympball/symplectic.hpp"

namespace sympball {

/// Exactness classification thresholds on ||X|| relative to ||M^{-1}||,
/// where X is the off-diagonal block of the Schur-complement inverse
/// formula. Cases between the two are reported as borderline rather than
/// silently classified.
constexpr double kExactRelTol = 1e-8;
constexpr double kBorderlineRelTol = 1e-6;

/// Everything the projection engine knows about one split: the inscribed
/// ball's symplectic automorphism S_A, the symplectic spectrum of the
/// Schur complement, the exactness verdict, volumes, and both ellipsoids.
///
/// When produced by analyze_subspace, the ellipsoids' coordinates refer to
/// the orthonormal symplectic basis of the subspace stored in
/// subspace_basis (columns e_1..e_k, -Je_1..-Je_k); volumes are unchanged
/// by that isometry.
struct ProjectionAnalysis {
    Matrix S_A;
    std::vector<double> lambda_A; // ascending, all <= 1 + tolerance
    bool exact;
    bool borderline;
    double X_norm;     // max-norm of the off-diagonal block X
    double X_rel;      // X_norm / ||M^{-1}||_max, the classification statistic
    std::optional<Matrix> S_B; // present iff exact and n_B > 0
    Ellipsoid projected;
    Ellipsoid inscribed;
    double vol_projected;
    double vol_bound; // (pi R^2)^{n_A} / n_A!
    std::optional<Matrix> subspace_basis; // 2n x 2n_A, set by analyze_subspace
};

/// Theorem-1 engine for the coordinate splitting: projects the symplectic
/// ball S(B^{2n}(R)) onto the first n_A degrees of freedom and constructs
/// the inscribed symplectic ball of the same radius.
ProjectionAnalysis analyze_split(const Matrix& s, std::size_t n_A, double radius,
                                 const Tolerance& tol = {});

/// Decides whether the projection is exactly a symplectic ball, i.e.
/// whether S splits as S_A + S_B across the partition. X is the
/// off-diagonal block -(M/M_BB)^{-1} M_AB M_BB^{-1} of M^{-1}; exactness
/// means X vanishes. In the exact case S_B is recovered from
/// (M/M_AA)^{-1} = S_B S_B^T.
struct ExactnessResult {
    bool exact;
    bool borderline;
    double X_norm;
    double X_rel;
    std::optional<Matrix> S_B;
};

ExactnessResult exactness_check(const Matrix& s, std::size_t n_A,
                                const Tolerance& tol = {});

/// Projection onto a general complex subspace V: conjugates by the
/// orthogonal-symplectic reduction U of V and delegates to analyze_split.
ProjectionAnalysis analyze_subspace(const Matrix& s, const ComplexSubspace& v,
                                    double radius, const Tolerance& tol = {});

/// Commutator defect ||PJ - JP||_max of the orthogonal projector onto
/// S^T V; vanishes exactly when S^T V is complex.
double image_complexity_defect(const Matrix& s, const ComplexSubspace& v);

/// True iff S^T V is itself a complex subspace (J-invariant); equivalent
/// to exactness of the projection onto V.
bool complexity_of_image(const Matrix& s, const ComplexSubspace& v,
                         const Tolerance& tol = {});

} // namespace sympball
