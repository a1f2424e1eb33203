#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sympball/balls.hpp"
#include "sympball/verify.hpp"
#include "test_util.hpp"

using namespace sympball;
using testutil::max_abs_diff;

namespace {

Matrix shear_S() {
    return Matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}});
}

ComplexSubspace coordinate_V(std::size_t n, std::size_t k) {
    Matrix basis(2 * n, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        basis(i, i) = 1.0;
        basis(n + i, k + i) = 1.0;
    }
    return ComplexSubspace{n, k, std::move(basis)};
}

} // namespace

TEST_CASE("analyze_split on block-diagonal S is exact") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const std::size_t n_A = 1 + seed % 2;
        const std::size_t n_B = 1 + (seed / 2) % 2;
        const Matrix s = block_diagonal_symplectic(random_symplectic(n_A, 0.8, 2 * seed),
                                                   random_symplectic(n_B, 0.8, 2 * seed + 1));
        REQUIRE(is_symplectic(s, n_A + n_B));
        const ProjectionAnalysis a = analyze_split(s, n_A, 1.0);
        CHECK(a.exact);
        CHECK_FALSE(a.borderline);
        for (double lam : a.lambda_A)
            CHECK(std::abs(lam - 1.0) <= 1e-10);
        CHECK(max_abs_diff(a.projected.Q, a.inscribed.Q) <=
              1e-8 * std::max(1.0, norm_max(a.projected.Q)));
        CHECK(a.vol_projected == doctest::Approx(a.vol_bound).epsilon(1e-10));
        REQUIRE(a.S_B.has_value());
        CHECK(is_symplectic(*a.S_B, n_B, Tolerance{1e-7, 1e-9}));
        CHECK(is_symplectic(a.S_A, n_A, Tolerance{1e-7, 1e-9}));
    }
}

TEST_CASE("analyze_split on the worked shear example") {
    const ProjectionAnalysis a = analyze_split(shear_S(), 1, 1.0);
    REQUIRE(a.lambda_A.size() == 1);
    CHECK(std::abs(a.lambda_A[0] - 1.0 / std::sqrt(2.0)) <= 1e-9);
    CHECK_FALSE(a.exact);
    CHECK_FALSE(a.borderline);
    CHECK(a.X_norm == doctest::Approx(1.0).epsilon(1e-12)); // X = [[0,1],[1,0]]
    CHECK(std::abs(a.vol_projected - std::numbers::pi * std::sqrt(2.0)) <= 1e-9);
    CHECK(a.vol_bound == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(max_abs_diff(a.projected.Q, Matrix({{1.0, 0.0}, {0.0, 0.5}})) <= 1e-12);
    // inscribed ball has unit symplectic volume: det of its shape is 1
    CHECK(det(a.inscribed.Q) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(volume(a.inscribed) == doctest::Approx(a.vol_bound).epsilon(1e-10));
    CHECK(is_symplectic(a.S_A, 1, Tolerance{1e-8, 1e-10}));
    CHECK_FALSE(a.S_B.has_value());
    CHECK(contains(a.projected, a.inscribed, 50000, 77));
}

TEST_CASE("analyze_split with n_A = n returns the full ball") {
    const Matrix s = random_symplectic(2, 1.0, 5);
    const ProjectionAnalysis a = analyze_split(s, 2, 1.5);
    CHECK(a.exact);
    CHECK(a.X_norm == 0.0);
    CHECK(max_abs_diff(a.S_A, s) == 0.0);
    CHECK(max_abs_diff(a.projected.Q, inv(matmul(s, transpose(s)))) <= 1e-12);
    CHECK(a.vol_projected == doctest::Approx(a.vol_bound).epsilon(1e-9));
    for (double lam : a.lambda_A)
        CHECK(std::abs(lam - 1.0) <= 1e-9);
}

TEST_CASE("analyze_split rejects bad input") {
    CHECK_THROWS_AS(analyze_split(Matrix({{2.0, 0.0}, {0.0, 2.0}}), 1, 1.0), NotSymplectic);
    CHECK_THROWS_AS(analyze_split(Matrix::identity(4), 0, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(analyze_split(Matrix::identity(4), 3, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(analyze_split(Matrix::identity(4), 1, 0.0), DimensionMismatch);
}

TEST_CASE("exactness_check anchors") {
    SUBCASE("block-diagonal gives X = 0") {
        const Matrix s = block_diagonal_symplectic(random_symplectic(1, 1.0, 3),
                                                   random_symplectic(1, 1.0, 4));
        const ExactnessResult r = exactness_check(s, 1);
        CHECK(r.exact);
        CHECK(r.X_norm <= 1e-12);
        CHECK(r.S_B.has_value());
    }
    SUBCASE("shear gives X_norm = 1") {
        const ExactnessResult r = exactness_check(shear_S(), 1);
        CHECK_FALSE(r.exact);
        CHECK(r.X_norm > 0.1);
        CHECK_FALSE(r.S_B.has_value());
    }
    SUBCASE("X_norm grows with the block-mixing angle") {
        double previous = 0.0;
        for (double theta : {0.1, 0.2, 0.4, 0.8}) {
            // planar rotation acting on (x1, x2) and (p1, p2) simultaneously
            Matrix u = Matrix::identity(4);
            u(0, 0) = u(1, 1) = u(2, 2) = u(3, 3) = std::cos(theta);
            u(0, 1) = u(2, 3) = -std::sin(theta);
            u(1, 0) = u(3, 2) = std::sin(theta);
            REQUIRE(is_symplectic(u, 2));
            // rotation alone stabilizes the round ball; shear one block first
            Matrix squeeze = Matrix::identity(4);
            squeeze(0, 0) = 2.0;
            squeeze(2, 2) = 0.5;
            const ExactnessResult r = exactness_check(matmul(u, squeeze), 1);
            CHECK_FALSE(r.exact);
            CHECK(r.X_norm > previous);
            previous = r.X_norm;
        }
    }
}

TEST_CASE("analyze_subspace on the coordinate subspace matches analyze_split") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::size_t n = 2 + seed % 2;
        const std::size_t n_A = 1 + seed % (n - 1);
        const Matrix s = random_symplectic(n, 1.0, seed + 40);
        const ProjectionAnalysis split = analyze_split(s, n_A, 1.0);
        const ProjectionAnalysis sub = analyze_subspace(s, coordinate_V(n, n_A), 1.0);
        REQUIRE(sub.lambda_A.size() == split.lambda_A.size());
        for (std::size_t i = 0; i < split.lambda_A.size(); ++i)
            CHECK(std::abs(sub.lambda_A[i] - split.lambda_A[i]) <= 1e-9);
        CHECK(std::abs(sub.vol_projected - split.vol_projected) <=
              1e-9 * std::max(1.0, split.vol_projected));
        CHECK(sub.exact == split.exact);
        // S_A is gauge-dependent; compare the invariant S_A S_A^T
        CHECK(max_abs_diff(matmul(sub.S_A, transpose(sub.S_A)),
                           matmul(split.S_A, transpose(split.S_A))) <= 1e-8);
        REQUIRE(sub.subspace_basis.has_value());
    }
}

TEST_CASE("analyze_subspace on random complex subspaces") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const std::size_t n = 3;
        const std::size_t k = 1 + seed % 2;
        const Matrix u0 = testutil::random_orthogonal_symplectic(n, seed + 7);
        Matrix span(2 * n, 2 * k);
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t i = 0; i < 2 * n; ++i) {
                span(i, 2 * c) = u0(i, c);
                span(i, 2 * c + 1) = u0(i, n + c);
            }
        const ComplexSubspace v = complex_subspace_from_span(span);
        const Matrix s = random_symplectic(n, 1.0, seed + 90);
        const ProjectionAnalysis a = analyze_subspace(s, v, 1.0);

        // linear non-squeezing: the shadow volume respects the ball bound
        CHECK(a.vol_projected >= a.vol_bound - 1e-9);
        double lam_max = 0.0;
        for (double lam : a.lambda_A)
            lam_max = std::max(lam_max, lam);
        CHECK(lam_max <= 1.0 + 1e-8);
        CHECK(a.exact == complexity_of_image(s, v, Tolerance{1e-6, 1e-8}));
        CHECK(contains(a.projected, a.inscribed, 20000, seed));
    }
}

TEST_CASE("complexity_of_image anchors") {
    CHECK(complexity_of_image(Matrix::identity(6), coordinate_V(3, 1)));
    const Matrix s = block_diagonal_symplectic(random_symplectic(1, 1.0, 8),
                                               random_symplectic(2, 1.0, 9));
    CHECK(complexity_of_image(s, coordinate_V(3, 1)));
    CHECK_FALSE(complexity_of_image(shear_S(), coordinate_V(2, 1)));
    CHECK(exactness_check(shear_S(), 1).exact ==
          complexity_of_image(shear_S(), coordinate_V(2, 1)));
}

TEST_CASE("theorem-level properties on random symplectic matrices") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t n = 2 + seed % 3;
        const std::size_t n_A = 1 + seed % (n - 1);
        const double spread = seed % 3 == 0 ? 0.5 : 1.0;
        const Matrix s = random_symplectic(n, spread, seed + 1000);
        const ProjectionAnalysis a = analyze_split(s, n_A, 1.0);

        double lam_max = 0.0;
        for (double lam : a.lambda_A)
            lam_max = std::max(lam_max, lam);
        CHECK(lam_max <= 1.0 + 1e-8);
        CHECK(a.vol_projected >= a.vol_bound - 1e-9);
        CHECK(std::abs(volume(a.inscribed) - a.vol_bound) <= 1e-9 * a.vol_bound);
        CHECK(contains(a.projected, a.inscribed, 20000, seed));

        // Lemma-1 bridge: (M/M_BB)^{-1} + i J_A is positive semi-definite
        CHECK(is_psd(hermitian_embedding(inv(a.projected.Q), n_A), Tolerance{1e-7, 1e-9}));

        const ExactnessAgreement agr = exactness_agreement(s, n_A, a);
        CHECK(agr.agree);
    }
}

TEST_CASE("exact cases satisfy the symplecticity identity on the B block") {
    // With X = 0 the inverse's symplecticity forces
    // (M/M_AA)^{-1} J_B (M/M_AA)^{-1} = J_B.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Matrix s = block_diagonal_symplectic(random_symplectic(1, 0.8, seed),
                                                   random_symplectic(2, 0.8, seed + 50));
        const Matrix m = inv(matmul(s, transpose(s)));
        const PartitionedMatrix pm = partition(m, BlockPartition(1, 2));
        const Matrix sa_inv = inv(schur(pm, Block::A)); // (M/M_AA)^{-1}
        const Matrix jb = standard_J(2);
        CHECK(max_abs_diff(matmul(sa_inv, matmul(jb, sa_inv)), jb) <= 1e-8);
    }
}
