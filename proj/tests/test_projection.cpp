#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sympball/projection.hpp"
#include "sympball/symplectic.hpp"
#include "test_util.hpp"

using namespace sympball;
using testutil::max_abs_diff;

namespace {

// The worked 2-dof shear: S = [[I, 0], [C, I]] in (x1,x2,p1,p2) ordering
// with C = [[0,1],[1,0]]. Then M = (S S^T)^{-1} = [[I+C^2, -C], [-C, I]].
Matrix shear_S() {
    return Matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}});
}

Matrix shear_M() {
    return inv(matmul(shear_S(), transpose(shear_S())));
}

} // namespace

TEST_CASE("block partition maps J to J_A + J_B exactly") {
    for (std::size_t n_A = 1; n_A <= 3; ++n_A)
        for (std::size_t n_B = 1; n_B <= 3; ++n_B) {
            const BlockPartition p(n_A, n_B);
            const Matrix jb = p.to_block(standard_J(n_A + n_B));
            Matrix expected(p.dim(), p.dim());
            const Matrix ja = standard_J(n_A);
            const Matrix jbb = standard_J(n_B);
            for (std::size_t i = 0; i < 2 * n_A; ++i)
                for (std::size_t j = 0; j < 2 * n_A; ++j)
                    expected(i, j) = ja(i, j);
            for (std::size_t i = 0; i < 2 * n_B; ++i)
                for (std::size_t j = 0; j < 2 * n_B; ++j)
                    expected(2 * n_A + i, 2 * n_A + j) = jbb(i, j);
            CHECK(max_abs_diff(jb, expected) == 0.0);
        }
    CHECK_THROWS_AS(BlockPartition(0, 2), DimensionMismatch);
}

TEST_CASE("partition anchors") {
    SUBCASE("identity splits into identities") {
        const PartitionedMatrix pm = partition(Matrix::identity(4), BlockPartition(1, 1));
        CHECK(max_abs_diff(pm.AA, Matrix::identity(2)) == 0.0);
        CHECK(max_abs_diff(pm.BB, Matrix::identity(2)) == 0.0);
        CHECK(norm_max(pm.AB) == 0.0);
        CHECK(norm_max(pm.BA) == 0.0);
    }
    SUBCASE("J splits into J_A and J_B") {
        const PartitionedMatrix pm = partition(standard_J(2), BlockPartition(1, 1));
        CHECK(max_abs_diff(pm.AA, standard_J(1)) == 0.0);
        CHECK(max_abs_diff(pm.BB, standard_J(1)) == 0.0);
        CHECK(norm_max(pm.AB) == 0.0);
    }
    SUBCASE("shear example: M_AB = [[0,-1],[-1,0]] and M_AA = diag(2,1)") {
        const PartitionedMatrix pm = partition(shear_M(), BlockPartition(1, 1));
        CHECK(max_abs_diff(pm.AA, Matrix({{2.0, 0.0}, {0.0, 1.0}})) < 1e-14);
        CHECK(max_abs_diff(pm.AB, Matrix({{0.0, -1.0}, {-1.0, 0.0}})) < 1e-14);
        CHECK(max_abs_diff(pm.BA, transpose(pm.AB)) < 1e-14);
    }
    SUBCASE("unpartition reproduces the source exactly") {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const Matrix m = testutil::random_symmetric(8, seed);
            const BlockPartition p(1 + seed % 3, 4 - (1 + seed % 3));
            CHECK(max_abs_diff(unpartition(partition(m, p)), m) == 0.0);
        }
    }
    CHECK_THROWS_AS(partition(Matrix::identity(4), BlockPartition(2, 1)), DimensionMismatch);
}

TEST_CASE("schur complement anchors") {
    SUBCASE("zero coupling returns the diagonal block") {
        const PartitionedMatrix pm = partition(Matrix::identity(6), BlockPartition(2, 1));
        CHECK(max_abs_diff(schur(pm, Block::B), Matrix::identity(4)) == 0.0);
        CHECK(max_abs_diff(schur(pm, Block::A), Matrix::identity(2)) == 0.0);
    }
    SUBCASE("shear example: M/M_BB = diag(1, 1/2)") {
        const PartitionedMatrix pm = partition(shear_M(), BlockPartition(1, 1));
        CHECK(max_abs_diff(schur(pm, Block::B), Matrix({{1.0, 0.0}, {0.0, 0.5}})) < 1e-13);
    }
    SUBCASE("agrees with the AA block of the inverse") {
        for (std::uint64_t seed = 1; seed <= 12; ++seed) {
            const Matrix m = testutil::random_spd_gram(6, seed, 0.5);
            const BlockPartition p(2, 1);
            const Matrix lhs = inv(schur(partition(m, p), Block::B));
            const Matrix rhs = partition(inv(m), p).AA;
            CHECK(max_abs_diff(lhs, rhs) <= 1e-9 * std::max(1.0, norm_max(rhs)));
        }
    }
    SUBCASE("indefinite pivot is rejected") {
        Matrix m = Matrix::identity(4);
        m(1, 1) = -1.0; // x2 direction turns the BB block indefinite
        const PartitionedMatrix pm = partition(m, BlockPartition(1, 1));
        CHECK_THROWS_AS(schur(pm, Block::B), PivotNotPD);
        CHECK_NOTHROW(schur(pm, Block::A));
    }
}

TEST_CASE("block_inverse assembles the inverse from Schur complements") {
    CHECK(max_abs_diff(block_inverse(partition(Matrix::identity(4), BlockPartition(1, 1))),
                       Matrix::identity(4)) == 0.0);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix m = testutil::random_spd_gram(6, seed, 0.5);
        const BlockPartition p(1 + seed % 2, 3 - (1 + seed % 2));
        const Matrix direct = inv(m);
        CHECK(max_abs_diff(block_inverse(partition(m, p)), direct) <=
              1e-9 * std::max(1.0, norm_max(direct)));
    }
}

TEST_CASE("project_ellipsoid anchors") {
    SUBCASE("balls project to balls of the same radius") {
        const Ellipsoid e = Ellipsoid::ball(6, 2.5);
        const Ellipsoid pr = project_ellipsoid(e, BlockPartition(1, 2), Block::A);
        CHECK(pr.dim == 2);
        CHECK(pr.R == 2.5);
        CHECK(max_abs_diff(pr.Q, Matrix::identity(2)) == 0.0);
    }
    SUBCASE("block-diagonal shape projects to its own block") {
        Matrix q = Matrix::identity(4);
        q(0, 0) = 3.0;
        q(2, 2) = 5.0; // (x1, p1) block is diag(3, 5)
        const Ellipsoid e{4, q, 1.0, {0, 0, 0, 0}};
        const Ellipsoid pr = project_ellipsoid(e, BlockPartition(1, 1), Block::A);
        CHECK(max_abs_diff(pr.Q, Matrix({{3.0, 0.0}, {0.0, 5.0}})) == 0.0);
        const Ellipsoid pb = project_ellipsoid(e, BlockPartition(1, 1), Block::B);
        CHECK(max_abs_diff(pb.Q, Matrix::identity(2)) == 0.0);
    }
    SUBCASE("shear example: ellipse diag(1, 1/2) of area pi sqrt(2)") {
        const Ellipsoid e{4, shear_M(), 1.0, {0, 0, 0, 0}};
        const Ellipsoid pr = project_ellipsoid(e, BlockPartition(1, 1), Block::A);
        CHECK(max_abs_diff(pr.Q, Matrix({{1.0, 0.0}, {0.0, 0.5}})) < 1e-13);
        CHECK(volume(pr) == doctest::Approx(std::numbers::pi * std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("the center moves to its block component") {
        const Ellipsoid e{4, Matrix::identity(4), 1.0, {1.0, 2.0, 3.0, 4.0}};
        const Ellipsoid pr = project_ellipsoid(e, BlockPartition(1, 1), Block::A);
        CHECK(pr.center == std::vector<double>{1.0, 3.0}); // (x1, p1)
        const Ellipsoid pb = project_ellipsoid(e, BlockPartition(1, 1), Block::B);
        CHECK(pb.center == std::vector<double>{2.0, 4.0}); // (x2, p2)
    }
}

TEST_CASE("ellipsoid volume anchors") {
    CHECK(volume(Ellipsoid::ball(4, 1.0)) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-13));
    CHECK(volume(Ellipsoid::ball(2, 1.0)) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(volume(Ellipsoid::ball(2, 2.0)) ==
          doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(volume(Ellipsoid{2, Matrix({{1.0, 0.0}, {0.0, 0.5}}), 1.0, {0, 0}}) ==
          doctest::Approx(std::numbers::pi * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("Monte-Carlo containment") {
    CHECK(contains(Ellipsoid::ball(2, 1.0), Ellipsoid::ball(2, 0.5), 20000, 7));
    CHECK_FALSE(contains(Ellipsoid::ball(2, 0.5), Ellipsoid::ball(2, 1.0), 20000, 7));
    // an ellipsoid contains itself (boundary membership under slack)
    const Matrix q = testutil::random_spd_gram(4, 3, 0.5);
    const Ellipsoid e{4, q, 1.3, {0, 0, 0, 0}};
    CHECK(contains(e, e, 20000, 11));
    CHECK_THROWS_AS(contains(Ellipsoid::ball(2, 1.0), Ellipsoid::ball(4, 1.0), 10, 1),
                    DimensionMismatch);
}

namespace {

Matrix inv_sqrt_spd(const Matrix& q) {
    const SymEig eig = sym_eig(q);
    Matrix w(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = i; j < q.cols(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < q.rows(); ++k)
                s += eig.eigenvectors(i, k) * eig.eigenvectors(j, k) /
                     std::sqrt(eig.eigenvalues[k]);
            w(i, j) = s;
            w(j, i) = s;
        }
    return w;
}

std::vector<double> random_direction(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> u(d);
    double nrm = 0.0;
    for (double& x : u) {
        x = gauss(rng);
        nrm += x * x;
    }
    nrm = std::sqrt(nrm);
    for (double& x : u)
        x /= nrm;
    return u;
}

} // namespace

TEST_CASE("projection-membership duality: soundness and sharpness") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const std::size_t n = 2 + seed % 3;
        const std::size_t n_A = 1 + seed % (n - 1);
        const BlockPartition p(n_A, n - n_A);
        const Matrix q = testutil::random_spd_gram(2 * n, seed, 0.4);
        const double radius = 1.0 + 0.1 * static_cast<double>(seed);
        const Ellipsoid e{2 * n, q, radius, std::vector<double>(2 * n, 0.0)};
        const Ellipsoid pr = project_ellipsoid(e, p, Block::A);
        const PartitionedMatrix pq = partition(q, p);
        const Matrix lift_map = scale(matmul(inv(pq.BB), pq.BA), -1.0);
        const Matrix w_src = inv_sqrt_spd(q);
        const Matrix w_pr = inv_sqrt_spd(pr.Q);

        std::mt19937_64 rng(seed * 17 + 3);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            // soundness: interior source points project inside the shadow
            std::vector<double> u = random_direction(2 * n, rng);
            const double r = std::pow(uni(rng), 1.0 / (2.0 * n));
            std::vector<double> z = matvec(w_src, u);
            for (double& x : z)
                x *= radius * r;
            CHECK(quadratic_form(q, z) <= radius * radius * (1 + 1e-12));
            const std::vector<double> zb = p.to_block(z);
            const std::vector<double> z_A(zb.begin(), zb.begin() + 2 * n_A);
            CHECK(pr.contains_point(z_A, 1e-9));

            // sharpness: boundary points of the shadow lift to boundary points
            std::vector<double> ua = random_direction(2 * n_A, rng);
            std::vector<double> za = matvec(w_pr, ua);
            for (double& x : za)
                x *= radius;
            const std::vector<double> lifted_b = matvec(lift_map, za);
            std::vector<double> blocked(2 * n, 0.0);
            for (std::size_t i = 0; i < 2 * n_A; ++i)
                blocked[i] = za[i];
            for (std::size_t i = 0; i < 2 * (n - n_A); ++i)
                blocked[2 * n_A + i] = lifted_b[i];
            const std::vector<double> lifted = p.to_global(blocked);
            CHECK(std::abs(quadratic_form(q, lifted) - radius * radius) <=
                  1e-9 * radius * radius);
        }
    }
}

TEST_CASE("Monte-Carlo hit-or-miss volume agrees with the analytic formula") {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        const std::size_t d = seed == 1 ? 2 : 4;
        const Matrix q = testutil::random_spd_gram(d, 100 + seed, 0.6);
        const Ellipsoid e{d, q, 1.2, std::vector<double>(d, 0.0)};
        const double analytic = volume(e);

        // axis-aligned bounding box: half-width R sqrt((Q^{-1})_ii)
        const Matrix qi = inv(q);
        std::vector<double> half(d);
        double box_vol = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            half[i] = e.R * std::sqrt(qi(i, i));
            box_vol *= 2.0 * half[i];
        }
        std::mt19937_64 rng(seed * 1234 + 5);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        const std::size_t total = 1000000;
        std::size_t hits = 0;
        std::vector<double> z(d);
        for (std::size_t s = 0; s < total; ++s) {
            for (std::size_t i = 0; i < d; ++i)
                z[i] = half[i] * uni(rng);
            if (quadratic_form(q, z) <= e.R * e.R)
                ++hits;
        }
        const double p_hat = static_cast<double>(hits) / static_cast<double>(total);
        const double estimate = p_hat * box_vol;
        const double sigma = box_vol * std::sqrt(p_hat * (1.0 - p_hat) / total);
        CHECK(std::abs(estimate - analytic) <= 3.0 * sigma);
    }
}
