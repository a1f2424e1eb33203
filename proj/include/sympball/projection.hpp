#pragma once

#include <cstdint>
#include <vector>

#include "sympball/matrix.hpp"

namespace sympball {

/// Splitting of n = n_A + n_B degrees of freedom, with the permutation
/// between the global coordinate ordering (x_1..x_n, p_1..p_n) and the
/// block ordering (x_A, p_A, x_B, p_B). This is the only place where the
/// two orderings are converted.
struct BlockPartition {
    BlockPartition(std::size_t n_A, std::size_t n_B);

    std::size_t n_A;
    std::size_t n_B;
    std::size_t n() const noexcept { return n_A + n_B; }
    std::size_t dim() const noexcept { return 2 * (n_A + n_B); }

    /// perm[i] = global index feeding block slot i.
    std::vector<std::size_t> perm;

    Matrix to_block(const Matrix& m) const;
    Matrix to_global(const Matrix& m) const;
    std::vector<double> to_block(const std::vector<double>& z) const;
    std::vector<double> to_global(const std::vector<double>& z) const;
};

/// The four blocks of a matrix in block ordering; A-blocks come first.
struct PartitionedMatrix {
    BlockPartition part;
    Matrix AA;
    Matrix AB;
    Matrix BA;
    Matrix BB;
};

PartitionedMatrix partition(const Matrix& m, const BlockPartition& p);

/// Reassembles the partitioned blocks and undoes the permutation.
Matrix unpartition(const PartitionedMatrix& p);

enum class Block { A, B };

/// Schur complement with respect to the given pivot block:
/// schur(p, Block::B) = AA - AB BB^-1 BA (lives on the A block).
Matrix schur(const PartitionedMatrix& p, Block pivot, const Tolerance& tol = {});

/// Inverse assembled from the two Schur complements, returned in the
/// global ordering; agrees with inv() on SPD input.
Matrix block_inverse(const PartitionedMatrix& p, const Tolerance& tol = {});

/// Solid ellipsoid {z : Q(z-c).(z-c) <= R^2} with Q symmetric positive
/// definite. A ball is the case Q = I.
struct Ellipsoid {
    std::size_t dim;
    Matrix Q;
    double R;
    std::vector<double> center;

    static Ellipsoid ball(std::size_t dim, double radius);

    /// Membership with relative slack on R^2.
    bool contains_point(const std::vector<double>& z, double rel_slack = 1e-9) const;
};

/// Orthogonal projection onto the chosen coordinate block: the shape matrix
/// of the shadow is the Schur complement with respect to the other block,
/// the radius is unchanged and the center is the block component.
Ellipsoid project_ellipsoid(const Ellipsoid& e, const BlockPartition& p, Block side,
                            const Tolerance& tol = {});

double volume(const Ellipsoid& e);

/// Monte-Carlo containment: samples points on the boundary of `inner`
/// (Gaussian directions pushed to the boundary through Q^{-1/2}) and tests
/// them against `outer` with relative slack 1e-9. Deterministic in `seed`;
/// per-sample randomness is keyed by (seed, sample index).
bool contains(const Ellipsoid& outer, const Ellipsoid& inner, std::size_t samples,
              std::uint64_t seed);

/// Derives an independent random stream from a master seed, a purpose label
/// and an index. All randomness in the verification campaigns flows
/// through this.
std::uint64_t derive_seed(std::uint64_t master, const char* label, std::uint64_t index);

} // namespace sympball
