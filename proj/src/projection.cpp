#include "sympball/projection.hpp"

#include <cmath>
#include <numbers>

namespace sympball {

namespace {

constexpr double kContainmentSlack = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based stream: state advances by a fixed odd constant, output is
// the splitmix64 hash of the state. Uniform draws never return 0.
struct CounterRng {
    std::uint64_t state;
    std::uint64_t next_bits() { return splitmix64(state += 0x9E3779B97F4A7C15ULL); }
    double next_u01() { return ((next_bits() >> 11) + 1) * 0x1.0p-53; }
};

// Standard Box-Muller pair from two uniforms.
void gaussian_pair(CounterRng& rng, double& g0, double& g1) {
    const double r = std::sqrt(-2.0 * std::log(rng.next_u01()));
    const double t = 2.0 * std::numbers::pi * rng.next_u01();
    g0 = r * std::cos(t);
    g1 = r * std::sin(t);
}

void require_pd_block(const Matrix& block, const Tolerance& tol, const char* which) {
    if (!is_symmetric(block, Tolerance{1e-6, 1e-9}))
        throw PivotNotPD(std::string("schur: pivot block ") + which + " is not symmetric");
    const SymEig eig = sym_eig(block, Tolerance{1e-6, 1e-9});
    if (eig.eigenvalues.front() <= tol.abs + tol.rel * norm_max(block))
        throw PivotNotPD(std::string("schur: pivot block ") + which +
                         " is not positive definite");
}

} // namespace

BlockPartition::BlockPartition(std::size_t na, std::size_t nb) : n_A(na), n_B(nb) {
    if (n_A < 1 || n_B < 1)
        throw DimensionMismatch("BlockPartition: both blocks need at least one degree of freedom");
    const std::size_t ntot = n_A + n_B;
    perm.resize(2 * ntot);
    // block ordering (x_A, p_A, x_B, p_B) gathered from (x_1..x_n, p_1..p_n)
    std::size_t slot = 0;
    for (std::size_t i = 0; i < n_A; ++i)
        perm[slot++] = i;
    for (std::size_t i = 0; i < n_A; ++i)
        perm[slot++] = ntot + i;
    for (std::size_t i = n_A; i < ntot; ++i)
        perm[slot++] = i;
    for (std::size_t i = n_A; i < ntot; ++i)
        perm[slot++] = ntot + i;
}

Matrix BlockPartition::to_block(const Matrix& m) const {
    if (m.rows() != dim() || m.cols() != dim())
        throw DimensionMismatch("BlockPartition: matrix size does not match the partition");
    Matrix r(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            r(i, j) = m(perm[i], perm[j]);
    return r;
}

Matrix BlockPartition::to_global(const Matrix& m) const {
    if (m.rows() != dim() || m.cols() != dim())
        throw DimensionMismatch("BlockPartition: matrix size does not match the partition");
    Matrix r(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            r(perm[i], perm[j]) = m(i, j);
    return r;
}

std::vector<double> BlockPartition::to_block(const std::vector<double>& z) const {
    if (z.size() != dim())
        throw DimensionMismatch("BlockPartition: vector size does not match the partition");
    std::vector<double> r(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        r[i] = z[perm[i]];
    return r;
}

std::vector<double> BlockPartition::to_global(const std::vector<double>& z) const {
    if (z.size() != dim())
        throw DimensionMismatch("BlockPartition: vector size does not match the partition");
    std::vector<double> r(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        r[perm[i]] = z[i];
    return r;
}

PartitionedMatrix partition(const Matrix& m, const BlockPartition& p) {
    const Matrix b = p.to_block(m);
    const std::size_t da = 2 * p.n_A;
    const std::size_t db = 2 * p.n_B;
    Matrix aa(da, da), ab(da, db), ba(db, da), bb(db, db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            aa(i, j) = b(i, j);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            ab(i, j) = b(i, da + j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < da; ++j)
            ba(i, j) = b(da + i, j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            bb(i, j) = b(da + i, da + j);
    return PartitionedMatrix{p, std::move(aa), std::move(ab), std::move(ba), std::move(bb)};
}

Matrix unpartition(const PartitionedMatrix& p) {
    const std::size_t da = 2 * p.part.n_A;
    const std::size_t db = 2 * p.part.n_B;
    Matrix b(da + db, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            b(i, j) = p.AA(i, j);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            b(i, da + j) = p.AB(i, j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < da; ++j)
            b(da + i, j) = p.BA(i, j);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            b(da + i, da + j) = p.BB(i, j);
    return p.part.to_global(b);
}

Matrix schur(const PartitionedMatrix& p, Block pivot, const Tolerance& tol) {
    if (pivot == Block::B) {
        require_pd_block(p.BB, tol, "BB");
        return sub(p.AA, matmul(p.AB, matmul(inv(p.BB), p.BA)));
    }
    require_pd_block(p.AA, tol, "AA");
    return sub(p.BB, matmul(p.BA, matmul(inv(p.AA), p.AB)));
}

Matrix block_inverse(const PartitionedMatrix& p, const Tolerance& tol) {
    const Matrix sb = schur(p, Block::B, tol); // M/M_BB
    const Matrix sa = schur(p, Block::A, tol); // M/M_AA
    const Matrix sb_inv = inv(sb);
    const Matrix sa_inv = inv(sa);
    const Matrix bb_inv = inv(p.BB);
    const Matrix x = scale(matmul(sb_inv, matmul(p.AB, bb_inv)), -1.0);
    PartitionedMatrix assembled{p.part, sb_inv, x, transpose(x), sa_inv};
    return unpartition(assembled);
}

Ellipsoid Ellipsoid::ball(std::size_t dim, double radius) {
    return Ellipsoid{dim, Matrix::identity(dim), radius, std::vector<double>(dim, 0.0)};
}

bool Ellipsoid::contains_point(const std::vector<double>& z, double rel_slack) const {
    if (z.size() != dim)
        throw DimensionMismatch("Ellipsoid: point dimension does not match");
    std::vector<double> d(dim);
    for (std::size_t i = 0; i < dim; ++i)
        d[i] = z[i] - center[i];
    return quadratic_form(Q, d) <= R * R * (1.0 + rel_slack);
}

Ellipsoid project_ellipsoid(const Ellipsoid& e, const BlockPartition& p, Block side,
                            const Tolerance& tol) {
    if (e.dim != p.dim())
        throw DimensionMismatch("project_ellipsoid: partition does not match the ellipsoid");
    const PartitionedMatrix pm = partition(e.Q, p);
    const Matrix shape = schur(pm, side == Block::A ? Block::B : Block::A, tol);
    const std::vector<double> cb = p.to_block(e.center);
    const std::size_t offset = side == Block::A ? 0 : 2 * p.n_A;
    const std::size_t d = side == Block::A ? 2 * p.n_A : 2 * p.n_B;
    std::vector<double> center(cb.begin() + offset, cb.begin() + offset + d);
    return Ellipsoid{d, shape, e.R, std::move(center)};
}

double volume(const Ellipsoid& e) {
    const double dq = det(e.Q);
    if (dq <= 0.0)
        throw Singular("volume: shape matrix is not positive definite");
    const double d = static_cast<double>(e.dim);
    const double unit_ball = std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    return unit_ball * std::pow(e.R, d) / std::sqrt(dq);
}

bool contains(const Ellipsoid& outer, const Ellipsoid& inner, std::size_t samples,
              std::uint64_t seed) {
    if (outer.dim != inner.dim)
        throw DimensionMismatch("contains: ellipsoid dimensions differ");
    const std::size_t d = inner.dim;
    const SymEig eig = sym_eig(inner.Q);
    if (eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite("contains: inner shape matrix is not positive definite");
    // W = Q^{-1/2}; boundary point z = c + R W u / |u|
    Matrix w(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                s += eig.eigenvectors(i, k) * eig.eigenvectors(j, k) /
                     std::sqrt(eig.eigenvalues[k]);
            w(i, j) = s;
            w(j, i) = s;
        }
    std::vector<double> u(d), z(d);
    for (std::size_t s = 0; s < samples; ++s) {
        CounterRng rng{splitmix64(seed ^ splitmix64(s + 1))};
        double nrm = 0.0;
        do {
            nrm = 0.0;
            for (std::size_t i = 0; i + 1 < d; i += 2)
                gaussian_pair(rng, u[i], u[i + 1]);
            if (d % 2 != 0) {
                double spare = 0.0;
                gaussian_pair(rng, u[d - 1], spare);
            }
            for (std::size_t i = 0; i < d; ++i)
                nrm += u[i] * u[i];
            nrm = std::sqrt(nrm);
        } while (nrm < 1e-12);
        for (std::size_t i = 0; i < d; ++i) {
            double s2 = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                s2 += w(i, k) * u[k];
            z[i] = inner.center[i] + inner.R * s2 / nrm;
        }
        if (!outer.contains_point(z, kContainmentSlack))
            return false;
    }
    return true;
}

std::uint64_t derive_seed(std::uint64_t master, const char* label, std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a over the label
    for (const char* c = label; *c; ++c)
        h = (h ^ static_cast<unsigned char>(*c)) * 1099511628211ULL;
    return splitmix64(master ^ splitmix64(h) ^ splitmix64(index * 0x9E3779B97F4A7C15ULL + 1));
}

} // namespace sympball
