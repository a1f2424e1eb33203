#pragma once

#include <cstdint>
#include <vector>

#include "sympball/matrix.hpp"

namespace sympball {

/// Standard symplectic matrix J = [[0, I_n], [-I_n, 0]] in the global
/// coordinate ordering (x_1..x_n, p_1..p_n). The form is sigma(z, z') = Jz.z'.
Matrix standard_J(std::size_t n);

/// True iff ||S^T J S - J||_max <= abs + rel * ||S||_max^2.
bool is_symplectic(const Matrix& s, std::size_t n, const Tolerance& tol = {});

/// Ascending, strictly positive sequence lambda_1 <= ... <= lambda_n such
/// that the eigenvalues of JM are +-i*lambda_j.
using SymplecticSpectrum = std::vector<double>;

/// Computed through the skew-symmetric K = M^{1/2} J M^{1/2}: the symmetric
/// PSD matrix -K^2 has eigenvalues {lambda_j^2} with even multiplicities.
/// Throws PairingFailed if the pairing breaks beyond tolerance.
SymplecticSpectrum symplectic_spectrum(const Matrix& m, std::size_t n,
                                       const Tolerance& tol = {});

/// Williamson normal form M = S^T D S with S symplectic and
/// D = diag(Lambda, Lambda) carrying the symplectic spectrum.
struct WilliamsonDecomposition {
    Matrix S;
    std::vector<double> lambda; // ascending
    Matrix D;                   // diag(lambda, lambda), exact by construction
};

WilliamsonDecomposition williamson(const Matrix& m, std::size_t n,
                                   const Tolerance& tol = {});

/// Checks the order-reversed reciprocal pairing between the symplectic
/// spectra of M and M^{-1}: lambda_j(M^{-1}) * lambda_{n+1-j}(M) = 1.
bool inverse_spectrum_check(const Matrix& m, std::size_t n,
                            const Tolerance& tol = {});

/// Real symmetric embedding [[M, -J], [J, M]] of the Hermitian matrix M + iJ.
/// Eigenvalues of the embedding are those of M + iJ with doubled multiplicity.
Matrix hermitian_embedding(const Matrix& m, std::size_t n);

/// Positive semi-definiteness of M + iJ, decided two ways: via the
/// symplectic spectrum (psd <=> min lambda >= 1) and via the real embedding.
struct Lemma1Result {
    bool psd;                 // min lambda_sigma >= 1 within tolerance
    double min_spec;          // smallest symplectic eigenvalue of M
    bool embedding_psd;       // PSD verdict on [[M, -J], [J, M]]
    double embedding_min_eig; // smallest eigenvalue of the embedding
};

Lemma1Result lemma1_check(const Matrix& m, std::size_t n, const Tolerance& tol = {});

/// exp(J H) for a random symmetric H with entries scaled by `spread`.
/// Deterministic in (n, spread, seed); the result always passes
/// is_symplectic at 1e-9 (the exponential retries with more scaling
/// steps if the first attempt falls short).
Matrix random_symplectic(std::size_t n, double spread, std::uint64_t seed);

/// A J-invariant ("complex") subspace of R^{2n} with dim = 2k, carried by an
/// orthonormal basis (columns).
struct ComplexSubspace {
    std::size_t ambient_n; // degrees of freedom of the ambient space
    std::size_t k;         // complex dimension; dim V = 2k
    Matrix basis;          // 2n x 2k, orthonormal columns spanning V
};

/// Orthonormalizes the span of `vectors` (2n x m) and verifies J-invariance
/// through the projector commutator ||PJ - JP||_max.
ComplexSubspace complex_subspace_from_span(const Matrix& vectors,
                                           const Tolerance& tol = {});

/// Builds a symplectic and orthogonal U mapping the coordinate subspace
/// span(x_1..x_k, p_1..p_k) onto V. Uses Gram-Schmidt under the Hermitian
/// pairing <u,v> = u.v + i(Ju.v), completed on the orthogonal complement.
Matrix unitary_reduction(const ComplexSubspace& v, const Tolerance& tol = {});

} // namespace sympball
