#include "sympball/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sympball {

namespace {

// Pairing consistency of the two |K u| values within one eigenvalue pair.
constexpr double kPairRelTol = 1e-6;
// Residual norm below which a candidate vector counts as consumed.
constexpr double kConsumedNorm = 0.3;
// Rank threshold for Gram-Schmidt orthonormalization, relative to the
// candidate column's own norm.
constexpr double kRankRelTol = 1e-8;

std::vector<double> column(const Matrix& m, std::size_t j) {
    std::vector<double> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        v[i] = m(i, j);
    return v;
}

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double vnorm(const std::vector<double>& a) { return std::sqrt(vdot(a, a)); }

void subtract_projection(std::vector<double>& w, const std::vector<double>& u) {
    const double c = vdot(u, w);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] -= c * u[i];
}

void normalize(std::vector<double>& w) {
    const double n = vnorm(w);
    for (double& x : w)
        x /= n;
}

// Two Gram-Schmidt passes against an orthonormal set.
void orthogonalize_against(std::vector<double>& w,
                           const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : basis)
            subtract_projection(w, u);
}

SymEig pd_eig(const Matrix& m, std::size_t dim, const Tolerance& tol, const char* op) {
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionMismatch(std::string(op) + ": expected a square matrix of the stated size");
    SymEig eig = sym_eig(m, tol);
    if (eig.eigenvalues.front() <= tol.abs + tol.rel * norm_max(m))
        throw NotPositiveDefinite(std::string(op) + ": matrix is not positive definite");
    return eig;
}

Matrix spectral_power(const SymEig& eig, double exponent) {
    const std::size_t n = eig.eigenvectors.rows();
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.eigenvectors(i, k) * std::pow(eig.eigenvalues[k], exponent) *
                     eig.eigenvectors(j, k);
            r(i, j) = s;
            r(j, i) = s;
        }
    return r;
}

Matrix antisymmetrize(const Matrix& k) {
    Matrix r(k.rows(), k.cols());
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j)
            r(i, j) = 0.5 * (k(i, j) - k(j, i));
    return r;
}

// Symmetric embedding [[0, -K], [K, 0]] of the Hermitian matrix iK for a
// skew-symmetric K. Its spectrum is {+-mu_j} doubled, where the
// eigenvalues of K are +-i mu_j; an eigenvector (x; y) at mu > 0
// satisfies K x = mu y and K y = -mu x with |x| = |y| and x orthogonal
// to y. Solving this (exactly assembled) symmetric problem sidesteps the
// precision loss of squaring K.
Matrix skew_embedding(const Matrix& k) {
    const std::size_t d = k.rows();
    Matrix e(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            e(i, d + j) = -k(i, j);
            e(d + i, j) = k(i, j);
        }
    return e;
}

// The n moduli mu_1 <= ... <= mu_n (each doubled in the embedding), with
// the matching embedding eigenvectors: 2 per modulus, ascending order.
struct SkewPairs {
    std::vector<double> moduli;
    std::vector<std::vector<double>> vectors; // 4n-dimensional, 2 per modulus
};

SkewPairs skew_pairs(const Matrix& k, std::size_t n, const char* op) {
    const SymEig eig = sym_eig(skew_embedding(k));
    SkewPairs out;
    // eigenvalues ascending over 4n entries: the positive half starts at 2n
    for (std::size_t i = 0; i < n; ++i) {
        const double a = eig.eigenvalues[2 * n + 2 * i];
        const double b = eig.eigenvalues[2 * n + 2 * i + 1];
        const double ref = std::max({std::abs(a), std::abs(b), 1e-300});
        if (a <= 0.0 || std::abs(a - b) > kPairRelTol * ref)
            throw PairingFailed(std::string(op) +
                                ": odd multiplicity in the paired spectrum");
        out.moduli.push_back(0.5 * (a + b));
        out.vectors.push_back(column(eig.eigenvectors, 2 * n + 2 * i));
        out.vectors.push_back(column(eig.eigenvectors, 2 * n + 2 * i + 1));
    }
    return out;
}

Matrix expm(const Matrix& a, int extra_squarings = 0) {
    const std::size_t n = a.rows();
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row += std::abs(a(i, j));
        nrm = std::max(nrm, row);
    }
    int squarings = extra_squarings;
    double scaled = nrm;
    while (scaled > 0.25) {
        scaled *= 0.5;
        ++squarings;
    }
    Matrix x = scale(a, std::pow(0.5, squarings));
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = scale(matmul(term, x), 1.0 / k);
        result = add(result, term);
        if (norm_max(term) < 1e-18 * std::max(1.0, norm_max(result)))
            break;
    }
    for (int s = 0; s < squarings; ++s)
        result = matmul(result, result);
    return result;
}

} // namespace

Matrix standard_J(std::size_t n) {
    Matrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

bool is_symplectic(const Matrix& s, std::size_t n, const Tolerance& tol) {
    if (s.rows() != 2 * n || s.cols() != 2 * n)
        throw DimensionMismatch("is_symplectic: matrix must be 2n x 2n");
    const Matrix j = standard_J(n);
    const Matrix r = sub(matmul(transpose(s), matmul(j, s)), j);
    const double nm = norm_max(s);
    return norm_max(r) <= tol.abs + tol.rel * nm * nm;
}

SymplecticSpectrum symplectic_spectrum(const Matrix& m, std::size_t n,
                                       const Tolerance& tol) {
    const SymEig eig = pd_eig(m, 2 * n, tol, "symplectic_spectrum");
    const Matrix root = spectral_power(eig, 0.5);
    const Matrix k = antisymmetrize(matmul(root, matmul(standard_J(n), root)));
    // K = M^{1/2} J M^{1/2} has eigenvalues +-i lambda_j; the moduli come
    // out ascending.
    return skew_pairs(k, n, "symplectic_spectrum").moduli;
}

WilliamsonDecomposition williamson(const Matrix& m, std::size_t n,
                                   const Tolerance& tol) {
    const SymEig eig = pd_eig(m, 2 * n, tol, "williamson");
    const Matrix inv_root = spectral_power(eig, -0.5);
    const Matrix root = spectral_power(eig, 0.5);
    const Matrix k = antisymmetrize(matmul(inv_root, matmul(standard_J(n), inv_root)));

    // K' = M^{-1/2} J M^{-1/2} has moduli 1/lambda; walking them in
    // descending order yields the spectrum ascending. Each embedding
    // eigenvector (x; y) contributes the plane span(x, Kx); inside a
    // degenerate cluster any such x still satisfies the pair relations, so
    // Gram-Schmidt against the pairs already chosen is all that is needed.
    const SkewPairs raw = skew_pairs(k, n, "williamson");

    std::vector<std::vector<double>> chosen; // u_0, v_0, u_1, v_1, ...
    std::vector<double> lambda;              // ascending
    for (std::size_t pair = n; pair-- > 0 && lambda.size() < n;) {
        for (int rep = 0; rep < 2 && lambda.size() < n; ++rep) {
            const std::vector<double>& w = raw.vectors[2 * pair + rep];
            std::vector<double> u(w.begin(), w.begin() + 2 * n);
            orthogonalize_against(u, chosen);
            if (vnorm(u) < kConsumedNorm)
                continue; // plane already covered
            normalize(u);
            std::vector<double> ku = matvec(k, u);
            const double mod = vnorm(ku); // = 1/lambda for an eigenvector
            if (!(mod > 0.0))
                throw DegenerateClusterFailure("williamson: skew pairing collapsed");
            std::vector<double> v(ku.size());
            for (std::size_t i = 0; i < ku.size(); ++i)
                v[i] = -ku[i] / mod;
            orthogonalize_against(v, chosen);
            subtract_projection(v, u);
            if (vnorm(v) < 0.5)
                throw DegenerateClusterFailure(
                    "williamson: could not complete a u/v pair inside an eigenvalue cluster");
            normalize(v);
            // self-consistent modulus: the (u, v) entry of O^T K' O
            const double mu = -vdot(v, ku);
            if (!(mu > 0.0))
                throw DegenerateClusterFailure("williamson: pair orientation collapsed");
            chosen.push_back(u);
            chosen.push_back(std::move(v));
            lambda.push_back(1.0 / mu);
        }
    }
    if (lambda.size() != n)
        throw DegenerateClusterFailure("williamson: ran out of eigenvectors while pairing");

    // measured moduli can swap the order inside a degenerate cluster;
    // sort whole pairs so the spectrum is ascending
    std::vector<std::size_t> order(n);
    for (std::size_t r = 0; r < n; ++r)
        order[r] = r;
    std::stable_sort(order.begin(), order.end(),
                     [&lambda](std::size_t a, std::size_t b) { return lambda[a] < lambda[b]; });

    Matrix o(2 * n, 2 * n);
    std::vector<double> sorted_lambda(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t src = order[r];
        sorted_lambda[r] = lambda[src];
        for (std::size_t i = 0; i < 2 * n; ++i) {
            o(i, r) = chosen[2 * src][i];
            o(i, n + r) = chosen[2 * src + 1][i];
        }
    }
    lambda = std::move(sorted_lambda);

    // Internal postcondition: O orthogonal and O^T K O = [[0, L^-1], [-L^-1, 0]].
    const Matrix oto = matmul(transpose(o), o);
    if (norm_max(sub(oto, Matrix::identity(2 * n))) > 1e-8)
        throw DegenerateClusterFailure("williamson: pairing lost orthonormality");
    Matrix target(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        target(r, n + r) = 1.0 / lambda[r];
        target(n + r, r) = -1.0 / lambda[r];
    }
    const Matrix oko = matmul(transpose(o), matmul(k, o));
    if (norm_max(sub(oko, target)) > 1e-7 * std::max(1.0, norm_max(k)))
        throw DegenerateClusterFailure(
            "williamson: canonical skew form failed on a repeated-eigenvalue cluster");

    // S = D^{-1/2} O^T M^{1/2}; then S^T D S = M and S^T J S = J.
    Matrix d_inv_root_ot = transpose(o);
    for (std::size_t r = 0; r < 2 * n; ++r) {
        const double f = 1.0 / std::sqrt(lambda[r % n]);
        for (std::size_t c = 0; c < 2 * n; ++c)
            d_inv_root_ot(r, c) *= f;
    }
    Matrix s = matmul(d_inv_root_ot, root);

    Matrix d(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        d(r, r) = lambda[r];
        d(n + r, n + r) = lambda[r];
    }
    return WilliamsonDecomposition{std::move(s), std::move(lambda), std::move(d)};
}

bool inverse_spectrum_check(const Matrix& m, std::size_t n, const Tolerance& tol) {
    const SymplecticSpectrum direct = symplectic_spectrum(m, n, tol);
    const SymplecticSpectrum inverse = symplectic_spectrum(inv(m), n, tol);
    for (std::size_t j = 0; j < n; ++j) {
        const double product = inverse[j] * direct[n - 1 - j];
        if (std::abs(product - 1.0) > tol.abs + tol.rel)
            return false;
    }
    return true;
}

Matrix hermitian_embedding(const Matrix& m, std::size_t n) {
    if (m.rows() != 2 * n || m.cols() != 2 * n)
        throw DimensionMismatch("hermitian_embedding: matrix must be 2n x 2n");
    const Matrix j = standard_J(n);
    Matrix e(4 * n, 4 * n);
    for (std::size_t r = 0; r < 2 * n; ++r)
        for (std::size_t c = 0; c < 2 * n; ++c) {
            e(r, c) = m(r, c);
            e(2 * n + r, 2 * n + c) = m(r, c);
            e(r, 2 * n + c) = -j(r, c);
            e(2 * n + r, c) = j(r, c);
        }
    return e;
}

Lemma1Result lemma1_check(const Matrix& m, std::size_t n, const Tolerance& tol) {
    const SymplecticSpectrum spec = symplectic_spectrum(m, n, tol);
    const double slack = tol.abs + tol.rel * std::max(1.0, norm_max(m));
    Lemma1Result out{};
    out.min_spec = spec.front();
    out.psd = out.min_spec >= 1.0 - slack;

    const Matrix embedding = hermitian_embedding(m, n);
    const SymEig eig = sym_eig(embedding, tol);
    out.embedding_min_eig = eig.eigenvalues.front();
    out.embedding_psd =
        out.embedding_min_eig >= -(tol.abs + tol.rel * norm_max(embedding));
    return out;
}

Matrix random_symplectic(std::size_t n, double spread, std::uint64_t seed) {
    if (n < 1)
        throw DimensionMismatch("random_symplectic: n must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sigma = spread / std::sqrt(static_cast<double>(2 * n));
    Matrix h(2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = i; j < 2 * n; ++j) {
            const double v = sigma * gauss(rng);
            h(i, j) = v;
            h(j, i) = v;
        }
    const Matrix a = matmul(standard_J(n), h);
    Matrix s = expm(a);
    // Symplecticity is the only contract; retry with a longer squaring
    // schedule in the (rare) event the first pass misses it.
    for (int extra = 4; extra <= 12 && !is_symplectic(s, n); extra += 4)
        s = expm(a, extra);
    return s;
}

ComplexSubspace complex_subspace_from_span(const Matrix& vectors, const Tolerance& tol) {
    if (vectors.rows() % 2 != 0)
        throw DimensionMismatch("complex_subspace_from_span: ambient dimension must be even");
    const std::size_t n = vectors.rows() / 2;

    Matrix b = orthonormal_columns(vectors, kRankRelTol);
    if (b.cols() % 2 != 0)
        throw NotComplex("complex_subspace_from_span: span has odd dimension");

    // J-invariance through the projector commutator.
    const Matrix p = matmul(b, transpose(b));
    const Matrix j = standard_J(n);
    const Matrix comm = sub(matmul(p, j), matmul(j, p));
    if (norm_max(comm) > tol.abs + tol.rel)
        throw NotComplex("complex_subspace_from_span: span is not J-invariant");

    const std::size_t k = b.cols() / 2;
    return ComplexSubspace{n, k, std::move(b)};
}

Matrix unitary_reduction(const ComplexSubspace& v, const Tolerance& tol) {
    const std::size_t n = v.ambient_n;
    const std::size_t k = v.k;
    if (v.basis.rows() != 2 * n || v.basis.cols() != 2 * k || k < 1 || k > n)
        throw DimensionMismatch("unitary_reduction: inconsistent subspace record");
    const Matrix j = standard_J(n);

    // Gram-Schmidt under the Hermitian pairing <u,w> = u.w + i(Ju.w):
    // each accepted e consumes the real plane span(e, Je).
    std::vector<std::vector<double>> real_span; // e_1, Je_1, e_2, Je_2, ...
    std::vector<std::vector<double>> es;
    for (std::size_t c = 0; c < 2 * k && es.size() < k; ++c) {
        std::vector<double> w = column(v.basis, c);
        orthogonalize_against(w, real_span);
        if (vnorm(w) < kConsumedNorm)
            continue;
        normalize(w);
        es.push_back(w);
        real_span.push_back(w);
        real_span.push_back(matvec(j, w));
    }
    if (es.size() < k)
        throw GramSchmidtBreakdown("unitary_reduction: lost rank inside the subspace");

    // Complete with a complex orthonormal basis of the orthogonal complement,
    // drawn greedily from the coordinate axes.
    std::vector<std::vector<double>> gs;
    while (gs.size() < n - k) {
        std::vector<double> best;
        double best_norm = -1.0;
        for (std::size_t axis = 0; axis < 2 * n; ++axis) {
            std::vector<double> w(2 * n, 0.0);
            w[axis] = 1.0;
            orthogonalize_against(w, real_span);
            const double nm = vnorm(w);
            if (nm > best_norm) {
                best_norm = nm;
                best = std::move(w);
            }
        }
        if (best_norm < 1e-6)
            throw GramSchmidtBreakdown("unitary_reduction: could not complete the basis");
        normalize(best);
        gs.push_back(best);
        real_span.push_back(best);
        real_span.push_back(matvec(j, best));
    }

    // Columns (x_1..x_n | p_1..p_n) -> (e, g | -Je, -Jg); the sign makes
    // U^T J U = J with J = [[0, I], [-I, 0]].
    Matrix u(2 * n, 2 * n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::vector<double>& base = c < k ? es[c] : gs[c - k];
        const std::vector<double> jbase = matvec(j, base);
        for (std::size_t i = 0; i < 2 * n; ++i) {
            u(i, c) = base[i];
            u(i, n + c) = -jbase[i];
        }
    }

    const double check_tol = std::max(tol.abs + tol.rel, 1e-9);
    if (norm_max(sub(matmul(transpose(u), u), Matrix::identity(2 * n))) > check_tol)
        throw GramSchmidtBreakdown("unitary_reduction: output is not orthogonal");
    if (norm_max(sub(matmul(transpose(u), matmul(j, u)), j)) > check_tol)
        throw GramSchmidtBreakdown("unitary_reduction: output is not symplectic");
    return u;
}

} // namespace sympball
