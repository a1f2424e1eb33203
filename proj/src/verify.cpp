#include "sympball/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include <json.hpp>

#include "sympball/io.hpp"

namespace sympball {

namespace {

// Thresholds (exact-at, inexact-beyond) for the four functionals. The X
// and J-invariance defects respond linearly to a perturbation of a split
// S; the spectrum and volume deviations respond quadratically, hence the
// tighter bands.
constexpr double kLinExact = 1e-8, kLinInexact = 1e-6;
constexpr double kQuadExact = 1e-11, kQuadInexact = 1e-8;

ComplexSubspace coordinate_subspace(std::size_t n, std::size_t n_A) {
    Matrix basis(2 * n, 2 * n_A);
    for (std::size_t i = 0; i < n_A; ++i) {
        basis(i, i) = 1.0;             // x_i axis
        basis(n + i, n_A + i) = 1.0;   // p_i axis
    }
    return ComplexSubspace{n, n_A, std::move(basis)};
}

} // namespace

Verdict classify(double value, double exact_at, double inexact_beyond) {
    if (value <= exact_at)
        return Verdict::Exact;
    if (value > inexact_beyond)
        return Verdict::Inexact;
    return Verdict::Borderline;
}

ExactnessAgreement exactness_agreement(const Matrix& s, std::size_t n_A,
                                       const ProjectionAnalysis& a) {
    double spec_dev = 0.0;
    for (double lam : a.lambda_A)
        spec_dev = std::max(spec_dev, std::abs(lam - 1.0));
    const double vol_dev = std::abs(a.vol_projected / a.vol_bound - 1.0);
    const double defect = image_complexity_defect(s, coordinate_subspace(s.rows() / 2, n_A));

    ExactnessAgreement g{};
    g.x = classify(a.X_rel, kLinExact, kLinInexact);
    g.spectrum = classify(spec_dev, kQuadExact, kQuadInexact);
    g.complexity = classify(defect, kLinExact, kLinInexact);
    g.volume = classify(vol_dev, kQuadExact, kQuadInexact);
    g.complexity_defect = defect;
    g.borderline = g.x == Verdict::Borderline || g.spectrum == Verdict::Borderline ||
                   g.complexity == Verdict::Borderline || g.volume == Verdict::Borderline;
    g.agree = g.borderline ||
              (g.x == g.spectrum && g.x == g.complexity && g.x == g.volume);
    return g;
}

Matrix block_diagonal_symplectic(const Matrix& s_A, const Matrix& s_B) {
    const std::size_t n_A = s_A.rows() / 2;
    const std::size_t n_B = s_B.rows() / 2;
    const BlockPartition part(n_A, n_B);
    Matrix blocked(2 * (n_A + n_B), 2 * (n_A + n_B));
    for (std::size_t i = 0; i < 2 * n_A; ++i)
        for (std::size_t j = 0; j < 2 * n_A; ++j)
            blocked(i, j) = s_A(i, j);
    for (std::size_t i = 0; i < 2 * n_B; ++i)
        for (std::size_t j = 0; j < 2 * n_B; ++j)
            blocked(2 * n_A + i, 2 * n_A + j) = s_B(i, j);
    return part.to_global(blocked);
}

Matrix random_spd(std::size_t dim, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(std::log(lo), std::log(hi));
    Matrix g(dim, dim);
    Matrix q = Matrix::identity(dim);
    for (int attempt = 0; attempt < 8; ++attempt) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                g(i, j) = gauss(rng);
        const Matrix ortho = orthonormal_columns(g, 1e-6);
        if (ortho.cols() == dim) {
            q = ortho;
            break;
        }
    }
    std::vector<double> eigs(dim);
    for (double& e : eigs)
        e = std::exp(uni(rng));
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                s += q(i, k) * eigs[k] * q(j, k);
            m(i, j) = s;
            m(j, i) = s;
        }
    return m;
}

namespace {

void run_case(const CampaignConfig& cfg, std::size_t n, std::size_t i,
              std::size_t index, CaseRecord& rec) {
    rec.index = index;
    rec.n = n;
    rec.spread = cfg.spread;
    auto fail = [&rec](bool ok, const std::string& msg) {
        if (!ok)
            rec.failures.push_back(msg);
    };

    const bool block_kind = n >= 2 && i % 4 == 3;
    rec.kind = block_kind ? "block-diagonal" : "generic";
    Matrix s = Matrix::identity(2 * n);
    if (block_kind) {
        rec.n_A = 1 + i % (n - 1);
        const std::size_t n_B = n - rec.n_A;
        s = block_diagonal_symplectic(
            random_symplectic(rec.n_A, cfg.spread, derive_seed(cfg.seed, "case-SA", index)),
            random_symplectic(n_B, cfg.spread, derive_seed(cfg.seed, "case-SB", index)));
    } else {
        rec.n_A = 1 + i % n;
        s = random_symplectic(n, cfg.spread, derive_seed(cfg.seed, "case-S", index));
    }

    const Matrix m = inv(matmul(s, transpose(s)));
    const Matrix j = standard_J(n);

    // Williamson round-trip on M = (S S^T)^{-1}.
    const WilliamsonDecomposition wd = williamson(m, n);
    fail(norm_max(sub(matmul(transpose(wd.S), matmul(wd.D, wd.S)), m)) <=
             1e-8 * std::max(1.0, norm_max(m)),
         "williamson: S^T D S != M");
    fail(norm_max(sub(matmul(transpose(wd.S), matmul(j, wd.S)), j)) <= 1e-8,
         "williamson: S^T J S != J");

    // All symplectic eigenvalues of (S S^T)^{-1} are 1.
    const SymplecticSpectrum ones = symplectic_spectrum(m, n);
    double ones_dev = 0.0;
    for (double lam : ones)
        ones_dev = std::max(ones_dev, std::abs(lam - 1.0));
    fail(ones_dev <= 1e-8, "symplectic spectrum of (S S^T)^{-1} is not all ones");

    // Lemma-1 route agreement on a matrix scaled to straddle min lambda = 1.
    Matrix m2 = random_spd(2 * n, 0.2, 5.0, derive_seed(cfg.seed, "case-M2", index));
    {
        const SymplecticSpectrum raw = symplectic_spectrum(m2, n);
        std::mt19937_64 trg(derive_seed(cfg.seed, "case-target", index));
        std::uniform_real_distribution<double> uni(std::log(0.5), std::log(2.0));
        m2 = scale(m2, std::exp(uni(trg)) / raw.front());
    }
    const Lemma1Result l1 = lemma1_check(m2, n);
    fail(l1.psd == l1.embedding_psd, "lemma-1 routes disagree");
    const Lemma1Result l1m = lemma1_check(m, n);
    fail(l1m.psd && l1m.embedding_psd, "lemma-1 rejects (S S^T)^{-1}");

    // Inverse-spectrum pairing and monotonicity.
    fail(inverse_spectrum_check(m2, n, Tolerance{1e-8, 1e-12}),
         "inverse-spectrum pairing failed");
    {
        Matrix bump = random_spd(2 * n, 0.05, 1.0, derive_seed(cfg.seed, "case-bump", index));
        const SymplecticSpectrum base = symplectic_spectrum(m2, n);
        const SymplecticSpectrum grown = symplectic_spectrum(add(m2, bump), n);
        for (std::size_t k = 0; k < n; ++k)
            fail(base[k] <= grown[k] + 1e-10, "spectrum monotonicity violated");
    }

    // Schur identity against the direct inverse.
    if (n >= 2) {
        const BlockPartition part2(1 + index % (n - 1), n - 1 - index % (n - 1));
        const PartitionedMatrix pm2 = partition(m2, part2);
        const Matrix lhs = inv(schur(pm2, Block::B));
        const PartitionedMatrix inv_blocks = partition(inv(m2), part2);
        fail(norm_max(sub(lhs, inv_blocks.AA)) <= 1e-9 * std::max(1.0, norm_max(inv_blocks.AA)),
             "Schur complement does not match the inverse's AA block");
    }

    // The projection engine.
    const ProjectionAnalysis a = analyze_split(s, rec.n_A, cfg.radius);
    rec.lambda_A = a.lambda_A;
    rec.X_norm = a.X_norm;
    rec.X_rel = a.X_rel;
    rec.exact = a.exact;
    rec.borderline = a.borderline;
    rec.vol_projected = a.vol_projected;
    rec.vol_bound = a.vol_bound;

    double lam_max = 0.0;
    for (double lam : a.lambda_A)
        lam_max = std::max(lam_max, lam);
    fail(lam_max <= 1.0 + 1e-8, "lambda_A exceeds 1");
    fail(a.vol_projected >= a.vol_bound - 1e-9, "projected volume below the bound");
    fail(std::abs(volume(a.inscribed) - a.vol_bound) <= 1e-9 * a.vol_bound,
         "inscribed ball volume is off");

    rec.containment = contains(a.projected, a.inscribed, cfg.samples,
                               derive_seed(cfg.seed, "case-mc", index));
    fail(rec.containment, "inscribed ball escapes the projection");

    if (rec.n_A < n) {
        // Lemma-1 bridge: (M/M_BB)^{-1} + i J_A is PSD.
        fail(is_psd(hermitian_embedding(inv(a.projected.Q), rec.n_A), Tolerance{1e-7, 1e-9}),
             "embedding of (M/M_BB)^{-1} + iJ_A is not PSD");
        const ExactnessAgreement agr = exactness_agreement(s, rec.n_A, a);
        rec.borderline = rec.borderline || agr.borderline;
        fail(agr.agree, "exactness criteria disagree on a non-borderline case");
    }
    if (block_kind)
        fail(a.exact, "block-diagonal case not detected as exact");

    rec.passed = rec.failures.empty();
}

} // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    CampaignReport report;
    report.config = config;
    std::size_t index = 0;
    for (std::size_t n : config.n_values) {
        for (std::size_t i = 0; i < config.cases_per_n; ++i, ++index) {
            CaseRecord rec{};
            run_case(config, n, i, index, rec);
            report.run += 1;
            report.passed += rec.passed ? 1 : 0;
            report.failed += rec.passed ? 0 : 1;
            report.borderline += rec.borderline ? 1 : 0;
            report.cases.push_back(std::move(rec));
        }
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string report_to_json_text(const CampaignReport& r) {
    nlohmann::ordered_json body;
    body["seed"] = r.config.seed;
    body["config"] = {{"n", r.config.n_values},
                      {"cases_per_n", r.config.cases_per_n},
                      {"spread", r.config.spread},
                      {"samples", r.config.samples},
                      {"radius", r.config.radius}};
    body["counts"] = {{"run", r.run},
                      {"passed", r.passed},
                      {"failed", r.failed},
                      {"borderline", r.borderline}};
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const CaseRecord& c : r.cases) {
        nlohmann::ordered_json jc;
        jc["index"] = c.index;
        jc["n"] = c.n;
        jc["n_A"] = c.n_A;
        jc["spread"] = c.spread;
        jc["kind"] = c.kind;
        jc["lambda_A"] = c.lambda_A;
        jc["X_norm"] = c.X_norm;
        jc["X_rel"] = c.X_rel;
        jc["exact"] = c.exact;
        jc["borderline"] = c.borderline;
        jc["vol_projected"] = c.vol_projected;
        jc["vol_bound"] = c.vol_bound;
        jc["containment"] = c.containment;
        jc["passed"] = c.passed;
        jc["failures"] = c.failures;
        cases.push_back(std::move(jc));
    }
    body["cases"] = std::move(cases);
    nlohmann::ordered_json top;
    top["report"] = std::move(body);
    top["wall_time_s"] = r.wall_time_s;
    return top.dump(2) + "\n";
}

} // namespace sympball
