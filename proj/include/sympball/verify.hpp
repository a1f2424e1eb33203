#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympball/balls.hpp"

namespace sympball {

/// One exactness functional classified against its own thresholds.
enum class Verdict { Exact, Borderline, Inexact };

Verdict classify(double value, double exact_at, double inexact_beyond);

/// The four equivalent exactness criteria evaluated side by side:
/// the off-diagonal block X, the spectrum deviation max|lambda_A - 1|,
/// the J-invariance defect of S^T applied to the coordinate subspace, and
/// the volume ratio deviation. The spectrum and volume functionals respond
/// quadratically to a perturbation away from a split S, so they carry
/// tighter thresholds than the two linear ones.
struct ExactnessAgreement {
    Verdict x;
    Verdict spectrum;
    Verdict complexity;
    Verdict volume;
    double complexity_defect;
    bool borderline; // some functional landed inside its band
    bool agree;      // non-borderline cases: all four verdicts coincide
};

ExactnessAgreement exactness_agreement(const Matrix& s, std::size_t n_A,
                                       const ProjectionAnalysis& a);

struct CampaignConfig {
    std::vector<std::size_t> n_values{1, 2, 3};
    std::size_t cases_per_n{100};
    double spread{1.0};
    std::uint64_t seed{1};
    std::size_t samples{100000};
    double radius{1.0};
};

struct CaseRecord {
    std::size_t index;
    std::size_t n;
    std::size_t n_A;
    double spread;
    std::string kind; // "generic" or "block-diagonal"
    std::vector<double> lambda_A;
    double X_norm;
    double X_rel;
    bool exact;
    bool borderline;
    double vol_projected;
    double vol_bound;
    bool containment;
    bool passed;
    std::vector<std::string> failures;
};

struct CampaignReport {
    CampaignConfig config;
    std::size_t run{0};
    std::size_t passed{0};
    std::size_t failed{0};
    std::size_t borderline{0};
    std::vector<CaseRecord> cases;
    double wall_time_s{0.0};
};

/// Runs the module invariants of symplectic, projection and balls on
/// randomly generated cases at the configured scale. Deterministic in the
/// seed: every random stream is keyed by (seed, purpose label, index).
CampaignReport run_campaign(const CampaignConfig& config);

/// Serialized as {"report": {...}, "wall_time_s": t}: the "report" object
/// is byte-identical across reruns with the same flags.
std::string report_to_json_text(const CampaignReport& r);

/// Assembles the global-ordering direct sum of S_A in Sp(n_A) and S_B in
/// Sp(n_B); always exact under analyze_split.
Matrix block_diagonal_symplectic(const Matrix& s_A, const Matrix& s_B);

/// Random SPD matrix with eigenvalues log-uniform in [lo, hi];
/// deterministic in the seed.
Matrix random_spd(std::size_t dim, double lo, double hi, std::uint64_t seed);

} // namespace sympball
