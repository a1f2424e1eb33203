#include <doctest.h>

#include <json.hpp>

#include "sympball/verify.hpp"
#include "test_util.hpp"

using namespace sympball;
using testutil::max_abs_diff;

TEST_CASE("block_diagonal_symplectic assembles a symplectic matrix") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Matrix s = block_diagonal_symplectic(random_symplectic(2, 1.0, seed),
                                                   random_symplectic(1, 1.0, seed + 10));
        CHECK(is_symplectic(s, 3));
        // A-block coordinates (x1, x2, p1, p2) never touch B coordinates
        CHECK(s(0, 2) == 0.0);
        CHECK(s(2, 0) == 0.0);
        CHECK(s(5, 1) == 0.0);
    }
}

TEST_CASE("random_spd generates what it says") {
    const Matrix m = random_spd(6, 0.1, 10.0, 99);
    CHECK(is_symmetric(m));
    const SymEig eig = sym_eig(m);
    CHECK(eig.eigenvalues.front() >= 0.1 * (1 - 1e-9));
    CHECK(eig.eigenvalues.back() <= 10.0 * (1 + 1e-9));
    CHECK(max_abs_diff(random_spd(6, 0.1, 10.0, 99), m) == 0.0);
    CHECK(norm_max(sub(random_spd(6, 0.1, 10.0, 100), m)) > 1e-6);
}

TEST_CASE("classify applies the bands") {
    CHECK(classify(1e-9, 1e-8, 1e-6) == Verdict::Exact);
    CHECK(classify(1e-7, 1e-8, 1e-6) == Verdict::Borderline);
    CHECK(classify(1e-3, 1e-8, 1e-6) == Verdict::Inexact);
}

TEST_CASE("exactness agreement on clear-cut cases") {
    const Matrix exact_s = block_diagonal_symplectic(random_symplectic(1, 0.8, 5),
                                                     random_symplectic(1, 0.8, 6));
    const ProjectionAnalysis ea = analyze_split(exact_s, 1, 1.0);
    const ExactnessAgreement g1 = exactness_agreement(exact_s, 1, ea);
    CHECK(g1.agree);
    CHECK(g1.x == Verdict::Exact);
    CHECK(g1.spectrum == Verdict::Exact);
    CHECK(g1.complexity == Verdict::Exact);
    CHECK(g1.volume == Verdict::Exact);

    const Matrix generic_s = random_symplectic(2, 1.0, 77);
    const ProjectionAnalysis ga = analyze_split(generic_s, 1, 1.0);
    const ExactnessAgreement g2 = exactness_agreement(generic_s, 1, ga);
    CHECK(g2.agree);
    CHECK(g2.x == Verdict::Inexact);
}

TEST_CASE("small campaign passes and is deterministic") {
    CampaignConfig cfg;
    cfg.n_values = {1, 2};
    cfg.cases_per_n = 6;
    cfg.samples = 2000;
    cfg.seed = 31;
    const CampaignReport r1 = run_campaign(cfg);
    CHECK(r1.run == 12);
    CHECK(r1.failed == 0);
    CHECK(r1.passed + r1.failed == r1.run);
    for (const CaseRecord& c : r1.cases)
        CHECK(c.passed);

    const CampaignReport r2 = run_campaign(cfg);
    nlohmann::json j1 = nlohmann::json::parse(report_to_json_text(r1));
    nlohmann::json j2 = nlohmann::json::parse(report_to_json_text(r2));
    CHECK(j1["report"].dump() == j2["report"].dump());

    cfg.seed = 32;
    const CampaignReport r3 = run_campaign(cfg);
    nlohmann::json j3 = nlohmann::json::parse(report_to_json_text(r3));
    CHECK(j1["report"].dump() != j3["report"].dump());
}

TEST_CASE("empty campaign reports cleanly") {
    CampaignConfig cfg;
    cfg.n_values = {2};
    cfg.cases_per_n = 0;
    const CampaignReport r = run_campaign(cfg);
    CHECK(r.run == 0);
    CHECK(r.failed == 0);
    CHECK(r.cases.empty());
}
