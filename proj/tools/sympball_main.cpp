// sympball: symplectic spectra, Williamson normal forms and orthogonal
// projections of symplectic balls, over JSON matrix files.
//
// Exit codes: 0 ok, 1 invariant/computation failure, 2 I/O or parse,
// 3 not positive definite, 4 not symplectic, 5 not a complex subspace.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sympball/balls.hpp"
#include "sympball/io.hpp"
#include "sympball/symplectic.hpp"
#include "sympball/verify.hpp"

namespace {

using namespace sympball;

int exit_code_for(const Error& e) {
    if (dynamic_cast<const NotPositiveDefinite*>(&e) || dynamic_cast<const PivotNotPD*>(&e) ||
        dynamic_cast<const NotSymmetric*>(&e))
        return 3;
    if (dynamic_cast<const NotSymplectic*>(&e))
        return 4;
    if (dynamic_cast<const NotComplex*>(&e))
        return 5;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidMatrix*>(&e) ||
        dynamic_cast<const DimensionMismatch*>(&e))
        return 2;
    return 1;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f)
        throw ParseError("cannot write " + out_path);
    f << text;
    if (!f.good())
        throw ParseError("failed while writing " + out_path);
}

int cmd_spectrum(const std::string& input, const std::string& format) {
    const MatrixFile mf = read_matrix_file(input);
    const Lemma1Result r = lemma1_check(mf.matrix, mf.n);
    const SymplecticSpectrum spec = symplectic_spectrum(mf.matrix, mf.n);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = mf.n;
        j["spectrum"] = spec;
        j["min_spec"] = r.min_spec;
        j["psd"] = r.psd;
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < spec.size(); ++i)
            std::cout << (i ? " " : "") << format_double17(spec[i]);
        std::cout << "; M+iJ PSD: " << (r.psd ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_williamson(const std::string& input, const std::string& format) {
    const MatrixFile mf = read_matrix_file(input);
    const WilliamsonDecomposition wd = williamson(mf.matrix, mf.n);
    const Matrix j = standard_J(mf.n);
    const double res_d =
        norm_max(sub(matmul(transpose(wd.S), matmul(wd.D, wd.S)), mf.matrix));
    const double res_j = norm_max(sub(matmul(transpose(wd.S), matmul(j, wd.S)), j));
    if (format == "text") {
        std::cout << "Lambda:";
        for (double lam : wd.lambda)
            std::cout << " " << format_double17(lam);
        std::cout << "\nresidual S^T D S - M: " << format_double17(res_d)
                  << "\nresidual S^T J S - J: " << format_double17(res_j) << "\n";
    } else {
        nlohmann::ordered_json out;
        out["n"] = mf.n;
        out["Lambda"] = wd.lambda;
        out["S"] = matrix_to_json(wd.S);
        out["residuals"] = {{"reconstruction", res_d}, {"symplectic", res_j}};
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_project(const std::string& input, std::size_t n_A, double radius,
                const std::string& subspace, const std::string& format) {
    const MatrixFile mf = read_matrix_file(input);
    ProjectionAnalysis a = [&] {
        if (subspace.empty())
            return analyze_split(mf.matrix, n_A, radius);
        const Matrix span = read_basis_file(subspace);
        if (span.rows() != 2 * mf.n)
            throw DimensionMismatch("subspace file does not match the matrix dimension");
        return analyze_subspace(mf.matrix, complex_subspace_from_span(span), radius);
    }();
    if (format == "text") {
        std::cout << "n_A: " << a.projected.dim / 2 << "\nLambda_A:";
        for (double lam : a.lambda_A)
            std::cout << " " << format_double17(lam);
        std::cout << "\nexact: " << (a.exact ? "yes" : "no")
                  << (a.borderline ? " (borderline)" : "")
                  << "\nvol_projected: " << format_double17(a.vol_projected)
                  << "\nvol_bound: " << format_double17(a.vol_bound) << "\n";
    } else {
        std::cout << analysis_to_json(a, mf.n, radius).dump(2) << "\n";
    }
    return 0;
}

int cmd_verify(const CampaignConfig& cfg, const std::string& out_path,
               const std::string& format) {
    const CampaignReport report = run_campaign(cfg);
    if (format == "text") {
        std::string text = "run: " + std::to_string(report.run) +
                           ", passed: " + std::to_string(report.passed) +
                           ", failed: " + std::to_string(report.failed) +
                           ", borderline: " + std::to_string(report.borderline) + "\n";
        emit(text, out_path);
    } else {
        emit(report_to_json_text(report), out_path);
    }
    std::cerr << "verify: " << report.passed << "/" << report.run << " cases passed, "
              << report.failed << " failed, " << report.borderline
              << " borderline\n";
    return report.failed == 0 ? 0 : 1;
}

int cmd_gen_sp(std::size_t n, double spread, std::uint64_t seed, const std::string& out) {
    write_matrix_file(out, random_symplectic(n, spread, seed));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symplectic spectra, Williamson normal forms and projections of symplectic balls"};
    app.require_subcommand(1);

    std::string input, out, subspace;
    std::string format;
    std::size_t n_A = 1;
    double radius = 1.0;
    CampaignConfig cfg;
    std::size_t gen_n = 1;
    double gen_spread = 1.0;
    std::uint64_t gen_seed = 1;

    auto* spectrum = app.add_subcommand("spectrum", "symplectic spectrum of an SPD matrix file");
    spectrum->add_option("--input", input, "matrix file")->required();
    spectrum->add_option("--format", format, "json|text");

    auto* wil = app.add_subcommand("williamson", "Williamson diagonalization M = S^T D S");
    wil->add_option("--input", input, "matrix file")->required();
    wil->add_option("--format", format, "json|text");

    auto* project = app.add_subcommand("project", "project a symplectic ball onto a subspace");
    project->add_option("--input", input, "symplectic matrix file")->required();
    project->add_option("--na", n_A, "degrees of freedom of the target block");
    project->add_option("--radius", radius, "ball radius (default 1)");
    project->add_option("--subspace", subspace, "basis file of a complex subspace");
    project->add_option("--format", format, "json|text");

    auto* verify = app.add_subcommand("verify", "run the randomized verification campaign");
    verify->add_option("--n", cfg.n_values, "degrees of freedom to cover (repeatable)");
    verify->add_option("--cases", cfg.cases_per_n, "cases per n (default 100)");
    verify->add_option("--spread", cfg.spread, "spread of the random generators");
    verify->add_option("--seed", cfg.seed, "master seed");
    verify->add_option("--samples", cfg.samples, "boundary samples per containment check");
    verify->add_option("--out", out, "write the report here instead of stdout");
    verify->add_option("--format", format, "json|text");

    auto* gen = app.add_subcommand("gen-sp", "generate a random symplectic matrix file");
    gen->add_option("--n", gen_n, "degrees of freedom")->required();
    gen->add_option("--spread", gen_spread, "spread of the generator (default 1)");
    gen->add_option("--seed", gen_seed, "seed (default 1)");
    gen->add_option("--out", out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed())
            return cmd_spectrum(input, format.empty() ? "text" : format);
        if (wil->parsed())
            return cmd_williamson(input, format.empty() ? "json" : format);
        if (project->parsed())
            return cmd_project(input, n_A, radius, subspace, format.empty() ? "json" : format);
        if (verify->parsed()) {
            if (cfg.n_values.empty())
                cfg.n_values = {1, 2, 3};
            for (std::size_t n : cfg.n_values)
                if (n < 1 || n > 10)
                    throw DimensionMismatch("verify: --n must stay within 1..10");
            return cmd_verify(cfg, out, format.empty() ? "json" : format);
        }
        if (gen->parsed())
            return cmd_gen_sp(gen_n, gen_spread, gen_seed, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
