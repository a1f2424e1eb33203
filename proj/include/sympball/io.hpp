#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sympball/balls.hpp"
#include "sympball/matrix.hpp"

namespace sympball {

/// On-disk matrix: JSON object with "n", a mandatory ordering tag equal to
/// "x-then-p" (coordinates x_1..x_n, p_1..p_n), and "rows" holding 2n rows
/// of 2n decimals. Numbers are written with 17 significant digits, so a
/// write -> read round-trip reproduces every entry bit for bit.
struct MatrixFile {
    std::size_t n;
    Matrix matrix;
};

MatrixFile read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

/// Subspace basis file: like a matrix file but with "vectors", a list of
/// spanning vectors of length 2n (not necessarily orthonormal).
/// Returns them as the columns of a 2n x m matrix.
Matrix read_basis_file(const std::filesystem::path& path);
void write_basis_file(const std::filesystem::path& path, const Matrix& columns);

/// %.17g — enough digits to reproduce any finite double exactly.
std::string format_double17(double v);

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& rows, const char* what);

nlohmann::ordered_json analysis_to_json(const ProjectionAnalysis& a, std::size_t n,
                                        double radius);

} // namespace sympball
