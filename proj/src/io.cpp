#include "sympball/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sympball {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ParseError(path.string() + ": not valid JSON");
    return j;
}

void require_ordering(const json& j, const std::filesystem::path& path) {
    if (!j.contains("ordering") || !j["ordering"].is_string() ||
        j["ordering"].get<std::string>() != "x-then-p")
        throw ParseError(path.string() + ": missing or unsupported \"ordering\" tag"
                                         " (expected \"x-then-p\")");
}

std::size_t require_n(const json& j, const std::filesystem::path& path) {
    if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() < 1)
        throw ParseError(path.string() + ": \"n\" must be a positive integer");
    return j["n"].get<std::size_t>();
}

double checked_number(const json& v, const std::filesystem::path& path) {
    if (!v.is_number())
        throw ParseError(path.string() + ": matrix entries must be numbers");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ParseError(path.string() + ": matrix entries must be finite");
    return d;
}

} // namespace

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    // keep integral values typed as doubles in JSON ("-0" would otherwise
    // parse as integer zero and lose its sign)
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
    const json j = parse_file(path);
    if (!j.is_object())
        throw ParseError(path.string() + ": expected a JSON object");
    const std::size_t n = require_n(j, path);
    require_ordering(j, path);
    if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].size() != 2 * n)
        throw ParseError(path.string() + ": \"rows\" must hold exactly 2n rows");
    Matrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const json& row = j["rows"][i];
        if (!row.is_array() || row.size() != 2 * n)
            throw ParseError(path.string() + ": each row must hold exactly 2n numbers");
        for (std::size_t c = 0; c < 2 * n; ++c)
            m(i, c) = checked_number(row[c], path);
    }
    return MatrixFile{n, std::move(m)};
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
    if (!m.is_square() || m.rows() % 2 != 0)
        throw DimensionMismatch("write_matrix_file: matrix must be 2n x 2n");
    std::ostringstream out;
    out << "{\n  \"n\": " << m.rows() / 2 << ",\n  \"ordering\": \"x-then-p\",\n"
        << "  \"rows\": [\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j)
            out << (j ? ", " : "") << format_double17(m(i, j));
        out << (i + 1 < m.rows() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    std::ofstream f(path);
    if (!f)
        throw ParseError("cannot write " + path.string());
    f << out.str();
    if (!f.good())
        throw ParseError("failed while writing " + path.string());
}

Matrix read_basis_file(const std::filesystem::path& path) {
    const json j = parse_file(path);
    if (!j.is_object())
        throw ParseError(path.string() + ": expected a JSON object");
    const std::size_t n = require_n(j, path);
    require_ordering(j, path);
    if (!j.contains("vectors") || !j["vectors"].is_array() || j["vectors"].empty())
        throw ParseError(path.string() + ": \"vectors\" must hold at least one vector");
    const std::size_t m = j["vectors"].size();
    Matrix cols(2 * n, m);
    for (std::size_t c = 0; c < m; ++c) {
        const json& vec = j["vectors"][c];
        if (!vec.is_array() || vec.size() != 2 * n)
            throw ParseError(path.string() + ": each vector must hold exactly 2n numbers");
        for (std::size_t i = 0; i < 2 * n; ++i)
            cols(i, c) = checked_number(vec[i], path);
    }
    return cols;
}

void write_basis_file(const std::filesystem::path& path, const Matrix& columns) {
    if (columns.rows() % 2 != 0)
        throw DimensionMismatch("write_basis_file: ambient dimension must be even");
    std::ostringstream out;
    out << "{\n  \"n\": " << columns.rows() / 2 << ",\n  \"ordering\": \"x-then-p\",\n"
        << "  \"vectors\": [\n";
    for (std::size_t c = 0; c < columns.cols(); ++c) {
        out << "    [";
        for (std::size_t i = 0; i < columns.rows(); ++i)
            out << (i ? ", " : "") << format_double17(columns(i, c));
        out << (c + 1 < columns.cols() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    std::ofstream f(path);
    if (!f)
        throw ParseError("cannot write " + path.string());
    f << out.str();
    if (!f.good())
        throw ParseError("failed while writing " + path.string());
}

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& rows, const char* what) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
        throw ParseError(std::string(what) + ": expected a non-empty array of rows");
    const std::size_t r = rows.size();
    const std::size_t c = rows[0].size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw ParseError(std::string(what) + ": ragged rows");
        for (std::size_t j = 0; j < c; ++j) {
            if (!rows[i][j].is_number())
                throw ParseError(std::string(what) + ": entries must be numbers");
            m(i, j) = rows[i][j].get<double>();
        }
    }
    return m;
}

ordered_json analysis_to_json(const ProjectionAnalysis& a, std::size_t n, double radius) {
    ordered_json j;
    j["n"] = n;
    j["n_A"] = a.projected.dim / 2;
    j["radius"] = radius;
    j["lambda_A"] = a.lambda_A;
    j["exact"] = a.exact;
    j["borderline"] = a.borderline;
    j["X_norm"] = a.X_norm;
    j["X_rel"] = a.X_rel;
    j["vol_projected"] = a.vol_projected;
    j["vol_bound"] = a.vol_bound;
    j["S_A"] = matrix_to_json(a.S_A);
    if (a.S_B)
        j["S_B"] = matrix_to_json(*a.S_B);
    j["projected"] = {{"dim", a.projected.dim},
                      {"Q", matrix_to_json(a.projected.Q)},
                      {"R", a.projected.R},
                      {"center", a.projected.center}};
    j["inscribed"] = {{"dim", a.inscribed.dim},
                      {"Q", matrix_to_json(a.inscribed.Q)},
                      {"R", a.inscribed.R},
                      {"center", a.inscribed.center}};
    if (a.subspace_basis)
        j["subspace_basis"] = matrix_to_json(*a.subspace_basis);
    return j;
}

} // namespace sympball
