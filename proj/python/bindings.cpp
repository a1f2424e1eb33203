// Python bindings for the main operations: symplectic spectra, Williamson
// normal forms, and orthogonal projections of symplectic balls.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sympball/balls.hpp"
#include "sympball/projection.hpp"
#include "sympball/symplectic.hpp"

namespace py = pybind11;
using namespace sympball;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2)
        throw py::value_error("expected a 2-d array");
    const std::size_t rows = static_cast<std::size_t>(a.shape(0));
    const std::size_t cols = static_cast<std::size_t>(a.shape(1));
    std::vector<double> entries(a.data(), a.data() + rows * cols);
    return Matrix(rows, cols, std::move(entries));
}

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> a({m.rows(), m.cols()});
    auto buf = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            buf(i, j) = m(i, j);
    return a;
}

py::dict analysis_to_dict(const ProjectionAnalysis& a) {
    py::dict d;
    d["lambda_A"] = a.lambda_A;
    d["exact"] = a.exact;
    d["borderline"] = a.borderline;
    d["X_norm"] = a.X_norm;
    d["X_rel"] = a.X_rel;
    d["S_A"] = to_array(a.S_A);
    if (a.S_B)
        d["S_B"] = to_array(*a.S_B);
    d["projected_Q"] = to_array(a.projected.Q);
    d["inscribed_Q"] = to_array(a.inscribed.Q);
    d["radius"] = a.projected.R;
    d["vol_projected"] = a.vol_projected;
    d["vol_bound"] = a.vol_bound;
    if (a.subspace_basis)
        d["subspace_basis"] = to_array(*a.subspace_basis);
    return d;
}

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

} // namespace

PYBIND11_MODULE(_sympball, m) {
    m.doc() = "Symplectic spectra, Williamson normal forms and orthogonal "
              "projections of symplectic balls.";

    py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefiniteError",
                                                PyExc_ValueError);
    py::register_exception<NotSymplectic>(m, "NotSymplecticError", PyExc_ValueError);
    py::register_exception<NotComplex>(m, "NotComplexError", PyExc_ValueError);
    py::register_exception<Error>(m, "SympballError", PyExc_RuntimeError);

    m.def("standard_j", [](std::size_t n) { return to_array(standard_J(n)); },
          py::arg("n"), "Standard symplectic matrix [[0, I], [-I, 0]].");

    m.def("is_symplectic",
          [](const Array& s, std::size_t n) { return is_symplectic(to_matrix(s), n); },
          py::arg("s"), py::arg("n"),
          "Whether S^T J S = J within the default tolerance.");

    m.def("symplectic_spectrum",
          [](const Array& m_, std::size_t n) {
              return symplectic_spectrum(to_matrix(m_), n);
          },
          py::arg("m"), py::arg("n"),
          "Ascending moduli of the eigenvalue pairs of JM, for SPD M.");

    m.def("williamson",
          [](const Array& m_, std::size_t n) {
              const WilliamsonDecomposition wd = williamson(to_matrix(m_), n);
              return py::make_tuple(to_array(wd.S), wd.lambda);
          },
          py::arg("m"), py::arg("n"),
          "Pair (S, lambda) with M = S^T diag(lambda, lambda) S and S symplectic.");

    m.def("lemma1_check",
          [](const Array& m_, std::size_t n) {
              const Lemma1Result r = lemma1_check(to_matrix(m_), n);
              return py::make_tuple(r.psd, r.min_spec);
          },
          py::arg("m"), py::arg("n"),
          "(psd, min_spec): whether M + iJ is PSD, and the smallest symplectic "
          "eigenvalue.");

    m.def("random_symplectic",
          [](std::size_t n, double spread, std::uint64_t seed) {
              return to_array(random_symplectic(n, spread, seed));
          },
          py::arg("n"), py::arg("spread") = 1.0, py::arg("seed") = 1,
          "Deterministic random symplectic matrix exp(J H).");

    m.def("schur_complement",
          [](const Array& m_, std::size_t n_A, const std::string& pivot) {
              const Matrix mm = to_matrix(m_);
              const std::size_t n = mm.rows() / 2;
              const PartitionedMatrix pm = partition(mm, BlockPartition(n_A, n - n_A));
              return to_array(schur(pm, pivot == "A" ? Block::A : Block::B));
          },
          py::arg("m"), py::arg("n_a"), py::arg("pivot") = "B",
          "Schur complement of the pivot block after reordering to "
          "(x_A, p_A, x_B, p_B).");

    m.def("ellipsoid_volume",
          [](const Array& q, double radius) {
              const Matrix qq = to_matrix(q);
              return volume(Ellipsoid{qq.rows(), qq, radius,
                                      std::vector<double>(qq.rows(), 0.0)});
          },
          py::arg("q"), py::arg("radius") = 1.0,
          "Volume of {z : Qz.z <= R^2}.");

    m.def("analyze_split",
          [](const Array& s, std::size_t n_A, double radius) {
              return analysis_to_dict(analyze_split(to_matrix(s), n_A, radius));
          },
          py::arg("s"), py::arg("n_a"), py::arg("radius") = 1.0,
          "Project the symplectic ball S(B(R)) onto the first n_a degrees of "
          "freedom and construct the inscribed symplectic ball.");

    m.def("analyze_subspace",
          [](const Array& s, const Array& span, double radius) {
              const ComplexSubspace v = complex_subspace_from_span(to_matrix(span));
              return analysis_to_dict(analyze_subspace(to_matrix(s), v, radius));
          },
          py::arg("s"), py::arg("span"), py::arg("radius") = 1.0,
          "Same as analyze_split, for the complex subspace spanned by the "
          "given columns.");

    m.def("unitary_reduction",
          [](const Array& span) {
              return to_array(unitary_reduction(complex_subspace_from_span(to_matrix(span))));
          },
          py::arg("span"),
          "Orthogonal-symplectic U mapping the coordinate subspace onto the "
          "span of the given columns.");

#ifdef SYMPBALL_VERSION
    m.attr("__version__") = SYMPBALL_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
