"""Symplectic spectra, Williamson normal forms and orthogonal projections
of symplectic balls."""

try:
    from . import _sympball as _impl
except ImportError:  # in-tree builds put the extension directly on sys.path
    import _sympball as _impl

NotComplexError = _impl.NotComplexError
NotPositiveDefiniteError = _impl.NotPositiveDefiniteError
NotSymplecticError = _impl.NotSymplecticError
SympballError = _impl.SympballError
__version__ = _impl.__version__

analyze_split = _impl.analyze_split
analyze_subspace = _impl.analyze_subspace
ellipsoid_volume = _impl.ellipsoid_volume
is_symplectic = _impl.is_symplectic
lemma1_check = _impl.lemma1_check
random_symplectic = _impl.random_symplectic
schur_complement = _impl.schur_complement
standard_j = _impl.standard_j
symplectic_spectrum = _impl.symplectic_spectrum
unitary_reduction = _impl.unitary_reduction
williamson = _impl.williamson

__all__ = [
    "NotComplexError",
    "NotPositiveDefiniteError",
    "NotSymplecticError",
    "SympballError",
    "analyze_split",
    "analyze_subspace",
    "ellipsoid_volume",
    "is_symplectic",
    "lemma1_check",
    "random_symplectic",
    "schur_complement",
    "standard_j",
    "symplectic_spectrum",
    "unitary_reduction",
    "williamson",
]
