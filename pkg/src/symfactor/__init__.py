"""Factor real square matrices as products of two symmetric matrices and check the inertia bounds."""

from .certify import Certificate, certify, classify_spectrum
from .config import RunConfig, using
from .errors import EXIT_CODES, SymFactorError
from .factorize import (
    FactorPath,
    SymFactorization,
    alternative_diagonal_split,
    factorize_auto,
    factorize_distinct,
    factorize_from_spec,
    factorize_spd,
    factorize_with_split,
    selfadjoint_similarity_check,
    similar_symmetric_eigenvalues,
)
from .linalg import EigenvalueSet, Inertia, general_eigenvalues, inertia, symmetric_eigen
from .pencil import PencilKind, scan, verify_counts
from .spectrum import ComplexBlock, RealBlock, SpectrumSpec, assemble
from .symmetrizer import census_vs_bounds, sample_census, sharded_census, symmetrizer_basis

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ComplexBlock",
    "EXIT_CODES",
    "EigenvalueSet",
    "FactorPath",
    "Inertia",
    "PencilKind",
    "RealBlock",
    "RunConfig",
    "SpectrumSpec",
    "SymFactorError",
    "SymFactorization",
    "alternative_diagonal_split",
    "assemble",
    "census_vs_bounds",
    "certify",
    "classify_spectrum",
    "factorize_auto",
    "factorize_distinct",
    "factorize_from_spec",
    "factorize_spd",
    "factorize_with_split",
    "general_eigenvalues",
    "inertia",
    "sample_census",
    "scan",
    "selfadjoint_similarity_check",
    "sharded_census",
    "similar_symmetric_eigenvalues",
    "symmetric_eigen",
    "symmetrizer_basis",
    "using",
    "verify_counts",
]
