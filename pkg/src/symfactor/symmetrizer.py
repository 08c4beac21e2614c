"""Brute-force oracle: the space of all symmetric ``T`` with ``B T = T B^T``.

For invertible symmetric ``T`` this is exactly the condition that
``W = T^-1 B`` is symmetric, so sampling the space explores every possible
left factor of ``B``. Nothing here uses Jordan forms or eigenvectors of ``B``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import pick
from .errors import BoundViolation, CapExceeded, InternalError, OracleInconsistency, SingularMatrix
from .linalg import EigenvalueSet, Inertia, as_matrix, determinant, frobenius, inertia, invert, symmetry_defect


@dataclass(frozen=True)
class SymmetrizerBasis:
    dimension_m: int
    basis: tuple[np.ndarray, ...]

    @property
    def space_dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=float), np.stack(self.basis), axes=1)

    def projection_residual(self, T) -> float:
        """Relative distance from ``T`` to the span of the basis."""
        t = as_matrix(T, square=True)
        coeffs = [float(np.sum(t * e)) for e in self.basis]
        rest = t - self.combine(coeffs)
        return frobenius(rest) / max(frobenius(t), np.finfo(float).tiny)


def _sym_coordinates(m: int) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of the symmetric m x m matrices."""
    out = []
    for i in range(m):
        for j in range(i, m):
            e = np.zeros((m, m))
            if i == j:
                e[i, i] = 1.0
            else:
                e[i, j] = e[j, i] = np.sqrt(0.5)
            out.append(e)
    return out


def symmetrizer_basis(B, tol: float | None = None, *, size_cap: int | None = None) -> SymmetrizerBasis:
    """Orthonormal basis of the null space of ``T -> B T - T B^T`` on symmetric ``T``."""
    tol = pick(tol, "rank_tol")
    size_cap = pick(size_cap, "symmetrizer_cap")
    b = as_matrix(B, square=True, name="B")
    m = b.shape[0]
    if m > size_cap:
        raise CapExceeded(f"dimension {m} exceeds the symmetrizer cap {size_cap}")
    coords = _sym_coordinates(m)
    iu = np.triu_indices(m, k=1)
    # the image B T - T B^T is antisymmetric: its strict upper triangle determines it
    op = np.column_stack([(b @ e - e @ b.T)[iu] for e in coords]) if iu[0].size else np.zeros((0, len(coords)))
    n_unknowns = len(coords)
    if op.shape[0] == 0:
        null = np.eye(n_unknowns)
    else:
        _, sv, vh = np.linalg.svd(op)
        cut = tol * sv[0] if sv.size and sv[0] > 0 else 0.0
        rank = int(np.sum(sv > cut))
        null = vh[rank:]
    if null.shape[0] == 0:
        raise InternalError("symmetrizer space is numerically empty")
    basis = tuple(np.tensordot(row, np.stack(coords), axes=1) for row in null)
    return SymmetrizerBasis(m, basis)


@dataclass
class InertiaCensus:
    samples: int = 0
    observed: Counter = field(default_factory=Counter)
    singular_rejections: int = 0
    examples: dict = field(default_factory=dict, repr=False)

    def merge(self, other: InertiaCensus) -> InertiaCensus:
        examples = dict(other.examples)
        examples.update(self.examples)
        return InertiaCensus(
            samples=self.samples + other.samples,
            observed=self.observed + other.observed,
            singular_rejections=self.singular_rejections + other.singular_rejections,
            examples=examples,
        )

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "singular_rejections": self.singular_rejections,
            "observed": {str(k): v for k, v in sorted(self.observed.items())},
        }


def _is_singular(T: np.ndarray, singular_tol: float) -> bool:
    m = T.shape[0]
    scale = (frobenius(T) / np.sqrt(m)) ** m
    return abs(determinant(T)) <= singular_tol * scale


def sample_census(
    basis: SymmetrizerBasis,
    B,
    samples: int,
    seed=0,
    *,
    singular_tol: float | None = None,
    zero_tol: float | None = None,
    check_tol: float | None = None,
) -> InertiaCensus:
    """Inertias of random invertible members of the symmetrizer space.

    Coefficients are standard Gaussian from ``numpy.random.default_rng(seed)``.
    A sample counts as singular if ``|det T|`` is tiny relative to
    ``(||T||_F / sqrt(m))^m``, or if its inertia still shows a zero eigenvalue.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    singular_tol = pick(singular_tol, "singular_tol")
    zero_tol = pick(zero_tol, "zero_tol")
    check_tol = pick(check_tol, "census_symmetry_tol")
    b = as_matrix(B, square=True, name="B")
    rng = np.random.default_rng(seed)
    stack = np.stack(basis.basis)
    census = InertiaCensus()
    for _ in range(samples):
        census.samples += 1
        T = np.tensordot(rng.standard_normal(basis.space_dim), stack, axes=1)
        T = 0.5 * (T + T.T)
        if _is_singular(T, singular_tol):
            census.singular_rejections += 1
            continue
        inert = inertia(T, zero_tol)
        if inert.z:
            census.singular_rejections += 1
            continue
        try:
            W = invert(T) @ b
        except SingularMatrix:
            census.singular_rejections += 1
            continue
        defect = symmetry_defect(W)
        if defect > check_tol:
            raise OracleInconsistency(f"T^-1 B has symmetry defect {defect:.3e} for a sampled symmetrizer")
        census.observed[inert] += 1
        census.examples.setdefault(inert, T)
    return census


def sharded_census(basis: SymmetrizerBasis, B, samples: int, seed=0, shards: int = 1, **kwargs) -> InertiaCensus:
    """Split ``samples`` over ``shards`` independent seeded streams and merge."""
    children = np.random.SeedSequence(seed).spawn(shards)
    sizes = [samples // shards + (i < samples % shards) for i in range(shards)]
    total = InertiaCensus()
    for child, size in zip(children, sizes):
        if size:
            total = total.merge(sample_census(basis, B, size, np.random.default_rng(child), **kwargs))
    return total


@dataclass(frozen=True)
class CensusReport:
    m: int
    s: int
    lower: Fraction
    upper: Fraction
    observed_p_min: int
    observed_p_max: int
    contained: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "s": self.s,
            "bracket": {"lower": str(self.lower), "upper": str(self.upper)},
            "observed_p": {"min": self.observed_p_min, "max": self.observed_p_max},
            "contained": self.contained,
        }


def inertia_bracket(m: int, s: int) -> tuple[Fraction, Fraction]:
    """Admissible range ``[(m - s)/2, (m + s)/2]`` for the positive count."""
    return Fraction(m - s, 2), Fraction(m + s, 2)


def census_vs_bounds(census: InertiaCensus, eigs: EigenvalueSet) -> CensusReport:
    """Check every observed inertia against the bracket; raise on any violation."""
    if not census.observed:
        raise ValueError("census has no accepted samples")
    m, s = eigs.m, eigs.s
    lower, upper = inertia_bracket(m, s)
    for inert in sorted(census.observed):
        if not (lower <= inert.p <= upper and lower <= inert.n <= upper):
            raise BoundViolation(
                f"observed inertia {inert} outside [{lower}, {upper}]",
                counterexample=census.examples.get(inert),
            )
    ps = [k.p for k in census.observed]
    return CensusReport(m, s, lower, upper, min(ps), max(ps), True)
