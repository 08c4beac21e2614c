"""Real symmetric factor pairs ``B = T @ W``.

Three routes, all through the same Jordan-form identity
``B = S J S^-1 = (S Y S^T)(S^-T Jsym S^-1)``:

* ``factorize_from_spec``: caller supplies the Jordan structure and ``S``.
* ``factorize_distinct``: simple eigenvalues, ``S`` from computed eigenvectors.
* ``factorize_spd``: real diagonalisable ``B``; ``T = S S^T`` is positive definite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .config import pick
from .errors import (
    IllConditioned,
    InvalidFactorization,
    InvalidSpec,
    InvalidSplit,
    NearDefective,
    NotRealSpectrum,
    NotSPD,
    SingularMatrix,
)
from .linalg import (
    EigenvalueSet,
    Inertia,
    as_matrix,
    frobenius,
    general_eigenvalues,
    inertia,
    invert,
    spd_sqrt,
    symmetric_eigen,
    symmetry_defect,
)
from .spectrum import ComplexBlock, RealBlock, SpectrumSpec, assemble


class FactorPath(str, enum.Enum):
    SPEC = "spec"
    DISTINCT = "distinct"
    SPD = "spd"
    EXTERNAL = "external"


@dataclass(frozen=True)
class SymFactorization:
    """A factor pair with its diagnostics.

    ``symmetry_residuals`` are the defects of the factors as computed, before
    the final exact symmetrisation; ``reconstruction_residual`` is measured on
    the returned (symmetric) factors.
    """

    T: np.ndarray
    W: np.ndarray
    inertia_T: Inertia
    inertia_W: Inertia
    reconstruction_residual: float
    symmetry_residuals: tuple[float, float]
    path: FactorPath
    S: np.ndarray | None = None
    spec: SpectrumSpec | None = None

    @classmethod
    def from_factors(cls, B, T, W, path: FactorPath = FactorPath.EXTERNAL) -> SymFactorization:
        """Wrap user-supplied factors as-is, without symmetrising them."""
        b = as_matrix(B, square=True, name="B")
        t = as_matrix(T, square=True, name="T")
        w = as_matrix(W, square=True, name="W")
        if not (b.shape == t.shape == w.shape):
            raise InvalidFactorization(f"shape mismatch: B{b.shape}, T{t.shape}, W{w.shape}")
        sym = (symmetry_defect(t), symmetry_defect(w))
        if max(sym) > pick(None, "factor_symmetry_tol"):
            raise InvalidFactorization(f"factors are not symmetric (defects {sym[0]:.3e}, {sym[1]:.3e})")
        t = 0.5 * (t + t.T)
        w = 0.5 * (w + w.T)
        return cls(
            T=t,
            W=w,
            inertia_T=inertia(t),
            inertia_W=inertia(w),
            reconstruction_residual=_reconstruction(b, t, w),
            symmetry_residuals=sym,
            path=FactorPath(path),
        )

    def to_dict(self) -> dict:
        return {
            "path": self.path.value,
            "inertia_T": list(self.inertia_T),
            "inertia_W": list(self.inertia_W),
            "reconstruction_residual": self.reconstruction_residual,
            "symmetry_residuals": list(self.symmetry_residuals),
        }


def _reconstruction(B: np.ndarray, T: np.ndarray, W: np.ndarray) -> float:
    return frobenius(B - T @ W) / max(frobenius(B), np.finfo(float).tiny)


def _finish(B, T, W, path, residual_tol, S=None, spec=None) -> SymFactorization:
    sym = (symmetry_defect(T), symmetry_defect(W))
    if max(sym) > pick(None, "factor_symmetry_tol"):
        raise InvalidFactorization(f"computed factors lost symmetry (defects {sym[0]:.3e}, {sym[1]:.3e})")
    T = 0.5 * (T + T.T)
    W = 0.5 * (W + W.T)
    residual = _reconstruction(B, T, W)
    if residual > residual_tol:
        raise InvalidFactorization(f"reconstruction residual {residual:.3e} exceeds {residual_tol:.1e}")
    in_t, in_w = inertia(T), inertia(W)
    if in_t.z or in_w.z:
        raise IllConditioned(f"factor numerically singular: inertia_T={in_t}, inertia_W={in_w}")
    return SymFactorization(T, W, in_t, in_w, residual, sym, path, S, spec)


def _check_S(S: np.ndarray, cond_cap: float | None) -> np.ndarray:
    cond_cap = pick(cond_cap, "cond_cap")
    cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > cond_cap:
        raise IllConditioned(f"condition number of S is {cond:.3e} (cap {cond_cap:.1e})")
    return invert(S)


def _spec_factors(spec: SpectrumSpec, S: np.ndarray, cond_cap: float):
    s_inv = _check_S(S, cond_cap)
    asm = assemble(spec)
    B = S @ asm.J @ s_inv
    T = S @ asm.Y @ S.T
    W = s_inv.T @ asm.Jsym @ s_inv
    return B, T, W


def factorize_from_spec(
    spec: SpectrumSpec,
    S=None,
    *,
    cond_cap: float | None = None,
    residual_tol: float | None = None,
) -> tuple[np.ndarray, SymFactorization]:
    """Build ``B = S J S^-1`` from ``spec`` and return it with its factors."""
    if not isinstance(spec, SpectrumSpec):
        raise InvalidSpec(f"expected a SpectrumSpec, got {type(spec).__name__}")
    S = np.eye(spec.m) if S is None else as_matrix(S, square=True, name="S")
    if S.shape[0] != spec.m:
        raise InvalidSpec(f"S is {S.shape[0]}x{S.shape[0]} but the spectrum has dimension {spec.m}")
    B, T, W = _spec_factors(spec, S, cond_cap)
    residual_tol = pick(residual_tol, "spec_residual_tol")
    return B, _finish(B, T, W, FactorPath.SPEC, residual_tol, S, spec)


def _unit_null_vector(M: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(M)
    v = vh[-1].conj()
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    return v / np.linalg.norm(v)


def _min_gap(values: np.ndarray) -> float:
    if values.size < 2:
        return np.inf
    diff = np.abs(values[:, None] - values[None, :])
    diff[np.diag_indices_from(diff)] = np.inf
    return float(diff.min())


def _spectrum(B: np.ndarray, pair_tol: float | None) -> EigenvalueSet:
    eigs = general_eigenvalues(B, pair_tol)
    vals = eigs.values()
    if vals.size and np.min(np.abs(vals)) <= pick(None, "zero_tol") * frobenius(B):
        raise SingularMatrix("B has a zero eigenvalue")
    return eigs


def factorize_distinct(
    B,
    *,
    gap_tol: float | None = None,
    pair_tol: float | None = None,
    cond_cap: float | None = None,
    residual_tol: float | None = None,
) -> SymFactorization:
    """Factor a matrix with simple eigenvalues through its real eigenbasis.

    Each real eigenvalue contributes its eigenvector as a column of ``S``;
    each pair ``a +- ib`` contributes ``(Re v, Im v)`` where ``v`` is the
    eigenvector for ``a - ib``, so that ``S^-1 B S`` carries the block
    ``[[a, -b], [b, a]]``.
    """
    b = as_matrix(B, square=True, name="B")
    eigs = _spectrum(b, pair_tol)
    gap = _min_gap(eigs.values())
    gap_tol = pick(gap_tol, "gap_tol")
    if gap < gap_tol * frobenius(b):
        raise NearDefective(f"eigenvalue gap {gap:.3e} below {gap_tol:.1e}*||B||; use the spectrum path")
    m = b.shape[0]
    cols, blocks = [], []
    for lam in eigs.real:
        cols.append(_unit_null_vector(b - lam * np.eye(m)).real)
        blocks.append(RealBlock(lam, 1))
    for a, im in eigs.complex_pairs:
        v = _unit_null_vector(b - complex(a, -im) * np.eye(m))
        cols += [v.real, v.imag]
        blocks.append(ComplexBlock(a, im, 1))
    S = np.column_stack(cols)
    spec = SpectrumSpec(tuple(blocks))
    _, T, W = _spec_factors(spec, S, cond_cap)
    return _finish(b, T, W, FactorPath.DISTINCT, pick(residual_tol, "eigen_residual_tol"), S, spec)


def _real_eigenbasis(b: np.ndarray, eigs: EigenvalueSet, gap_tol: float | None):
    """Eigenvector matrix and eigenvalues for a real diagonalisable ``b``."""
    gap_tol = pick(gap_tol, "gap_tol")
    cluster_tol = pick(None, "eigen_cluster_tol")
    m = b.shape[0]
    scale = frobenius(b)
    values = list(eigs.real)
    clusters: list[list[float]] = []
    for lam in values:
        if clusters and abs(clusters[-1][-1] - lam) <= cluster_tol * scale:
            clusters[-1].append(lam)
        else:
            clusters.append([lam])
    cols, lams = [], []
    for cluster in clusters:
        k = len(cluster)
        centre = float(np.mean(cluster))
        _, sv, vh = np.linalg.svd(b - centre * np.eye(m))
        if sv[m - k] > 10 * gap_tol * scale:
            raise NearDefective(f"eigenvalue {centre:.6g} of multiplicity {k} lacks a full eigenspace")
        for v in vh[m - k :]:
            j = int(np.argmax(np.abs(v)))
            cols.append(v * np.sign(v[j]))
            lams.append(centre if k > 1 else cluster[0])
    return np.column_stack(cols), lams


def factorize_spd(
    B,
    *,
    gap_tol: float | None = None,
    pair_tol: float | None = None,
    cond_cap: float | None = None,
    residual_tol: float | None = None,
) -> SymFactorization:
    """``T = S S^T`` (positive definite) and ``W = S^-T diag(lambda) S^-1``."""
    b = as_matrix(B, square=True, name="B")
    eigs = _spectrum(b, pair_tol)
    if eigs.complex_pairs:
        raise NotRealSpectrum(f"{2 * len(eigs.complex_pairs)} non-real eigenvalues present")
    S, lams = _real_eigenbasis(b, eigs, gap_tol)
    if np.linalg.cond(S) > pick(cond_cap, "cond_cap"):
        raise NearDefective("eigenvector matrix is ill-conditioned")
    spec = SpectrumSpec(tuple(RealBlock(lam, 1) for lam in lams))
    _, T, W = _spec_factors(spec, S, cond_cap)
    return _finish(b, T, W, FactorPath.SPD, pick(residual_tol, "eigen_residual_tol"), S, spec)


def factorize_auto(B, **kwargs) -> SymFactorization:
    """SPD route for real spectra, distinct-eigenvalue route otherwise."""
    b = as_matrix(B, square=True, name="B")
    eigs = _spectrum(b, kwargs.get("pair_tol"))
    if not eigs.complex_pairs:
        return factorize_spd(b, **kwargs)
    return factorize_distinct(b, **kwargs)


def selfadjoint_similarity_check(B, fact: SymFactorization) -> float:
    """Symmetry defect of ``T^-1/2 B T^1/2``; zero when ``B`` is self-adjoint in the ``T^-1`` inner product."""
    b = as_matrix(B, square=True, name="B")
    m = b.shape[0]
    if inertia(fact.T) != Inertia(m, 0, 0):
        raise NotSPD(f"T has inertia {inertia(fact.T)}, not ({m},0,0)")
    try:
        half, inv_half = spd_sqrt(fact.T)
    except SingularMatrix as exc:
        raise NotSPD(str(exc)) from None
    return symmetry_defect(inv_half @ b @ half)


def similar_symmetric_eigenvalues(fact: SymFactorization) -> np.ndarray:
    """Eigenvalues (descending) of ``T^1/2 W T^1/2`` for positive definite ``T``."""
    half, _ = spd_sqrt(fact.T)
    sym = half @ fact.W @ half
    values, _ = symmetric_eigen(0.5 * (sym + sym.T))
    return values


SplitRule = Union[str, Sequence[float], Sequence[tuple[float, float]]]


def alternative_diagonal_split(lams: Sequence[float], rule: SplitRule = "sqrt") -> tuple[np.ndarray, np.ndarray]:
    """Write ``diag(lams)`` as a product of two diagonal matrices.

    ``rule`` is one of

    * ``"sqrt"``: ``(sign * sqrt|l|, sqrt|l|)``
    * ``"identity"``: ``(1, l)``
    * ``"negate-first"``: ``(-|l|, -sign(l))``, first factor always negative
    * a sequence of signs ``+-1`` prescribing the sign of each first entry,
      magnitudes ``sqrt|l|``
    * a sequence of explicit ``(d1, d2)`` pairs, checked for consistency
    """
    lam = np.asarray(lams, dtype=float).ravel()
    if np.any(lam == 0) or not np.all(np.isfinite(lam)):
        raise InvalidSpec("diagonal entries must be finite and non-zero")
    root = np.sqrt(np.abs(lam))
    if isinstance(rule, str):
        if rule == "sqrt":
            d1 = np.sign(lam) * root
        elif rule == "identity":
            d1 = np.ones_like(lam)
        elif rule == "negate-first":
            d1 = -np.abs(lam)
        else:
            raise InvalidSplit(f"unknown split rule {rule!r}")
        return d1, lam / d1

    rule = np.asarray(rule, dtype=float)
    if rule.shape == lam.shape:
        if not np.all(np.isin(rule, (-1.0, 1.0))):
            raise InvalidSplit("sign rule entries must be +1 or -1")
        d1 = rule * root
        return d1, lam / d1
    if rule.shape == lam.shape + (2,):
        d1, d2 = rule[:, 0], rule[:, 1]
        if np.any(d1 * d2 * lam <= 0):
            raise InvalidSplit("factor signs inconsistent with the eigenvalue signs")
        if not np.allclose(d1 * d2, lam, rtol=1e-12, atol=0):
            raise InvalidSplit("factor products do not reproduce the eigenvalues")
        return d1.copy(), d2.copy()
    raise InvalidSplit(f"rule of shape {rule.shape} does not match {lam.size} eigenvalues")


def factorize_with_split(
    S,
    lams: Sequence[float],
    rule: SplitRule,
    *,
    cond_cap: float | None = None,
    residual_tol: float | None = None,
) -> tuple[np.ndarray, SymFactorization]:
    """``B = S diag(lams) S^-1`` factored as ``(S D1 S^T)(S^-T D2 S^-1)``."""
    S = as_matrix(S, square=True, name="S")
    d1, d2 = alternative_diagonal_split(lams, rule)
    if d1.size != S.shape[0]:
        raise InvalidSpec("S and the eigenvalue list disagree in dimension")
    s_inv = _check_S(S, cond_cap)
    B = (S * (d1 * d2)) @ s_inv
    T = (S * d1) @ S.T
    W = (s_inv.T * d2) @ s_inv
    return B, _finish(B, T, W, FactorPath.SPEC, pick(residual_tol, "eigen_residual_tol"), S)
