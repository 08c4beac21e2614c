"""Theorem-level checks on a factorization ``B = T W``.

With ``s`` real eigenvalues among ``m``, the positive counts of both factors
must lie in ``[(m - s)/2, (m + s)/2]``; ``B`` must carry at least
``|p_T - p_W|`` negative and ``|n_T - p_W|`` positive real eigenvalues; and
an all-non-real spectrum forces both inertias to ``(m/2, m/2, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .config import pick
from .errors import InternalError, InvalidFactorization, SingularMatrix
from .factorize import SymFactorization
from .linalg import EigenvalueSet, Inertia, as_matrix, general_eigenvalues
from .symmetrizer import inertia_bracket

SCHEMA = "v1"


class SpectrumClass(NamedTuple):
    s: int
    neg_real: int
    pos_real: int
    nonreal: int


def classify_spectrum(eigs: EigenvalueSet, zero_tol: float = 0.0) -> SpectrumClass:
    """Counts of real (by sign) and non-real eigenvalues.

    A real eigenvalue with ``|lambda| <= zero_tol`` is treated as zero and
    rejected, since the matrix must be invertible.
    """
    real = np.asarray(eigs.real, dtype=float)
    if np.any(np.abs(real) <= zero_tol):
        raise SingularMatrix("zero eigenvalue in the spectrum")
    nonreal = 2 * len(eigs.complex_pairs)
    s = len(eigs.real)
    if (eigs.m - s) % 2:
        raise InternalError("odd number of non-real eigenvalues")
    return SpectrumClass(s, int(np.sum(real < 0)), int(np.sum(real > 0)), nonreal)


@dataclass(frozen=True)
class Check:
    name: str
    applicable: bool
    passed: bool
    details: str

    @property
    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass(frozen=True)
class Certificate:
    m: int
    s: int
    nonreal_count: int
    inertia_T: Inertia
    inertia_W: Inertia
    lower: Fraction
    upper: Fraction
    checks: tuple[Check, ...]
    residuals: dict
    indeterminate: bool = False

    @property
    def passed(self) -> bool:
        return not self.indeterminate and all(c.passed for c in self.checks if c.applicable)

    @property
    def status(self) -> str:
        if self.indeterminate:
            return "indeterminate"
        return "pass" if self.passed else "fail"

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "m": self.m,
            "s": self.s,
            "nonreal_count": self.nonreal_count,
            "inertia_T": list(self.inertia_T),
            "inertia_W": list(self.inertia_W),
            "bounds": {"lower": str(self.lower), "upper": str(self.upper)},
            "checks": [c.to_dict() for c in self.checks],
            "residuals": dict(self.residuals),
            "status": self.status,
        }


def _ambiguous(eigs: EigenvalueSet, pair_tol: float) -> bool:
    raw = np.asarray(eigs.raw, dtype=complex)
    if raw.size == 0:
        return False
    boundary = pair_tol * (1.0 + np.abs(raw))
    im = np.abs(raw.imag)
    return bool(np.any((im > boundary / 10) & (im < boundary * 10)))


def _in_bracket(k: int, lower: Fraction, upper: Fraction) -> bool:
    return lower <= k <= upper


def certify(
    B,
    fact: SymFactorization,
    *,
    pair_tol: float | None = None,
    zero_tol: float | None = None,
    residual_tol: float | None = None,
    symmetry_tol: float | None = None,
) -> Certificate:
    pair_tol = pick(pair_tol, "pair_tol")
    zero_tol = pick(zero_tol, "zero_tol")
    residual_tol = pick(residual_tol, "eigen_residual_tol")
    symmetry_tol = pick(symmetry_tol, "factor_symmetry_tol")
    b = as_matrix(B, square=True, name="B")
    if fact.reconstruction_residual > residual_tol:
        raise InvalidFactorization(
            f"reconstruction residual {fact.reconstruction_residual:.3e} exceeds {residual_tol:.1e}"
        )
    if max(fact.symmetry_residuals) > symmetry_tol:
        raise InvalidFactorization(f"symmetry residuals {fact.symmetry_residuals} exceed {symmetry_tol:.1e}")
    in_t, in_w = fact.inertia_T, fact.inertia_W
    if in_t.z or in_w.z:
        raise InvalidFactorization(f"singular factor: inertia_T={in_t}, inertia_W={in_w}")

    eigs = general_eigenvalues(b, pair_tol)
    scale = max(np.max(np.abs(eigs.values())), np.finfo(float).tiny)
    spec = classify_spectrum(eigs, zero_tol * scale)
    m, s = b.shape[0], spec.s
    lower, upper = inertia_bracket(m, s)

    need_neg = abs(in_t.p - in_w.p)
    need_pos = abs(in_t.n - in_w.p)
    half = Inertia(m // 2, m // 2, 0)
    checks = (
        Check(
            "lemma1",
            in_t != in_w,
            spec.neg_real >= 1,
            f"inertias {'differ' if in_t != in_w else 'agree'}; {spec.neg_real} real negative eigenvalue(s)",
        ),
        Check("cor_neg", True, spec.neg_real >= need_neg, f"need >= {need_neg} real negative, found {spec.neg_real}"),
        Check("cor_pos", True, spec.pos_real >= need_pos, f"need >= {need_pos} real positive, found {spec.pos_real}"),
        Check("prop_T", True, _in_bracket(in_t.p, lower, upper), f"p_T = {in_t.p} in [{lower}, {upper}]"),
        Check("prop_W", True, _in_bracket(in_w.p, lower, upper), f"p_W = {in_w.p} in [{lower}, {upper}]"),
        Check(
            "maincor_applicable",
            s == 0,
            in_t == half and in_w == half,
            f"s = {s}; inertias {in_t}, {in_w} vs {half}" if s == 0 else f"s = {s} > 0",
        ),
    )
    residuals = {
        "reconstruction": fact.reconstruction_residual,
        "symmetry_T": fact.symmetry_residuals[0],
        "symmetry_W": fact.symmetry_residuals[1],
    }
    return Certificate(
        m=m,
        s=s,
        nonreal_count=spec.nonreal,
        inertia_T=in_t,
        inertia_W=in_w,
        lower=lower,
        upper=upper,
        checks=checks,
        residuals=residuals,
        indeterminate=_ambiguous(eigs, pair_tol),
    )
