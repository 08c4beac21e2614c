"""Dense real matrix arithmetic, eigenvalues and inertia.

Matrices are plain ``numpy.ndarray`` objects of dtype float64; :func:`as_matrix`
is the single validation gate (2-D, finite entries).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .config import pick
from .errors import (
    CapExceeded,
    ConvergenceFailure,
    InvalidMatrix,
    NotSymmetric,
    ShapeMismatch,
    SingularMatrix,
)


class Inertia(NamedTuple):
    """Counts of positive, negative and zero eigenvalues."""

    p: int
    n: int
    z: int

    @property
    def m(self) -> int:
        return self.p + self.n + self.z

    def swapped(self) -> Inertia:
        """Inertia of the negated matrix."""
        return Inertia(self.n, self.p, self.z)

    def __add__(self, other):  # block-diagonal sum, not tuple concatenation
        return Inertia(self.p + other.p, self.n + other.n, self.z + other.z)

    def __str__(self) -> str:
        return f"({self.p},{self.n},{self.z})"

    @classmethod
    def parse(cls, text: str) -> Inertia:
        parts = text.strip().strip("()").split(",")
        return cls(*(int(x) for x in parts))


@dataclass(frozen=True)
class EigenvalueSet:
    """Eigenvalues of a real matrix, conjugate pairs stored once.

    ``real`` is sorted descending; ``complex_pairs`` holds ``(a, b)`` with
    ``b > 0`` sorted by ``(a, b)``. ``raw`` keeps the unclassified values
    for diagnostics.
    """

    real: tuple[float, ...]
    complex_pairs: tuple[tuple[float, float], ...]
    raw: tuple[complex, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if any(b <= 0 for _, b in self.complex_pairs):
            raise ValueError("complex pairs must have strictly positive imaginary part")

    @property
    def m(self) -> int:
        return len(self.real) + 2 * len(self.complex_pairs)

    @property
    def s(self) -> int:
        """Number of real eigenvalues."""
        return len(self.real)

    def values(self) -> np.ndarray:
        """All ``m`` eigenvalues as a complex array, conjugates included."""
        out = [complex(x) for x in self.real]
        for a, b in self.complex_pairs:
            out += [complex(a, b), complex(a, -b)]
        return np.array(out, dtype=complex)


def as_matrix(A, *, square: bool = False, name: str = "matrix") -> np.ndarray:
    try:
        a = np.array(A, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"{name}: cannot convert to a real array ({exc})") from None
    if a.ndim != 2:
        raise InvalidMatrix(f"{name}: expected a 2-D array, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise InvalidMatrix(f"{name}: entries must be finite")
    if square and a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"{name}: expected a square matrix, got shape {a.shape}")
    return a


def frobenius(A) -> float:
    return float(np.linalg.norm(np.asarray(A, dtype=float), "fro"))


def multiply(A, B) -> np.ndarray:
    a = as_matrix(A, name="A")
    b = as_matrix(B, name="B")
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


def lu_factor(A, pivot_tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Partial-pivot LU, packed as in LAPACK ``getrf``.

    Returns ``(lu, perm)`` with ``A[perm] == L @ U``. A pivot smaller than
    ``pivot_tol`` times the max-norm of its original row is treated as zero.
    """
    pivot_tol = pick(pivot_tol, "pivot_tol")
    a = as_matrix(A, square=True).copy()
    n = a.shape[0]
    row_scale = np.max(np.abs(a), axis=1) if n else np.zeros(0)
    perm = np.arange(n)
    for k in range(n):
        i = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = a[i, k]
        if row_scale[perm[i]] == 0.0 or abs(pivot) <= pivot_tol * row_scale[perm[i]]:
            raise SingularMatrix(f"numerically singular: pivot {pivot:.3e} at column {k}")
        if i != k:
            a[[k, i]] = a[[i, k]]
            perm[[k, i]] = perm[[i, k]]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return a, perm


def lu_solve(lu: np.ndarray, perm: np.ndarray, b) -> np.ndarray:
    x = np.array(b, dtype=float)[perm]
    n = lu.shape[0]
    for k in range(n):
        x[k + 1 :] -= np.multiply.outer(lu[k + 1 :, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.multiply.outer(lu[:k, k], x[k])
    return x


def solve(A, b, pivot_tol: float | None = None) -> np.ndarray:
    lu, perm = lu_factor(A, pivot_tol)
    return lu_solve(lu, perm, b)


def invert(A, pivot_tol: float | None = None) -> np.ndarray:
    lu, perm = lu_factor(A, pivot_tol)
    return lu_solve(lu, perm, np.eye(lu.shape[0]))


def determinant(A) -> float:
    """Determinant by partial-pivot elimination; exactly 0.0 on a zero pivot column."""
    a = as_matrix(A, square=True).copy()
    n = a.shape[0]
    det = 1.0
    for k in range(n):
        i = k + int(np.argmax(np.abs(a[k:, k])))
        if a[i, k] == 0.0:
            return 0.0
        if i != k:
            a[[k, i]] = a[[i, k]]
            det = -det
        det *= a[k, k]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return float(det)


def symmetry_defect(A) -> float:
    """``||A - A^T||_F / max(1, ||A||_F)``."""
    a = as_matrix(A, square=True)
    return frobenius(a - a.T) / max(1.0, frobenius(a))


def symmetric_eigen(
    A,
    tol: float | None = None,
    *,
    sym_tol: float | None = None,
    max_sweeps: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi.

    Returns ``(H, Q)``: eigenvalues in descending order and the orthonormal
    matrix whose columns are the matching eigenvectors, so that
    ``A ~ Q @ diag(H) @ Q.T``. Iteration stops when the off-diagonal
    Frobenius norm falls below ``tol * ||A||_F``.
    """
    tol = pick(tol, "eig_tol")
    sym_tol = pick(sym_tol, "sym_tol")
    max_sweeps = pick(max_sweeps, "max_sweeps")
    a = as_matrix(A, square=True)
    defect = symmetry_defect(a)
    if defect > sym_tol:
        raise NotSymmetric(f"symmetry defect {defect:.3e} exceeds {sym_tol:.1e}")
    a = 0.5 * (a + a.T)
    d, v, sweeps, off = _kernels.jacobi_eigh(a, tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps", residual=off)
    order = np.argsort(-d, kind="stable")
    return d[order], v[:, order]


def inertia(A, zero_tol: float | None = None, *, sym_tol: float | None = None) -> Inertia:
    a = as_matrix(A, square=True)
    h, _ = symmetric_eigen(a, sym_tol=sym_tol)
    threshold = pick(zero_tol, "zero_tol") * frobenius(a)
    p = int(np.sum(h > threshold))
    n = int(np.sum(h < -threshold))
    return Inertia(p, n, a.shape[0] - p - n)


def general_eigenvalues(
    A,
    pair_tol: float | None = None,
    *,
    size_cap: int | None = None,
    max_its: int = 60,
) -> EigenvalueSet:
    """All eigenvalues of a real square matrix.

    Balancing, Householder reduction to Hessenberg form, then Francis
    double-shift QR. Values with ``|Im| <= pair_tol * (1 + |lambda|)`` are
    treated as real; the rest must pair up as conjugates.
    """
    pair_tol = pick(pair_tol, "pair_tol")
    size_cap = pick(size_cap, "size_cap")
    a = as_matrix(A, square=True)
    m = a.shape[0]
    if m > size_cap:
        raise CapExceeded(f"dimension {m} exceeds the size cap {size_cap}")
    if m == 0:
        return EigenvalueSet((), ())
    h = _kernels.hessenberg(_kernels.balance(a))
    wr, wi, ok = _kernels.hqr(h, max_its)
    if not ok:
        raise ConvergenceFailure("shifted QR iteration did not converge", residual=float(np.max(np.abs(np.diag(h, -1)))))
    raw = wr + 1j * wi

    is_real = np.abs(wi) <= pair_tol * (1.0 + np.abs(raw))
    real = sorted((float(x) for x in wr[is_real]), reverse=True)
    upper = sorted(
        ((float(wr[i]), float(wi[i])) for i in range(m) if not is_real[i] and wi[i] > 0),
        key=lambda t: (t[0], abs(t[1])),
    )
    lower = sorted(
        ((float(wr[i]), float(wi[i])) for i in range(m) if not is_real[i] and wi[i] < 0),
        key=lambda t: (t[0], abs(t[1])),
    )
    if len(upper) != len(lower):
        raise ConvergenceFailure("unpaired complex eigenvalue in a real matrix")
    pairs = []
    for (a1, b1), (a2, b2) in zip(upper, lower):
        scale = 1.0 + abs(complex(a1, b1))
        if abs(a1 - a2) + abs(b1 + b2) > 1e3 * pair_tol * scale:
            raise ConvergenceFailure(f"cannot match {a1}+{b1}i with a conjugate")
        pairs.append((0.5 * (a1 + a2), 0.5 * (b1 - b2)))
    pairs.sort()
    return EigenvalueSet(tuple(real), tuple(pairs), tuple(complex(z) for z in raw))


def spd_sqrt(T, *, zero_tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Principal square root of a symmetric positive definite matrix and its inverse."""
    h, q = symmetric_eigen(T)
    if h.size and h[-1] <= pick(zero_tol, "zero_tol") * frobenius(T):
        raise SingularMatrix("matrix is not positive definite")
    root = np.sqrt(h)
    half = (q * root) @ q.T
    inv_half = (q / root) @ q.T
    return 0.5 * (half + half.T), 0.5 * (inv_half + inv_half.T)
