"""Eigenvalue trajectories of the symmetric pencils between ``T^-1`` and ``W``.

``V(t) = t W + (1 - t) T^-1`` is singular exactly when ``(t - 1)/t`` is an
eigenvalue of ``B = T W``, and ``U(t) = t W - (1 - t) T^-1`` is singular
exactly when ``(1 - t)/t`` is. Scanning ``t`` over ``(0, 1)`` therefore finds
negative (``V``) and positive (``U``) real eigenvalues of ``B``, with at least
as many sign changes as the endpoint inertias differ.

Trajectories are identified by sorted index. Sorted eigenvalues are
continuous in ``t``, so a sign change of the k-th one between two grid
points always brackets a zero of that same function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .config import pick
from .errors import ConvergenceFailure, CountMismatch, InternalError, KernelMismatch, NotSymmetric, RefineFailure
from .linalg import Inertia, as_matrix, frobenius, general_eigenvalues, inertia, invert, symmetric_eigen, symmetry_defect


class PencilKind(str, enum.Enum):
    V = "V"
    U = "U"


@dataclass(frozen=True)
class SingularPoint:
    param: float
    multiplicity: int
    mapped_eigenvalue: float
    trajectories: tuple[int, ...] = ()


@dataclass
class PencilScan:
    kind: PencilKind
    grid: np.ndarray
    trajectories: np.ndarray
    singular_points: tuple[SingularPoint, ...]
    touches: tuple[float, ...] = ()
    T: np.ndarray | None = field(default=None, repr=False)
    W: np.ndarray | None = field(default=None, repr=False)

    @property
    def found(self) -> int:
        return sum(sp.multiplicity for sp in self.singular_points)

    @property
    def counts(self) -> tuple[int, int]:
        """``(negative_found, positive_found)``."""
        return (self.found, 0) if self.kind is PencilKind.V else (0, self.found)

    def to_dict(self) -> dict:
        neg, pos = self.counts
        return {
            "kind": self.kind.value,
            "grid_points": int(self.grid.size),
            "singular_points": [
                {
                    "param": sp.param,
                    "multiplicity": sp.multiplicity,
                    "mapped_eigenvalue": sp.mapped_eigenvalue,
                }
                for sp in self.singular_points
            ],
            "touches": list(self.touches),
            "counts": {"negative_found": neg, "positive_found": pos},
        }


def map_parameter(kind: PencilKind, param: float) -> float:
    """Eigenvalue of ``T W`` signalled by a singular pencil at ``param``."""
    if not 0.0 < param < 1.0:
        raise InternalError(f"singular parameter {param!r} outside (0, 1)")
    if PencilKind(kind) is PencilKind.V:
        return (param - 1.0) / param
    return (1.0 - param) / param


class _Pencil:
    """Cached ``W``, ``T^-1`` and the parameter derivative of one pencil."""

    def __init__(self, kind, T, W, sym_tol: float | None = None):
        sym_tol = pick(sym_tol, "sym_tol")
        self.kind = PencilKind(kind)
        t = as_matrix(T, square=True, name="T")
        w = as_matrix(W, square=True, name="W")
        if t.shape != w.shape:
            raise ValueError(f"T is {t.shape} but W is {w.shape}")
        for name, x in (("T", t), ("W", w)):
            defect = symmetry_defect(x)
            if defect > sym_tol:
                raise NotSymmetric(f"{name} has symmetry defect {defect:.3e}")
        self.T = 0.5 * (t + t.T)
        self.W = 0.5 * (w + w.T)
        t_inv = invert(self.T)
        self.T_inv = 0.5 * (t_inv + t_inv.T)
        self.start = self.T_inv if self.kind is PencilKind.V else -self.T_inv
        self.slope = self.W - self.start
        self.scale = frobenius(self.W) + frobenius(self.T_inv)
        self.eig_tol = pick(None, "eig_tol")
        self.max_sweeps = pick(None, "max_sweeps")

    def matrix(self, param: float) -> np.ndarray:
        return param * self.W + (1.0 - param) * self.start

    def eig(self, param: float) -> tuple[np.ndarray, np.ndarray]:
        """Ascending eigenvalues and their parameter derivatives."""
        d, v, sweeps, off = _kernels.jacobi_eigh(self.matrix(param), self.eig_tol, self.max_sweeps)
        if sweeps < 0:
            raise ConvergenceFailure("Jacobi did not converge on a pencil matrix", residual=off)
        order = np.argsort(d, kind="stable")
        v = v[:, order]
        return d[order], np.einsum("ik,ij,jk->k", v, self.slope, v)

    def value(self, param: float, k: int) -> float:
        return float(self.eig(param)[0][k])


def pencil_matrix(kind, param: float, T, W) -> np.ndarray:
    return _Pencil(kind, T, W).matrix(param)


def _suspicious(vals: np.ndarray, ders: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Intervals where a trajectory keeps its sign but may dip through zero unseen.

    Flags ``[a, b]`` when some trajectory heads toward zero at ``a``, leaves
    it at ``b``, and both tangent lines reach zero inside the interval.
    """
    fa, fb = vals[:-1], vals[1:]
    da, db = ders[:-1], ders[1:]
    h = np.diff(grid)[:, None]
    same = (fa < 0) == (fb < 0)
    nonzero = (fa != 0) & (fb != 0)
    toward = np.sign(fa) * da < 0
    away = np.sign(fb) * db > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        reach_a = np.abs(fa) < np.abs(da) * h
        reach_b = np.abs(fb) < np.abs(db) * h
    return np.any(same & nonzero & toward & away & reach_a & reach_b, axis=1)


def _bisect(pen: _Pencil, k: int, lo: float, hi: float, f_lo: float, tol: float) -> float:
    neg_lo = f_lo < 0
    best, best_val = lo, abs(f_lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = pen.value(mid, k)
        if abs(f_mid) < best_val:
            best, best_val = mid, abs(f_mid)
        if abs(f_mid) <= tol:
            return mid
        if (f_mid < 0) == neg_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(mid)):
            break
    if best_val <= tol:
        return best
    raise RefineFailure(f"trajectory {k}: |eigenvalue| stalled at {best_val:.3e} > {tol:.3e}", bracket=(lo, hi))


def scan(
    kind,
    T,
    W,
    grid_size: int | None = None,
    refine_tol: float | None = None,
    *,
    cluster_tol: float | None = None,
    max_grid: int | None = None,
    touch_tol: float | None = None,
) -> PencilScan:
    """Locate the singular parameters of ``V`` or ``U`` on ``(0, 1)``."""
    grid_size = pick(grid_size, "grid_size")
    refine_tol = pick(refine_tol, "refine_tol")
    cluster_tol = pick(cluster_tol, "cluster_tol")
    max_grid = pick(max_grid, "max_grid")
    touch_tol = pick(touch_tol, "null_tol")
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    pen = _Pencil(kind, T, W)
    grid = np.linspace(0.0, 1.0, grid_size)
    evals = [pen.eig(t) for t in grid]
    vals = np.array([e[0] for e in evals])
    ders = np.array([e[1] for e in evals])

    while True:
        flagged = np.flatnonzero(_suspicious(vals, ders, grid))
        if flagged.size == 0 or grid.size + flagged.size > max_grid:
            break
        mids = 0.5 * (grid[flagged] + grid[flagged + 1])
        new = [pen.eig(t) for t in mids]
        grid = np.insert(grid, flagged + 1, mids)
        vals = np.insert(vals, flagged + 1, [e[0] for e in new], axis=0)
        ders = np.insert(ders, flagged + 1, [e[1] for e in new], axis=0)

    tol = refine_tol * pen.scale
    roots: list[tuple[float, int]] = []
    neg = vals < 0
    for i, k in zip(*np.nonzero(neg[:-1] != neg[1:])):
        roots.append((_bisect(pen, int(k), grid[i], grid[i + 1], vals[i, k], tol), int(k)))
    roots.sort()

    points: list[SingularPoint] = []
    group: list[tuple[float, int]] = []
    for root in roots + [(np.inf, -1)]:
        if group and root[0] - group[-1][0] > cluster_tol:
            param = float(np.mean([g[0] for g in group]))
            points.append(
                SingularPoint(param, len(group), map_parameter(pen.kind, param), tuple(g[1] for g in group))
            )
            group = []
        group.append(root)

    flipped = {k for _, k in roots}
    near = np.abs(vals) <= touch_tol * pen.scale
    touches = sorted(
        {float(grid[i]) for i, k in zip(*np.nonzero(near)) if int(k) not in flipped and 0 < i < grid.size - 1}
    )
    return PencilScan(pen.kind, grid, vals, tuple(points), tuple(touches), pen.T, pen.W)


@dataclass(frozen=True)
class PencilReport:
    required_negative: int
    required_positive: int
    negative_found: int
    positive_found: int
    unmatched: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return (
            self.negative_found >= self.required_negative
            and self.positive_found >= self.required_positive
            and not self.unmatched
        )

    def to_dict(self) -> dict:
        return {
            "required_negative": self.required_negative,
            "required_positive": self.required_positive,
            "negative_found": self.negative_found,
            "positive_found": self.positive_found,
            "unmatched": list(self.unmatched),
            "passed": self.passed,
        }


def verify_counts(
    scan_v: PencilScan,
    scan_u: PencilScan,
    inertia_T: Inertia | None = None,
    inertia_W: Inertia | None = None,
    *,
    match_tol: float | None = None,
    strict: bool = True,
) -> PencilReport:
    """Compare found singular points with the lower bounds from the endpoint inertias.

    At least ``|p - p_W|`` negative and ``|n - p_W|`` positive real
    eigenvalues are required, and every mapped eigenvalue must lie within
    ``match_tol * max(1, |mu|)`` of some eigenvalue ``mu`` of ``T W``.
    """
    if scan_v.kind is not PencilKind.V or scan_u.kind is not PencilKind.U:
        raise ValueError("expected one V scan and one U scan")
    match_tol = pick(match_tol, "match_tol")
    T, W = scan_v.T, scan_v.W
    if not (np.array_equal(T, scan_u.T) and np.array_equal(W, scan_u.W)):
        raise ValueError("scans were produced from different (T, W)")
    in_t = inertia_T if inertia_T is not None else inertia(T)
    in_w = inertia_W if inertia_W is not None else inertia(W)
    eig = general_eigenvalues(T @ W).values()

    unmatched = []
    for sp in scan_v.singular_points + scan_u.singular_points:
        dist = np.abs(eig - sp.mapped_eigenvalue)
        j = int(np.argmin(dist))
        if dist[j] > match_tol * max(1.0, abs(eig[j])):
            unmatched.append(sp.mapped_eigenvalue)

    report = PencilReport(
        required_negative=abs(in_t.p - in_w.p),
        required_positive=abs(in_t.n - in_w.p),
        negative_found=scan_v.found,
        positive_found=scan_u.found,
        unmatched=tuple(unmatched),
    )
    if strict and not report.passed:
        raise CountMismatch("pencil scan does not meet the eigenvalue count bounds", diagnostics=report.to_dict())
    return report


def eigenvector_multiplicity_check(T, W, point: SingularPoint, kind=PencilKind.V, *, null_tol: float | None = None) -> int:
    """Nullity of the pencil at ``point``; each kernel vector must be an eigenvector of ``T W``."""
    null_tol = pick(null_tol, "null_tol")
    pen = _Pencil(kind, T, W)
    h, q = symmetric_eigen(pen.matrix(point.param))
    kernel = np.abs(h) <= null_tol * pen.scale
    r = int(np.sum(kernel))
    if r == 0:
        raise KernelMismatch(f"pencil matrix is not singular at {point.param!r}")
    B = pen.T @ pen.W
    bound = 1e-6 * frobenius(B)
    for u in q[:, kernel].T:
        res = float(np.linalg.norm(B @ u - point.mapped_eigenvalue * u))
        if res > bound:
            raise KernelMismatch(f"kernel vector has eigen-residual {res:.3e} > {bound:.3e}")
    return r
