"""Default tolerances and the run configuration used by the CLI."""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

SYM_TOL = 1e-10
ZERO_TOL = 1e-9
PAIR_TOL = 1e-8
PIVOT_TOL = 1e-12
EIG_TOL = 1e-13
MAX_SWEEPS = 100
SIZE_CAP = 64
SYMMETRIZER_CAP = 16

GAP_TOL = 1e-6
EIGEN_CLUSTER_TOL = 1e-9
COND_CAP = 1e6
SPEC_RESIDUAL_TOL = 1e-10
EIGEN_RESIDUAL_TOL = 1e-8
FACTOR_SYMMETRY_TOL = 1e-9

RANK_TOL = 1e-8
SINGULAR_TOL = 1e-10
CENSUS_SYMMETRY_TOL = 1e-7

GRID_SIZE = 256
MAX_GRID = 2**14
REFINE_TOL = 1e-12
CLUSTER_TOL = 1e-8
NULL_TOL = 1e-8
MATCH_TOL = 1e-6

SAMPLES = 1000


@dataclass(frozen=True)
class RunConfig:
    sym_tol: float = SYM_TOL
    zero_tol: float = ZERO_TOL
    pair_tol: float = PAIR_TOL
    pivot_tol: float = PIVOT_TOL
    eig_tol: float = EIG_TOL
    gap_tol: float = GAP_TOL
    eigen_cluster_tol: float = EIGEN_CLUSTER_TOL
    cond_cap: float = COND_CAP
    spec_residual_tol: float = SPEC_RESIDUAL_TOL
    eigen_residual_tol: float = EIGEN_RESIDUAL_TOL
    factor_symmetry_tol: float = FACTOR_SYMMETRY_TOL
    rank_tol: float = RANK_TOL
    singular_tol: float = SINGULAR_TOL
    census_symmetry_tol: float = CENSUS_SYMMETRY_TOL
    refine_tol: float = REFINE_TOL
    cluster_tol: float = CLUSTER_TOL
    null_tol: float = NULL_TOL
    match_tol: float = MATCH_TOL
    max_sweeps: int = MAX_SWEEPS
    size_cap: int = SIZE_CAP
    symmetrizer_cap: int = SYMMETRIZER_CAP
    grid_size: int = GRID_SIZE
    max_grid: int = MAX_GRID
    samples: int = SAMPLES
    seed: int = 0

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name == "seed":
                if value < 0:
                    raise ValueError("seed must be a non-negative integer")
            elif not value > 0:
                raise ValueError(f"{f.name} must be strictly positive, got {value!r}")

    def replace(self, **changes) -> RunConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_file(cls, path: str | Path) -> RunConfig:
        data = json.loads(Path(path).read_text())
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


_ACTIVE: contextvars.ContextVar[RunConfig] = contextvars.ContextVar("symfactor_config", default=RunConfig())


def current() -> RunConfig:
    """Configuration that supplies every tolerance left as ``None`` by a caller."""
    return _ACTIVE.get()


@contextlib.contextmanager
def using(cfg: RunConfig):
    token = _ACTIVE.set(cfg)
    try:
        yield cfg
    finally:
        _ACTIVE.reset(token)


def pick(value, name: str):
    return getattr(_ACTIVE.get(), name) if value is None else value
