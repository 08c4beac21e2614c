"""Real Jordan forms built from a declarative spectrum, and their symmetric factors.

Each real Jordan block ``J_k`` is persymmetric, so with the exchange matrix
``E_k`` both ``E_k`` and ``E_k @ J_k`` (the row-reversed block, a Hankel-like
matrix) are symmetric and ``J_k = E_k @ (E_k @ J_k)``. Stacking the blocks
gives ``J = Y @ Jsym`` with ``Y`` and ``Jsym`` symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import InvalidBlock, InvalidSpec, NotApplicable, NotJordanBlock
from .linalg import EigenvalueSet, Inertia, as_matrix, inertia, symmetry_defect


@dataclass(frozen=True)
class RealBlock:
    lam: float
    ell: int = 1

    @property
    def size(self) -> int:
        return self.ell


@dataclass(frozen=True)
class ComplexBlock:
    """Chain of length ``ell`` for the pair ``a +- ib``; occupies ``2*ell`` rows."""

    a: float
    b: float
    ell: int = 1

    @property
    def size(self) -> int:
        return 2 * self.ell


Block = Union[RealBlock, ComplexBlock]


@dataclass(frozen=True)
class SpectrumSpec:
    """Ordered list of real Jordan blocks describing ``J``."""

    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise InvalidSpec("spectrum must contain at least one block")
        for blk in self.blocks:
            if not isinstance(blk, (RealBlock, ComplexBlock)):
                raise InvalidSpec(f"unknown block type {blk!r}")
            if int(blk.ell) != blk.ell or blk.ell < 1:
                raise InvalidSpec(f"block size must be a positive integer, got {blk.ell!r}")
            values = (blk.lam,) if isinstance(blk, RealBlock) else (blk.a, blk.b)
            if not all(np.isfinite(values)):
                raise InvalidSpec(f"non-finite block parameters in {blk!r}")
            if isinstance(blk, RealBlock) and blk.lam == 0:
                raise InvalidSpec("zero eigenvalue: the matrix must be invertible")
            if isinstance(blk, ComplexBlock) and not blk.b > 0:
                raise InvalidSpec(f"imaginary part must be positive, got b={blk.b!r}")

    @classmethod
    def from_lists(
        cls,
        real: Iterable[tuple[float, int]] = (),
        complex: Iterable[tuple[float, float, int]] = (),
    ) -> SpectrumSpec:
        """Real blocks first, then complex blocks, each in the given order."""
        blocks: list[Block] = [RealBlock(float(lam), int(ell)) for lam, ell in real]
        blocks += [ComplexBlock(float(a), float(b), int(ell)) for a, b, ell in complex]
        return cls(tuple(blocks))

    @property
    def real_blocks(self) -> tuple[RealBlock, ...]:
        return tuple(b for b in self.blocks if isinstance(b, RealBlock))

    @property
    def complex_blocks(self) -> tuple[ComplexBlock, ...]:
        return tuple(b for b in self.blocks if isinstance(b, ComplexBlock))

    @property
    def m(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def is_real(self) -> bool:
        return not self.complex_blocks

    def eigenvalues(self) -> EigenvalueSet:
        """Exact spectrum with algebraic multiplicities."""
        real = sorted((b.lam for b in self.real_blocks for _ in range(b.ell)), reverse=True)
        pairs = sorted((b.a, b.b) for b in self.complex_blocks for _ in range(b.ell))
        return EigenvalueSet(tuple(real), tuple(pairs))


@dataclass(frozen=True)
class JordanAssembly:
    J: np.ndarray
    Y: np.ndarray
    Jsym: np.ndarray
    inertia_Y: Inertia
    inertia_Jsym: Inertia | None

    @property
    def inertia_Jsym_defined(self) -> bool:
        return self.inertia_Jsym is not None


def jordan_block_real(lam: float, ell: int) -> np.ndarray:
    if ell < 1:
        raise InvalidBlock(f"block size must be >= 1, got {ell}")
    return np.diag(np.full(ell, float(lam))) + np.diag(np.ones(ell - 1), 1)


def jordan_block_complex(a: float, b: float, ell: int) -> np.ndarray:
    if not b > 0:
        raise InvalidBlock(f"imaginary part must be positive, got b={b}")
    if ell < 1:
        raise InvalidBlock(f"chain length must be >= 1, got {ell}")
    rot = np.array([[a, -b], [b, a]], dtype=float)
    out = np.kron(np.eye(ell), rot)
    out += np.kron(np.eye(ell, k=1), np.eye(2))
    return out


def exchange_matrix(k: int) -> np.ndarray:
    if k < 1:
        raise InvalidBlock(f"exchange matrix order must be >= 1, got {k}")
    return np.eye(k)[::-1].copy()


def exchange_inertia(k: int) -> Inertia:
    if k < 1:
        raise InvalidBlock(f"exchange matrix order must be >= 1, got {k}")
    return Inertia((k + 1) // 2, k // 2, 0)


def symmetric_block_factors(block) -> tuple[np.ndarray, np.ndarray]:
    """Split a persymmetric block as ``block == Yhat @ Jhat`` with both factors symmetric."""
    blk = as_matrix(block, square=True, name="block")
    k = blk.shape[0]
    yhat = exchange_matrix(k)
    jhat = blk[::-1].copy()
    defect = symmetry_defect(jhat)
    if defect > 1e-12:
        raise NotJordanBlock(f"row-reversed block is not symmetric (defect {defect:.3e})")
    return yhat, jhat


def _block_matrix(blk: Block) -> np.ndarray:
    if isinstance(blk, RealBlock):
        return jordan_block_real(blk.lam, blk.ell)
    return jordan_block_complex(blk.a, blk.b, blk.ell)


def _jsym_block_inertia(blk: Block, jhat: np.ndarray) -> Inertia:
    if isinstance(blk, RealBlock):
        return _real_jsym_inertia(blk)
    if blk.ell == 1:
        # [[b, a], [a, -b]] has determinant -(a^2 + b^2) < 0
        return Inertia(1, 1, 0)
    return inertia(jhat)


def _real_jsym_inertia(blk: RealBlock) -> Inertia:
    same = exchange_inertia(blk.ell)
    return same if blk.lam > 0 else same.swapped()


def _block_diag(mats: list[np.ndarray]) -> np.ndarray:
    m = sum(x.shape[0] for x in mats)
    out = np.zeros((m, m))
    i = 0
    for x in mats:
        k = x.shape[0]
        out[i : i + k, i : i + k] = x
        i += k
    return out


def assemble(spec: SpectrumSpec) -> JordanAssembly:
    if not isinstance(spec, SpectrumSpec):
        raise InvalidSpec(f"expected a SpectrumSpec, got {type(spec).__name__}")
    js, ys, jsyms = [], [], []
    inertia_y = Inertia(0, 0, 0)
    inertia_jsym = Inertia(0, 0, 0)
    for blk in spec.blocks:
        jb = _block_matrix(blk)
        yb, jh = symmetric_block_factors(jb)
        js.append(jb)
        ys.append(yb)
        jsyms.append(jh)
        inertia_y = inertia_y + exchange_inertia(blk.size)
        inertia_jsym = inertia_jsym + _jsym_block_inertia(blk, jh)
    return JordanAssembly(
        J=_block_diag(js),
        Y=_block_diag(ys),
        Jsym=_block_diag(jsyms),
        inertia_Y=inertia_y,
        inertia_Jsym=inertia_jsym,
    )


def jsym_inertia_real_spectrum(spec: SpectrumSpec) -> Inertia:
    """Inertia of ``Jsym`` from signs and block sizes alone (real spectra only)."""
    if spec.complex_blocks:
        raise NotApplicable("formula only covers real spectra")
    total = Inertia(0, 0, 0)
    for blk in spec.real_blocks:
        if blk.lam == 0:
            raise InvalidSpec("zero eigenvalue")
        total = total + _real_jsym_inertia(blk)
    return total
