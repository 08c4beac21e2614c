"""Seeded random test matrices with a prescribed real Jordan structure."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .linalg import invert
from .spectrum import ComplexBlock, RealBlock, SpectrumSpec, assemble

ENSEMBLES = ("all-complex", "all-real", "mixed", "defective", "chain", "pair-chain")
# tag names used by older corpora
ALIASES = {"example2": "chain", "example3": "pair-chain"}


@dataclass(frozen=True)
class Generated:
    B: np.ndarray
    spec: SpectrumSpec
    S: np.ndarray


def random_orthogonal(m: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed by ``diag(R)``)."""
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


def random_similarity(m: int, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    """``Q1 diag(2^u) Q2`` with ``u ~ U(-spread, spread)``, so ``cond(S) <= 4^spread``."""
    d = 2.0 ** rng.uniform(-spread, spread, m)
    return (random_orthogonal(m, rng) * d) @ random_orthogonal(m, rng)


def _spread_values(rng, count: int, lo: float, hi: float, min_gap: float) -> list[float]:
    for _ in range(1000):
        x = np.sort(rng.uniform(lo, hi, count))
        if count < 2 or np.min(np.diff(x)) >= min_gap:
            return [float(v) for v in x]
    raise InvalidSpec(f"cannot place {count} values in [{lo}, {hi}] with gap {min_gap}")


def random_spectrum(
    rng: np.random.Generator,
    n_pairs: int = 0,
    n_neg: int = 0,
    n_pos: int = 0,
    *,
    lo: float = 0.5,
    hi: float = 2.0,
    min_gap: float = 0.05,
) -> SpectrumSpec:
    """Distinct, well-separated eigenvalues: reals with ``|lambda|`` in ``[lo, hi]``, pairs ``a +- ib`` with ``b`` in ``[lo, hi]``."""
    if min(n_pairs, n_neg, n_pos) < 0:
        raise InvalidSpec("block counts must be non-negative")
    if n_pairs + n_neg + n_pos == 0:
        raise InvalidSpec("empty spectrum")
    blocks: list = [RealBlock(-v) for v in _spread_values(rng, n_neg, lo, hi, min_gap)]
    blocks += [RealBlock(v) for v in _spread_values(rng, n_pos, lo, hi, min_gap)]
    imag = _spread_values(rng, n_pairs, lo, hi, min_gap)
    blocks += [ComplexBlock(float(rng.uniform(-hi, hi)), b) for b in imag]
    order = rng.permutation(len(blocks))
    return SpectrumSpec(tuple(blocks[i] for i in order))


def random_defective_spectrum(rng: np.random.Generator, m: int, *, lo: float = 0.5, hi: float = 2.0) -> SpectrumSpec:
    """At least one Jordan chain of length >= 2; the rest split randomly into real and complex blocks."""
    if m < 2:
        raise InvalidSpec("a defective spectrum needs m >= 2")
    if m >= 4 and rng.random() < 0.5:
        ell = int(rng.integers(2, m // 2 + 1))
        blocks: list = [ComplexBlock(float(rng.uniform(-hi, hi)), float(rng.uniform(lo, hi)), ell)]
    else:
        ell = int(rng.integers(2, m + 1))
        blocks = [RealBlock(float(rng.choice([-1.0, 1.0]) * rng.uniform(lo, hi)), ell)]
    left = m - blocks[0].size
    while left:
        if left >= 2 and rng.random() < 0.5:
            ell = int(rng.integers(1, left // 2 + 1))
            blocks.append(ComplexBlock(float(rng.uniform(-hi, hi)), float(rng.uniform(lo, hi)), ell))
        else:
            ell = int(rng.integers(1, left + 1))
            blocks.append(RealBlock(float(rng.choice([-1.0, 1.0]) * rng.uniform(lo, hi)), ell))
        left -= blocks[-1].size
    blocks = [blocks[i] for i in rng.permutation(len(blocks))]
    return SpectrumSpec(tuple(blocks))


def power_of_two_scaling(m: int, rng: np.random.Generator, spread: int = 2) -> np.ndarray:
    """Diagonal ``S`` with entries ``+-2^k``: ``S J S^-1`` is then computed without rounding."""
    k = rng.integers(-spread, spread + 1, m)
    return np.diag(rng.choice([-1.0, 1.0], m) * 2.0 ** k)


def single_chain_spec(lam: float = 2.0, m: int = 4) -> SpectrumSpec:
    """One real Jordan chain: a single eigenvalue with a single eigenvector."""
    return SpectrumSpec((RealBlock(lam, m),))


def pair_chain_spec(a: float = 1.0, b: float = 2.0, c: float = -0.5, d: float = 1.5) -> SpectrumSpec:
    """6x6: a simple pair ``c +- id`` followed by a double pair ``a +- ib`` in one chain."""
    return SpectrumSpec((ComplexBlock(c, d, 1), ComplexBlock(a, b, 2)))


def from_spec(spec: SpectrumSpec, S) -> Generated:
    S = np.asarray(S, dtype=float)
    J = assemble(spec).J
    return Generated(S @ J @ invert(S), spec, S)


def generate(
    kind: str,
    m: int,
    seed: int = 0,
    *,
    n_pairs: int | None = None,
    n_neg: int | None = None,
    identity_S: bool = False,
) -> Generated:
    """One member of a named ensemble, fully determined by ``(kind, m, seed, ...)``.

    Defective matrices use a power-of-two diagonal ``S`` unless ``identity_S``:
    a generic similarity would perturb a length-``l`` chain by ``eps^(1/l)``
    and blur the real/non-real split.
    """
    kind = ALIASES.get(kind, kind)
    if kind not in ENSEMBLES:
        raise InvalidSpec(f"unknown ensemble {kind!r}; choose from {', '.join(ENSEMBLES)}")
    if m < 1:
        raise InvalidSpec("m must be positive")
    rng = np.random.default_rng(seed)

    if kind == "pair-chain":
        if m != 6:
            raise InvalidSpec("pair-chain is 6x6")
        spec = pair_chain_spec()
    elif kind == "chain":
        spec = single_chain_spec(2.0, m)
    elif kind == "defective":
        spec = random_defective_spectrum(rng, m)
    else:
        if kind == "all-complex":
            if m % 2:
                raise InvalidSpec("an all-complex spectrum needs even m")
            pairs = m // 2
        elif kind == "all-real":
            pairs = 0
        else:
            pairs = int(rng.integers(1, m // 2 + 1)) if n_pairs is None else n_pairs
            if m < 3 and n_pairs is None:
                raise InvalidSpec("a mixed spectrum needs m >= 3")
        if n_pairs is not None and n_pairs != pairs:
            raise InvalidSpec(f"{kind} fixes n_pairs={pairs}, got {n_pairs}")
        real = m - 2 * pairs
        if real < 0:
            raise InvalidSpec(f"{pairs} complex pairs do not fit in m={m}")
        neg = int(rng.integers(0, real + 1)) if n_neg is None else n_neg
        if not 0 <= neg <= real:
            raise InvalidSpec(f"n_neg={neg} outside [0, {real}]")
        spec = random_spectrum(rng, pairs, neg, real - neg)

    if identity_S or kind in ("chain", "pair-chain"):
        S = np.eye(m)
    elif kind == "defective":
        S = power_of_two_scaling(m, rng)
    else:
        S = random_similarity(m, rng)
    return from_spec(spec, S)


def random_symmetric(p: int, n: int, rng: np.random.Generator, *, lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """Symmetric ``Q diag(d) Q^T`` with exactly ``p`` positive and ``n`` negative eigenvalues."""
    m = p + n
    mags = rng.uniform(lo, hi, m)
    d = np.concatenate([mags[:p], -mags[p:]])
    q = random_orthogonal(m, rng)
    a = (q * d) @ q.T
    return 0.5 * (a + a.T)
