"""Seeded synthetic benchmark: group-sparse truth, Gaussian sensing, noisy data.

Random streams come from ``numpy.random.Generator(PCG64(seed))``.  The
signal, sensing matrix and noise use the sub-seeds ``seed``, ``seed + 1``
and ``seed + 2`` so each can be varied on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .prox import OscarParams

SIGNAL_OFFSET, SENSING_OFFSET, NOISE_OFFSET = 0, 1, 2

SHAPES = ("block", "line", "curve")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class PatternSpec:
    """One connected, constant-valued group of nonzeros.

    ``extent`` depends on ``shape``:

    * ``block``: ``(height, width)``
    * ``line``: ``(length,)`` running along a row, or ``(length, "col")``
      running down a column
    * ``curve``: ``(length, amplitude)``; one cell per row for ``length``
      rows, column offset ``round(amplitude * sin(2 pi t / (length - 1)))``
      from the anchor column
    """

    shape: str
    anchor: tuple[int, int]
    extent: tuple
    value: float | None = None

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown pattern shape {self.shape!r}; expected one of {SHAPES}")
        if self.value is not None and self.value == 0:
            raise ValueError("pattern value must be nonzero")

    def cells(self) -> list[tuple[int, int]]:
        r0, c0 = self.anchor
        if self.shape == "block":
            h, w = self.extent
            return [(r0 + i, c0 + j) for j in range(w) for i in range(h)]
        if self.shape == "line":
            length = self.extent[0]
            along_col = len(self.extent) > 1 and self.extent[1] == "col"
            if along_col:
                return [(r0 + t, c0) for t in range(length)]
            return [(r0, c0 + t) for t in range(length)]
        length, amp = self.extent
        period = max(length - 1, 1)
        return [(r0 + t, c0 + int(round(amp * math.sin(2 * math.pi * t / period))))
                for t in range(length)]


@dataclass
class BenchmarkConfig:
    n: int = 100
    d: int = 10
    m: int = 65
    nnz_target: int = 100
    value_set: tuple[float, ...] = (-7.0, -8.0, -9.0, 7.0, 8.0, 9.0)
    noise_variance: float = 0.16
    params: OscarParams = field(default_factory=lambda: OscarParams(0.5, 0.0024))
    seed: int = 0
    # "gaussian" (i.i.d. standard normal times sensing_scale) or "identity" (needs m == n)
    sensing: str = "gaussian"
    sensing_scale: float = 1.0

    def validate(self):
        if min(self.n, self.d, self.m) < 1:
            raise ValueError("n, d and m must be positive")
        if not 0 <= self.nnz_target <= self.n * self.d:
            raise ValueError("nnz_target must lie in [0, n*d]")
        if self.noise_variance < 0:
            raise ValueError("noise_variance must be nonnegative")
        if any(v == 0 for v in self.value_set) or not self.value_set:
            raise ValueError("value_set must be a nonempty set of nonzero values")
        if self.sensing not in ("gaussian", "identity"):
            raise ValueError(f"unknown sensing ensemble {self.sensing!r}")
        if self.sensing == "identity" and self.m != self.n:
            raise ValueError("identity sensing requires m == n")


def default_patterns() -> list[PatternSpec]:
    """Canonical 100x10 layout with 100 cells: four 5x2 blocks, six row
    segments of length 5 and two 15-cell sinusoid curves."""
    blocks = [(2, 1), (10, 6), (50, 3), (88, 7)]
    lines = [(20, 0), (24, 5), (44, 2), (46, 4), (66, 1), (95, 3)]
    curves = [(28, 4), (70, 5)]
    return ([PatternSpec("block", a, (5, 2)) for a in blocks]
            + [PatternSpec("line", a, (5,)) for a in lines]
            + [PatternSpec("curve", a, (15, 2)) for a in curves])


def gen_signal(cfg: BenchmarkConfig, patterns: Sequence[PatternSpec] | None = None,
               seed: int | None = None) -> np.ndarray:
    """Place constant-valued groups on an ``n x d`` zero matrix.

    Groups without an explicit value get one drawn uniformly from
    ``cfg.value_set``.  Raises ``ValueError`` when groups overlap, leave the
    grid, or do not add up to ``cfg.nnz_target`` cells.
    """
    if patterns is None:
        patterns = default_patterns()
    rng = rng_for(cfg.seed + SIGNAL_OFFSET if seed is None else seed)
    values = np.asarray(cfg.value_set, dtype=np.float64)
    X = np.zeros((cfg.n, cfg.d), order="F")
    taken = np.zeros((cfg.n, cfg.d), dtype=bool)
    total = 0
    for k, pat in enumerate(patterns):
        cells = pat.cells()
        value = pat.value if pat.value is not None else float(values[rng.integers(values.size)])
        for r, c in cells:
            if not (0 <= r < cfg.n and 0 <= c < cfg.d):
                raise ValueError(f"pattern {k} ({pat.shape} at {pat.anchor}) leaves the "
                                 f"{cfg.n}x{cfg.d} grid at cell {(r, c)}")
            if taken[r, c]:
                raise ValueError(f"pattern {k} ({pat.shape} at {pat.anchor}) overlaps "
                                 f"another group at cell {(r, c)}")
            taken[r, c] = True
            X[r, c] = value
        total += len(cells)
    if total != cfg.nnz_target:
        raise ValueError(f"patterns cover {total} cells but nnz_target is {cfg.nnz_target}")
    return X


def gen_sensing(m: int, n: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """``m x n`` matrix of i.i.d. ``N(0, scale^2)`` entries."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return np.asfortranarray(scale * rng_for(seed).standard_normal((m, n)))


def observe(A: np.ndarray, X: np.ndarray, noise_variance: float, seed: int) -> np.ndarray:
    """``Y = A X + W`` with ``W`` i.i.d. ``N(0, noise_variance)``."""
    if noise_variance < 0:
        raise ValueError("noise_variance must be nonnegative")
    if A.shape[1] != X.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {X.shape}")
    Y = A @ X
    if noise_variance > 0:
        Y = Y + math.sqrt(noise_variance) * rng_for(seed).standard_normal(Y.shape)
    return np.asfortranarray(Y)


@dataclass
class Instance:
    X: np.ndarray
    A: np.ndarray
    Y: np.ndarray


def make_instance(cfg: BenchmarkConfig,
                  patterns: Sequence[PatternSpec] | None = None) -> Instance:
    cfg.validate()
    X = gen_signal(cfg, patterns)
    if cfg.sensing == "identity":
        A = np.asfortranarray(np.eye(cfg.n))
    else:
        A = gen_sensing(cfg.m, cfg.n, cfg.seed + SENSING_OFFSET, cfg.sensing_scale)
    Y = observe(A, X, cfg.noise_variance, cfg.seed + NOISE_OFFSET)
    return Instance(X, A, Y)
