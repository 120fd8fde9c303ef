"""OSCAR regularizer and its exact proximity operator.

The pairwise term ``sum_{i<j} max(|x_i|, |x_j|)`` charges the k-th largest
magnitude once for each of the ``n - k`` entries it dominates, so

    lambda1 * ||x||_1 + lambda2 * sum_{i<j} max(|x_i|, |x_j|)
        = sum_k (lambda1 + lambda2 * (n - k)) * |x|_(k)

with ``|x|_(1) >= ... >= |x|_(n)``.  The regularizer is therefore a weighted
sorted-l1 norm with linearly decaying weights, and its prox reduces to a sort
followed by an isotonic projection (pool adjacent violators).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .linalg import unvec, vec


@dataclass(frozen=True)
class OscarParams:
    """Weights of the l1 term (``lambda1``) and the pairwise l-inf term (``lambda2``)."""

    lambda1: float = 0.0
    lambda2: float = 0.0

    def __post_init__(self):
        for name in ("lambda1", "lambda2"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a finite nonnegative number, got {value!r}")


def oscar_weights(n: int, params: OscarParams) -> np.ndarray:
    """Nonincreasing weights ``w_i = lambda1 + lambda2 * (n - i)``, ``i = 1..n``."""
    if n < 1:
        raise ValueError(f"weight vector length must be positive, got {n}")
    return params.lambda1 + params.lambda2 * np.arange(n - 1, -1, -1, dtype=np.float64)


def oscar_value(x, params: OscarParams) -> float:
    """Regularizer value in O(n log n) via the sorted-magnitude form."""
    a = np.abs(np.ravel(x, order="F"))
    if a.size == 0:
        return 0.0
    a = np.sort(a)[::-1]
    return float(oscar_weights(a.size, params) @ a)


def pav_nonincreasing(z) -> np.ndarray:
    """Euclidean projection of ``z`` onto the cone ``u_1 >= u_2 >= ... >= u_n``."""
    return _backend.kernels.pav_nonincreasing(np.asarray(z, dtype=np.float64))


def _check_weights(w: np.ndarray, n: int) -> None:
    if w.ndim != 1 or w.size != n:
        raise ValueError(f"weight vector has shape {w.shape}, expected ({n},)")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    if np.any(np.diff(w) > 0):
        raise ValueError("weights must be nonincreasing")


def _prox_sorted(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    a = np.abs(v)
    order = np.argsort(-a, kind="stable")
    shrunk = _backend.kernels.shrink_sorted(a[order], w)
    out = np.empty_like(a)
    out[order] = shrunk
    return np.sign(v) * out


def prox_sorted_weighted_l1(v, w) -> np.ndarray:
    """Prox of the weighted sorted-l1 norm ``x -> sum_i w_i |x|_(i)``.

    Returns the exact minimizer of ``0.5 * ||x - v||^2 + sum_i w_i |x|_(i)``.

    Parameters
    ----------
    v : array_like, shape (n,)
    w : array_like, shape (n,)
        Nonincreasing, nonnegative weights.
    """
    v = np.asarray(v, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"v must be 1-D, got shape {v.shape}")
    _check_weights(w, v.size)
    if v.size == 0:
        return v.copy()
    return _prox_sorted(v, w)


def prox_2oscar(Z, params: OscarParams, alpha: float = 1.0) -> np.ndarray:
    """Prox of ``Phi_2OSCAR / alpha`` at the matrix ``Z``.

    The matrix regularizer acts on ``vec(Z)``, so this is the vector prox with
    weights ``oscar_weights(n*d) / alpha``, reshaped back to ``Z.shape``.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    Z = np.asarray(Z, dtype=np.float64)
    rows, cols = Z.shape
    w = oscar_weights(rows * cols, params) / alpha
    return unvec(_prox_sorted(vec(Z), w), rows, cols)


class Prox2Oscar:
    """Cached-weight version of :func:`prox_2oscar` for a fixed matrix shape."""

    def __init__(self, shape: tuple[int, int], params: OscarParams):
        self.shape = shape
        self.params = params
        self._w = oscar_weights(shape[0] * shape[1], params)

    def __call__(self, Z: np.ndarray, alpha: float) -> np.ndarray:
        out = _prox_sorted(vec(Z), self._w / alpha)
        return unvec(out, *self.shape)

    def value(self, X: np.ndarray) -> float:
        a = np.sort(np.abs(vec(X)))[::-1]
        return float(self._w @ a)
