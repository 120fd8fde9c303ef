"""Dense matrix kernels shared by the solvers.

Matrices are plain ``numpy.ndarray`` objects of dtype float64.  ``as_matrix``
normalizes inputs to Fortran (column-major) order so that ``vec`` is a
zero-copy view, matching the column-stacking vectorization used by the
matrix regularizer.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np


class LinalgError(ValueError):
    """Raised on shape mismatches and non-finite inputs."""


def as_matrix(X, name: str = "matrix") -> np.ndarray:
    """Return ``X`` as a finite, 2-D, column-major float64 array."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise LinalgError(f"{name} must be a non-empty 2-D array, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise LinalgError(f"{name} contains non-finite entries")
    return np.asfortranarray(X)


def as_vector(v, name: str = "vector") -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise LinalgError(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise LinalgError(f"{name} contains non-finite entries")
    return v


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product ``A @ B`` with a shape check that names both operands."""
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise LinalgError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def transpose_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Compute ``A.T @ B`` without materializing the transpose."""
    if A.ndim != 2 or B.ndim != 2 or A.shape[0] != B.shape[0]:
        raise LinalgError(f"cannot form A^T B for A {A.shape} and B {B.shape}")
    # A.T is a strided view; BLAS handles the transposed layout directly.
    return A.T @ B


def frobenius_norm(X: np.ndarray) -> float:
    return float(np.linalg.norm(X.ravel(order="K")))


def l1_norm(X: np.ndarray) -> float:
    return float(np.abs(X).sum())


def vec(X: np.ndarray) -> np.ndarray:
    """Stack the columns of ``X`` into a vector (view when ``X`` is F-ordered)."""
    return np.ravel(X, order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v)
    if v.ndim != 1 or v.size != rows * cols:
        raise LinalgError(f"cannot reshape vector of length {v.size} into {rows}x{cols}")
    return np.reshape(v, (rows, cols), order="F")


class PowerInfo(NamedTuple):
    iterations: int
    converged: bool
    zero_matrix: bool


def spectral_norm_estimate(A: np.ndarray, tol: float = 1e-6, max_iter: int = 500,
                           full_output: bool = False):
    """Estimate the largest singular value of ``A`` by power iteration on ``A^T A``.

    The start vector is the normalized all-ones vector, so the estimate is
    deterministic.  A zero matrix yields ``0.0`` with ``info.zero_matrix`` set.

    Returns
    -------
    sigma : float
    info : PowerInfo
        Only when ``full_output`` is true.
    """
    n = A.shape[1]
    x = np.full(n, 1.0 / np.sqrt(n))
    sigma = 0.0
    info = PowerInfo(0, False, False)
    for it in range(1, max_iter + 1):
        y = A.T @ (A @ x)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            if it == 1 and not np.any(A):
                info = PowerInfo(it, True, True)
                break
            # start vector orthogonal to the row space; perturb deterministically
            x = np.cos(np.arange(n) + 1.0)
            x /= np.linalg.norm(x)
            continue
        new_sigma = float(np.sqrt(ny))
        x = y / ny
        if sigma > 0 and abs(new_sigma - sigma) <= tol * new_sigma:
            sigma = new_sigma
            info = PowerInfo(it, True, False)
            break
        sigma = new_sigma
        info = PowerInfo(it, False, False)
    # Rayleigh quotient is a tighter lower bound than the norm ratio
    if not info.zero_matrix:
        Ax = A @ x
        sigma = max(sigma, float(np.sqrt(Ax @ Ax)))
    if full_output:
        return sigma, info
    return sigma


class CGInfo(NamedTuple):
    iterations: int
    converged: bool
    residual_norm: float


def conjugate_gradient(apply: Callable[[np.ndarray], np.ndarray], b: np.ndarray,
                       x0: np.ndarray | None = None, tol: float = 1e-8,
                       max_iter: int | None = None) -> tuple[np.ndarray, CGInfo]:
    """Solve ``apply(x) = b`` for a symmetric positive semidefinite operator.

    Stops when ``||b - apply(x)|| <= tol * ||b||``.  When ``max_iter`` runs out
    the iterate with the smallest residual is returned and
    ``info.converged`` is false.

    Raises
    ------
    FloatingPointError
        If the recurrence produces non-finite values.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.size
    if max_iter is None:
        max_iter = n
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=np.float64)
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return np.zeros(n), CGInfo(0, True, 0.0)
    threshold = tol * bnorm

    r = b - apply(x)
    rr = float(r @ r)
    best_x, best_res = x.copy(), np.sqrt(rr)
    if best_res <= threshold:
        return x, CGInfo(0, True, best_res)
    p = r.copy()
    for it in range(1, max_iter + 1):
        Ap = apply(p)
        pAp = float(p @ Ap)
        if not np.isfinite(pAp):
            raise FloatingPointError("conjugate gradient produced a non-finite curvature")
        if pAp <= 0.0:
            # direction in the null space of a semidefinite operator
            break
        step = rr / pAp
        x = x + step * p
        r = r - step * Ap
        rr_new = float(r @ r)
        if not np.isfinite(rr_new):
            raise FloatingPointError("conjugate gradient produced a non-finite residual")
        res = np.sqrt(rr_new)
        if res < best_res:
            best_x, best_res = x.copy(), res
        if res <= threshold:
            return x, CGInfo(it, True, res)
        p = r + (rr_new / rr) * p
        rr = rr_new
    else:
        it = max_iter
    return best_x, CGInfo(it, best_res <= threshold, float(best_res))
