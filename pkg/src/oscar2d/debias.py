"""Least-squares re-fit on a fixed support.

Given an estimate ``X_tilde`` this solves

    min_X ||A X - Y||_F^2   subject to   supp(X) = supp(X_tilde)

column by column, since the Frobenius norm separates over columns.  Each
column is a conjugate-gradient solve of the normal equations restricted to
that column's support.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import LinalgError, as_matrix, conjugate_gradient


def support(X, eps: float = 0.0) -> np.ndarray:
    """Boolean mask of entries with ``|X| > eps``."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return np.abs(np.asarray(X)) > eps


@dataclass
class DebiasInfo:
    converged: list[bool] = field(default_factory=list)
    iterations: list[int] = field(default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(self.converged)


def debias(A, Y, X_tilde, eps: float = 0.0, cg_tol: float = 1e-8,
           cg_max_iter: int | None = None, return_info: bool = False):
    """Re-fit magnitudes of ``X_tilde`` by least squares on its support.

    Parameters
    ----------
    A : (m, n) array
    Y : (m, d) array
    X_tilde : (n, d) array
        Estimate whose nonzero pattern (``|x| > eps``) fixes the support.
    cg_tol : float
        Relative residual tolerance of each column's CG solve.
    cg_max_iter : int, optional
        CG iteration cap per column; defaults to ten times the column's
        support size (rounding destroys the finite-termination property).

    Returns
    -------
    X : (n, d) array
        Zero off the support.
    info : DebiasInfo
        Per-column CG status, only when ``return_info`` is true.  A column
        that did not converge still holds its best iterate.
    """
    A = as_matrix(A, "A")
    Y = as_matrix(Y, "Y")
    X_tilde = as_matrix(X_tilde, "X_tilde")
    m, n = A.shape
    if Y.shape[0] != m or X_tilde.shape != (n, Y.shape[1]):
        raise LinalgError(f"inconsistent shapes A {A.shape}, Y {Y.shape}, X_tilde {X_tilde.shape}")

    mask = support(X_tilde, eps)
    out = np.zeros_like(X_tilde)
    info = DebiasInfo()
    for j in range(Y.shape[1]):
        idx = np.flatnonzero(mask[:, j])
        if idx.size == 0:
            info.converged.append(True)
            info.iterations.append(0)
            continue
        As = A[:, idx]

        def gram(x, As=As):
            return As.T @ (As @ x)

        max_iter = 10 * idx.size if cg_max_iter is None else cg_max_iter
        x, cg = conjugate_gradient(gram, As.T @ Y[:, j], tol=cg_tol, max_iter=max_iter)
        out[idx, j] = x
        info.converged.append(cg.converged)
        info.iterations.append(cg.iterations)
    if return_info:
        return out, info
    return out
