"""Proximal splitting solvers for

    min_X  0.5 * ||Y - A X||_F^2 + Phi_2OSCAR(X).

All four solvers share :class:`Problem`, :class:`SolverConfig` and
:class:`SolverResult`, and stop on the relative change rule implemented by
:func:`converged`.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .linalg import LinalgError, as_matrix, frobenius_norm, spectral_norm_estimate
from .prox import OscarParams, Prox2Oscar, oscar_value


class SolverError(RuntimeError):
    """A solver hit a non-finite objective or an invalid configuration."""


@dataclass(frozen=True)
class Problem:
    A: np.ndarray
    Y: np.ndarray
    params: OscarParams = OscarParams()

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        Y = as_matrix(self.Y, "Y")
        if A.shape[0] != Y.shape[0]:
            raise LinalgError(f"A has {A.shape[0]} rows but Y has {Y.shape[0]}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "Y", Y)

    @property
    def shape(self) -> tuple[int, int]:
        """Shape ``(n, d)`` of the unknown matrix."""
        return self.A.shape[1], self.Y.shape[1]


@dataclass
class SparsaOptions:
    eta: float = 2.0
    alpha_min: float = 1e-30
    alpha_max: float = 1e30
    max_backtracks: int = 50
    # None: start from the curvature of A along the initial gradient
    alpha0: float | None = None

    def validate(self):
        if not self.eta > 1:
            raise ValueError("sparsa.eta must exceed 1")
        if not 0 < self.alpha_min < self.alpha_max:
            raise ValueError("sparsa needs 0 < alpha_min < alpha_max")
        if self.max_backtracks < 0:
            raise ValueError("sparsa.max_backtracks must be nonnegative")
        if self.alpha0 is not None and not self.alpha0 > 0:
            raise ValueError("sparsa.alpha0 must be positive")


@dataclass
class FistaOptions:
    lipschitz_margin: float = 1.0

    def validate(self):
        if not self.lipschitz_margin >= 1:
            raise ValueError("fista.lipschitz_margin must be >= 1")


@dataclass
class AdmmOptions:
    rho: float = 1.0

    def validate(self):
        if not self.rho > 0:
            raise ValueError("admm.rho must be positive")


@dataclass
class PadmmOptions:
    step_fraction: float = 0.99

    def validate(self):
        if not 0 < self.step_fraction < 1:
            raise ValueError("padmm.step_fraction must lie in (0, 1)")


@dataclass
class SolverConfig:
    max_iter: int = 5000
    tol: float = 1e-3
    sparsa: SparsaOptions = field(default_factory=SparsaOptions)
    fista: FistaOptions = field(default_factory=FistaOptions)
    admm: AdmmOptions = field(default_factory=AdmmOptions)
    padmm: PadmmOptions = field(default_factory=PadmmOptions)
    x0: np.ndarray | None = None

    def validate(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        for opts in (self.sparsa, self.fista, self.admm, self.padmm):
            opts.validate()


@dataclass
class SolverResult:
    X_hat: np.ndarray
    iterations: int
    objective_trace: np.ndarray
    wall_time_seconds: float
    converged: bool
    warnings: list[str] = field(default_factory=list)


def objective(p: Problem, X) -> float:
    """``0.5 * ||Y - A X||_F^2 + Phi_2OSCAR(X)``."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape != p.shape:
        raise LinalgError(f"X has shape {X.shape}, expected {p.shape}")
    R = p.Y - p.A @ X
    return 0.5 * float(np.vdot(R, R)) + oscar_value(X, p.params)


def relative_change(X_prev: np.ndarray, X_next: np.ndarray) -> float:
    """``||X_next - X_prev||_F / ||X_next||_F``; ``inf`` when ``X_next`` is zero."""
    denom = frobenius_norm(X_next)
    if denom == 0.0:
        return math.inf
    return frobenius_norm(X_next - X_prev) / denom


def converged(X_prev: np.ndarray, X_next: np.ndarray, tol: float) -> bool:
    return relative_change(X_prev, X_next) <= tol


def _initial(p: Problem, cfg: SolverConfig) -> np.ndarray:
    cfg.validate()
    if cfg.x0 is None:
        return np.zeros(p.shape, order="F")
    x0 = as_matrix(cfg.x0, "x0")
    if x0.shape != p.shape:
        raise LinalgError(f"x0 has shape {x0.shape}, expected {p.shape}")
    return x0.copy(order="F")


class _Tracker:
    """Objective evaluations that reuse the residual ``A X - Y``."""

    def __init__(self, p: Problem):
        self.p = p
        self.prox = Prox2Oscar(p.shape, p.params)

    def residual(self, X):
        return self.p.A @ X - self.p.Y

    def value(self, X, R=None) -> float:
        if R is None:
            R = self.residual(X)
        f = 0.5 * float(np.vdot(R, R)) + self.prox.value(X)
        if not math.isfinite(f):
            raise SolverError("objective became non-finite")
        return f


def solve_sparsa(p: Problem, cfg: SolverConfig | None = None) -> SolverResult:
    """SpaRSA with Barzilai-Borwein steps and monotone acceptance.

    Each outer iteration takes the BB curvature
    ``alpha = <S, A^T A S> / <S, S>`` (clipped to ``[alpha_min, alpha_max]``)
    and backtracks ``alpha <- eta * alpha`` until the prox-gradient candidate
    strictly lowers the objective.  The very first step uses ``alpha0``; when
    unset it is the curvature of ``A`` along the initial gradient.
    """
    cfg = cfg or SolverConfig()
    X = _initial(p, cfg)
    opts = cfg.sparsa
    t0 = time.perf_counter()
    tr = _Tracker(p)
    A = p.A

    R = tr.residual(X)
    G = A.T @ R
    f = tr.value(X, R)
    trace = [f]
    warnings: list[str] = []

    if opts.alpha0 is not None:
        alpha = opts.alpha0
    else:
        gg = float(np.vdot(G, G))
        AG = A @ G
        alpha = float(np.vdot(AG, AG)) / gg if gg > 0 else 1.0
    alpha = min(max(alpha, opts.alpha_min), opts.alpha_max)

    done = False
    k = 0
    while k < cfg.max_iter:
        accepted = False
        for _ in range(opts.max_backtracks + 1):
            X_new = tr.prox(X - G / alpha, alpha)
            R_new = tr.residual(X_new)
            f_new = tr.value(X_new, R_new)
            alpha_used = alpha
            alpha *= opts.eta
            # a candidate that does not move the iterate marks a fixed point
            if f_new < f or (f_new <= f and (np.array_equal(X_new, X)
                                             or converged(X, X_new, cfg.tol))):
                accepted = True
                break
        if not accepted:
            warnings.append(f"backtracking exhausted at iteration {k + 1}")
            if f_new > f:
                # keep the current iterate so the accepted trace stays monotone
                done = True
                break
        k += 1
        G_new = A.T @ R_new
        S = X_new - X
        ss = float(np.vdot(S, S))
        if ss >= 1e-20:
            # A^T A S is the gradient difference
            alpha = float(np.vdot(S, G_new - G)) / ss
        else:
            alpha = alpha_used
        alpha = min(max(alpha, opts.alpha_min), opts.alpha_max)
        stop = converged(X, X_new, cfg.tol) or ss == 0.0
        X, R, G, f = X_new, R_new, G_new, f_new
        trace.append(f)
        if stop:
            done = True
            break

    return SolverResult(X, k, np.array(trace), time.perf_counter() - t0,
                        done and not warnings, warnings)


def _lipschitz(A: np.ndarray) -> float:
    return spectral_norm_estimate(A, tol=1e-10, max_iter=2000) ** 2


def solve_fista(p: Problem, cfg: SolverConfig | None = None) -> SolverResult:
    """Accelerated proximal gradient with fixed step ``1/L``."""
    cfg = cfg or SolverConfig()
    X = _initial(p, cfg)
    t0 = time.perf_counter()
    tr = _Tracker(p)
    A = p.A
    L = cfg.fista.lipschitz_margin * _lipschitz(A)
    if L == 0.0:
        L = 1.0

    trace = [tr.value(X)]
    W = X.copy()
    t = 1.0
    done = False
    k = 0
    while k < cfg.max_iter:
        G = A.T @ tr.residual(W)
        X_new = tr.prox(W - G / L, L)
        t_new = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
        W = X_new + ((t - 1.0) / t_new) * (X_new - X)
        k += 1
        trace.append(tr.value(X_new))
        stop = converged(X, X_new, cfg.tol) or np.array_equal(X, X_new) and np.array_equal(W, X_new)
        X, t = X_new, t_new
        if stop:
            done = True
            break
    return SolverResult(X, k, np.array(trace), time.perf_counter() - t0, done)


def solve_admm(p: Problem, cfg: SolverConfig | None = None) -> SolverResult:
    """ADMM on the split ``X = Z`` with scaled dual ``U``.

    The X-update solves ``(A^T A + rho I) X = A^T Y + rho (Z - U)`` with a
    Cholesky factor computed once.  The returned estimate is ``Z``, which
    carries the exact zeros produced by the prox.
    """
    cfg = cfg or SolverConfig()
    Z = _initial(p, cfg)
    rho = cfg.admm.rho
    t0 = time.perf_counter()
    tr = _Tracker(p)
    A = p.A
    n = A.shape[1]
    try:
        factor = cho_factor(A.T @ A + rho * np.eye(n))
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"factorization of A^T A + rho I failed: {exc}") from exc
    AtY = A.T @ p.Y

    U = np.zeros_like(Z)
    trace = [tr.value(Z)]
    done = False
    k = 0
    while k < cfg.max_iter:
        X = cho_solve(factor, AtY + rho * (Z - U))
        Z_new = tr.prox(X + U, rho)
        U_new = U + X - Z_new
        k += 1
        trace.append(tr.value(Z_new))
        stop = converged(Z, Z_new, cfg.tol) and relative_change(Z_new, X) <= cfg.tol
        stop = stop or (np.array_equal(Z, Z_new) and np.array_equal(U, U_new))
        Z, U = Z_new, U_new
        if stop:
            done = True
            break
    return SolverResult(np.asfortranarray(Z), k, np.array(trace),
                        time.perf_counter() - t0, done)


def solve_padmm(p: Problem, cfg: SolverConfig | None = None) -> SolverResult:
    """Primal-dual (Chambolle-Pock) iteration with over-relaxation.

    The data term is handled through its conjugate:
    ``P <- (P + sigma (A Xbar - Y)) / (1 + sigma)``, followed by the primal
    prox step ``X <- prox_{tau Phi}(X - tau A^T P)`` and
    ``Xbar = 2 X_new - X``.  Steps ``sigma = tau = step_fraction / ||A||``.
    """
    cfg = cfg or SolverConfig()
    X = _initial(p, cfg)
    t0 = time.perf_counter()
    tr = _Tracker(p)
    A, Y = p.A, p.Y
    norm_a = spectral_norm_estimate(A, tol=1e-10, max_iter=2000)
    step = cfg.padmm.step_fraction / norm_a if norm_a > 0 else 1.0
    sigma = tau = step

    P = np.zeros_like(Y)
    X_bar = X.copy()
    trace = [tr.value(X)]
    done = False
    k = 0
    while k < cfg.max_iter:
        P_new = (P + sigma * (A @ X_bar - Y)) / (1.0 + sigma)
        X_new = tr.prox(X - tau * (A.T @ P_new), 1.0 / tau)
        X_bar = 2.0 * X_new - X
        k += 1
        trace.append(tr.value(X_new))
        stop = converged(X, X_new, cfg.tol)
        stop = stop or (np.array_equal(X, X_new) and np.array_equal(P, P_new))
        X, P = X_new, P_new
        if stop:
            done = True
            break
    return SolverResult(X, k, np.array(trace), time.perf_counter() - t0, done)


SOLVERS = {
    "sparsa": solve_sparsa,
    "fista": solve_fista,
    "admm": solve_admm,
    "padmm": solve_padmm,
}


def solve(name: str, p: Problem, cfg: SolverConfig | None = None) -> SolverResult:
    try:
        fn = SOLVERS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(SOLVERS)}") from None
    return fn(p, cfg)
