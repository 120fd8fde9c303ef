"""Recovery metrics between a ground truth ``X`` and an estimate ``E``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import frobenius_norm, l1_norm


@dataclass(frozen=True)
class MetricReport:
    mae: float
    mse: float
    per: float  # fraction in [0, 1]
    time_seconds: float = 0.0


def _pair(X, E):
    X = np.asarray(X, dtype=np.float64)
    E = np.asarray(E, dtype=np.float64)
    if X.shape != E.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {E.shape}")
    return X, E


def mae(X, E) -> float:
    """Mean absolute error ``||X - E||_1 / (n d)``."""
    X, E = _pair(X, E)
    return l1_norm(X - E) / X.size


def mse(X, E) -> float:
    """Mean square error ``||X - E||_F^2 / (n d)``."""
    X, E = _pair(X, E)
    return frobenius_norm(X - E) ** 2 / X.size


def per(X, E) -> float:
    """Position error rate: fraction of entries whose zero/nonzero status differs."""
    X, E = _pair(X, E)
    return float(np.count_nonzero((X != 0) != (E != 0))) / X.size


def evaluate(X, E, elapsed: float = 0.0) -> MetricReport:
    return MetricReport(mae(X, E), mse(X, E), per(X, E), float(elapsed))
