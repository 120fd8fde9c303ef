"""Group-sparse matrix recovery with the 2D OSCAR regularizer."""

from ._backend import BACKEND
from .datagen import BenchmarkConfig, PatternSpec, make_instance
from .debias import debias, support
from .metrics import MetricReport, evaluate, mae, mse, per
from .prox import (OscarParams, oscar_value, oscar_weights, pav_nonincreasing, prox_2oscar,
                   prox_sorted_weighted_l1)
from .solvers import (Problem, SolverConfig, SolverResult, objective, solve, solve_admm,
                      solve_fista, solve_padmm, solve_sparsa)

__all__ = [
    "BACKEND", "BenchmarkConfig", "PatternSpec", "make_instance", "debias", "support",
    "MetricReport", "evaluate", "mae", "mse", "per", "OscarParams", "oscar_value",
    "oscar_weights", "pav_nonincreasing", "prox_2oscar", "prox_sorted_weighted_l1", "Problem",
    "SolverConfig", "SolverResult", "objective", "solve", "solve_admm", "solve_fista",
    "solve_padmm", "solve_sparsa",
]
