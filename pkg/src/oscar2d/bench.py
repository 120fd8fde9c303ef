"""Benchmark runner: algorithms x {debias on, off} -> metric table."""

from __future__ import annotations

import csv
import dataclasses
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import matrix_io
from .config import ExperimentConfig, load_config
from .datagen import Instance, make_instance
from .debias import debias
from .metrics import MetricReport, evaluate
from .solvers import Problem, SolverResult, solve

log = logging.getLogger(__name__)

REPORT_HEADER = ["algorithm", "debias", "time_s", "mae", "mse", "per", "iterations", "converged"]


@dataclass
class ReportRow:
    algorithm: str
    debias: bool
    metrics: MetricReport
    iterations: int
    converged: bool
    estimate: np.ndarray | None = None
    objective_trace: np.ndarray | None = None
    error: str | None = None


@dataclass
class ExperimentReport:
    rows: list[ReportRow]
    config: ExperimentConfig
    seed: int
    instance: Instance | None = None

    @property
    def failed(self) -> bool:
        return any(r.error is not None for r in self.rows)


def _run_algorithm(name: str, problem: Problem, inst: Instance, cfg: ExperimentConfig,
                   flags: list[bool]) -> list[ReportRow]:
    try:
        t0 = time.perf_counter()
        res: SolverResult = solve(name, problem, cfg.solver)
        solve_time = time.perf_counter() - t0
    except Exception as exc:  # recorded per row; other rows keep running
        log.error("%s failed: %s", name, exc)
        nan = MetricReport(math.nan, math.nan, math.nan, math.nan)
        return [ReportRow(name, flag, nan, 0, False, error=f"{type(exc).__name__}: {exc}")
                for flag in flags]
    for msg in res.warnings:
        log.warning("%s: %s", name, msg)

    rows = []
    for flag in flags:
        estimate = res.X_hat
        elapsed = solve_time
        if flag:
            t0 = time.perf_counter()
            estimate = debias(problem.A, problem.Y, res.X_hat, eps=cfg.debias.eps,
                              cg_tol=cfg.debias.cg_tol, cg_max_iter=cfg.debias.cg_max_iter)
            elapsed += time.perf_counter() - t0
        rows.append(ReportRow(name, flag, evaluate(inst.X, estimate, elapsed), res.iterations,
                              res.converged, estimate, res.objective_trace))
    return rows


def run_experiment(config, seed: int | None = None, instance: Instance | None = None
                   ) -> ExperimentReport:
    """Run every requested (algorithm, debias) pair on one benchmark instance.

    ``config`` is an :class:`ExperimentConfig` or a path to a TOML file.
    ``seed`` overrides ``benchmark.seed``.  Times cover solve + debias only.
    """
    cfg = load_config(config) if isinstance(config, (str, Path)) else config
    if seed is not None:
        cfg = dataclasses.replace(cfg, benchmark=dataclasses.replace(cfg.benchmark, seed=seed))
    cfg.validate()
    inst = instance if instance is not None else make_instance(cfg.benchmark, cfg.patterns)
    problem = Problem(inst.A, inst.Y, cfg.benchmark.params)
    flags = cfg.run.debias_flags()

    if cfg.run.parallel:
        with ThreadPoolExecutor() as pool:
            chunks = list(pool.map(lambda a: _run_algorithm(a, problem, inst, cfg, flags),
                                   cfg.run.algorithms))
    else:
        chunks = [_run_algorithm(a, problem, inst, cfg, flags) for a in cfg.run.algorithms]
    rows = [row for chunk in chunks for row in chunk]
    return ExperimentReport(rows, cfg, cfg.benchmark.seed, inst)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def emit_report(report: ExperimentReport, out_path) -> None:
    """Write the metric table as CSV; PER is printed as a percentage."""
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_HEADER)
        for r in report.rows:
            m = r.metrics
            per = "nan" if math.isnan(m.per) else f"{100.0 * m.per:.1f}%"
            writer.writerow([r.algorithm, "yes" if r.debias else "no", f"{m.time_seconds:.6f}",
                             _fmt(m.mae), _fmt(m.mse), per, r.iterations,
                             "true" if r.converged else "false"])


def export_heatmap(X, out_path) -> None:
    """Write ``X`` as an 8-bit PGM plus a sidecar CSV of the raw values."""
    out_path = Path(out_path)
    matrix_io.save_pgm(out_path, X)
    matrix_io.save_csv(out_path.with_suffix(".csv"), X)


def write_snapshots(report: ExperimentReport, out_dir) -> list[Path]:
    """Heatmaps of the truth and of every successful row's estimate."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if report.instance is not None:
        path = out_dir / "truth.pgm"
        export_heatmap(report.instance.X, path)
        written.append(path)
    for r in report.rows:
        if r.estimate is None:
            continue
        path = out_dir / f"{r.algorithm}_{'debiased' if r.debias else 'raw'}.pgm"
        export_heatmap(r.estimate, path)
        written.append(path)
    return written
