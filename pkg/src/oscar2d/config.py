"""TOML experiment configuration.

A config file looks like::

    schema_version = 1

    [benchmark]
    n = 100
    d = 10
    m = 65
    nnz_target = 100
    value_set = [-7, -8, -9, 7, 8, 9]
    noise_variance = 0.16
    seed = 0

    [oscar]
    lambda1 = 0.5
    lambda2 = 0.0024

    [solver]
    tol = 0.001

    [solver.sparsa]
    eta = 2.0

    [run]
    algorithms = ["sparsa", "fista", "admm", "padmm"]
    debias = "both"

    [[patterns]]
    shape = "block"
    anchor = [2, 1]
    extent = [5, 2]

Every section and key is optional; missing ones take the library defaults.
Omitting ``[[patterns]]`` selects :func:`datagen.default_patterns`.
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field
from pathlib import Path

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .datagen import BenchmarkConfig, PatternSpec, default_patterns
from .prox import OscarParams
from .solvers import (AdmmOptions, FistaOptions, PadmmOptions, SOLVERS, SolverConfig,
                      SparsaOptions)

SCHEMA_VERSION = 1
DEBIAS_MODES = ("on", "off", "both")


class ConfigError(ValueError):
    pass


@dataclass
class DebiasOptions:
    eps: float = 0.0
    cg_tol: float = 1e-8
    cg_max_iter: int | None = None


@dataclass
class RunOptions:
    algorithms: list[str] = field(default_factory=lambda: list(SOLVERS))
    debias: str = "both"
    parallel: bool = False

    def debias_flags(self) -> list[bool]:
        return {"on": [True], "off": [False], "both": [True, False]}[self.debias]


@dataclass
class ExperimentConfig:
    benchmark: BenchmarkConfig = field(default_factory=BenchmarkConfig)
    patterns: list[PatternSpec] = field(default_factory=default_patterns)
    solver: SolverConfig = field(default_factory=SolverConfig)
    debias: DebiasOptions = field(default_factory=DebiasOptions)
    run: RunOptions = field(default_factory=RunOptions)

    def validate(self):
        try:
            self.benchmark.validate()
            self.solver.validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        unknown = [a for a in self.run.algorithms if a not in SOLVERS]
        if unknown:
            raise ConfigError(f"run.algorithms: unknown {unknown}; choose from {sorted(SOLVERS)}")
        if self.run.debias not in DEBIAS_MODES:
            raise ConfigError(f"run.debias must be one of {DEBIAS_MODES}")
        if self.debias.eps < 0 or not self.debias.cg_tol > 0:
            raise ConfigError("debias.eps must be >= 0 and debias.cg_tol > 0")


def _fill(cls, table: dict, path: str, **overrides):
    """Build dataclass ``cls`` from ``table``, rejecting unknown keys."""
    if not isinstance(table, dict):
        raise ConfigError(f"[{path}] must be a table")
    names = {f.name: f for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, value in table.items():
        if key in overrides:
            continue
        if key not in names:
            raise ConfigError(f"unknown key '{path}.{key}'")
        kwargs[key] = value
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{path}]: {exc}") from None


def _pattern(entry: dict, k: int) -> PatternSpec:
    extra = set(entry) - {"shape", "anchor", "extent", "value"}
    if extra:
        raise ConfigError(f"patterns[{k}]: unknown keys {sorted(extra)}")
    try:
        return PatternSpec(shape=entry["shape"], anchor=tuple(entry["anchor"]),
                           extent=tuple(entry["extent"]), value=entry.get("value"))
    except KeyError as exc:
        raise ConfigError(f"patterns[{k}]: missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"patterns[{k}]: {exc}") from None


def from_dict(doc: dict) -> ExperimentConfig:
    doc = dict(doc)
    version = doc.pop("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    known = {"benchmark", "oscar", "solver", "debias", "run", "patterns"}
    extra = set(doc) - known
    if extra:
        raise ConfigError(f"unknown top-level keys {sorted(extra)}")

    default_params = BenchmarkConfig().params
    oscar = {"lambda1": default_params.lambda1, "lambda2": default_params.lambda2,
             **doc.get("oscar", {})}
    params = _fill(OscarParams, oscar, "oscar")
    bench_tab = dict(doc.get("benchmark", {}))
    if "value_set" in bench_tab:
        bench_tab["value_set"] = tuple(float(v) for v in bench_tab["value_set"])
    benchmark = _fill(BenchmarkConfig, bench_tab, "benchmark", params=params)

    solver_tab = dict(doc.get("solver", {}))
    subs = {}
    for name, cls in (("sparsa", SparsaOptions), ("fista", FistaOptions),
                      ("admm", AdmmOptions), ("padmm", PadmmOptions)):
        subs[name] = _fill(cls, solver_tab.pop(name, {}), f"solver.{name}")
    if "x0" in solver_tab:
        raise ConfigError("solver.x0 cannot be set from a config file")
    solver = _fill(SolverConfig, solver_tab, "solver", **subs)

    debias = _fill(DebiasOptions, doc.get("debias", {}), "debias")
    run = _fill(RunOptions, doc.get("run", {}), "run")
    if "patterns" in doc:
        patterns = [_pattern(p, k) for k, p in enumerate(doc["patterns"])]
    else:
        patterns = default_patterns()
    cfg = ExperimentConfig(benchmark, patterns, solver, debias, run)
    cfg.validate()
    return cfg


def load_config(path) -> ExperimentConfig:
    """Parse a TOML config file; syntax errors report line and column."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        return from_dict(doc)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _drop_none(d: dict) -> dict:
    return {k: v for k, v in d.items() if v is not None}


def to_dict(cfg: ExperimentConfig) -> dict:
    """Resolved config as a TOML-ready dict; ``from_dict`` inverts it."""
    b = cfg.benchmark
    s = cfg.solver
    bench = {f.name: getattr(b, f.name) for f in dataclasses.fields(b) if f.name != "params"}
    bench["value_set"] = [float(v) for v in b.value_set]
    solver = {"max_iter": s.max_iter, "tol": s.tol}
    for name in ("sparsa", "fista", "admm", "padmm"):
        solver[name] = _drop_none(dataclasses.asdict(getattr(s, name)))
    patterns = []
    for p in cfg.patterns:
        entry = {"shape": p.shape, "anchor": list(p.anchor), "extent": list(p.extent)}
        if p.value is not None:
            entry["value"] = float(p.value)
        patterns.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "benchmark": bench,
        "oscar": {"lambda1": b.params.lambda1, "lambda2": b.params.lambda2},
        "solver": solver,
        "debias": _drop_none(dataclasses.asdict(cfg.debias)),
        "run": dataclasses.asdict(cfg.run),
        "patterns": patterns,
    }


def dumps(cfg: ExperimentConfig) -> str:
    return tomli_w.dumps(to_dict(cfg))
