"""Command-line entry point: ``oscar2d {gen,solve,bench,heatmap}``.

Exit codes: 0 success, 1 configuration/input error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from . import config as config_mod
from . import matrix_io
from ._backend import BACKEND
from .bench import ReportRow, emit_report, export_heatmap, run_experiment, write_snapshots
from .config import ConfigError, ExperimentConfig
from .datagen import Instance, make_instance
from .linalg import LinalgError
from .solvers import SOLVERS

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2

log = logging.getLogger("oscar2d")


def _algos(text: str) -> list[str]:
    names = [a.strip().lower() for a in text.split(",") if a.strip()]
    bad = [a for a in names if a not in SOLVERS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown algorithms {bad}; choose from {sorted(SOLVERS)}")
    return names


def _resolve(args) -> ExperimentConfig:
    cfg = config_mod.load_config(args.config) if args.config else ExperimentConfig()
    if getattr(args, "seed", None) is not None:
        cfg.benchmark = dataclasses.replace(cfg.benchmark, seed=args.seed)
    if getattr(args, "algos", None):
        cfg.run.algorithms = args.algos
    if getattr(args, "debias", None):
        cfg.run.debias = args.debias
    if getattr(args, "parallel", False):
        cfg.run.parallel = True
    cfg.validate()
    return cfg


def _print_rows(rows: list[ReportRow]) -> None:
    print(f"{'algorithm':<8} {'debias':<6} {'time_s':>9} {'mae':>10} {'mse':>10} {'per':>7} "
          f"{'iters':>6}  converged")
    for r in rows:
        m = r.metrics
        status = "error: " + r.error if r.error else str(r.converged).lower()
        print(f"{r.algorithm:<8} {'yes' if r.debias else 'no':<6} {m.time_seconds:9.3f} "
              f"{m.mae:10.4f} {m.mse:10.4f} {100 * m.per:6.1f}% {r.iterations:6d}  {status}")


def cmd_gen(args) -> int:
    cfg = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    inst = make_instance(cfg.benchmark, cfg.patterns)
    matrix_io.save_csv(out / "X.csv", inst.X)
    matrix_io.save_csv(out / "A.csv", inst.A)
    matrix_io.save_csv(out / "Y.csv", inst.Y)
    (out / "config.toml").write_text(config_mod.dumps(cfg))
    print(f"wrote instance to {out}")
    return EXIT_OK


def _load_instance(path: Path) -> Instance:
    A = matrix_io.load_csv(path / "A.csv")
    Y = matrix_io.load_csv(path / "Y.csv")
    X_path = path / "X.csv"
    if X_path.exists():
        X = matrix_io.load_csv(X_path)
    else:
        # no truth: metrics are reported against the zero matrix
        import numpy as np
        X = np.zeros((A.shape[1], Y.shape[1]))
    return Instance(X, A, Y)


def cmd_solve(args) -> int:
    if args.config is None and (Path(args.instance) / "config.toml").exists():
        args.config = str(Path(args.instance) / "config.toml")
    cfg = _resolve(args)
    inst = _load_instance(Path(args.instance))
    report = run_experiment(cfg, instance=inst)
    _print_rows(report.rows)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        emit_report(report, out / "report.csv")
        for r in report.rows:
            if r.estimate is not None:
                tag = "debiased" if r.debias else "raw"
                matrix_io.save_csv(out / f"{r.algorithm}_{tag}.csv", r.estimate)
    return EXIT_SOLVER if report.failed else EXIT_OK


def cmd_bench(args) -> int:
    cfg = _resolve(args)
    report = run_experiment(cfg)
    _print_rows(report.rows)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_report(report, out / "report.csv")
    (out / "config_echo.toml").write_text(config_mod.dumps(report.config))
    if not args.no_snapshots:
        write_snapshots(report, out / "snapshots")
    print(f"report written to {out / 'report.csv'}")
    return EXIT_SOLVER if report.failed else EXIT_OK


def cmd_heatmap(args) -> int:
    X = matrix_io.load_csv(args.matrix)
    out = Path(args.out) if args.out else Path(args.matrix).with_suffix(".pgm")
    if out.suffix != ".pgm":
        out.mkdir(parents=True, exist_ok=True)
        out = out / (Path(args.matrix).stem + ".pgm")
    export_heatmap(X, out)
    print(f"wrote {out}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are config errors; argparse's default 2 would read as a solver failure
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oscar2d", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernels: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True, run=True):
        p.add_argument("--config", metavar="PATH", help="TOML experiment config")
        if seed:
            p.add_argument("--seed", type=int, help="override benchmark.seed")
        if run:
            p.add_argument("--algos", type=_algos, metavar="LIST",
                           help="comma separated subset of " + ",".join(SOLVERS))
            p.add_argument("--debias", choices=config_mod.DEBIAS_MODES)

    p = sub.add_parser("gen", help="write a benchmark instance (X, A, Y, config) to files")
    common(p, run=False)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run algorithms on a stored instance")
    common(p, seed=False)
    p.add_argument("--instance", required=True, metavar="DIR",
                   help="directory holding A.csv, Y.csv and optionally X.csv")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="full algorithm x debias grid with CSV report")
    common(p)
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--parallel", action="store_true",
                   help="run algorithms concurrently (times are then not comparable)")
    p.add_argument("--no-snapshots", action="store_true", help="skip PGM/CSV matrix snapshots")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("heatmap", help="export a CSV matrix as a PGM heatmap")
    p.add_argument("matrix", metavar="CSV")
    p.add_argument("--out", metavar="PATH", help="output .pgm file or directory")
    p.set_defaults(func=cmd_heatmap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, LinalgError, ValueError, OSError) as exc:
        print(f"oscar2d: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
