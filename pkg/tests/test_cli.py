import csv
from pathlib import Path

import numpy as np
import pytest

from oscar2d import matrix_io
from oscar2d.bench import (REPORT_HEADER, ExperimentReport, ReportRow, emit_report, export_heatmap,
                           run_experiment)
from oscar2d.cli import EXIT_CONFIG, EXIT_OK, EXIT_SOLVER, main
from oscar2d.config import ExperimentConfig, from_dict
from oscar2d.metrics import MetricReport

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_identity_config_recovers_exactly():
    report = run_experiment(CONFIGS / "identity.toml")
    assert len(report.rows) == 8
    for row in report.rows:
        assert row.metrics.mae <= 1e-9
        assert row.metrics.per == 0.0


def test_emit_report_shapes(tmp_path):
    cfg = ExperimentConfig()
    empty = ExperimentReport([], cfg, 0)
    emit_report(empty, tmp_path / "empty.csv")
    assert read_rows(tmp_path / "empty.csv") == [REPORT_HEADER]

    row = ReportRow("sparsa", True, MetricReport(0.1, 0.2, 0.0123, 1.5), 7, True)
    emit_report(ExperimentReport([row], cfg, 0), tmp_path / "one.csv")
    rows = read_rows(tmp_path / "one.csv")
    assert len(rows) == 2
    assert rows[1] == ["sparsa", "yes", "1.500000", "0.10000000000000001",
                       "0.20000000000000001", "1.2%", "7", "true"]


def test_heatmap_scaling(tmp_path):
    export_heatmap(np.zeros((3, 4)), tmp_path / "zero.pgm")
    pix = matrix_io.load_pgm(tmp_path / "zero.pgm")
    assert pix.shape == (3, 4) and np.all(pix == 128)
    X = np.array([[0.0, 5.0], [-2.0, 1.0]])
    export_heatmap(X, tmp_path / "x.pgm")
    pix = matrix_io.load_pgm(tmp_path / "x.pgm")
    assert pix.min() == 0 and pix.max() == 255 and pix[0, 0] == 128
    np.testing.assert_array_equal(matrix_io.load_csv(tmp_path / "x.csv"), X)


def test_csv_round_trip(tmp_path, rng):
    X = rng.standard_normal((5, 3))
    matrix_io.save_csv(tmp_path / "m.csv", X)
    np.testing.assert_array_equal(matrix_io.load_csv(tmp_path / "m.csv"), X)
    assert "," in (tmp_path / "m.csv").read_text().splitlines()[0]


def test_bench_cli_full_grid(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["bench", "--config", str(CONFIGS / "benchmark.toml"), "--seed", "1",
                 "--out", str(out)]) == EXIT_OK
    rows = read_rows(out / "report.csv")
    assert len(rows) == 9
    assert {(r[0], r[1]) for r in rows[1:]} == {
        (a, f) for a in ("sparsa", "fista", "admm", "padmm") for f in ("yes", "no")}
    assert (out / "snapshots" / "truth.pgm").exists()
    assert (out / "snapshots" / "padmm_debiased.csv").exists()
    assert (out / "config_echo.toml").exists()


def test_config_echo_reproduces_report(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["bench", "--seed", "4", "--algos", "sparsa,padmm", "--debias", "on", "--out", str(a),
          "--no-snapshots"])
    main(["bench", "--config", str(a / "config_echo.toml"), "--out", str(b), "--no-snapshots"])
    strip = lambda rows: [r[:2] + r[3:] for r in rows]
    assert strip(read_rows(a / "report.csv")) == strip(read_rows(b / "report.csv"))
    assert len(read_rows(a / "report.csv")) == 3


def test_parallel_matches_sequential(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["bench", "--seed", "2", "--out", str(a), "--no-snapshots"])
    main(["bench", "--seed", "2", "--parallel", "--out", str(b), "--no-snapshots"])
    strip = lambda rows: [r[:2] + r[3:] for r in rows]
    assert strip(read_rows(a / "report.csv")) == strip(read_rows(b / "report.csv"))


def test_gen_then_solve(tmp_path):
    inst = tmp_path / "inst"
    assert main(["gen", "--seed", "3", "--out", str(inst)]) == EXIT_OK
    for name in ("A.csv", "X.csv", "Y.csv", "config.toml"):
        assert (inst / name).exists()
    assert matrix_io.load_csv(inst / "A.csv").shape == (65, 100)
    out = tmp_path / "solved"
    assert main(["solve", "--instance", str(inst), "--algos", "sparsa", "--debias", "off",
                 "--out", str(out)]) == EXIT_OK
    rows = read_rows(out / "report.csv")
    assert len(rows) == 2
    direct = run_experiment(from_dict({"run": {"algorithms": ["sparsa"], "debias": "off"},
                                       "benchmark": {"seed": 3}}))
    assert float(rows[1][3]) == pytest.approx(direct.rows[0].metrics.mae, rel=1e-12)


def test_heatmap_cli(tmp_path, rng):
    matrix_io.save_csv(tmp_path / "m.csv", rng.standard_normal((4, 4)))
    assert main(["heatmap", str(tmp_path / "m.csv")]) == EXIT_OK
    assert (tmp_path / "m.pgm").exists()


def test_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[benchmark\n")
    assert main(["bench", "--config", str(bad), "--out", str(tmp_path / "o")]) == EXIT_CONFIG
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--algos", "twist", "--out", str(tmp_path / "o")])
    assert exc.value.code == EXIT_CONFIG


def test_solver_failure_is_recorded_per_row(tmp_path, monkeypatch):
    from oscar2d import solvers

    def boom(p, cfg):
        raise solvers.SolverError("objective became non-finite")

    monkeypatch.setitem(solvers.SOLVERS, "fista", boom)
    out = tmp_path / "o"
    code = main(["bench", "--seed", "0", "--algos", "sparsa,fista", "--debias", "off",
                 "--out", str(out), "--no-snapshots"])
    assert code == EXIT_SOLVER
    rows = read_rows(out / "report.csv")
    assert rows[1][0] == "sparsa" and rows[1][3] != "nan"
    assert rows[2][0] == "fista" and rows[2][3] == "nan" and rows[2][7] == "false"
