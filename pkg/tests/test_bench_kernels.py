import importlib.util
from pathlib import Path

import pytest

from oscar2d import _backend

SCRIPT = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


@pytest.mark.skipif(_backend.BACKEND != "cython", reason="compiled kernels not built")
def test_benchmark_script_runs():
    spec = importlib.util.spec_from_file_location("bench_kernels", SCRIPT)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    results = mod.run([50, 200], repeat=1)
    assert {r[0] for r in results} == {"pav_nonincreasing", "shrink_sorted", "prox_2oscar"}
    assert all(fast > 0 and slow > 0 for _, _, fast, slow in results)
