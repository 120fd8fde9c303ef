import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oscar2d.metrics import MetricReport, evaluate, mae, mse, per

pairs = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.tuples(arrays(np.float64, (r, c), elements=st.sampled_from([0.0, 1.0, -2.5, 7.0])),
                        arrays(np.float64, (r, c), elements=st.floats(-10, 10)))))


def test_hand_examples():
    X = np.array([[1.0, 1.0]])
    assert mae(X, X) == 0.0
    assert mae(X, np.zeros((1, 2))) == 1.0
    assert mse(np.array([[3.0, 0.0]]), np.zeros((1, 2))) == 4.5
    assert per(np.array([[1.0, 0.0], [0.0, 2.0]]), np.array([[1.0, 1.0], [0.0, 2.0]])) == 0.25


def test_evaluate_bundles_fields(rng):
    X = rng.standard_normal((4, 3))
    E = np.where(rng.random((4, 3)) < 0.5, X, 0.0)
    r = evaluate(X, E, 1.5)
    assert r == MetricReport(mae(X, E), mse(X, E), per(X, E), 1.5)
    assert evaluate(X, X) == MetricReport(0.0, 0.0, 0.0, 0.0)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        mae(np.zeros((2, 2)), np.zeros((2, 3)))


@settings(max_examples=200, deadline=None)
@given(pairs, st.floats(0.01, 100) | st.floats(-100, -0.01))
def test_properties(pair, scale):
    X, E = pair
    assert mae(X, E) == mae(E, X)
    assert mse(X, E) == mse(E, X)
    assert per(X, E) == per(E, X)
    assert 0 <= per(X, E) <= 1
    assert mse(X, E) <= np.abs(X - E).max() * mae(X, E) * (1 + 1e-12) + 1e-300
    assert per(X, scale * E) == per(X, E)
