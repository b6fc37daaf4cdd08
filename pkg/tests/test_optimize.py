import random

import pytest

from nsukit.optimize import ZeroInitialComponentError, coordinate_ascent


def test_recovers_quadratic_optimum_in_one_dimension():
    best = coordinate_ascent(lambda x: -(x[0] - 3) ** 2, [1.0],
                             deltas=[2.0], mins=[1e-4], alpha=0.5)
    assert abs(best[0] - 3.0) <= 0.01


def test_constant_function_returns_start():
    best = coordinate_ascent(lambda x: 7.0, [1.0, 2.0],
                             deltas=[1.0, 1.0], mins=[1e-3, 1e-3], alpha=0.5)
    assert best == [1.0, 2.0]


def test_recovers_two_dimensional_optimum():
    f = lambda x: -(x[0] - 3) ** 2 - (x[1] + 1) ** 2
    best = coordinate_ascent(f, [1.0, 1.0], deltas=[2.0, 2.0],
                             mins=[1e-4, 1e-4], alpha=0.5)
    assert abs(best[0] - 3.0) <= 0.01
    assert abs(best[1] + 1.0) <= 0.01


def test_zero_initial_component_rejected():
    with pytest.raises(ZeroInitialComponentError):
        coordinate_ascent(lambda x: 0.0, [1.0, 0.0],
                          deltas=[1.0, 1.0], mins=[1e-3, 1e-3], alpha=0.5)


def test_parameter_validation():
    with pytest.raises(ValueError):
        coordinate_ascent(lambda x: 0.0, [1.0], deltas=[1.0], mins=[1e-3], alpha=1.5)
    with pytest.raises(ValueError):
        coordinate_ascent(lambda x: 0.0, [1.0], deltas=[1.0], mins=[-1.0], alpha=0.5)
    with pytest.raises(ValueError):
        coordinate_ascent(lambda x: 0.0, [1.0], deltas=[1.0, 2.0], mins=[1e-3], alpha=0.5)


def test_never_returns_worse_point_than_start():
    rng = random.Random(4)
    for _ in range(25):
        coeffs = [rng.uniform(-2, 2) for _ in range(6)]

        def f(x):
            return (coeffs[0] * x[0] + coeffs[1] * x[1] + coeffs[2] * x[0] * x[1]
                    + coeffs[3] * x[0] ** 2 + coeffs[4] * x[1] ** 2 + coeffs[5])

        x0 = [rng.uniform(0.5, 3.0), rng.uniform(-3.0, -0.5)]
        best = coordinate_ascent(f, x0, deltas=[1.0, 1.0],
                                 mins=[1e-3, 1e-3], alpha=0.5, max_sweeps=20)
        assert f(best) >= f(x0) - 1e-12


def test_trace_records_improvements():
    trace = []
    coordinate_ascent(lambda x: -(x[0] - 3) ** 2, [1.0], deltas=[2.0],
                      mins=[1e-4], alpha=0.5, trace=trace)
    assert trace, "expected at least one improving move"
    scores = [score for _, score in trace]
    assert scores == sorted(scores)
