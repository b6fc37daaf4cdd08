"""Derivative-free coordinate ascent for hyperparameter tuning.

Each coordinate is searched with a decaying step: a candidate move is
tried, kept if it improves the objective, and the step sign flips when
it does not; either way the step decays by alpha until it drops below
the per-coordinate minimum.  Full sweeps repeat until no coordinate
changes.
"""

from __future__ import annotations

from typing import Callable, Sequence


class ZeroInitialComponentError(ValueError):
    pass


def _maximize(f: Callable[[Sequence[float]], float], k: int, x: list[float],
              delta: float, min_delta: float, alpha: float,
              trace: list | None) -> float:
    y_max = f(x)
    while abs(delta) >= min_delta:
        candidate = list(x)
        candidate[k] = x[k] + delta
        y = f(candidate)
        if y > y_max:
            y_max = y
            x[k] = candidate[k]
            if trace is not None:
                trace.append((tuple(x), y_max))
        else:
            delta = -delta
        delta = alpha * delta
    return x[k]


def coordinate_ascent(f: Callable[[Sequence[float]], float],
                      x0: Sequence[float],
                      deltas: Sequence[float],
                      mins: Sequence[float],
                      alpha: float,
                      max_sweeps: int | None = None,
                      trace: list | None = None) -> list[float]:
    """Maximize f over all coordinates, sweeping until a sweep changes nothing.

    The result never scores below the starting point: only improving
    moves are accepted.
    """
    x0 = list(x0)
    if any(component == 0 for component in x0):
        raise ZeroInitialComponentError("initial parameter components must be nonzero")
    if not 0 < alpha < 1:
        raise ValueError("alpha must be in (0, 1)")
    if len(deltas) != len(x0) or len(mins) != len(x0):
        raise ValueError("deltas and mins must match the parameter count")
    if any(m <= 0 for m in mins):
        raise ValueError("minimum step sizes must be positive")

    x = list(x0)
    sweeps = 0
    while True:
        x_last = list(x)
        for k in range(len(x)):
            x[k] = _maximize(f, k, x, deltas[k], mins[k], alpha, trace)
        sweeps += 1
        if x == x_last:
            break
        if max_sweeps is not None and sweeps >= max_sweeps:
            break
    return x
