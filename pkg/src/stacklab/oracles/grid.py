"""Exhaustive grid search for low-dimensional Stackelberg benchmarks."""

from __future__ import annotations

import itertools

import numpy as np

from .report import OracleReport

MAX_GRID_DIM = 3


def grid_stackelberg_optimum(game, resolution: float, dim=None) -> OracleReport:
    """max over a grid of u(x, brr(x)), ties broken in the principal's favor.

    ``game`` is any object with principal_valid/agent_actions/payoff methods
    and a ``dim`` attribute (overridable here).  certified_error propagates
    the slope bound: C * resolution * dimension.
    """
    d = dim if dim is not None else game.dim
    if d > MAX_GRID_DIM:
        raise ValueError(f"grid oracle limited to dimension {MAX_GRID_DIM}")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    C = float(getattr(game, "C", 1.0))
    ticks = np.linspace(0.0, 1.0, int(round(1.0 / resolution)) + 1)
    actions = list(game.agent_actions())
    best, best_x = -np.inf, None
    for combo in itertools.product(ticks, repeat=d):
        x = np.array(combo)
        if not game.principal_valid(x):
            continue
        vals = [game.agent_payoff(x, y) for y in actions]
        vmax = max(vals)
        u = max(game.principal_payoff(x, y)
                for y, v in zip(actions, vals) if v >= vmax - 1e-15)
        if u > best:
            best, best_x = u, x
    if best_x is None:
        raise ValueError("no grid point lies in the strategy space")
    return OracleReport(value=float(best), method="grid",
                        certified_error=C * resolution * d,
                        detail={"resolution": resolution, "dim": d,
                                "argmax": [float(v) for v in best_x]})
