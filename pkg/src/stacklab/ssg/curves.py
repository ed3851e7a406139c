"""Per-target utility curves: linear, logistic-parametric, piecewise-linear.

Agent curves v^y are strictly decreasing, principal curves u^y strictly
increasing, both over coverage in [0,1].  Linear and logistic curves carry
closed-form inverses (needed by exact threshold oracles); piecewise-linear
inverses use monotone bisection.
"""

from __future__ import annotations

import math

import numpy as np

BISECT_TOL = 1e-12


class LinearCurve:
    """value(x) = intercept + slope * x."""

    kind = "linear"

    def __init__(self, intercept: float, slope: float):
        if slope == 0:
            raise ValueError("curve must be strictly monotone")
        self.intercept = float(intercept)
        self.slope = float(slope)

    # coefficients in the decreasing convention v(x) = a - b*x
    @property
    def a(self):
        return self.intercept

    @property
    def b(self):
        return -self.slope

    def __call__(self, x):
        return self.intercept + self.slope * x

    def inverse(self, w):
        return (w - self.intercept) / self.slope

    def slope_range(self):
        s = abs(self.slope)
        return s, s


class LogisticCurve:
    """value(x) = base + scale / (1 + exp(-rate * (x - mid)))."""

    kind = "logistic"

    def __init__(self, base: float, scale: float, rate: float, mid: float):
        if scale == 0 or rate == 0:
            raise ValueError("curve must be strictly monotone")
        self.base, self.scale, self.rate, self.mid = (
            float(base), float(scale), float(rate), float(mid))

    def __call__(self, x):
        return self.base + self.scale / (1.0 + np.exp(-self.rate * (np.asarray(x, dtype=float) - self.mid)))

    def inverse(self, w):
        z = self.scale / (w - self.base) - 1.0
        if z <= 0:
            raise ValueError(f"value {w} outside the curve's range")
        return self.mid - math.log(z) / self.rate

    def slope_range(self, samples: int = 2048):
        xs = np.linspace(0.0, 1.0, samples + 1)
        d = np.abs(np.diff(self(xs)) * samples)
        return float(d.min()), float(d.max())


class PiecewiseLinearCurve:
    """Monotone interpolation through knots (xs, ys) on [0,1]."""

    kind = "piecewise_linear"

    def __init__(self, xs, ys):
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        if self.xs[0] != 0.0 or self.xs[-1] != 1.0:
            raise ValueError("knots must span [0, 1]")
        if np.any(np.diff(self.xs) <= 0):
            raise ValueError("knot abscissae must be strictly increasing")
        d = np.diff(self.ys)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise ValueError("curve must be strictly monotone")

    def __call__(self, x):
        return np.interp(x, self.xs, self.ys)

    def inverse(self, w):
        lo, hi = 0.0, 1.0
        increasing = self.ys[-1] > self.ys[0]
        while hi - lo > BISECT_TOL:
            mid = 0.5 * (lo + hi)
            if (self(mid) < w) == increasing:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def slope_range(self):
        s = np.abs(np.diff(self.ys) / np.diff(self.xs))
        return float(s.min()), float(s.max())


def curve_from_config(spec: dict):
    kind = spec["kind"]
    if kind == "linear":
        return LinearCurve(spec["intercept"], spec["slope"])
    if kind == "logistic":
        return LogisticCurve(spec["base"], spec["scale"], spec["rate"], spec["mid"])
    if kind == "piecewise_linear":
        return PiecewiseLinearCurve(spec["xs"], spec["ys"])
    raise ValueError(f"unknown curve kind: {kind!r}")
