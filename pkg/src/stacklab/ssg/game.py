"""Security games: n targets, monotone utility curves, coverage spaces."""

from __future__ import annotations

import numpy as np

from ..core.game import Game
from .curves import curve_from_config

SLOPE_CHECK_SAMPLES = 2048
SLOPE_CHECK_TOL = 1e-9


class SecurityGame(Game):
    """Coverage allocation over n targets.

    The principal picks per-target coverage x; the agent attacks one target
    y.  Payoffs depend only on the attacked target's coverage: u^y strictly
    increasing (defender prefers covered attacks), v^y strictly decreasing.
    C bounds all curve slopes into [1/C, C]; W lower-bounds the width
    max_{x in K_y} x_y of every non-empty best-response region.
    """

    name = "ssg"

    def __init__(self, u_curves, v_curves, space: str = "simplex", C=None, W=None):
        if len(u_curves) != len(v_curves):
            raise ValueError("need one u-curve and one v-curve per target")
        if space not in ("simplex", "box"):
            raise ValueError(f"unknown space: {space!r}")
        self.n = len(v_curves)
        self.dim = self.n
        self.u_curves = list(u_curves)
        self.v_curves = list(v_curves)
        self.space = space
        self.C = float(C) if C is not None else self._infer_C()
        self._validate_slopes()
        self.W = float(W) if W is not None else compute_width(self)
        if not 0.0 < self.W <= 1.0:
            raise ValueError(f"width bound must lie in (0, 1], got {self.W}")
        lo = min(c(1.0) for c in self.v_curves)
        hi = max(c(0.0) for c in self.v_curves)
        self.agent_payoff_range = (min(lo, 0.0), max(hi, 1.0))

    def _infer_C(self) -> float:
        bounds = [c.slope_range() for c in self.u_curves + self.v_curves]
        lo = min(b[0] for b in bounds)
        hi = max(b[1] for b in bounds)
        if lo <= 0:
            raise ValueError("curves must have strictly nonzero slope")
        return max(hi, 1.0 / lo, 1.0)

    def _validate_slopes(self):
        xs = np.linspace(0.0, 1.0, SLOPE_CHECK_SAMPLES + 1)
        h = 1.0 / SLOPE_CHECK_SAMPLES
        for c in self.v_curves:
            d = -np.diff(c(xs)) / h
            if d.min() < 1.0 / self.C - SLOPE_CHECK_TOL or d.max() > self.C + SLOPE_CHECK_TOL:
                raise ValueError("agent curve slope outside [1/C, C]")
        for c in self.u_curves:
            d = np.diff(c(xs)) / h
            if d.min() <= 0 or d.max() > self.C + SLOPE_CHECK_TOL:
                raise ValueError("principal curve slope outside (0, C]")

    def principal_valid(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,) or np.any(x < -1e-12) or np.any(x > 1 + 1e-12):
            return False
        if self.space == "simplex":
            return bool(x.sum() <= 1 + 1e-12)
        return True

    def agent_actions(self, x=None):
        return range(self.n)

    def principal_payoff(self, x, y, t=None) -> float:
        u = float(self.u_curves[y](float(np.asarray(x)[y])))
        return min(max(u, 0.0), 1.0)

    def agent_payoff(self, x, y, t=None) -> float:
        return float(self.v_curves[y](float(np.asarray(x)[y])))

    @classmethod
    def from_config(cls, config: dict) -> "SecurityGame":
        """Build from a structured mapping: n, space, targets, optional C/W."""
        targets = config["targets"]
        if "n" in config and config["n"] != len(targets):
            raise ValueError("n does not match the number of target specs")
        u_curves = [curve_from_config(t["u"]) for t in targets]
        v_curves = [curve_from_config(t["v"]) for t in targets]
        return cls(u_curves, v_curves, space=config.get("space", "simplex"),
                   C=config.get("C"), W=config.get("W"))


def compute_width(game: SecurityGame, tol: float = 1e-9) -> float:
    """min over targets of max_{x in K_y} x_y, skipping empty regions.

    Uses the curves' inverses: target y admits coverage c while staying a
    best response iff the budget can push every other target's payoff below
    v^y(c).
    """
    widths = []
    for y in range(game.n):
        vy = game.v_curves[y]

        def feasible(c):
            w = vy(c)
            need = 0.0
            for z in range(game.n):
                if z == y:
                    continue
                vz = game.v_curves[z]
                if vz(0.0) <= w:
                    continue
                if vz(1.0) > w + tol:
                    return False
                need += min(max(vz.inverse(w), 0.0), 1.0)
            if game.space == "simplex":
                return need <= 1.0 - c
            return True

        if not feasible(0.0):
            continue  # K_y empty: y is never a best response
        if feasible(1.0):
            widths.append(1.0)
            continue
        lo, hi = 0.0, 1.0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                lo = mid
            else:
                hi = mid
        widths.append(lo)
    if not widths:
        raise ValueError("every best-response region is empty")
    return min(widths)
