"""Posted-price games: fixed or stochastic buyer values.

The principal posts a price p in [0,1]; the buyer either buys (a=1) or not.
Seller revenue is p*a, buyer profit a*(v - p).  Stochastic models carry a
demand curve d(p) = Pr(v >= p) with Lipschitz and curvature constants.
"""

from __future__ import annotations

import math

import numpy as np

from ..core.game import Game

CURVATURE_CHECK_POINTS = 512
CURVATURE_TOL = 1e-9


class FixedValueModel(Game):
    """Buyer with one fixed private value."""

    name = "demand_fixed"
    agent_payoff_range = (-1.0, 1.0)

    def __init__(self, v: float):
        if not 0.0 <= v <= 1.0:
            raise ValueError("value must lie in [0, 1]")
        self.v = float(v)
        self.dim = 1

    def principal_valid(self, p) -> bool:
        p = float(np.asarray(p).reshape(()))
        return 0.0 <= p <= 1.0

    def agent_actions(self, x=None):
        return (0, 1)

    def principal_payoff(self, p, a, t=None) -> float:
        return float(np.asarray(p).reshape(())) * a

    def agent_payoff(self, p, a, t=None) -> float:
        return a * (self.v - float(np.asarray(p).reshape(())))

    def benchmark(self) -> float:
        return self.v


class StochasticValueModel(Game):
    """Buyer values drawn i.i.d. from a distribution with demand curve d.

    Revenue f(p) = p*d(p) must peak at a unique interior p_star with
    quadratic behavior pinned by C1/C2; the constructor validates the
    curvature envelope on a dense grid.
    """

    name = "demand_stochastic"
    agent_payoff_range = (-1.0, 1.0)

    def __init__(self, value_sampler, demand_fn, L: float, C1: float,
                 C2: float, p_star: float):
        if any(c is None for c in (L, C1, C2, p_star)):
            raise ValueError("stochastic model requires L, C1, C2, and p_star")
        if not 0.0 < p_star < 1.0:
            raise ValueError("revenue peak must be interior")
        self.value_sampler = value_sampler
        self.demand_fn = demand_fn
        self.L, self.C1, self.C2 = float(L), float(C1), float(C2)
        self.p_star = float(p_star)
        self.dim = 1
        self._v_t = None
        self._validate_curvature()

    def _validate_curvature(self):
        ps = np.linspace(0.0, 1.0, CURVATURE_CHECK_POINTS + 1)
        f = ps * np.array([self.demand_fn(p) for p in ps])
        f_star = self.p_star * self.demand_fn(self.p_star)
        gap = f_star - f
        sq = (self.p_star - ps) ** 2
        if np.any(gap < self.C1 * sq - CURVATURE_TOL):
            raise ValueError("revenue curve is flatter than C1 allows")
        if np.any(gap > self.C2 * sq + CURVATURE_TOL):
            raise ValueError("revenue curve is steeper than C2 allows")

    def f(self, p: float) -> float:
        return p * self.demand_fn(p)

    def benchmark(self) -> float:
        return self.f(self.p_star)

    def sample_round_state(self, t, rng):
        return float(self.value_sampler(rng))

    def set_round_state(self, state):
        self._v_t = state

    def round_state_key(self):
        return self._v_t

    def principal_valid(self, p) -> bool:
        p = float(np.asarray(p).reshape(()))
        return 0.0 <= p <= 1.0

    def agent_actions(self, x=None):
        return (0, 1)

    def principal_payoff(self, p, a, t=None) -> float:
        return float(np.asarray(p).reshape(())) * a

    def agent_payoff(self, p, a, t=None) -> float:
        if self._v_t is None:
            raise RuntimeError("round value not sampled yet")
        return a * (self._v_t - float(np.asarray(p).reshape(())))


def linear_demand_model() -> StochasticValueModel:
    """d(p) = 1 - p from uniform values: f = p - p^2, peak 1/2, C1 = C2 = L = 1."""
    return StochasticValueModel(
        value_sampler=lambda rng: rng.random(),
        demand_fn=lambda p: 1.0 - p, L=1.0, C1=1.0, C2=1.0, p_star=0.5)


def response_envelope(v: float, p: float, eps: float):
    """Bounds forced on any eps-approximate purchase decision.

    Buying is forced once the surplus exceeds eps, refusing once the loss
    does: 1{v >= p + eps} <= a <= 1{v > p - eps}.
    """
    return int(v >= p + eps), int(v > p - eps)
