"""Robust learning policy for finite games with approximate best responses.

Three phases, each spending real rounds: uniform sampling to find a
well-centered point of some best-response region, membership-based
optimization of the principal's payoff within each discovered region, and
exploitation of the apparent best candidate with elimination on unexpected
feedback.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from ..core.runner import Policy
from .game import FiniteGame
from .membership import InfeasibleStartError, lin_opt_gen, membership_gen

EMBED_RADIUS = math.sqrt(2.0)  # the embedded simplex fits in this ball
EPS_EXPONENT = 3               # oracle slack eps = (r / (T m L))^this


def ball_volume(m: int, r: float) -> float:
    """Volume of the radius-r Euclidean ball in R^m."""
    return math.pi ** (m / 2.0) / math.gamma(m / 2.0 + 1.0) * r ** m


def noisy_stack_parameters(game: FiniteGame, T: int):
    """Sample count, oracle slack, and optimizer tolerance for one horizon.

    The optimizer tolerance m/T keeps the total exploitation loss from
    optimizer slack at O(1) over the horizon.
    """
    V = ball_volume(game.m, game.r)
    n_samples = math.ceil(math.log(T) / V)
    eps = (game.r / (T * game.m * game.L_cond)) ** EPS_EXPONENT
    delta = game.m / T
    return n_samples, eps, delta


class NoisyStackPolicy(Policy):
    """Sampling + membership optimization + exploit-with-elimination."""

    def __init__(self, game: FiniteGame, T: int):
        self.fg = game
        self.T_total = T
        self.n_samples, self.eps, self.delta = noisy_stack_parameters(game, T)
        self.name = "noisy_stack"

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        self._gen = self._play(rng)
        self._extras = {}
        self._awaiting = None
        self._pending_extra = {}

    def action(self, t):
        if self._awaiting is not None:
            raise RuntimeError("action requested before feedback arrived")
        if t == 1:
            x, extra = next(self._gen)
        else:
            x, extra = self._gen.send(self._response)
        self._awaiting = t
        self._extras[t] = extra
        return x

    def feedback(self, t, x, y):
        # screen is "none": feedback for round t arrives before round t+1
        if t == self._awaiting:
            self._awaiting = None
            self._response = y

    def trace_extra(self, t):
        return self._extras.pop(t, {})

    # -- algorithm body -------------------------------------------------

    def _query(self, x, extra):
        resp = yield (x, extra)
        return resp

    def _sub(self, gen, extra):
        """Adapt a query sub-generator to carry trace extras."""
        try:
            q = next(gen)
            while True:
                resp = yield (q, extra)
                q = gen.send(resp)
        except StopIteration as stop:
            return stop.value

    def _play(self, rng):
        g = self.fg
        T = self.T_total
        candidates = {}  # y -> starting point on the simplex

        # phase 1: sampling
        for _ in range(self.n_samples):
            x = g.sample_simplex(rng)
            y = yield from self._query(x, {"phase": "sample", "candidate_y": ""})
            if y not in candidates:
                ok = yield from self._sub(
                    membership_gen(g, y, x, T, self.eps, rng),
                    {"phase": "sample", "candidate_y": y})
                if ok:
                    candidates[y] = x

        if not candidates:
            warnings.warn("sampling found no robust best-response region; "
                          "falling back to the max-min pure strategy")
            i = int(np.argmax(g.u0.min(axis=1)))
            x = np.zeros(g.m_plus_1)
            x[i] = 1.0
            while True:
                yield from self._query(x, {"phase": "exploit",
                                           "candidate_y": "fallback"})

        # phase 2: membership optimization per candidate region
        optimized = {}  # y -> (x_hat, value)
        for y, x0 in list(candidates.items()):
            def objective(z, y=y):
                return -g.principal_payoff(g.project_simplex(g.unembed(z)), y)

            def factory(z, y=y):
                return membership_gen(g, y, g.project_simplex(g.unembed(z)),
                                      T, self.eps, rng)

            try:
                z_hat, f_hat = yield from self._sub(
                    lin_opt_gen(objective, factory, g.embed(x0), g.r,
                                EMBED_RADIUS, self.delta, g.m, rng),
                    {"phase": "search", "candidate_y": y})
            except InfeasibleStartError:
                continue
            optimized[y] = (g.project_simplex(g.unembed(z_hat)), -f_hat)

        if not optimized:
            optimized = {y: (x, g.principal_payoff(x, y))
                         for y, x in candidates.items()}

        # phase 3: exploit with elimination on unexpected feedback
        while True:
            y_hat = max(optimized, key=lambda y: optimized[y][1])
            x_hat = optimized[y_hat][0]
            resp = yield from self._query(
                x_hat, {"phase": "exploit", "candidate_y": y_hat})
            if resp != y_hat and len(optimized) > 1:
                del optimized[y_hat]
