"""Delay-robust classifier learning: parallel descent copies."""

from __future__ import annotations

import math
import warnings

import numpy as np

from ..core.runner import Policy
from ..core.screens import InformationScreen, discounted_horizon
from .agents import agent_best_response
from .gdwog import GDwoG, project_ball
from .model import ClassificationGame


def classifier_parameters(game: ClassificationGame, gamma: float, T: int):
    """Agent slack target and the delay that induces it."""
    R, alpha, d = game.R, game.alpha, game.d
    tg = discounted_horizon(gamma)
    eps = alpha / (R ** 4 * d * T ** 2.5)
    D = math.ceil(tg * math.log(R ** 2 * (1 + 1 / alpha) * tg / eps))
    return eps, D


class NonMyopicClassifierPolicy(Policy):
    """D parallel descent copies, each seeing every D-th round.

    Copy r only ever needs feedback from its own previous round, which is D
    rounds back, so a feedback delay of D costs no waiting.  Round t routes
    to copy ((t-1) mod D) + 1.
    """

    def __init__(self, game: ClassificationGame, T: int, gamma: float):
        if not 0.0 < gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        self.cls = game
        self.T_total = T
        self.gamma = gamma
        self.eps_target, self.D = classifier_parameters(game, gamma, T)
        if self.D > T:
            warnings.warn("delay exceeds the horizon; falling back to a "
                          "single undelayed copy")
            self.D = 1
        self.name = "nonmyopic_classifier"
        self.screen = InformationScreen.delay(self.D)

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        g = self.cls
        copies = max(min(self.D, T), 1)
        self.copies = [GDwoG(g.d, g.R, g.loss_bound, g.lipschitz,
                             max(T // self.D, 1),
                             np.random.default_rng(rng.integers(2 ** 63)))
                       for _ in range(copies)]
        self._pending = [None] * copies
        self._extras = {}

    def _copy(self, t: int) -> int:
        return (t - 1) % self.D

    def action(self, t):
        r = self._copy(t)
        g = self.copies[r]
        if self._pending[r] is not None:
            g.update(self._pending[r])
            self._pending[r] = None
        theta = g.query()
        # queries live in the (shrunken) R-ball by construction
        self._extras[t] = {"copy": r + 1}
        return project_ball(theta, self.cls.R)

    def feedback(self, t, theta, resp):
        r = self._copy(t)
        self._pending[r] = self.cls.loss(theta, resp)

    def trace_extra(self, t):
        return self._extras.pop(t, {})


def _type_arrays(types):
    X = np.array([np.asarray(a.x, dtype=float) for a in types])
    Y = np.array([a.y for a in types], dtype=float)
    return X, Y


def _margins(theta, X, Y, alpha):
    """Per-type margins y*<theta, br(theta)> for the whole corpus at once."""
    base = X @ theta
    # manipulators (y = -1) shift their features by theta/alpha
    shift = (Y < 0) * (float(theta @ theta) / alpha)
    return Y * (base + shift), base, shift


def stackelberg_loss(theta, types, game: ClassificationGame) -> float:
    """Average per-round loss of a fixed classifier vs best-responding agents."""
    theta = np.asarray(theta, dtype=float)
    X, Y = types if isinstance(types, tuple) else _type_arrays(types)
    m = _margins(theta, X, Y, game.alpha)[0]
    if game.loss_kind == "logistic":
        losses = np.logaddexp(0.0, -m)
    else:
        losses = np.maximum(0.0, 1.0 - m)
    return float(losses.mean()) if len(losses) else 0.0


def _loss_subgradient(theta, X, Y, game: ClassificationGame) -> np.ndarray:
    """Mean subgradient over the corpus (br(theta) moves with theta)."""
    theta = np.asarray(theta, dtype=float)
    m = _margins(theta, X, Y, game.alpha)[0]
    # d m / d theta = y*(x + 2*theta/alpha) for manipulators, y*x otherwise
    dm = Y[:, None] * (X + (Y < 0)[:, None] * (2.0 * theta / game.alpha))
    if game.loss_kind == "logistic":
        w = -1.0 / (1.0 + np.exp(np.minimum(m, 500)))
    else:
        w = -(m < 1).astype(float)
    return (w[:, None] * dm).mean(axis=0)


def best_fixed_classifier(types, game: ClassificationGame, n_grid: int = 50,
                          n_starts: int = 5, iters: int = 400, seed: int = 0):
    """Benchmark min over theta of the cumulative Stackelberg loss.

    Coarse random grid plus multi-start projected subgradient descent; the
    reported value is the better of the two searches.
    """
    rng = np.random.default_rng(seed)
    d, R = game.d, game.R
    X, Y = _type_arrays(types)
    corpus = (X, Y)
    candidates = [np.zeros(d)]
    for _ in range(n_grid):
        v = rng.standard_normal(d)
        v *= rng.random() ** (1.0 / d) * R / max(np.linalg.norm(v), 1e-300)
        candidates.append(v)
    best = min(candidates, key=lambda th: stackelberg_loss(th, corpus, game))
    best_val = stackelberg_loss(best, corpus, game)
    starts = [best] + [candidates[rng.integers(len(candidates))]
                       for _ in range(n_starts - 1)]
    for theta in starts:
        theta = theta.copy()
        for k in range(1, iters + 1):
            sub = _loss_subgradient(theta, X, Y, game)
            theta = project_ball(theta - (R / math.sqrt(k)) * sub, R)
            val = stackelberg_loss(theta, corpus, game)
            if val < best_val:
                best_val, best = val, theta.copy()
    return best, best_val
