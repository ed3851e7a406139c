"""Closed-form strategic agents for the classification game."""

from __future__ import annotations

import math

import numpy as np

from ..core.agents import Agent
from .model import AgentType, ClassificationGame


def agent_best_response(theta, atype: AgentType, alpha: float) -> np.ndarray:
    """Unique payoff-maximizing feature vector.

    Positive labels never manipulate; negative labels solve
    max <theta, xh> - (alpha/2)||xh - x||^2, whose first-order condition
    gives xh = x + theta / alpha.
    """
    theta = np.asarray(theta, dtype=float)
    if atype.y == 1:
        return np.asarray(atype.x, dtype=float).copy()
    return np.asarray(atype.x, dtype=float) + theta / alpha


def eps_agent_response(theta, atype: AgentType, alpha: float, eps: float,
                       adversary: str = "loss_max", loss_kind: str = "logistic",
                       rng=None) -> np.ndarray:
    """A point of the eps-approximate response set chosen adversarially.

    The quadratic payoff drops exactly (alpha/2)||w||^2 at offset w from the
    best response, so the eps-set is the ball of radius sqrt(2 eps / alpha).
    For y = -1 every loss here increases with <theta, xh>, so loss_max walks
    the radius along +theta and loss_min along -theta.
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    br = agent_best_response(theta, atype, alpha)
    if atype.y == 1 or eps == 0:
        return br
    rho = math.sqrt(2 * eps / alpha)
    theta = np.asarray(theta, dtype=float)
    norm = np.linalg.norm(theta)
    if adversary == "random":
        if rng is None:
            rng = np.random.default_rng(0)
        w = rng.standard_normal(len(br))
        w *= rho * rng.random() ** (1.0 / len(br)) / max(np.linalg.norm(w), 1e-300)
        return br + w
    if norm == 0:
        return br  # loss is flat: every direction is equally (un)harmful
    step = rho * theta / norm
    if adversary == "loss_max":
        return br + step
    if adversary == "loss_min":
        return br - step
    raise ValueError(f"unknown adversary: {adversary!r}")


class StrategicAgent(Agent):
    """Exact myopic manipulator (closed form)."""

    name = "strategic_myopic"

    def respond(self, t, history, theta):
        game: ClassificationGame = self.game
        a = game.current_type
        x_hat = agent_best_response(theta, a, game.alpha)
        return np.append(x_hat, a.y)


class EpsStrategicAgent(Agent):
    """Adversarially eps-approximate manipulator.

    eps may be a constant or a callable t -> eps (to couple the slack to a
    policy's feedback delay).
    """

    name = "strategic_eps"

    def __init__(self, eps, adversary: str = "loss_max"):
        self.eps = eps
        self.adversary = adversary

    def respond(self, t, history, theta):
        game: ClassificationGame = self.game
        a = game.current_type
        eps = self.eps(t) if callable(self.eps) else self.eps
        x_hat = eps_agent_response(theta, a, game.alpha, eps, self.adversary,
                                   game.loss_kind, self.rng)
        return np.append(x_hat, a.y)
