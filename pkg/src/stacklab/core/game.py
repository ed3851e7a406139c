"""Generic Stackelberg game interface shared by all application modules.

A game exposes the principal's strategy space, the agent's action set, and
the two payoff functions.  Application modules subclass ``Game`` with their
own structure (security games, posted prices, classifiers, payoff matrices);
the core runner and agents only rely on this interface.
"""

from __future__ import annotations

from typing import Any, Iterable, Optional

import numpy as np


class Game:
    """Base class for a (repeated) Stackelberg game.

    Principal payoffs must lie in [0, 1].  Agent payoffs lie in the declared
    ``agent_payoff_range`` (default [0, 1]; the posted-price game uses
    [-1, 1] because the buyer's profit a*(v - p) is naturally signed).
    """

    name = "game"
    agent_payoff_range = (0.0, 1.0)

    def principal_valid(self, x) -> bool:
        """Whether x lies in the principal's strategy space."""
        raise NotImplementedError

    def agent_actions(self, x=None) -> Iterable:
        """Finite iterable of agent actions, or raise if continuous."""
        raise NotImplementedError

    def principal_payoff(self, x, y, t: Optional[int] = None) -> float:
        raise NotImplementedError

    def agent_payoff(self, x, y, t: Optional[int] = None) -> float:
        raise NotImplementedError

    def sample_round_state(self, t: int, rng: np.random.Generator) -> Any:
        """Draw any per-round randomness (e.g. a stochastic buyer value).

        Returns an opaque state object passed back to the payoff functions
        via ``set_round_state``.  Deterministic games return None.
        """
        return None

    def set_round_state(self, state: Any) -> None:
        pass

    def round_state_key(self) -> Any:
        """Hashable token for the current round state (None if stateless).

        Agents use this in response caches; stochastic games must return a
        value that distinguishes rounds with different draws.
        """
        return None


def best_response_set(game: Game, x, eps: float = 0.0, t: Optional[int] = None) -> list:
    """All agent actions within eps of the best attainable agent payoff."""
    actions = list(game.agent_actions(x))
    if not actions:
        raise ValueError("game has no agent actions")
    vals = [game.agent_payoff(x, y, t) for y in actions]
    vmax = max(vals)
    return [y for y, v in zip(actions, vals) if v >= vmax - eps]


def exact_best_response(game: Game, x, t: Optional[int] = None):
    """Agent best response with ties broken in the principal's favor."""
    br = best_response_set(game, x, 0.0, t)
    return max(br, key=lambda y: game.principal_payoff(x, y, t))


def eps_adversarial_response(game: Game, x, eps: float, tie_mode: str = "worst_for_principal",
                             t: Optional[int] = None):
    """Pick a representative of the eps-approximate best response set.

    tie_mode selects among the set:
      * ``worst_for_principal`` -- argmin of the principal's payoff,
      * ``best_for_principal``  -- argmax of the principal's payoff,
      * ``boundary_seeking``    -- prefer members that are *not* exact best
        responses (they corrupt feedback the most), breaking remaining ties
        against the principal.  Used for stress tests.
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    candidates = best_response_set(game, x, eps, t)
    if tie_mode == "best_for_principal":
        return max(candidates, key=lambda y: game.principal_payoff(x, y, t))
    if tie_mode == "worst_for_principal":
        return min(candidates, key=lambda y: game.principal_payoff(x, y, t))
    if tie_mode == "boundary_seeking":
        exact = set(map(_key, best_response_set(game, x, 0.0, t)))
        inexact = [y for y in candidates if _key(y) not in exact]
        pool = inexact if inexact else candidates
        return min(pool, key=lambda y: game.principal_payoff(x, y, t))
    raise ValueError(f"unknown tie_mode: {tie_mode!r}")


def _key(y):
    return tuple(y) if isinstance(y, (list, np.ndarray)) else y
