"""Simulated agents, from myopic to exhaustively-rational discounters.

The hierarchy mirrors how hard each agent is to reason about:

* ``MyopicAgent``             -- exact best response every round.
* ``EpsAdversarialAgent``     -- any eps-approximate best response, with an
  explicit tie mode.  This is the reduction's target behavior and the
  primary test surface.
* ``ScriptedAgent``           -- replay a manipulation program (regression
  stress).
* ``ExhaustiveDiscountedAgent`` -- exactly maximizes discounted utility by
  enumerating every deterministic agent policy.  Only feasible for tiny
  horizons (h <= 8) and small action sets (<= 4 actions).
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .game import Game, best_response_set, eps_adversarial_response, exact_best_response


class Agent:
    name = "agent"

    def begin(self, game: Game, T: int, rng: np.random.Generator) -> None:
        self.game = game
        self.T = T
        self.rng = rng

    def respond(self, t: int, history, x):
        raise NotImplementedError


class MyopicAgent(Agent):
    """Exact best responder; ties broken in the principal's favor."""

    name = "myopic"

    def __init__(self):
        self._cache = {}

    def respond(self, t, history, x):
        key = (_x_key(x), self.game.round_state_key())
        if key not in self._cache:
            self._cache[key] = exact_best_response(self.game, x, t)
        return self._cache[key]


class EpsAdversarialAgent(Agent):
    """Plays an arbitrary member of BR^eps(x), selected by tie_mode.

    eps may be a constant or a callable t -> eps, which lets tests couple
    the agent's slack to the slack a policy's information screen actually
    induces at round t.
    """

    name = "eps_adversarial"

    def __init__(self, eps, tie_mode: str = "worst_for_principal"):
        self.eps = eps
        self.tie_mode = tie_mode
        self._cache = {}

    def current_eps(self, t: int) -> float:
        return self.eps(t) if callable(self.eps) else self.eps

    def respond(self, t, history, x):
        eps = self.current_eps(t)
        key = (_x_key(x), eps, self.game.round_state_key())
        if key not in self._cache:
            self._cache[key] = eps_adversarial_response(
                self.game, x, eps, self.tie_mode, t)
        return self._cache[key]


class ScriptedAgent(Agent):
    """Follows a program(t, history, x) -> y; falls back to myopic on None."""

    name = "scripted"

    def __init__(self, program: Callable):
        self.program = program

    def respond(self, t, history, x):
        y = self.program(t, history, x)
        if y is None:
            y = exact_best_response(self.game, x, t)
        return y


class ExhaustiveDiscountedAgent(Agent):
    """Exactly rational gamma-discounter for tiny horizons.

    Requires a ``policy_factory`` so it can re-simulate the (deterministic)
    principal policy along hypothetical histories.  At episode start it
    solves max over all deterministic agent policies of
    sum_t gamma^t * v(x_t, y_t) by depth-first enumeration, then plays the
    optimal path.  The runner wires in the policy factory and screen.
    """

    name = "exhaustive_discounted"
    MAX_HORIZON = 8
    MAX_ACTIONS = 4

    def __init__(self, gamma: float, horizon: Optional[int] = None):
        if not 0.0 < gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        self.gamma = gamma
        self.horizon = horizon
        self._plan = None
        self.policy_factory = None
        self.screen = None

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        h = self.horizon if self.horizon is not None else T
        if h != T:
            raise ValueError("exhaustive agent horizon must equal episode length")
        if h > self.MAX_HORIZON:
            raise ValueError(f"exhaustive agent limited to horizon {self.MAX_HORIZON}")
        self._plan = None

    def _principal_action(self, history, t):
        """Replay a fresh policy copy against `history`, respecting the screen.

        Mirrors the runner's delivery order exactly so stateful policies end
        up in the same state they would reach in a live episode.
        """
        policy = self.policy_factory()
        delivered = 0
        for s in range(1, t + 1):
            bound = min(policy.screen.release_bound(s), len(history))
            while delivered < bound:
                delivered += 1
                xs, ys = history[delivered - 1]
                policy.feedback(delivered, xs, ys)
            a = policy.action(s)
        return a

    def _solve(self):
        game, gamma, h = self.game, self.gamma, self.T
        actions = list(game.agent_actions())
        if len(actions) > self.MAX_ACTIONS:
            raise ValueError(f"exhaustive agent limited to {self.MAX_ACTIONS} actions")
        memo = {}

        def value(history):
            t = len(history) + 1
            if t > h:
                return 0.0, ()
            key = tuple((_x_key(xs), _x_key(ys)) for xs, ys in history)
            if key in memo:
                return memo[key]
            x = self._principal_action(history, t)
            best, best_path = -np.inf, ()
            for y in actions:
                v = (gamma ** t) * game.agent_payoff(x, y, t)
                future, path = value(history + [(x, y)])
                if v + future > best + 1e-15:
                    best, best_path = v + future, ((x, y),) + path
            memo[key] = (best, best_path)
            return memo[key]

        total, path = value([])
        self._plan = [y for _, y in path]
        self.optimal_value = total

    def respond(self, t, history, x):
        if self._plan is None:
            if self.policy_factory is None:
                raise RuntimeError("exhaustive agent needs a policy_factory "
                                   "(pass one to run_episode)")
            self._solve()
        return self._plan[t - 1]


def myopic_limit_agrees(game: Game, xs, tol_gamma: float = 1e-9) -> bool:
    """Check that a gamma -> 0 discounter best-responds pointwise on probes."""
    for x in xs:
        br = best_response_set(game, x, 0.0)
        y = eps_adversarial_response(game, x, tol_gamma / (1 - tol_gamma),
                                     "best_for_principal")
        if _x_key(y) not in {_x_key(b) for b in br}:
            return False
    return True


def _x_key(x):
    if isinstance(x, np.ndarray):
        return x.tobytes()
    if isinstance(x, (list, tuple)):
        return tuple(x)
    return x
