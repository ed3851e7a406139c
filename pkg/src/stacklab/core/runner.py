"""Seeded episode runner with mechanical information-screen enforcement.

One episode is strictly sequential.  All randomness flows from a single
per-episode seed, split into named substreams (agent noise, policy noise,
environment noise) so paired differential tests are exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .agents import Agent, ExhaustiveDiscountedAgent
from .game import Game
from .screens import InformationScreen


class Policy:
    """Base class for principal policies.

    The runner calls ``action(t)`` for t = 1..T and delivers feedback via
    ``feedback(t, x, y)`` only when the declared screen allows it, so the
    delay/batch invariant is enforced by the harness, not by the policy.
    """

    name = "policy"
    screen = InformationScreen.none()

    def begin(self, game: Game, T: int, rng: np.random.Generator) -> None:
        self.game = game
        self.T = T
        self.rng = rng

    def action(self, t: int):
        raise NotImplementedError

    def feedback(self, t: int, x, y) -> None:
        pass

    def trace_extra(self, t: int) -> dict:
        """Extra per-round trace columns (epoch/thread/phase...), if any."""
        return {}


class ConstantPolicy(Policy):
    name = "constant"

    def __init__(self, x):
        self.x = x

    def action(self, t):
        return self.x


@dataclass
class Transcript:
    """Complete record of one episode."""

    rounds: list = field(default_factory=list)  # (t, x, y, u, v)
    seed: Optional[int] = None
    algorithm: str = ""
    metadata: dict = field(default_factory=dict)
    extras: list = field(default_factory=list)  # per-round dicts

    def __len__(self):
        return len(self.rounds)

    def principal_payoffs(self) -> np.ndarray:
        return np.array([r[3] for r in self.rounds])

    def to_csv(self, cumulative_regret=None) -> str:
        """Serialize one row per round; extra columns appended if present."""
        extra_cols = sorted({k for e in self.extras for k in e}) if self.extras else []
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "x", "y", "principal_payoff", "agent_payoff",
                         "cumulative_regret"] + extra_cols)
        for i, (t, x, y, u, v) in enumerate(self.rounds):
            xs = ";".join(repr(float(c)) for c in np.atleast_1d(np.asarray(x, dtype=float)))
            cr = "" if cumulative_regret is None else repr(float(cumulative_regret[i]))
            extra = self.extras[i] if self.extras else {}
            writer.writerow([t, xs, _fmt(y), repr(float(u)), repr(float(v)), cr]
                            + [_fmt(extra.get(k, "")) for k in extra_cols])
        return buf.getvalue()


def _fmt(y):
    if isinstance(y, float):
        return repr(y)
    if isinstance(y, (list, tuple, np.ndarray)):
        return ";".join(repr(float(c)) for c in np.asarray(y, dtype=float))
    return y


def episode_rngs(seed: int):
    """Named substreams for one episode."""
    root = np.random.SeedSequence(seed)
    agent_ss, policy_ss, env_ss = root.spawn(3)
    return (np.random.default_rng(agent_ss), np.random.default_rng(policy_ss),
            np.random.default_rng(env_ss))


def run_episode(policy: Policy, agent: Agent, game: Game, T: int, seed: int = 0,
                policy_factory=None) -> Transcript:
    """Play T rounds of `policy` vs `agent` on `game`, deterministically.

    ``policy_factory`` is required when the agent is exhaustively rational:
    the agent re-simulates the principal policy on hypothetical histories.
    Feedback is withheld per the policy's declared screen; an out-of-space
    action is a hard error naming the offending round.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    agent_rng, policy_rng, env_rng = episode_rngs(seed)
    policy.begin(game, T, policy_rng)
    agent.begin(game, T, agent_rng)
    if isinstance(agent, ExhaustiveDiscountedAgent):
        if policy_factory is None:
            raise ValueError("exhaustive agent requires a policy_factory")
        def _factory():
            p = policy_factory()
            p.begin(game, T, np.random.default_rng(np.random.SeedSequence(seed).spawn(3)[1]))
            return p
        agent.policy_factory = _factory

    transcript = Transcript(seed=seed, algorithm=policy.name,
                            metadata={"T": T, "agent": agent.name})
    history: list = []
    delivered = 0
    for t in range(1, T + 1):
        bound = min(policy.screen.release_bound(t), len(history))
        while delivered < bound:
            delivered += 1
            xs, ys = history[delivered - 1]
            policy.feedback(delivered, xs, ys)
        state = game.sample_round_state(t, env_rng)
        game.set_round_state(state)
        x = policy.action(t)
        if not game.principal_valid(x):
            raise ValueError(f"round {t}: policy action outside the strategy space: {x!r}")
        y = agent.respond(t, history, x)
        u = game.principal_payoff(x, y, t)
        v = game.agent_payoff(x, y, t)
        if not -1e-9 <= u <= 1 + 1e-9:
            raise ValueError(f"round {t}: principal payoff {u} outside [0, 1]")
        lo, hi = game.agent_payoff_range
        if not lo - 1e-9 <= v <= hi + 1e-9:
            raise ValueError(f"round {t}: agent payoff {v} outside declared range")
        history.append((x, y))
        transcript.rounds.append((t, _freeze(x), _freeze(y), float(u), float(v)))
        transcript.extras.append(policy.trace_extra(t))
    return transcript


def _freeze(z):
    if isinstance(z, np.ndarray):
        out = z.copy()
        out.setflags(write=False)
        return out
    return z
