"""Stackelberg-regret accounting against an oracle benchmark.

The benchmark is the per-round optimum of the one-shot game with ties broken
in the principal's favor; application modules supply it through a reference
oracle (closed form, grid search, or exact arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .runner import Policy, Transcript
from .screens import InformationScreen

ORACLE_TOL = 1e-9


@dataclass
class RegretLedger:
    benchmark_value: float
    per_round: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.per_round)

    def total(self) -> float:
        return float(np.sum(self.per_round))


def stackelberg_regret(transcript: Transcript, benchmark_value: float,
                       stochastic: bool = False) -> RegretLedger:
    """Regret of a transcript against a fixed per-round benchmark payoff.

    For deterministic payoffs, raises if the benchmark falls below any
    realized payoff by more than numeric tolerance -- that means the supplied
    oracle is wrong, and the resulting "negative regret" would silently mask
    algorithm bugs.  Pass stochastic=True when payoffs are random draws: the
    benchmark is then an expectation which single rounds may legally exceed.
    """
    payoffs = transcript.principal_payoffs()
    worst = float(payoffs.max(initial=0.0))
    if not stochastic and benchmark_value < worst - ORACLE_TOL:
        raise ValueError(
            f"benchmark {benchmark_value} is below a realized payoff {worst}; "
            "the reference oracle is wrong")
    return RegretLedger(benchmark_value=benchmark_value,
                        per_round=benchmark_value - payoffs)


class BatchedToDelayed(Policy):
    """Convert a B-batched policy into a B-delayed one.

    Runs two independent copies of the base policy on alternating batches of
    length B.  Each copy only ever acts on rounds at least one full batch
    after its own most recent batch ended, so feedback delayed by B rounds is
    always complete by the time the copy needs it.  Worst-case regret at most
    doubles (checked empirically over seeds, not per run).
    """

    def __init__(self, policy_factory, B: int):
        if B < 1:
            raise ValueError("batch size must be >= 1")
        self.policy_factory = policy_factory
        self.B = B
        self.name = "batched_to_delayed"
        self.screen = InformationScreen.delay(B)

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        self.copies = [self.policy_factory(), self.policy_factory()]
        ss = np.random.SeedSequence(rng.integers(2 ** 63)).spawn(2)
        for copy, s in zip(self.copies, ss):
            copy.begin(game, T, np.random.default_rng(s))
        self.name = f"batched_to_delayed({self.copies[0].name})"
        # per-copy virtual clocks and pending feedback, keyed by real round
        self._virtual_t = [0, 0]
        self._round_map = {}   # real round -> (copy index, virtual round)
        self._pending = [[], []]

    def _copy_for(self, t: int) -> int:
        return ((t - 1) // self.B) % 2

    def action(self, t):
        c = self._copy_for(t)
        copy = self.copies[c]
        for vt, x, y in self._pending[c]:
            copy.feedback(vt, x, y)
        self._pending[c] = []
        self._virtual_t[c] += 1
        self._round_map[t] = (c, self._virtual_t[c])
        return copy.action(self._virtual_t[c])

    def feedback(self, t, x, y):
        c, vt = self._round_map.pop(t)
        self._pending[c].append((vt, x, y))

    def trace_extra(self, t):
        return {"copy": self._copy_for(t)}
