"""Successive elimination with delayed, perturbed feedback.

Standalone bandit form used directly in tests; the pricing policy in
``policies`` reuses the same arm bookkeeping against the episode runner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class ArmState:
    price: float
    pulls: int = 0
    reward_sum: float = 0.0
    lcb: float = -math.inf
    ucb: float = math.inf
    eliminated: bool = False

    @property
    def mean(self) -> float:
        return self.reward_sum / self.pulls if self.pulls else 0.0


def update_confidence_bounds(arms, T: int, delta: float):
    """Recompute LCB/UCB from each arm's recorded (delayed) feedback.

    The pull count is clamped to 1 in the divisor so unexplored arms get
    centered, maximally wide bounds; delta widens both sides to absorb
    adversarial perturbation of the rewards.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    radius_scale = math.sqrt(2 * math.log(T))
    for arm in arms:
        n = max(arm.pulls, 1)
        radius = radius_scale / math.sqrt(n)
        arm.lcb = arm.mean - radius - delta
        arm.ucb = arm.mean + radius + delta
    return arms


def eliminate(arms, surviving):
    """Drop every arm whose UCB falls below some survivor's LCB."""
    best_lcb = max(arms[i].lcb for i in surviving)
    keep = [i for i in surviving if arms[i].ucb >= best_lcb]
    for i in surviving:
        if i not in keep:
            arms[i].eliminated = True
    return keep


def run_se_delayed(reward_sampler, K: int, D: int, T: int, delta: float = 0.0,
                   adversary=None, seed: int = 0, prices=None, on_update=None):
    """Simulate the round-robin elimination bandit under a feedback delay.

    reward_sampler(i, rng) draws arm i's base reward; adversary(t, i, history)
    may shift it within [-delta, +delta].  Feedback from round tau becomes
    visible once tau <= t - D.  Returns per-arm states plus the pull trace.
    ``on_update(t, arms, surviving)`` is called after every confidence-bound
    refresh, for instrumentation.
    """
    rng = np.random.default_rng(seed)
    if prices is None:
        prices = [(i + 1) / K for i in range(K)]
    arms = [ArmState(price=p) for p in prices]
    surviving = list(range(K))
    history = []  # (round, arm, reward)
    absorbed = 0  # rewards already credited to arm states
    t = 0
    pull_trace = []
    while t < T:
        for i in surviving:
            if t >= T:
                break
            t += 1
            r = float(reward_sampler(i, rng))
            if adversary is not None:
                shift = float(adversary(t, i, history))
                if abs(shift) > delta + 1e-12:
                    raise ValueError("adversary shift exceeds delta")
                r += shift
            history.append((t, i, r))
            pull_trace.append(i)
        visible = t - D
        while absorbed < len(history) and history[absorbed][0] <= visible:
            _, i, r = history[absorbed]
            arms[i].pulls += 1
            arms[i].reward_sum += r
            absorbed += 1
        update_confidence_bounds(arms, T, delta)
        if len(surviving) > 1:
            surviving = eliminate(arms, surviving)
        if on_update is not None:
            on_update(t, arms, surviving)
    return arms, pull_trace, surviving
