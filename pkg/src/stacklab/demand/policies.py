"""Pricing policies for fixed and stochastic buyer values."""

from __future__ import annotations

import math

import numpy as np

from ..core.runner import Policy
from ..core.screens import InformationScreen, discounted_horizon
from .bandit import ArmState, eliminate, update_confidence_bounds
from .model import StochasticValueModel


class BatchedBinarySearchPolicy(Policy):
    """Interval halving with epoch-length exploit blocks for a fixed value.

    Each iteration posts the midpoint once, then the safe price v_hat for a
    block long enough that feedback delay keeps the buyer nearly myopic;
    feedback from the probe arrives at the next block boundary.  The interval
    shrinks by 3/4 per iteration and always contains the buyer's value.
    """

    def __init__(self, T: int, gamma: float):
        if not 0.0 < gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        self.T_total = T
        self.gamma = gamma
        self.name = "batched_binary_search"
        self.screen = InformationScreen.dynamic(self._release_bound)

    def _release_bound(self, t: int) -> int:
        if t >= self._batch_start + self._batch_len:
            return t - 1
        return self._batch_start - 1

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        self.lo, self.hi = 0.0, 1.0
        self.v_hat = 0.0
        self.eps = (self.hi - self.lo) / 4
        self.done = False
        self._batch_start = 1
        self._batch_len = self._block_len()
        self._pending = None
        self._awaiting = None
        self._extras = {}
        self.interval_trace = [(self.lo, self.hi)]

    def _block_len(self) -> int:
        tg = discounted_horizon(self.gamma)
        return 1 + math.ceil(tg * math.log(tg / self.eps))

    def action(self, t):
        if not self.done and t >= self._batch_start + self._batch_len:
            self._batch_start = t
            self._consume_feedback()
        if not self.done and t == self._batch_start:
            p = 0.5 * (self.lo + self.hi)
            self.eps = (self.hi - self.lo) / 4
            self._awaiting = t
            self._extras[t] = {"phase": "explore"}
            return p
        self._extras[t] = {"phase": "exploit"}
        return self.v_hat

    def _consume_feedback(self):
        a, self._pending = self._pending, None
        p = 0.5 * (self.lo + self.hi)
        if a:
            self.lo = p - self.eps
        else:
            self.hi = p + self.eps
        self.v_hat = max(self.lo - self.eps, 0.0)
        self.interval_trace.append((self.lo, self.hi))
        if self.hi - self.lo <= 1.0 / self.T_total:
            self.done = True
            self._batch_len = self.T_total + 1
        else:
            self.eps = (self.hi - self.lo) / 4
            self._batch_len = self._block_len()

    def feedback(self, t, x, y):
        if self._awaiting == t:
            self._pending = y
            self._awaiting = None

    def trace_extra(self, t):
        return self._extras.pop(t, {})


class SEDelayedPricingPolicy(Policy):
    """Round-robin elimination over a fixed price grid under Delay(D)."""

    def __init__(self, prices, D: int, delta: float, T: int):
        self.prices = list(prices)
        self.D = D
        self.delta = delta
        self.T_total = T
        self.name = "se_delayed_pricing"
        self.screen = InformationScreen.delay(D)

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        self.arms = [ArmState(price=p) for p in self.prices]
        self.surviving = list(range(len(self.prices)))
        self._cursor = 0  # position within the current phase
        self._round_arm = {}
        self._extras = {}

    def action(self, t):
        if self._cursor >= len(self.surviving):
            self._cursor = 0
            update_confidence_bounds(self.arms, self.T_total, self.delta)
            if len(self.surviving) > 1:
                self.surviving = eliminate(self.arms, self.surviving)
        arm = self.surviving[self._cursor]
        self._cursor += 1
        self._round_arm[t] = arm
        self._extras[t] = {"surviving_arms": len(self.surviving)}
        return self.prices[arm]

    def feedback(self, t, x, y):
        arm = self._round_arm.pop(t)
        p = float(np.asarray(x).reshape(()))
        self.arms[arm].pulls += 1
        self.arms[arm].reward_sum += p * y

    def trace_extra(self, t):
        return self._extras.pop(t, {})


def demand_pricing_parameters(model: StochasticValueModel, gamma: float, T: int):
    """Grid size, agent slack, delay, and confidence widening for pricing."""
    tg = discounted_horizon(gamma)
    L = model.L
    K = max(int((T / math.log(T)) ** 0.25), 2)
    eps = 1.0 / (L * T)
    D = math.ceil(tg * math.log(L * tg * T))
    delta = L * eps
    return K, eps, D, delta


def demand_pricing_policy(model: StochasticValueModel, gamma: float,
                          T: int) -> SEDelayedPricingPolicy:
    """Elimination pricing tuned for a discounting buyer with random values."""
    if not isinstance(model, StochasticValueModel):
        raise ValueError("pricing policy requires a stochastic value model")
    K, _, D, delta = demand_pricing_parameters(model, gamma, T)
    prices = [(i + 1) / K for i in range(K)]
    return SEDelayedPricingPolicy(prices, D, delta, T)


class UnknownGammaPricingPolicy(Policy):
    """EXPERIMENTAL: discount-agnostic pricing via geometric delay threads.

    Thread r prices on the ruler-sequence rounds with spacing 2^r and keeps
    its own arm statistics; prices are chosen from the intersection of the
    deepest threads' confidence intervals.  Excluded from acceptance runs.
    """

    experimental = True

    def __init__(self, prices, T: int):
        self.prices = list(prices)
        self.T_total = T
        self.name = "unknown_gamma_pricing"
        self.screen = InformationScreen.dynamic(self._release_bound)

    @staticmethod
    def _thread(t: int) -> int:
        return (t & -t).bit_length()

    def _release_bound(self, t: int) -> int:
        return t - 2 ** self._thread(t)

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        R = int(math.floor(math.log2(T))) + 1
        K = len(self.prices)
        self.threads = {r: {"arms": [ArmState(price=p) for p in self.prices],
                            "surviving": list(range(K)), "cursor": 0}
                        for r in range(1, R + 1)}
        self._round_arm = {}

    def action(self, t):
        r = self._thread(t)
        thr = self.threads[r]
        if thr["cursor"] >= len(thr["surviving"]):
            thr["cursor"] = 0
            update_confidence_bounds(thr["arms"], self.T_total, 0.0)
            if len(thr["surviving"]) > 1:
                # intersect this thread's intervals with slower threads'
                for i, arm in enumerate(thr["arms"]):
                    for p in self.threads:
                        if p > r:
                            other = self.threads[p]["arms"][i]
                            arm.lcb = max(arm.lcb, other.lcb)
                            arm.ucb = min(arm.ucb, other.ucb)
                valid = all(thr["arms"][i].lcb <= thr["arms"][i].ucb
                            for i in thr["surviving"])
                if valid:
                    thr["surviving"] = eliminate(thr["arms"], thr["surviving"])
        arm = thr["surviving"][thr["cursor"] % len(thr["surviving"])]
        thr["cursor"] += 1
        self._round_arm[t] = (r, arm)
        return self.prices[arm]

    def feedback(self, t, x, y):
        r, arm = self._round_arm.pop(t)
        p = float(np.asarray(x).reshape(()))
        state = self.threads[r]["arms"][arm]
        state.pulls += 1
        state.reward_sum += p * y
