"""Repeated-game policies built on the cutting-plane search.

Both policies interleave single search queries with long exploit stretches;
the induced feedback delay is what keeps a discounting agent near-myopic.
"""

from __future__ import annotations

import math

import numpy as np

from ..core.runner import Policy
from ..core.screens import InformationScreen, discounted_horizon
from .centroid import region_centroid
from .clinch import clinch_generator, perturb
from .game import SecurityGame


def _safe_perturb(x_hat, lam, game):
    try:
        return perturb(x_hat, lam, game)
    except ValueError:
        return np.asarray(x_hat, dtype=float).copy()


class BatchedClinchPolicy(Policy):
    """Epoch-doubling search against a known discount factor.

    Epoch phi runs the search to accuracy delta = W * 2^-phi / (6 C^2) inside
    the box left by the previous epoch.  Each batch spends one round on the
    next search query and the rest exploiting the current estimate, so the
    agent's feedback about any query is withheld for a full batch.
    """

    def __init__(self, game: SecurityGame, T: int, gamma: float,
                 n_cent: int = 512):
        if not 0.0 < gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        self.ssg = game
        self.T_total = T
        self.gamma = gamma
        self.n_cent = n_cent
        self.name = "batched_clinch"
        self.screen = InformationScreen.dynamic(self._release_bound)

    def _release_bound(self, t: int) -> int:
        if t >= self._batch_start + self._batch_len:
            return t - 1
        return self._batch_start - 1

    def _batch_exploit_len(self, lam: float) -> int:
        tg = discounted_horizon(self.gamma)
        g = self.ssg
        return math.ceil(tg * math.log(
            200 * tg * g.C ** 5 * g.n / (g.W * lam)))

    def _start_epoch(self):
        g = self.ssg
        self.lam = 2.0 ** -self.phi
        self.delta = g.W * self.lam / (6 * g.C ** 2)
        self.stats = {}
        self.gen = clinch_generator(g, self.delta, self.lower, self.upper,
                                    rng=self.rng, n_cent=self.n_cent,
                                    stats=self.stats)
        self.query = next(self.gen)
        self._batch_len = 1 + self._batch_exploit_len(self.lam)

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        g = self.ssg
        self.phi = 1
        self.num_epochs = max(math.ceil(math.log2(T)), 1)
        self.lower = np.zeros(g.n)
        self.upper = np.ones(g.n)
        self.x_tilde = np.zeros(g.n)
        self.done = False
        self._batch_start = 1
        self._pending = None
        self._extras = {}
        self._start_epoch()

    def action(self, t):
        if not self.done and t >= self._batch_start + self._batch_len:
            self._batch_start = t
            self._advance_search()
        if not self.done and t == self._batch_start:
            self._extras[t] = {"epoch": self.phi, "phase": "explore"}
            self._awaiting = t
            return self.query
        self._extras[t] = {"epoch": min(self.phi, self.num_epochs),
                           "phase": "exploit"}
        return self.x_tilde

    def _advance_search(self):
        g = self.ssg
        y = self._pending
        self._pending = None
        try:
            self.query = self.gen.send(y)
        except StopIteration as stop:
            x_hat = stop.value
            self.x_tilde = _safe_perturb(x_hat, self.lam, g)
            self.lower = np.clip(x_hat - self.delta, 0.0, 1.0)
            self.upper = np.clip(x_hat + self.delta, 0.0, 1.0)
            self.phi += 1
            if self.phi > self.num_epochs:
                self.done = True
                self._batch_len = self.T_total + 1
                return
            self._start_epoch()

    def feedback(self, t, x, y):
        if getattr(self, "_awaiting", None) == t:
            self._pending = y
            self._awaiting = None

    def trace_extra(self, t):
        return self._extras.pop(t, {})


class MultiThreadedClinchPolicy(Policy):
    """Discount-agnostic search: geometric delays across logical threads.

    Thread r acts on rounds divisible by 2^(r-1) but not 2^r, so it sees its
    own feedback with delay 2^r.  Threads whose delay is long enough for the
    true (unknown) discount factor maintain valid boxes around the optimum;
    exploitation perturbs the centroid of the deepest non-empty intersection
    of thread boxes.
    """

    def __init__(self, game: SecurityGame, T: int, n_cent: int = 512):
        self.ssg = game
        self.T_total = T
        self.n_cent = n_cent
        self.name = "multithreaded_clinch"
        self.screen = InformationScreen.dynamic(self._release_bound)

    @staticmethod
    def _thread(t: int) -> int:
        return (t & -t).bit_length()  # trailing zeros of t, plus one

    def _release_bound(self, t: int) -> int:
        return t - 2 ** self._thread(t)

    def begin(self, game, T, rng):
        super().begin(game, T, rng)
        g = self.ssg
        self.delta_floor = g.W / (12 * g.C ** 2 * T)
        self.threads = {}
        for r in range(1, int(math.floor(math.log2(T))) + 2):
            self.threads[r] = self._new_thread(g.W / (12 * g.C ** 2),
                                               np.zeros(g.n), np.ones(g.n))
        self._extras = {}
        self._boxes_version = 0
        self._exploit_cache = None

    def _new_thread(self, delta, lower, upper):
        stats = {}
        gen = clinch_generator(self.ssg, delta, lower, upper, rng=self.rng,
                               n_cent=self.n_cent, stats=stats)
        return {"delta": delta, "lower": lower.copy(), "upper": upper.copy(),
                "gen": gen, "query": next(gen), "stats": stats,
                "awaiting": None, "response": None}

    def action(self, t):
        r = self._thread(t)
        thr = self.threads[r]
        if thr["delta"] > self.delta_floor:
            self._extras[t] = {"thread": r, "phase": "explore"}
            if thr["response"] is not None:
                y, thr["response"] = thr["response"], None
                try:
                    thr["query"] = thr["gen"].send(y)
                except StopIteration as stop:
                    x_hat = np.asarray(stop.value, dtype=float)
                    # box radius = accuracy just achieved, so the box keeps
                    # the optimum whenever the feedback was honest
                    lower = np.clip(x_hat - thr["delta"], 0.0, 1.0)
                    upper = np.clip(x_hat + thr["delta"], 0.0, 1.0)
                    new = self._new_thread(thr["delta"] / 2, lower, upper)
                    self.threads[r] = new
                    self._boxes_version += 1
                    thr = new
                if thr["delta"] <= self.delta_floor:
                    return self._exploit(t, r)
            thr["awaiting"] = t
            return thr["query"]
        return self._exploit(t, r)

    def _exploit(self, t, r):
        self._extras[t] = {"thread": r, "phase": "exploit"}
        if self._exploit_cache and self._exploit_cache[0] == self._boxes_version:
            return self._exploit_cache[1]
        g = self.ssg
        rs = sorted(self.threads)
        choice = None
        for q in rs:
            lower = np.max([self.threads[p]["lower"] for p in rs if p >= q], axis=0)
            upper = np.min([self.threads[p]["upper"] for p in rs if p >= q], axis=0)
            feasible = np.all(lower <= upper + 1e-12) and (
                g.space != "simplex" or lower.sum() <= 1 + 1e-12)
            if feasible:
                choice = (lower, np.maximum(lower, upper))
                break
        assert choice is not None, "deepest thread's own box is always non-empty"
        x_hat = region_centroid(g.space, choice[0], choice[1], self.rng,
                                self.n_cent)
        x = _safe_perturb(x_hat, 1.0 / self.T_total, g)
        self._exploit_cache = (self._boxes_version, x)
        return x

    def feedback(self, t, x, y):
        r = self._thread(t)
        thr = self.threads[r]
        if thr["awaiting"] == t:
            thr["response"] = y
            thr["awaiting"] = None

    def trace_extra(self, t):
        return self._extras.pop(t, {})
