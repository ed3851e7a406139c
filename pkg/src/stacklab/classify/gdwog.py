"""Bandit convex optimization by one-point gradient estimates.

Each round queries a random sphere point around the interior iterate and
steps against the observed function value; the estimator is an unbiased
gradient of the delta-smoothed objective.
"""

from __future__ import annotations

import math

import numpy as np


def exploration_radius(R: float, d: int, C: float, L: float, T: int) -> float:
    return math.sqrt(R * d * C / (3 * (L + C))) * T ** -0.25


def step_size(R: float, C: float, T: int) -> float:
    return R / (C * math.sqrt(T))


def project_ball(w, radius: float) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    norm = np.linalg.norm(w)
    if norm <= radius:
        return w
    return w * (radius / norm)


class GDwoG:
    """One independent descent thread over the R-ball domain."""

    def __init__(self, d: int, R: float, C: float, L: float, T: int,
                 rng: np.random.Generator):
        self.d, self.R, self.C, self.L = d, float(R), float(C), float(L)
        self.delta = exploration_radius(R, d, C, L, T)
        if self.delta >= 1.0:
            # horizon too short for the tuned radius; clamp to stay interior
            self.delta = 0.5
        self.eta = step_size(R, C, T)
        self.rng = rng
        self.v = np.zeros(d)
        self._s = None
        self._u = None

    def query(self) -> np.ndarray:
        s = self.rng.standard_normal(self.d)
        s /= max(np.linalg.norm(s), 1e-300)
        self._s = s
        self._u = self.v + self.delta * s
        return self._u

    def update(self, c_value: float) -> None:
        if self._s is None:
            raise RuntimeError("update before any query")
        w = self.v - self.eta * c_value * self._s
        self.v = project_ball(w, (1.0 - self.delta) * self.R)
        self._s = None


def run_gdwog(c_fn, d: int, R: float, C: float, L: float, T: int,
              seed: int = 0, perturb_fn=None):
    """Drive one thread on a fixed objective; returns queries and values."""
    rng = np.random.default_rng(seed)
    g = GDwoG(d, R, C, L, T, rng)
    queries = np.zeros((T, d))
    values = np.zeros(T)
    for t in range(T):
        u = g.query()
        c = float(c_fn(u))
        queries[t] = u
        values[t] = c
        if perturb_fn is not None:
            c = float(perturb_fn(t, u, c, g._s))
        g.update(c)
    return queries, values


def smoothed_gradient(c_fn, v, delta: float, d: int, n_samples: int,
                      seed: int = 0) -> np.ndarray:
    """Monte Carlo mean of the one-point estimator (d/delta) c(v+delta s) s."""
    rng = np.random.default_rng(seed)
    s = rng.standard_normal((n_samples, d))
    s /= np.linalg.norm(s, axis=1, keepdims=True)
    vals = np.array([c_fn(v + delta * si) for si in s])
    return (d / delta) * (vals[:, None] * s).mean(axis=0)


def gdwog_perturbed_bias_check(lam: float, delta_g: float, d: int, c_fn=None,
                               v=None, n_samples: int = 100_000, seed: int = 0):
    """Bias bound d*lam/delta for lambda-perturbed feedback, plus a Monte
    Carlo measurement under the worst-case sign-aligning adversary."""
    bound = d * lam / delta_g
    out = {"bound": bound}
    if c_fn is not None:
        if v is None:
            v = np.zeros(d)
        rng = np.random.default_rng(seed)
        s = rng.standard_normal((n_samples, d))
        s /= np.linalg.norm(s, axis=1, keepdims=True)
        vals = np.array([c_fn(v + delta_g * si) for si in s])
        # adversary shifts each evaluation by +lam when s aligns with e_1
        shifts = lam * np.sign(s[:, 0])
        est_clean = (d / delta_g) * (vals[:, None] * s)
        est_pert = (d / delta_g) * ((vals + shifts)[:, None] * s)
        bias_vec = (est_pert - est_clean).mean(axis=0)
        out["measured_bias"] = float(np.linalg.norm(bias_vec))
        out["stderr"] = float((est_pert - est_clean).std(axis=0).max()
                              / math.sqrt(n_samples))
    return out
