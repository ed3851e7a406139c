"""Centroids of box-bounded search regions.

Box spaces admit the exact midpoint.  For the downward-closed simplex the
region is a box intersected with the budget halfspace; when the budget cuts
the box the centroid follows in closed form by inclusion-exclusion over the
box's upper faces (2^n terms, exact) for modest n, with vectorized
hit-and-run sampling as the high-dimensional fallback.
"""

from __future__ import annotations

import math

import numpy as np

N_CENT_DEFAULT = 4096
N_CHAINS = 64
BURN_IN = 48
EMPTY_TOL = 1e-12
EXACT_MAX_DIM = 12


class EmptyRegionError(ValueError):
    """Search region is empty: an upstream bound update is inconsistent."""


def region_centroid(space: str, lower, upper, rng=None,
                    n_samples: int = N_CENT_DEFAULT) -> np.ndarray:
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if np.any(lower > upper + EMPTY_TOL):
        raise EmptyRegionError("entry-wise bounds cross")
    if space == "box":
        return 0.5 * (lower + upper)
    if space != "simplex":
        raise ValueError(f"unknown space: {space!r}")
    if lower.sum() > 1.0 + EMPTY_TOL:
        raise EmptyRegionError("lower bounds exceed the coverage budget")
    if upper.sum() <= 1.0:
        return 0.5 * (lower + upper)  # budget slack: plain box
    active = upper - lower > EMPTY_TOL
    if active.sum() <= EXACT_MAX_DIM:
        return _truncated_box_centroid(lower, upper, active)
    if rng is None:
        rng = np.random.default_rng(0)
    return _hit_and_run_centroid(lower, upper, rng, n_samples)


def _truncated_box_centroid(lower, upper, active):
    """Exact centroid of {l <= x <= u, sum(x) <= 1} for few active coords.

    After shifting by the lower corner the region is {0 <= z <= w,
    sum(z) <= s}.  Inclusion-exclusion over subsets S of upper-bound faces
    reduces every term to moments of the corner simplex {z >= 0,
    sum(z) <= s - sum_S w}, which are closed-form.
    """
    n = int(active.sum())
    w = (upper - lower)[active]
    s = 1.0 - lower.sum()
    if n == 0 or s <= EMPTY_TOL:
        return lower.copy()
    # subset sums via the binary-counting table, vectorized over all 2^n
    bits = (np.arange(2 ** n)[:, None] >> np.arange(n)) & 1
    y = s - bits @ w
    live = y > 0.0
    sign = 1.0 - 2.0 * (bits.sum(axis=1) % 2)
    yn = np.where(live, y, 0.0) ** n
    vol = float(sign @ yn) / math.factorial(n)
    if vol <= EMPTY_TOL ** n:
        return np.clip(0.5 * (lower + upper), lower, upper)
    corner = sign @ (np.where(live, y, 0.0) ** (n + 1)) / math.factorial(n + 1)
    face = (sign * yn) @ (bits * w) / math.factorial(n)
    out = lower.copy()
    out[active] += (corner + face) / vol
    return out


def _hit_and_run_centroid(lower, upper, rng, n_samples):
    n = len(lower)
    active = upper - lower > EMPTY_TOL
    if not np.any(active):
        return lower.copy()
    steps = max(n_samples // N_CHAINS, 1) + BURN_IN
    width = upper - lower
    # feasible interior-leaning start shared by all chains
    slack = max(1.0 - lower.sum(), 0.0)
    f = 0.5 * min(1.0, slack / max(width.sum(), EMPTY_TOL))
    x = np.tile(lower + f * width, (N_CHAINS, 1))
    total = np.zeros(n)
    count = 0
    for step in range(steps):
        d = rng.standard_normal((N_CHAINS, n))
        d[:, ~active] = 0.0
        norm = np.linalg.norm(d, axis=1, keepdims=True)
        d /= np.maximum(norm, 1e-300)
        # chord endpoints from the box faces and the budget hyperplane
        with np.errstate(divide="ignore", invalid="ignore"):
            t_up = np.where(d != 0, (upper - x) / d, np.inf)
            t_lo = np.where(d != 0, (lower - x) / d, -np.inf)
        t_max = np.minimum(np.where(d > 0, t_up, np.inf),
                           np.where(d < 0, t_lo, np.inf)).min(axis=1)
        t_min = np.maximum(np.where(d > 0, t_lo, -np.inf),
                           np.where(d < 0, t_up, -np.inf)).max(axis=1)
        ds = d.sum(axis=1)
        room = 1.0 - x.sum(axis=1)
        t_max = np.where(ds > EMPTY_TOL, np.minimum(t_max, room / ds), t_max)
        t_min = np.where(ds < -EMPTY_TOL, np.maximum(t_min, room / ds), t_min)
        t_max = np.maximum(t_max, t_min)  # numeric safety at corners
        t = t_min + rng.random(N_CHAINS) * (t_max - t_min)
        x = x + t[:, None] * d
        np.clip(x, lower, upper, out=x)
        if step >= BURN_IN:
            total += x.sum(axis=0)
            count += N_CHAINS
    return total / count
