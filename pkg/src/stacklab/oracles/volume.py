"""Monte Carlo volume fractions with Wilson confidence intervals.

Backs the cutting-plane volume-retention checks: how much of a convex body
a halfspace through (near) its centroid keeps.
"""

from __future__ import annotations

import math

import numpy as np

from .report import OracleReport

Z_99 = 2.5758293035489004  # two-sided 99% normal quantile
MIN_SAMPLES = 1000


def wilson_interval(successes: int, n: int, z: float = Z_99):
    """Wilson score interval for a binomial fraction."""
    p = successes / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return center - half, center + half


def monte_carlo_volume(sampler, predicate, N: int, seed: int = 0) -> OracleReport:
    """Fraction of the sampled region satisfying `predicate`, with 99% CI.

    sampler(n, rng) must return n uniform points of the ambient region as an
    (n, d) array; predicate is vectorized over rows or applied per row.
    """
    if N < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples for a meaningful CI")
    rng = np.random.default_rng(seed)
    pts = np.asarray(sampler(N, rng))
    hits = predicate(pts)
    hits = np.asarray(hits)
    if hits.shape != (len(pts),):
        hits = np.array([bool(predicate(p)) for p in pts])
    k = int(np.count_nonzero(hits))
    lo, hi = wilson_interval(k, N)
    frac = k / N
    return OracleReport(value=frac, method="sampling",
                        certified_error=max(frac - lo, hi - frac),
                        detail={"n_samples": N, "ci99": [lo, hi], "seed": seed})
