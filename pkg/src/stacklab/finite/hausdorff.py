"""Monte Carlo Hausdorff-distance diagnostic for best-response regions.

Used to sanity-check a game's declared condition number: the distance
between K_y and its eps-relaxation should grow at most linearly in eps.
Distances are Euclidean in the simplex's ambient coordinates, which equal
embedded-metric distances because the embedding is isometric.
"""

from __future__ import annotations

import numpy as np

from .game import FiniteGame

DYKSTRA_ITERS = 400
DYKSTRA_TOL = 1e-10
MAX_REJECTION_FACTOR = 50


def project_polytope(points, A, b, iters: int = DYKSTRA_ITERS):
    """Euclidean projection of each row onto {x : A x >= b, x >= 0, sum = 1}.

    Dykstra's alternating projections over the halfspaces, the orthant, and
    the mass hyperplane; vectorized over points.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n_sets = len(A) + 2
    x = points.copy()
    corr = np.zeros((n_sets,) + x.shape)
    for _ in range(iters):
        prev = x.copy()
        for k in range(n_sets):
            z = x + corr[k]
            if k < len(A):
                a, norm2 = A[k], float(np.dot(A[k], A[k]))
                viol = np.minimum(z @ a - b[k], 0.0)
                x = z - (viol / norm2)[:, None] * a
            elif k == len(A):
                x = np.maximum(z, 0.0)
            else:
                x = z - ((z.sum(axis=1) - 1.0) / z.shape[1])[:, None]
            corr[k] = z - x
        if np.max(np.abs(x - prev)) < DYKSTRA_TOL:
            break
    return x


def _sample_region(game: FiniteGame, y: int, eps: float, n: int, rng):
    """Uniform samples of K_y^eps by rejection from the simplex."""
    out = []
    attempts = 0
    A, b = game.region_constraints(y, eps)
    while len(out) < n and attempts < MAX_REJECTION_FACTOR * n:
        batch = rng.dirichlet(np.ones(game.m_plus_1), size=min(n, 4096))
        attempts += len(batch)
        keep = np.all(batch @ A.T >= b - 1e-12, axis=1)
        out.extend(batch[keep])
    return np.array(out[:n])


def hausdorff_estimate(game: FiniteGame, y: int, eps: float,
                       n_samples: int = 100_000, seed: int = 0):
    """Estimated Hausdorff distance between K_y and K_y^eps.

    Samples each set, then measures how far samples of one set stick out of
    the other (interior samples contribute zero and are filtered by a direct
    constraint check; only violators pay for a projection).  Returns None if
    either set yields no samples.
    """
    rng = np.random.default_rng(seed)
    est = 0.0
    for eps_from, eps_to in ((eps, 0.0), (0.0, eps)):
        pts = _sample_region(game, y, eps_from, n_samples, rng)
        if len(pts) == 0:
            return None
        A, b = game.region_constraints(y, eps_to)
        outside = pts[~np.all(pts @ A.T >= b, axis=1)]
        if len(outside):
            proj = project_polytope(outside, A, b)
            est = max(est, float(np.max(np.linalg.norm(outside - proj, axis=1))))
    return est
