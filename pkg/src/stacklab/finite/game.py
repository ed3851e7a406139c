"""Finite Stackelberg games over mixed principal strategies.

The principal commits to a distribution over m+1 pure actions; payoffs are
bilinear in the commitment.  Best-response regions are polytopes, so the
full-information optimum is computable exactly by enumerating the vertices
of each region (the classic multiple-LPs reduction) at desk scale.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..core.game import Game

SIMPLEX_TOL = 1e-9
VERTEX_TOL = 1e-9
MAX_VERTEX_ACTIONS = 5  # m + 1 cap for the dense vertex-enumeration solver


class FiniteGame(Game):
    """Mixed extension of an (m+1) x n bimatrix Stackelberg game.

    ``r`` is the radius such that the optimal target's best-response region
    contains a ball of radius 2r (in the embedded metric); ``L_cond`` bounds
    how fast that region grows under approximate best responses.  Both are
    regularity inputs validated externally, not derived here.
    """

    name = "finite"

    def __init__(self, u0, v0, r: float = 0.05, L_cond: float = 10.0):
        u0 = np.asarray(u0, dtype=float)
        v0 = np.asarray(v0, dtype=float)
        if u0.shape != v0.shape or u0.ndim != 2:
            raise ValueError("u0 and v0 must be matrices of the same shape")
        if np.any(u0 < -SIMPLEX_TOL) or np.any(u0 > 1 + SIMPLEX_TOL) \
                or np.any(v0 < -SIMPLEX_TOL) or np.any(v0 > 1 + SIMPLEX_TOL):
            raise ValueError("payoff entries must lie in [0, 1]")
        if r <= 0 or L_cond <= 0:
            raise ValueError("r and L_cond must be positive")
        self.u0, self.v0 = u0, v0
        self.m_plus_1, self.n = u0.shape
        self.m = self.m_plus_1 - 1
        self.r, self.L_cond = float(r), float(L_cond)
        self.dim = self.m_plus_1
        # orthonormal basis of the simplex's affine hull: the embedding
        # z = Q^T (x - c) preserves pairwise distances
        ones = np.ones((1, self.m_plus_1))
        self._embed_q = np.linalg.svd(ones)[2][1:].T  # (m+1) x m
        self._center = np.full(self.m_plus_1, 1.0 / self.m_plus_1)

    # -- strategy space -------------------------------------------------

    def principal_valid(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return (x.shape == (self.m_plus_1,) and np.all(x >= -SIMPLEX_TOL)
                and abs(x.sum() - 1.0) <= SIMPLEX_TOL)

    def agent_actions(self, x=None):
        return tuple(range(self.n))

    def embed(self, x) -> np.ndarray:
        """Isometric coordinates of a simplex point in R^m."""
        x = np.asarray(x, dtype=float)
        return self._embed_q.T @ (x - self._center)

    def unembed(self, z) -> np.ndarray:
        """Inverse of ``embed`` (lands on the affine hull, maybe off-simplex)."""
        return self._center + self._embed_q @ np.asarray(z, dtype=float)

    def project_simplex(self, x) -> np.ndarray:
        """Euclidean projection of an affine-hull point onto the simplex."""
        x = np.asarray(x, dtype=float)
        u = np.sort(x)[::-1]
        css = np.cumsum(u) - 1.0
        rho = np.nonzero(u * np.arange(1, len(x) + 1) > css)[0][-1]
        return np.maximum(x - css[rho] / (rho + 1.0), 0.0)

    def sample_simplex(self, rng) -> np.ndarray:
        return rng.dirichlet(np.ones(self.m_plus_1))

    # -- payoffs --------------------------------------------------------

    def principal_payoff(self, x, y, t=None) -> float:
        return float(np.dot(np.asarray(x, dtype=float), self.u0[:, y]))

    def agent_payoff(self, x, y, t=None) -> float:
        return float(np.dot(np.asarray(x, dtype=float), self.v0[:, y]))

    # -- ground-truth geometry (known v0 only) --------------------------

    def region_constraints(self, y: int, eps: float = 0.0):
        """Halfspace description A x >= b of K_y^eps within the simplex."""
        rows = [self.v0[:, y] - self.v0[:, yp]
                for yp in range(self.n) if yp != y]
        A = np.asarray(rows).reshape(self.n - 1, self.m_plus_1)
        b = np.full(self.n - 1, -eps)
        return A, b

    def in_region(self, y: int, x, eps: float = 0.0, tol: float = 0.0) -> bool:
        A, b = self.region_constraints(y, eps)
        return bool(np.all(A @ np.asarray(x, dtype=float) >= b - tol))


def mixed_payoffs(game: FiniteGame, x, y):
    """Expected payoff pair for commitment x and agent action y."""
    x = np.asarray(x, dtype=float)
    if not game.principal_valid(x):
        raise ValueError("x is not a distribution over the principal actions")
    return game.principal_payoff(x, y), game.agent_payoff(x, y)


def region_vertices(game: FiniteGame, y: int, eps: float = 0.0):
    """All vertices of K_y^eps, by enumerating active constraint sets."""
    if game.m_plus_1 > MAX_VERTEX_ACTIONS:
        raise ValueError("vertex enumeration supports at most "
                         f"{MAX_VERTEX_ACTIONS} principal actions")
    A, b = game.region_constraints(y, eps)
    # full system: region rows, nonnegativity rows, then the mass equality
    G = np.vstack([A, np.eye(game.m_plus_1)])
    h = np.concatenate([b, np.zeros(game.m_plus_1)])
    verts = []
    for active in itertools.combinations(range(len(G)), game.m):
        M = np.vstack([G[list(active)], np.ones(game.m_plus_1)])
        rhs = np.concatenate([h[list(active)], [1.0]])
        try:
            x = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError:
            continue
        if np.all(G @ x >= h - VERTEX_TOL):
            verts.append(np.clip(x, 0.0, None) / max(x.sum(), 1e-300))
    return verts


def multiple_lps(game: FiniteGame):
    """Global Stackelberg optimum from the known agent matrix.

    Solves max_x u(x, y) over each best-response region K_y (the optimum of
    a linear objective over a polytope sits at a vertex) and takes the best
    target, breaking exact payoff ties in the principal's favor trivially
    (equal values are interchangeable).
    """
    best_val, best_x, best_y = -np.inf, None, None
    for y in range(game.n):
        for x in region_vertices(game, y):
            val = game.principal_payoff(x, y)
            if val > best_val + VERTEX_TOL:
                best_val, best_x, best_y = val, x, y
    if best_x is None:
        raise ValueError("every best-response region is empty")
    return best_x, best_y, best_val
