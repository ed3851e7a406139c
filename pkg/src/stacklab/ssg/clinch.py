"""Cutting-plane search for the conservative optimum of a security game.

The search is written as a generator that yields coverage queries and
receives attacked targets, so interactive drivers (the batched and
multi-threaded policies) can advance it one query at a time.  ``clinch``
drives the generator against a plain oracle callback.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .centroid import EmptyRegionError, N_CENT_DEFAULT, region_centroid
from .game import SecurityGame

LOOP_GUARD_SAFETY = 4
MAX_EXACT_BITS = 48


class QueryBudgetError(RuntimeError):
    """Search exceeded its query budget: lying oracle or regularity violation."""


def default_oracle_accuracy(game: SecurityGame, delta: float) -> float:
    return delta / (33 * game.C ** 3 * game.n)


def centroid_tolerance(lam: float) -> float:
    return min(lam / 8, 1e-3)


def clinch_generator(game: SecurityGame, delta: float, lower=None, upper=None,
                     eps=None, rng=None, n_cent: int = N_CENT_DEFAULT,
                     stats: dict = None):
    """Yield queries, receive best-response targets, return the estimate.

    Outer loop: query the centroid of the active region, raise the attacked
    target's lower bound by its queried coverage less the oracle slack, and
    lock coordinates whose remaining extent falls below the flattening
    threshold.  Then a per-coordinate binary search strips wasted coverage.
    The returned point is within delta of the conservative optimizer when
    the oracle is eps-accurate with eps <= delta / (33 C^3 n).
    """
    n, C = game.n, game.C
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must lie in (0, 1]")
    lower = np.zeros(n) if lower is None else np.asarray(lower, dtype=float).copy()
    upper = np.ones(n) if upper is None else np.asarray(upper, dtype=float).copy()
    np.clip(lower, 0.0, 1.0, out=lower)
    np.clip(upper, 0.0, 1.0, out=upper)
    if eps is None:
        eps = default_oracle_accuracy(game, delta)
    if rng is None:
        rng = np.random.default_rng(0)
    if stats is None:
        stats = {}
    lam = delta / (4 * C ** 2)
    # Monte Carlo centroid error is folded into the oracle-error budget
    # (box centroids are exact, so no extra slack there)
    tau = centroid_tolerance(lam) if game.space == "simplex" else 0.0
    slack = C * (eps + tau)
    alpha = max(float((upper - lower).max()), lam)
    guard = LOOP_GUARD_SAFETY * math.ceil(
        15 * n * math.log(max(2 * alpha * n / lam, math.e)))
    stats.update({"queries": 0, "search_queries": 0, "lower_history": []})

    active = set(range(n))
    y = 0
    x = lower.copy()
    iters = 0
    while y in active:
        iters += 1
        if iters > guard:
            raise QueryBudgetError(
                f"search exceeded {guard} queries; the oracle is inconsistent "
                "or the game violates its regularity bounds")
        for yp in list(active):
            probe = lower.copy()
            probe[yp] += lam
            if probe[yp] > upper[yp] or not game.principal_valid(probe):
                active.discard(yp)
                upper[yp] = lower[yp]
        if np.any(lower > upper + 1e-12) or not game.principal_valid(
                np.minimum(lower, upper)):
            raise EmptyRegionError("bound updates made the region infeasible")
        x = region_centroid(game.space, lower, upper, rng, n_cent)
        y = yield x
        stats["queries"] += 1
        stats["search_queries"] += 1
        lower[y] = max(lower[y], x[y] - slack)
        stats["lower_history"].append(lower.copy())

    # strip wasted coverage coordinate by coordinate
    x_hat = x.copy()
    for y in range(n):
        lo, hi = lower[y], x[y]
        while hi - lo >= lam:
            mid = 0.5 * (lo + hi)
            probe = x.copy()
            probe[y] = mid
            resp = yield probe
            stats["queries"] += 1
            if resp == y:
                lo = mid
            else:
                hi = mid
        x_hat[y] = lo
    stats["lower"] = lower
    stats["upper"] = upper
    return x_hat


def _drive(gen, oracle):
    try:
        x = next(gen)
        while True:
            x = gen.send(oracle(x))
    except StopIteration as stop:
        return stop.value


def clinch(oracle, game: SecurityGame, delta: float, lower=None, upper=None,
           eps=None, rng=None, n_cent: int = N_CENT_DEFAULT, stats: dict = None):
    """Run the full search against an eps-approximate best-response oracle."""
    if stats is None:
        stats = {}
    gen = clinch_generator(game, delta, lower, upper, eps, rng, n_cent, stats)
    x_hat = _drive(gen, oracle)
    return x_hat, stats


def conserve_mass(oracle, game: SecurityGame, x, lam: float, lower):
    """Strip coverage from x until every funded target is a near best response."""
    x = np.asarray(x, dtype=float)
    lower = np.asarray(lower, dtype=float)
    x_hat = x.copy()
    for y in range(game.n):
        lo, hi = lower[y], x[y]
        while hi - lo >= lam:
            mid = 0.5 * (lo + hi)
            probe = x.copy()
            probe[y] = mid
            if oracle(probe) == y:
                lo = mid
            else:
                hi = mid
        x_hat[y] = lo
    return x_hat


def perturb(x_hat, lam: float, game: SecurityGame) -> np.ndarray:
    """Shift weight off the best heavy target to make its response unique."""
    x_hat = np.asarray(x_hat, dtype=float)
    heavy = [y for y in range(game.n) if x_hat[y] > game.W / 2]
    if not heavy:
        raise ValueError("no target carries coverage above W/2; the input "
                         "is not a valid near-optimal estimate")
    y_hat = max(heavy, key=lambda y: game.principal_payoff(x_hat, y))
    x_tilde = x_hat.copy()
    x_tilde[y_hat] = max(x_tilde[y_hat] - game.W * lam / 2, 0.0)
    return x_tilde


def perturb_epsilon(game: SecurityGame, lam: float) -> float:
    """Agent slack under which the perturbed strategy's response is unique."""
    return game.W * lam / (200 * game.C ** 5 * game.n)


def clinch_simplex(oracle, game: SecurityGame, lam: float, stats: dict = None):
    """Residual-mass search specialized to the full probability simplex.

    Spreads the unallocated mass evenly each round and clinches the attacked
    coordinate; the residual decays by (1 - 1/n) per iteration.  Returns the
    perturbed lambda-approximate equilibrium strategy.
    """
    if game.space != "simplex":
        raise ValueError("simplex search requires a simplex strategy space")
    n, C, W = game.n, game.C, game.W
    delta = W * lam / (6 * C ** 2)
    iters = math.ceil(n * math.log(4 / delta))
    lower = np.zeros(n)
    if stats is None:
        stats = {}
    stats.update({"queries": 0, "iterations": iters})
    for _ in range(iters):
        x = lower + (1.0 - lower.sum()) / n
        y = oracle(x)
        stats["queries"] += 1
        lower[y] = x[y]
    x_hat = lower / lower.sum()
    return perturb(x_hat, lam, game)


def simplex_oracle_accuracy(game: SecurityGame, lam: float) -> float:
    return game.W * lam / (12 * game.C ** 3 * game.n)


def exact_round(x_hat, L_bits: int, n: int):
    """Snap an estimate to the dyadic grid 2^{-8 L n} as exact rationals."""
    if 8 * L_bits * n > MAX_EXACT_BITS:
        raise ValueError("required precision exceeds the dyadic guard; "
                         "exact arithmetic at this size is out of scope")
    q = 1 << (8 * L_bits * n)
    return [Fraction(round(float(v) * q), q) for v in np.asarray(x_hat)]


def exact_search(oracle, game: SecurityGame, L_bits: int, rng=None):
    """Recover the exact rational optimizer of a bounded-bit-precision game."""
    if 8 * L_bits * game.n > MAX_EXACT_BITS:
        raise ValueError("required precision exceeds the dyadic guard; "
                         "exact arithmetic at this size is out of scope")
    delta = (1.0 / 3.0) * 2.0 ** (-8 * L_bits * game.n)
    x_hat, _ = clinch(oracle, game, delta, rng=rng)
    return exact_round(x_hat, L_bits, game.n)
