"""Membership-query machinery for finite games.

Best-response feedback acts as a membership oracle for a target's
best-response region.  The conservative oracle re-queries a cloud of
perturbed points so that a True answer certifies robust membership; the
optimizer is hit-and-run simulated annealing over the membership-defined
body (a stand-in for cutting-plane methods, validated against the exact
vertex solver at desk scale).

All query-issuing routines are generators that yield principal strategies
and receive agent responses, so the same code runs standalone against a
callable oracle or inside a policy where every query costs a round.
"""

from __future__ import annotations

import math

import numpy as np

from .game import FiniteGame

HR_STEPS_PER_TEMP = 4        # hit-and-run chords per temperature stage
ANNEAL_BUDGET_FACTOR = 50    # times m^2 log(1/delta): total oracle-call budget
SCAN_ANGLES = 8              # coarse boundary samples for the planar path
SCAN_BITS = 8                # chord bits during the coarse scan
GOLDEN_ITERS = 31            # golden-section refinements of the best angle
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _chord_bisections(R: float, delta: float) -> int:
    """Endpoint resolution: enough bits to localize within ~delta."""
    bits = math.ceil(math.log2(4 * R / max(delta, 1e-12)))
    return min(max(bits, 10), 40)


def probe_count(m: int, T: int) -> int:
    return math.ceil(2 * math.sqrt(m) * math.log(T))


def probe_radius(L_cond: float, eps: float, m: int) -> float:
    return 2 * L_cond * eps * math.sqrt(m)


def membership_gen(game: FiniteGame, y: int, x, T: int, eps: float, rng):
    """Conservative membership check for K_y at x (generator).

    Queries ceil(2 sqrt(m) log T) points perturbed by radius
    2 * L_cond * eps * sqrt(m) in the embedded metric; True only if every
    response equals y.
    """
    z = game.embed(x)
    rad = probe_radius(game.L_cond, eps, game.m)
    for _ in range(probe_count(game.m, T)):
        s = rng.standard_normal(game.m)
        s /= max(np.linalg.norm(s), 1e-300)
        w = game.project_simplex(game.unembed(z + rad * s))
        resp = yield w
        if resp != y:
            return False
    return True


def _drive(gen, oracle):
    """Run a query generator against a callable oracle."""
    try:
        q = next(gen)
        while True:
            q = gen.send(oracle(q))
    except StopIteration as stop:
        return stop.value


def conservative_membership(oracle, game: FiniteGame, y: int, x, T: int,
                            eps: float, rng) -> bool:
    return _drive(membership_gen(game, y, x, T, eps, rng), oracle)


class InfeasibleStartError(ValueError):
    """The optimizer's initial point failed its own membership check."""


def anneal_budget(m: int, delta: float) -> int:
    return math.ceil(ANNEAL_BUDGET_FACTOR * m ** 2 * math.log(1.0 / delta))


def lin_opt_gen(objective, mem_factory, z0, r: float, R: float, delta: float,
                m: int, rng):
    """Minimize an affine objective over a membership-defined body (generator).

    ``mem_factory(z)`` returns a membership sub-generator for the point z in
    embedded coordinates.  The budget counts membership-oracle calls.

    In one dimension the feasible set is a chord and the optimum sits at an
    endpoint, found by bisection.  In two dimensions the boundary is a
    star-shaped closed curve around the interior start point, along which an
    affine objective is unimodal, so a coarse angular scan plus golden-section
    refinement converges geometrically.  Higher dimensions fall back to
    hit-and-run simulated annealing: each step picks a random direction,
    bisects for the feasible chord, and samples a point on it with density
    tilted toward lower objective values (degenerating to the better endpoint
    once the temperature schedule bottoms out).
    """
    z0 = np.asarray(z0, dtype=float)
    budget = anneal_budget(m, delta)
    spent = [0]

    def check(z):
        spent[0] += 1
        gen = mem_factory(z)
        try:
            q = next(gen)
            while True:
                resp = yield q
                q = gen.send(resp)
        except StopIteration as stop:
            return stop.value

    bisections = _chord_bisections(R, delta)

    def extent(z, d, bits=None):
        """Largest feasible step from z along d, by doubling then bisection."""
        step = r
        if np.linalg.norm(z + step * d) > R or not (yield from check(z + step * d)):
            lo_s, hi_s = 0.0, step
        else:
            lo_s = step
            while True:
                step *= 2.0
                if step > 2 * R or np.linalg.norm(z + step * d) > R \
                        or not (yield from check(z + step * d)):
                    hi_s = step
                    break
                lo_s = step
        for _ in range(bisections if bits is None else bits):
            mid = 0.5 * (lo_s + hi_s)
            if np.linalg.norm(z + mid * d) <= R and (yield from check(z + mid * d)):
                lo_s = mid
            else:
                hi_s = mid
        return lo_s

    ok = yield from check(z0)
    if not ok:
        raise InfeasibleStartError("initial point rejected by the membership "
                                   "oracle; the sampling stage supplied a bad "
                                   "starting point")
    best_z, best_f = z0.copy(), float(objective(z0))

    if m == 1:
        for sign in (1.0, -1.0):
            d = np.array([sign])
            t = yield from extent(z0, d)
            z = z0 + t * d
            f = float(objective(z))
            if f < best_f:
                best_z, best_f = z, f
        return best_z, best_f

    if m == 2:
        def boundary_eval(theta, bits):
            d = np.array([math.cos(theta), math.sin(theta)])
            t = yield from extent(z0, d, bits)
            z = z0 + t * d
            return float(objective(z)), z

        thetas = [2.0 * math.pi * i / SCAN_ANGLES for i in range(SCAN_ANGLES)]
        coarse = []
        for theta in thetas:
            f, z = yield from boundary_eval(theta, SCAN_BITS)
            coarse.append(f)
            if f < best_f:
                best_z, best_f = z, f
        i = int(np.argmin(coarse))
        # the boundary objective is unimodal, so the coarse minimum's
        # neighbours bracket the true minimizing angle
        a = thetas[i] - 2.0 * math.pi / SCAN_ANGLES
        b = thetas[i] + 2.0 * math.pi / SCAN_ANGLES
        c = b - GOLDEN * (b - a)
        e = a + GOLDEN * (b - a)
        f_c, z_c = yield from boundary_eval(c, bisections)
        f_e, z_e = yield from boundary_eval(e, bisections)
        for _ in range(GOLDEN_ITERS):
            if f_c < best_f:
                best_z, best_f = z_c, f_c
            if f_e < best_f:
                best_z, best_f = z_e, f_e
            if spent[0] >= budget:
                return best_z, best_f
            if f_c < f_e:
                b, e, f_e, z_e = e, c, f_c, z_c
                c = b - GOLDEN * (b - a)
                f_c, z_c = yield from boundary_eval(c, bisections)
            else:
                a, c, f_c, z_c = c, e, f_e, z_e
                e = a + GOLDEN * (b - a)
                f_e, z_e = yield from boundary_eval(e, bisections)
        for f, z in ((f_c, z_c), (f_e, z_e)):
            if f < best_f:
                best_z, best_f = z, f
        return best_z, best_f
    cur_z, cur_f = best_z.copy(), best_f
    temp = max(abs(best_f), 1.0)
    temp_floor = delta / (2.0 * m)
    chords = 0
    while spent[0] < budget:
        d = rng.standard_normal(m)
        d /= max(np.linalg.norm(d), 1e-300)
        hi = yield from extent(cur_z, d)
        lo = -(yield from extent(cur_z, -d))
        if hi - lo < 1e-14:
            continue
        f_lo = float(objective(cur_z + lo * d))
        f_hi = float(objective(cur_z + hi * d))
        # the feasible endpoints are legitimate candidates in their own right
        for lam_end, f_end in ((lo, f_lo), (hi, f_hi)):
            if f_end < best_f:
                best_z, best_f = cur_z + lam_end * d, f_end
        lam = _tilted_chord_sample(lo, hi, f_lo, f_hi, temp, rng)
        cur_z = cur_z + lam * d
        cur_f = float(objective(cur_z))
        chords += 1
        if chords % HR_STEPS_PER_TEMP == 0:
            temp = max(temp / 2.0, temp_floor)
        if cur_f < best_f:
            best_z, best_f = cur_z.copy(), cur_f
    return best_z, best_f


def _tilted_chord_sample(lo, hi, f_lo, f_hi, temp, rng):
    """Sample the chord with density proportional to exp(-f/temp)."""
    g = (f_hi - f_lo) / (hi - lo)
    c = max(min(-g * (hi - lo) / temp, 50.0), -50.0)
    u = rng.random()
    if abs(c) < 1e-9:
        return lo + u * (hi - lo)
    return lo + (hi - lo) * math.log1p(u * math.expm1(c)) / c


def membership_lin_opt(objective, mem_oracle, z0, r: float, R: float,
                       delta: float, m: int, rng):
    """Standalone driver: ``mem_oracle`` is a callable z -> bool."""

    def factory(z):
        return _const_gen(bool(mem_oracle(z)))

    gen = lin_opt_gen(objective, factory, z0, r, R, delta, m, rng)
    return _drive(gen, lambda q: q)  # no real queries are emitted


def _const_gen(val):
    """A query generator that asks nothing and returns ``val``."""
    return val
    yield  # pragma: no cover
