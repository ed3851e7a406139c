"""Water-filling solution of a security game's conservative optimum.

The unique conservative optimizer is pinned down by a single scalar w (the
attacker's payoff at the optimum): each coordinate is the least coverage
bringing that target's payoff down to w, and w is chosen so total coverage
exactly exhausts the budget (or hits the floor max_y v^y(1) with slack).
Curves are duck-typed: callables on [0,1] with an ``inverse`` method; exact
mode additionally needs linear coefficients ``a``/``b`` (v(x) = a - b*x).
"""

from __future__ import annotations

from fractions import Fraction

BISECT_TOL = 1e-12


def _coverage_at(curves, w):
    """Minimal per-target coverage putting every payoff <= w (clipped)."""
    out = []
    for c in curves:
        if c(0.0) <= w:
            out.append(0.0)
        else:
            out.append(min(max(c.inverse(w), 0.0), 1.0))
    return out


def water_filling_optimum(curves, space: str = "simplex", exact: bool = False):
    """Return (x*, w*) for strictly decreasing invertible payoff curves.

    space='simplex': coverage budget sum(x) <= 1 (downward-closed simplex).
    space='box': each coordinate free in [0,1]; the budget never binds, so
    w* = max_y v^y(1) and coordinates fill independently.
    """
    for c in curves:
        if not hasattr(c, "inverse"):
            raise ValueError("curve lacks an inverse; use the grid oracle instead")
        if not c(0.0) > c(1.0):
            raise ValueError("curve is not strictly decreasing; use the grid oracle")
    if space == "box":
        w = max(c(1.0) for c in curves)
        return _coverage_at(curves, w), w
    if space != "simplex":
        raise ValueError(f"unknown space: {space!r}")
    if exact:
        return _exact_linear(curves)

    floor = max(c(1.0) for c in curves)
    if sum(_coverage_at(curves, floor)) <= 1.0:
        return _coverage_at(curves, floor), floor
    lo, hi = floor, max(c(0.0) for c in curves)
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if sum(_coverage_at(curves, mid)) > 1.0:
            lo = mid
        else:
            hi = mid
    w = 0.5 * (lo + hi)
    return _coverage_at(curves, w), w


def _exact_linear(curves):
    """Exact rational water level for linear curves v(x) = a - b*x."""
    a = [Fraction(c.a) for c in curves]
    b = [Fraction(c.b) for c in curves]
    if any(bi <= 0 for bi in b):
        raise ValueError("linear curves must have positive slope magnitude")

    def coverage(w):
        return [min(max((ai - w) / bi, Fraction(0)), Fraction(1))
                for ai, bi in zip(a, b)]

    floor = max(ai - bi for ai, bi in zip(a, b))
    if sum(coverage(floor)) <= 1:
        x = coverage(floor)
        return [float(v) for v in x], float(floor)
    # total coverage is piecewise linear and decreasing in w; locate the
    # segment where it crosses the budget, then solve that segment exactly
    breaks = sorted(set(a) | {ai - bi for ai, bi in zip(a, b)} | {floor})
    lo = floor
    hi = breaks[-1]
    for bp in breaks:
        if bp <= lo:
            continue
        if sum(coverage(bp)) <= 1:
            hi = bp
            break
        lo = bp
    mid = (lo + hi) / 2  # active set is constant in the segment interior
    cov_mid = coverage(mid)
    active = [i for i in range(len(a)) if 0 < cov_mid[i] < 1]
    fixed = sum(cov_mid[i] for i in range(len(a)) if i not in active)
    # solve sum_{active} (a_i - w)/b_i = 1 - fixed
    num = sum(a[i] / b[i] for i in active) - (1 - fixed)
    den = sum(Fraction(1) / b[i] for i in active)
    w = num / den
    x = coverage(w)
    return [float(v) for v in x], float(w)
