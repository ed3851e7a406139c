"""Information screens: mechanical delay/batching of agent feedback.

A screen restricts which transcript prefix a principal policy may condition
on.  The episode runner enforces screens by withholding feedback; policies
never see feedback earlier than the screen allows, so the delay invariant
holds by construction rather than by trusting the policy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional


@dataclass(frozen=True)
class InformationScreen:
    """kind is one of 'none', 'delay', 'batch', 'dynamic'.

    Under Delay(D) the action at round t may depend on feedback through
    round t - D.  Under Batch(B), through round B * floor((t-1)/B).
    'dynamic' defers to a policy-supplied release bound (used by policies
    whose effective batch length grows over epochs); the runner still does
    the withholding mechanically.
    """

    kind: str = "none"
    D: int = 0
    B: int = 0
    release_fn: Optional[Callable[[int], int]] = None

    @staticmethod
    def none() -> "InformationScreen":
        return InformationScreen("none")

    @staticmethod
    def delay(D: int) -> "InformationScreen":
        if D < 0:
            raise ValueError("delay must be >= 0")
        return InformationScreen("delay", D=D)

    @staticmethod
    def batch(B: int) -> "InformationScreen":
        if B < 1:
            raise ValueError("batch size must be >= 1")
        return InformationScreen("batch", B=B)

    @staticmethod
    def dynamic(release_fn: Callable[[int], int]) -> "InformationScreen":
        return InformationScreen("dynamic", release_fn=release_fn)

    def release_bound(self, t: int) -> int:
        """Latest round whose feedback may influence the action at round t."""
        if self.kind == "none":
            return t - 1
        if self.kind == "delay":
            return t - self.D
        if self.kind == "batch":
            return self.B * ((t - 1) // self.B)
        if self.kind == "dynamic":
            bound = self.release_fn(t)
            return min(bound, t - 1)
        raise ValueError(f"unknown screen kind: {self.kind!r}")


def discounted_horizon(gamma: float) -> float:
    """T_gamma = 1 / (1 - gamma), the agent's effective lookahead."""
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    return 1.0 / (1.0 - gamma)


def induced_epsilon(gamma: float, D: int) -> float:
    """Best-response slack a D-delayed policy induces in a gamma-discounter.

    A gamma-discounting agent facing a D-delayed principal gains at most
    gamma^D / (1 - gamma) from deviating, so its play stays within that
    slack of a myopic best response.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if D < 0:
        raise ValueError("D must be >= 0")
    return gamma ** D / (1.0 - gamma)


def required_delay(gamma: float, eps: float) -> int:
    """Smallest delay of the form ceil(T_gamma * ln(T_gamma / eps)).

    Natural logarithm throughout (bounds are asymptotic; the base only
    rescales constants).  Round-trips with induced_epsilon: the returned D
    satisfies induced_epsilon(gamma, D) <= eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    tg = discounted_horizon(gamma)
    D = math.ceil(tg * math.log(tg / eps))
    return max(D, 0)
