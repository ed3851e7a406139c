"""Finite Stackelberg games: mixed strategies, exact solver, robust policy."""

from .game import (FiniteGame, mixed_payoffs, multiple_lps, region_vertices)
from .hausdorff import hausdorff_estimate, project_polytope
from .membership import (InfeasibleStartError, anneal_budget,
                         conservative_membership, membership_gen,
                         membership_lin_opt, probe_count, probe_radius)
from .policy import NoisyStackPolicy, ball_volume, noisy_stack_parameters

__all__ = [
    "FiniteGame", "mixed_payoffs", "multiple_lps", "region_vertices",
    "hausdorff_estimate", "project_polytope", "InfeasibleStartError",
    "anneal_budget", "conservative_membership", "membership_gen",
    "membership_lin_opt", "probe_count", "probe_radius", "NoisyStackPolicy",
    "ball_volume", "noisy_stack_parameters",
]
