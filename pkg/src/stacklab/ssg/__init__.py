from .centroid import EmptyRegionError, region_centroid
from .clinch import (QueryBudgetError, centroid_tolerance, clinch,
                     clinch_generator, clinch_simplex, conserve_mass,
                     default_oracle_accuracy, exact_round, exact_search,
                     perturb, perturb_epsilon, simplex_oracle_accuracy)
from .curves import LinearCurve, LogisticCurve, PiecewiseLinearCurve, curve_from_config
from .game import SecurityGame, compute_width
from .policies import BatchedClinchPolicy, MultiThreadedClinchPolicy

__all__ = [
    "BatchedClinchPolicy", "EmptyRegionError", "LinearCurve", "LogisticCurve",
    "MultiThreadedClinchPolicy", "PiecewiseLinearCurve", "QueryBudgetError",
    "SecurityGame", "centroid_tolerance", "clinch", "clinch_generator",
    "clinch_simplex", "compute_width", "conserve_mass", "curve_from_config",
    "default_oracle_accuracy", "exact_round", "exact_search", "perturb",
    "perturb_epsilon", "region_centroid", "simplex_oracle_accuracy",
]
