from .bandit import ArmState, eliminate, run_se_delayed, update_confidence_bounds
from .model import (FixedValueModel, StochasticValueModel, linear_demand_model,
                    response_envelope)
from .policies import (BatchedBinarySearchPolicy, SEDelayedPricingPolicy,
                       UnknownGammaPricingPolicy, demand_pricing_parameters,
                       demand_pricing_policy)

__all__ = [
    "ArmState", "BatchedBinarySearchPolicy", "FixedValueModel",
    "SEDelayedPricingPolicy", "StochasticValueModel",
    "UnknownGammaPricingPolicy", "demand_pricing_parameters",
    "demand_pricing_policy", "eliminate", "linear_demand_model",
    "response_envelope", "run_se_delayed", "update_confidence_bounds",
]
