"""Strategic classification games, agents, and learning policies."""

from .agents import (EpsStrategicAgent, StrategicAgent, agent_best_response,
                     eps_agent_response)
from .gdwog import (GDwoG, exploration_radius, gdwog_perturbed_bias_check,
                    project_ball, run_gdwog, smoothed_gradient, step_size)
from .model import LOSSES, AgentType, ClassificationGame, ell_hinge, ell_log
from .policies import (NonMyopicClassifierPolicy, best_fixed_classifier,
                       classifier_parameters, stackelberg_loss)

__all__ = [
    "AgentType", "ClassificationGame", "LOSSES", "ell_log", "ell_hinge",
    "agent_best_response", "eps_agent_response", "StrategicAgent",
    "EpsStrategicAgent", "GDwoG", "exploration_radius", "step_size",
    "project_ball", "run_gdwog", "smoothed_gradient",
    "gdwog_perturbed_bias_check", "NonMyopicClassifierPolicy",
    "classifier_parameters", "best_fixed_classifier", "stackelberg_loss",
]
