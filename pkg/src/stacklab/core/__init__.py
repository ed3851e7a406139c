from .agents import (Agent, EpsAdversarialAgent, ExhaustiveDiscountedAgent,
                     MyopicAgent, ScriptedAgent, myopic_limit_agrees)
from .game import (Game, best_response_set, eps_adversarial_response,
                   exact_best_response)
from .regret import BatchedToDelayed, RegretLedger, stackelberg_regret
from .runner import ConstantPolicy, Policy, Transcript, episode_rngs, run_episode
from .screens import (InformationScreen, discounted_horizon, induced_epsilon,
                      required_delay)

__all__ = [
    "Agent", "EpsAdversarialAgent", "ExhaustiveDiscountedAgent", "MyopicAgent",
    "ScriptedAgent", "myopic_limit_agrees",
    "Game", "best_response_set", "eps_adversarial_response", "exact_best_response",
    "BatchedToDelayed", "RegretLedger", "stackelberg_regret",
    "ConstantPolicy", "Policy", "Transcript", "episode_rngs", "run_episode",
    "InformationScreen", "discounted_horizon", "induced_epsilon", "required_delay",
]
