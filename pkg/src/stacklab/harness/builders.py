"""Construct games, policies, agents, and benchmarks from config blocks."""

from __future__ import annotations

import numpy as np

from ..classify import (ClassificationGame, EpsStrategicAgent,
                        NonMyopicClassifierPolicy, StrategicAgent)
from ..core import ConstantPolicy, EpsAdversarialAgent, MyopicAgent
from ..core.game import exact_best_response
from ..demand import (BatchedBinarySearchPolicy, FixedValueModel,
                      StochasticValueModel, UnknownGammaPricingPolicy,
                      demand_pricing_policy, linear_demand_model)
from ..finite import FiniteGame, NoisyStackPolicy, multiple_lps
from ..oracles import water_filling_optimum
from ..ssg import SecurityGame
from ..ssg.policies import BatchedClinchPolicy, MultiThreadedClinchPolicy
from .config import ConfigError, ExperimentConfig


def build_game(cfg: ExperimentConfig):
    g = cfg.game
    if cfg.scenario == "ssg":
        return SecurityGame.from_config(g)
    if cfg.scenario == "demand":
        model = g.get("model", "linear")
        if model == "fixed":
            return FixedValueModel(g["v"])
        if model == "linear":
            return linear_demand_model()
        raise ConfigError(f"game.model: unknown demand model {model!r}")
    if cfg.scenario == "classify":
        return ClassificationGame(d=g["d"], R=g.get("R", 1.0),
                                  alpha=g.get("alpha", 1.0),
                                  loss=g.get("loss", "logistic"),
                                  neg_prob=g.get("neg_prob", 0.5))
    if cfg.scenario == "finite":
        return FiniteGame(g["u0"], g["v0"], r=g.get("r", 0.05),
                          L_cond=g.get("L_cond", 10.0))
    raise ConfigError(f"scenario: unknown scenario {cfg.scenario!r}")


def build_policy(cfg: ExperimentConfig, game):
    name = cfg.algorithm["name"]
    p = cfg.algorithm["params"]
    T = cfg.T
    if name == "constant":
        return ConstantPolicy(np.asarray(p["x"], dtype=float)
                              if isinstance(p["x"], list) else p["x"])
    if name == "batched_clinch":
        return BatchedClinchPolicy(game, T, p["gamma"],
                                   n_cent=p.get("n_cent", 512))
    if name == "multi_threaded_clinch":
        return MultiThreadedClinchPolicy(game, T, n_cent=p.get("n_cent", 512))
    if name == "batched_binary_search":
        return BatchedBinarySearchPolicy(T, p["gamma"])
    if name == "se_delayed_pricing":
        return demand_pricing_policy(game, p["gamma"], T)
    if name == "unknown_gamma_pricing":
        K = p.get("K", 8)
        prices = [(i + 1) / K for i in range(K)]
        return UnknownGammaPricingPolicy(prices, T)
    if name == "nonmyopic_classifier":
        return NonMyopicClassifierPolicy(game, T, p["gamma"])
    if name == "noisy_stack":
        return NoisyStackPolicy(game, T)
    raise ConfigError(f"algorithm.name: unknown algorithm {name!r}")


def build_agent(cfg: ExperimentConfig, game, policy):
    name = cfg.agent["name"]
    p = dict(cfg.agent["params"])
    if "eps" in p and p["eps"] == "induced":
        # couple the agent's slack to the policy's own target accuracy
        p["eps"] = getattr(policy, "eps_target", getattr(policy, "eps", 0.0))
    if cfg.scenario == "classify":
        if name == "myopic":
            return StrategicAgent()
        if name == "eps_adversarial":
            return EpsStrategicAgent(p["eps"], p.get("adversary", "loss_max"))
    else:
        if name == "myopic":
            return MyopicAgent()
        if name == "eps_adversarial":
            return EpsAdversarialAgent(p["eps"],
                                       p.get("tie_mode", "worst_for_principal"))
    raise ConfigError(f"agent.name: unknown agent {name!r} for scenario "
                      f"{cfg.scenario!r}")


def benchmark_value(cfg: ExperimentConfig, game):
    """Per-round benchmark payoff and whether payoffs are stochastic."""
    if cfg.scenario == "ssg":
        x_star, _ = water_filling_optimum(game.v_curves, space=game.space)
        x_star = np.asarray(x_star, dtype=float)
        y_star = exact_best_response(game, x_star)
        return game.principal_payoff(x_star, y_star), False
    if cfg.scenario == "demand":
        return game.benchmark(), isinstance(game, StochasticValueModel)
    if cfg.scenario == "finite":
        return multiple_lps(game)[2], False
    if cfg.scenario == "classify":
        # benchmark depends on the realized type sequence; computed per
        # episode by the sweep runner
        return None, True
    raise ConfigError(f"scenario: unknown scenario {cfg.scenario!r}")
