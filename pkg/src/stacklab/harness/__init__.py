"""Experiment harness: config-driven sweeps, CLI, fits, acceptance checks."""

from .builders import benchmark_value, build_agent, build_game, build_policy
from .config import ConfigError, ExperimentConfig, load_config, validate_config
from .fit import fit_scaling
from .sweep import aggregate, recompute_totals, run_one_episode, run_sweep

__all__ = [
    "ConfigError", "ExperimentConfig", "aggregate", "benchmark_value",
    "build_agent", "build_game", "build_policy", "fit_scaling",
    "load_config", "recompute_totals", "run_one_episode", "run_sweep",
    "validate_config",
]
