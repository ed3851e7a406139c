"""Experiment configuration: YAML schema with strict key validation."""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml


class ConfigError(ValueError):
    """Raised with a dotted field path identifying the offending entry."""


TOP_KEYS = {"scenario", "T", "seeds", "out", "game", "algorithm", "agent",
            "accept"}
SCENARIOS = {"ssg", "demand", "classify", "finite"}
ALGO_KEYS = {"name", "params"}
AGENT_KEYS = {"name", "params"}
ACCEPT_KEYS = {"max_mean_regret"}


@dataclass
class ExperimentConfig:
    scenario: str
    T: int
    seeds: list
    game: dict
    algorithm: dict
    agent: dict
    out: str = "results"
    accept: dict = field(default_factory=dict)

    def label(self) -> str:
        return f"{self.scenario}-{self.algorithm['name']}"


def _require(cond, path, msg):
    if not cond:
        raise ConfigError(f"{path}: {msg}")


def validate_config(raw: dict) -> ExperimentConfig:
    _require(isinstance(raw, dict), "<root>", "config must be a mapping")
    unknown = set(raw) - TOP_KEYS
    _require(not unknown, "<root>", f"unknown keys: {sorted(unknown)}")
    for key in ("scenario", "T", "seeds", "game", "algorithm"):
        _require(key in raw, key, "required key missing")
    _require(raw["scenario"] in SCENARIOS, "scenario",
             f"must be one of {sorted(SCENARIOS)}")
    _require(isinstance(raw["T"], int) and raw["T"] >= 1, "T",
             "must be a positive integer")
    seeds = raw["seeds"]
    _require(isinstance(seeds, list) and seeds
             and all(isinstance(s, int) for s in seeds),
             "seeds", "must be a non-empty list of integers")
    _require(len(set(seeds)) == len(seeds), "seeds", "must be distinct")
    _require(isinstance(raw["game"], dict), "game", "must be a mapping")

    algo = dict(raw["algorithm"])
    _require(set(algo) <= ALGO_KEYS, "algorithm",
             f"unknown keys: {sorted(set(algo) - ALGO_KEYS)}")
    _require("name" in algo, "algorithm.name", "required key missing")
    algo.setdefault("params", {})
    _require(isinstance(algo["params"], dict), "algorithm.params",
             "must be a mapping")

    agent = dict(raw.get("agent", {"name": "myopic"}))
    _require(set(agent) <= AGENT_KEYS, "agent",
             f"unknown keys: {sorted(set(agent) - AGENT_KEYS)}")
    agent.setdefault("name", "myopic")
    agent.setdefault("params", {})

    accept = raw.get("accept", {})
    _require(isinstance(accept, dict) and set(accept) <= ACCEPT_KEYS,
             "accept", f"allowed keys: {sorted(ACCEPT_KEYS)}")

    return ExperimentConfig(scenario=raw["scenario"], T=raw["T"], seeds=seeds,
                            game=raw["game"], algorithm=algo, agent=agent,
                            out=str(raw.get("out", "results")), accept=accept)


def load_config(path: str) -> ExperimentConfig:
    with open(path) as fh:
        try:
            raw = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: not valid YAML: {exc}") from exc
    return validate_config(raw)
