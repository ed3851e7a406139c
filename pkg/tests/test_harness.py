"""Harness: config schema, builders, sweeps, CLI, scaling fits."""

import json
import math
import os

import numpy as np
import pytest
import yaml

from stacklab.harness.builders import (benchmark_value, build_agent,
                                       build_game, build_policy)
from stacklab.harness.cli import main
from stacklab.harness.config import (ConfigError, load_config,
                                     validate_config)
from stacklab.harness.fit import fit_scaling
from stacklab.harness.sweep import (aggregate, recompute_totals,
                                    run_one_episode, run_sweep)

SSG_GAME = {"space": "simplex", "targets": [
    {"u": {"kind": "linear", "intercept": 0.2, "slope": 0.7},
     "v": {"kind": "linear", "intercept": 0.9, "slope": -0.8}},
    {"u": {"kind": "linear", "intercept": 0.1, "slope": 0.8},
     "v": {"kind": "linear", "intercept": 0.8, "slope": -0.7}}]}


def base_config(**over):
    raw = {"scenario": "ssg", "T": 200, "seeds": [0, 1], "game": SSG_GAME,
           "algorithm": {"name": "constant", "params": {"x": [0.4, 0.3]}},
           "agent": {"name": "myopic"}}
    raw.update(over)
    return raw


class TestConfig:
    def test_valid_config_roundtrip(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text(yaml.safe_dump(base_config()))
        cfg = load_config(str(path))
        assert cfg.scenario == "ssg"
        assert cfg.T == 200
        assert cfg.agent["params"] == {}
        assert cfg.label() == "ssg-constant"

    @pytest.mark.parametrize("mutation,field", [
        ({"scenario": "warfare"}, "scenario"),
        ({"T": 0}, "T"),
        ({"T": "many"}, "T"),
        ({"seeds": []}, "seeds"),
        ({"seeds": [1, 1]}, "seeds"),
        ({"bogus_key": 1}, "unknown keys"),
        ({"accept": {"min_mean_regret": 1}}, "accept"),
        ({"algorithm": {"params": {}}}, "algorithm.name"),
    ])
    def test_invalid_configs_name_the_field(self, mutation, field):
        with pytest.raises(ConfigError, match=field.split(".")[0]):
            validate_config(base_config(**mutation))

    def test_missing_required_key(self):
        raw = base_config()
        del raw["game"]
        with pytest.raises(ConfigError, match="game"):
            validate_config(raw)

    def test_agent_defaults_to_myopic(self):
        raw = base_config()
        del raw["agent"]
        assert validate_config(raw).agent["name"] == "myopic"

    def test_invalid_yaml_is_config_error(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("scenario: [unclosed")
        with pytest.raises(ConfigError, match="YAML"):
            load_config(str(path))


class TestBuilders:
    def test_build_all_scenarios(self):
        ssg = validate_config(base_config())
        fin = validate_config(base_config(
            scenario="finite",
            game={"u0": [[0.9, 0.1], [0.2, 0.8]],
                  "v0": [[0.3, 0.7], [0.8, 0.2]]},
            algorithm={"name": "noisy_stack"}))
        dem = validate_config(base_config(
            scenario="demand", game={"model": "fixed", "v": 0.6},
            algorithm={"name": "batched_binary_search",
                       "params": {"gamma": 0.8}}))
        cls = validate_config(base_config(
            scenario="classify", game={"d": 2},
            algorithm={"name": "nonmyopic_classifier",
                       "params": {"gamma": 0.8}}))
        for cfg in (ssg, fin, dem, cls):
            game = build_game(cfg)
            policy = build_policy(cfg, game)
            agent = build_agent(cfg, game, policy)
            assert policy is not None and agent is not None

    def test_unknown_algorithm_is_config_error(self):
        cfg = validate_config(base_config(algorithm={"name": "alchemy"}))
        with pytest.raises(ConfigError, match="algorithm.name"):
            build_policy(cfg, build_game(cfg))

    def test_induced_eps_binds_agent_to_policy(self):
        cfg = validate_config(base_config(
            scenario="classify", game={"d": 2},
            algorithm={"name": "nonmyopic_classifier",
                       "params": {"gamma": 0.8}},
            agent={"name": "eps_adversarial", "params": {"eps": "induced"}}))
        game = build_game(cfg)
        policy = build_policy(cfg, game)
        agent = build_agent(cfg, game, policy)
        assert agent.eps == policy.eps_target

    def test_ssg_benchmark_is_deterministic_payoff(self):
        cfg = validate_config(base_config())
        game = build_game(cfg)
        bench, stochastic = benchmark_value(cfg, game)
        assert 0.0 <= bench <= 1.0
        assert not stochastic


class TestSweep:
    def test_byte_identical_reruns(self, tmp_path):
        cfg = validate_config(base_config())
        r1 = run_sweep(cfg, str(tmp_path / "a"))
        r2 = run_sweep(cfg, str(tmp_path / "b"))
        for name in ("seed0.csv", "seed1.csv", "report.json"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes()
        assert r1["aggregate"] == r2["aggregate"]

    def test_parallel_matches_serial(self, tmp_path):
        cfg = validate_config(base_config())
        run_sweep(cfg, str(tmp_path / "ser"), parallel=1)
        run_sweep(cfg, str(tmp_path / "par"), parallel=2)
        for name in ("seed0.csv", "seed1.csv", "report.json"):
            assert (tmp_path / "ser" / name).read_bytes() == \
                (tmp_path / "par" / name).read_bytes()

    def test_recompute_totals_matches_report(self, tmp_path):
        cfg = validate_config(base_config())
        report = run_sweep(cfg, str(tmp_path / "out"))
        totals = recompute_totals(str(tmp_path / "out"), report)
        stored = [ep["total_regret"] for ep in report["episodes"]]
        assert totals == pytest.approx(stored, abs=1e-9)

    def test_aggregate_statistics(self):
        eps = [{"total_regret": 1.0}, {"total_regret": 3.0}]
        agg = aggregate(eps)
        assert agg["mean_regret"] == 2.0
        assert agg["median_regret"] == 2.0
        assert agg["ci99_low"] < 2.0 < agg["ci99_high"]

    def test_accept_rule_enforced(self, tmp_path):
        cfg = validate_config(base_config(
            accept={"max_mean_regret": 1e-9}))
        report = run_sweep(cfg, str(tmp_path / "out"))
        assert not report["accept"]["passed"]

    def test_episode_csv_has_one_row_per_round(self):
        cfg = validate_config(base_config(T=37))
        ep = run_one_episode(cfg, seed=5)
        assert len(ep["_csv_text"].splitlines()) == 38


class TestCli:
    def _write_cfg(self, tmp_path, **over):
        raw = base_config(**over)
        raw["out"] = str(tmp_path / "results")
        path = tmp_path / "cfg.yaml"
        path.write_text(yaml.safe_dump(raw))
        return str(path)

    def test_run_and_report_roundtrip(self, tmp_path, capsys):
        cfg = self._write_cfg(tmp_path)
        assert main(["run", "--config", cfg]) == 0
        out = capsys.readouterr().out
        assert "mean regret" in out
        assert main(["report", "--in", str(tmp_path / "results")]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["n_seeds"] == 2

    def test_seed_override(self, tmp_path):
        cfg = self._write_cfg(tmp_path)
        assert main(["run", "--config", cfg, "--seeds", "7"]) == 0
        files = os.listdir(tmp_path / "results")
        assert "seed7.csv" in files and "seed0.csv" not in files

    def test_failing_accept_rule_exits_2(self, tmp_path):
        cfg = self._write_cfg(tmp_path, accept={"max_mean_regret": 1e-9})
        assert main(["run", "--config", cfg]) == 2

    def test_schema_violation_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump(base_config(scenario="warfare")))
        assert main(["run", "--config", str(path)]) == 1
        assert "scenario" in capsys.readouterr().err

    def test_missing_config_and_suite(self, capsys):
        assert main(["run"]) == 1
        assert "required" in capsys.readouterr().err

    def test_unknown_suite_exits_1(self, capsys):
        assert main(["run", "--suite", "regression"]) == 1

    def test_tampered_artifacts_fail_report(self, tmp_path, capsys):
        cfg = self._write_cfg(tmp_path)
        main(["run", "--config", cfg])
        csv_path = tmp_path / "results" / "seed0.csv"
        lines = csv_path.read_text().splitlines()
        cols = lines[-1].split(",")
        cols[5] = repr(float(cols[5]) + 1.0)  # corrupt cumulative regret
        lines[-1] = ",".join(cols)
        csv_path.write_text("\n".join(lines) + "\n")
        assert main(["report", "--in", str(tmp_path / "results")]) == 1
        assert "diverge" in capsys.readouterr().err


class TestFit:
    def test_recovers_linear_coefficients(self):
        x = [1, 2, 3, 4, 5]
        y = [2 + 3 * v for v in x]
        out = fit_scaling(x, y, "linear")
        assert out["a"] == pytest.approx(2.0)
        assert out["b"] == pytest.approx(3.0)
        assert out["r2"] == pytest.approx(1.0)

    def test_named_and_custom_forms_agree(self):
        x = [2, 4, 8, 16]
        y = [v * math.log(v) for v in x]
        named = fit_scaling(x, y, "nlogn")
        custom = fit_scaling(x, y, lambda v: v * math.log(v))
        assert named["b"] == pytest.approx(custom["b"])

    def test_needs_four_distinct_scales(self):
        with pytest.raises(ValueError, match="4 distinct"):
            fit_scaling([1, 1, 2, 2], [1, 1, 2, 2], "linear")

    def test_unknown_form_rejected(self):
        with pytest.raises(ValueError, match="unknown form"):
            fit_scaling([1, 2, 3, 4], [1, 2, 3, 4], "exponential")
