"""Strategic classification: responses, losses, gradient-free learning."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacklab.classify import (AgentType, ClassificationGame,
                               EpsStrategicAgent, GDwoG,
                               NonMyopicClassifierPolicy, StrategicAgent,
                               agent_best_response, best_fixed_classifier,
                               classifier_parameters, eps_agent_response,
                               exploration_radius, gdwog_perturbed_bias_check,
                               project_ball, run_gdwog, smoothed_gradient,
                               stackelberg_loss, step_size)
from stacklab.core import run_episode
from stacklab.core.runner import episode_rngs


def make_game(**kw):
    kw.setdefault("d", 3)
    kw.setdefault("R", 1.0)
    kw.setdefault("alpha", 1.0)
    return ClassificationGame(**kw)


class TestResponses:
    def test_positive_labels_never_manipulate(self):
        atype = AgentType(x=np.array([0.2, -0.1, 0.4]), y=1)
        theta = np.array([0.5, 0.5, -0.5])
        assert np.allclose(agent_best_response(theta, atype, 1.0), atype.x)

    def test_negative_labels_shift_along_theta(self):
        atype = AgentType(x=np.zeros(2), y=-1)
        theta = np.array([0.4, -0.3])
        br = agent_best_response(theta, atype, alpha=2.0)
        assert np.allclose(br, theta / 2.0)

    @given(st.floats(1e-8, 0.5))
    @settings(max_examples=100)
    def test_eps_response_stays_in_eps_ball(self, eps):
        atype = AgentType(x=np.array([0.1, 0.2]), y=-1)
        theta = np.array([0.3, 0.4])
        alpha = 0.8
        br = agent_best_response(theta, atype, alpha)
        for adv in ("loss_max", "loss_min", "random"):
            resp = eps_agent_response(theta, atype, alpha, eps, adv,
                                      rng=np.random.default_rng(0))
            assert np.linalg.norm(resp - br) <= math.sqrt(2 * eps / alpha) + 1e-9

    def test_loss_max_is_worst_direction(self):
        game = make_game(d=2)
        atype = AgentType(x=np.array([0.1, 0.2]), y=-1)
        theta = np.array([0.3, 0.4])
        hi = eps_agent_response(theta, atype, 1.0, 0.01, "loss_max")
        lo = eps_agent_response(theta, atype, 1.0, 0.01, "loss_min")
        l_hi = game.loss(theta, np.append(hi, -1))
        l_lo = game.loss(theta, np.append(lo, -1))
        assert l_hi >= l_lo


class TestGameModel:
    def test_loss_bound_holds_on_best_responses(self):
        game = make_game(R=1.5, alpha=0.7)
        rng = np.random.default_rng(0)
        for _ in range(200):
            atype = game.sample_round_state(1, rng)
            theta = rng.standard_normal(game.d)
            theta *= rng.random() * game.R / np.linalg.norm(theta)
            br = agent_best_response(theta, atype, game.alpha)
            loss = game.loss(theta, np.append(br, atype.y))
            assert 0.0 <= loss <= game.loss_bound + 1e-9

    def test_agent_payoff_rejects_wrong_label(self):
        game = make_game()
        game.set_round_state(AgentType(x=np.zeros(3), y=1))
        with pytest.raises(ValueError, match="label"):
            game.agent_payoff(np.zeros(3), np.append(np.zeros(3), -1.0))

    def test_principal_payoff_normalized(self):
        game = make_game()
        rng = np.random.default_rng(1)
        agent = StrategicAgent()
        tr = run_episode(NonMyopicClassifierPolicy(game, 200, 0.5), agent,
                         game, 200, seed=0)
        u = tr.principal_payoffs()
        assert np.all((0.0 <= u) & (u <= 1.0))


class TestGDwoG:
    def test_converges_on_smooth_quadratic(self):
        w0 = np.array([0.3, -0.2])
        _, values = run_gdwog(lambda w: float(np.sum((w - w0) ** 2)),
                              d=2, R=1.0, C=2.0, L=3.0, T=4000, seed=0)
        # late-round average loss is near the minimum (0 at w0)
        assert values[-500:].mean() <= 0.15

    def test_queries_stay_in_ball(self):
        queries, _ = run_gdwog(lambda w: float(np.sum(w ** 2)), d=3, R=0.5,
                               C=1.0, L=2.0, T=500, seed=0)
        norms = np.linalg.norm(queries, axis=1)
        assert np.all(norms <= 0.5 + 1e-9)

    def test_project_ball(self):
        v = np.array([3.0, 4.0])
        assert np.allclose(project_ball(v, 1.0), v / 5.0)
        assert np.allclose(project_ball(v, 10.0), v)

    def test_smoothed_gradient_matches_true_gradient(self):
        # E[(d/delta) c(x + delta u) u] approximates grad c for smooth c
        x = np.array([0.2, -0.1])
        est = smoothed_gradient(lambda w: float(np.sum(w ** 2)), x,
                                delta=0.05, d=2, n_samples=100_000, seed=0)
        assert np.allclose(est, 2 * x, atol=0.05)

    def test_bias_check_respects_bound(self):
        out = gdwog_perturbed_bias_check(
            lam=0.01, delta_g=0.1, d=2,
            c_fn=lambda w: float(np.sum(w ** 2)), v=np.zeros(2),
            n_samples=50_000, seed=0)
        assert out["measured_bias"] <= out["bound"] + 3 * out["stderr"]

    def test_schedules_shrink_with_horizon(self):
        assert exploration_radius(1.0, 2, 1.0, 1.0, 10_000) \
            < exploration_radius(1.0, 2, 1.0, 1.0, 100)
        assert step_size(1.0, 1.0, 10_000) < step_size(1.0, 1.0, 100)


class TestPolicy:
    def test_parameters_couple_eps_to_delay(self):
        game = make_game()
        eps, D = classifier_parameters(game, 0.8, 100_000)
        assert eps > 0 and D >= 1
        # the chosen delay induces at most the targeted slack
        assert 0.8 ** D / (1 - 0.8) <= eps + 1e-12

    def test_benchmark_oracle_beats_random_classifiers(self):
        game = make_game()
        rng = np.random.default_rng(3)
        types = [game.sample_round_state(t, rng) for t in range(1, 301)]
        theta, val = best_fixed_classifier(types, game, n_grid=10,
                                           n_starts=2, iters=40, seed=0)
        corpus = types
        for _ in range(20):
            v = rng.standard_normal(game.d)
            v *= rng.random() * game.R / np.linalg.norm(v)
            assert val <= stackelberg_loss(v, corpus, game) + 1e-9

    def test_policy_regret_is_sublinear_in_practice(self):
        game = make_game()
        T = 20_000
        policy = NonMyopicClassifierPolicy(game, T, 0.8)
        agent = EpsStrategicAgent(policy.eps_target, "loss_max")
        tr = run_episode(policy, agent, game, T, seed=0)
        env_rng = episode_rngs(0)[2]
        types = [game.sample_round_state(t, env_rng) for t in range(1, T + 1)]
        _, bench = best_fixed_classifier(types, game, n_grid=10, n_starts=2,
                                         iters=60, seed=0)
        losses = (1.0 - tr.principal_payoffs()) * game.loss_bound
        regret = losses.sum() - bench * T
        assert regret <= 0.1 * T
