"""Reference oracles: water filling, grid search, volumes, exhaustive play."""

import math

import numpy as np
import pytest

from stacklab.core import ConstantPolicy, MyopicAgent, run_episode
from stacklab.core.game import exact_best_response
from stacklab.oracles import (exhaustive_agent_optimum,
                              grid_stackelberg_optimum, monte_carlo_volume,
                              water_filling_optimum, wilson_interval)
from stacklab.ssg import LinearCurve, SecurityGame


class TestWaterFilling:
    def test_exact_linear_two_targets(self):
        # v0 = 1 - x, v1 = 0.8 - 0.6 x; equalized level solves
        # 1 - a = 0.8 - 0.6 b with a + b = 1: a = 3/4, b = 1/4, w = 1/4... no:
        # 1 - a = 0.8 - 0.6 (1 - a) -> 1 - a = 0.2 + 0.6 a -> a = 0.5, w = 0.5
        curves = [LinearCurve(1.0, -1.0), LinearCurve(0.8, -0.6)]
        x, w = water_filling_optimum(curves, space="simplex")
        assert w == pytest.approx(0.5, abs=1e-6)
        assert list(x) == pytest.approx([0.5, 0.5], abs=1e-5)

    def test_box_fills_independently(self):
        curves = [LinearCurve(1.0, -1.0), LinearCurve(0.4, -0.3)]
        x, w = water_filling_optimum(curves, space="box")
        # level is the larger full-coverage payoff: v1(1) = 0.1 vs v0(1) = 0
        assert w == pytest.approx(0.1)
        assert x[0] == pytest.approx(0.9)
        assert x[1] == pytest.approx(1.0)

    def test_exact_mode_on_dyadic_coefficients(self):
        # dyadic coefficients survive the float round-trip, so the exact
        # segment solve returns the rational answer without bisection error
        curves = [LinearCurve(1.0, -1.0), LinearCurve(0.75, -0.5)]
        x, w = water_filling_optimum(curves, space="simplex", exact=True)
        assert w == 0.5
        assert list(x) == [0.5, 0.5]

    def test_rejects_increasing_curves(self):
        with pytest.raises(ValueError, match="decreasing"):
            water_filling_optimum([LinearCurve(0.0, 1.0)])

    def test_matches_grid_oracle(self):
        game = SecurityGame([LinearCurve(0.1, 0.8), LinearCurve(0.2, 0.6)],
                            [LinearCurve(0.9, -0.8), LinearCurve(0.8, -0.5)],
                            space="box")
        x_star, _ = water_filling_optimum(game.v_curves, space="box")
        x_star = np.asarray(x_star)
        u_star = game.principal_payoff(x_star,
                                       exact_best_response(game, x_star))
        rep = grid_stackelberg_optimum(game, resolution=0.01)
        assert rep.value <= u_star + rep.certified_error + 1e-9
        assert rep.value >= u_star - rep.certified_error - 1e-9


class TestVolume:
    def test_wilson_interval_contains_point_estimate(self):
        lo, hi = wilson_interval(30, 100)
        assert lo <= 0.3 <= hi
        assert 0.0 <= lo < hi <= 1.0

    def test_wilson_narrows_with_samples(self):
        lo1, hi1 = wilson_interval(300, 1000)
        lo2, hi2 = wilson_interval(30_000, 100_000)
        assert hi2 - lo2 < hi1 - lo1

    def test_halfspace_volume_of_square(self):
        rep = monte_carlo_volume(lambda n, rng: rng.random((n, 2)),
                                 lambda pts: pts[:, 0] >= 0.25, 50_000)
        assert rep.value == pytest.approx(0.75, abs=3 * rep.certified_error)

    def test_too_few_samples_rejected(self):
        with pytest.raises(ValueError, match="samples"):
            monte_carlo_volume(lambda n, rng: rng.random((n, 1)),
                               lambda pts: pts[:, 0] > 0, 10)


class TestExhaustive:
    def _game(self):
        return SecurityGame([LinearCurve(0.1, 0.8), LinearCurve(0.2, 0.7)],
                            [LinearCurve(0.9, -0.8), LinearCurve(0.85, -0.6)],
                            space="box")

    def test_constant_policy_optimum_is_myopic(self):
        # against a fixed action there is nothing to manipulate: per-round
        # optimal play is the myopic argmax
        game = self._game()
        x = np.array([0.4, 0.1])

        def factory():
            p = ConstantPolicy(x.copy())
            p.begin(game, 4, np.random.default_rng(0))
            return p

        gamma, horizon = 0.6, 4
        value, path = exhaustive_agent_optimum(game, factory, gamma, horizon)
        y_star = max(range(2), key=lambda y: game.agent_payoff(x, y))
        expected = sum(gamma ** t * game.agent_payoff(x, y_star)
                       for t in range(1, horizon + 1))
        assert value == pytest.approx(expected, abs=1e-12)
        assert all(y == y_star for y in path)

    def test_horizon_and_action_guards(self):
        game = self._game()
        with pytest.raises(ValueError, match="horizon"):
            exhaustive_agent_optimum(game, lambda: None, 0.5, 99)
        with pytest.raises(ValueError, match="gamma"):
            exhaustive_agent_optimum(game, lambda: None, 1.5, 3)

    def test_optimum_dominates_scripted_paths(self):
        game = self._game()
        from stacklab.core import Policy, InformationScreen

        class Reactive(Policy):
            screen = InformationScreen.delay(1)

            def begin(self, game, T, rng):
                super().begin(game, T, rng)
                self.x = np.array([0.3, 0.5])

            def action(self, t):
                return self.x.copy()

            def feedback(self, t, x, y):
                self.x[y] = min(self.x[y] + 0.3, 1.0)

        def factory():
            p = Reactive()
            p.begin(game, 4, np.random.default_rng(0))
            return p

        gamma, horizon = 0.6, 4
        value, _ = exhaustive_agent_optimum(game, factory, gamma, horizon)
        # any fixed action sequence is weakly dominated by the optimum
        for seq in [(0, 0, 0, 0), (1, 1, 1, 1), (0, 1, 0, 1), (1, 0, 0, 1)]:
            policy = factory()
            total, delivered, history = 0.0, 0, []
            for t, y in enumerate(seq, start=1):
                bound = min(policy.screen.release_bound(t), len(history))
                while delivered < bound:
                    delivered += 1
                    policy.feedback(delivered, *history[delivered - 1])
                x = policy.action(t)
                total += gamma ** t * game.agent_payoff(x, y)
                history.append((x, y))
            assert value >= total - 1e-12
