"""Security games: curves, centroids, cutting-plane search, policies."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacklab.core import MyopicAgent, run_episode
from stacklab.core.game import exact_best_response
from stacklab.oracles import monte_carlo_volume, water_filling_optimum
from stacklab.ssg import (BatchedClinchPolicy, LinearCurve, LogisticCurve,
                          MultiThreadedClinchPolicy, PiecewiseLinearCurve,
                          SecurityGame, clinch, clinch_simplex, compute_width,
                          curve_from_config, default_oracle_accuracy,
                          exact_round, exact_search, perturb, perturb_epsilon,
                          region_centroid, simplex_oracle_accuracy)
from stacklab.ssg.centroid import EmptyRegionError, _truncated_box_centroid


def random_box_game(n, rng):
    u, v = [], []
    for _ in range(n):
        u.append(LinearCurve(rng.uniform(0.0, 0.3), rng.uniform(0.5, 0.7)))
        v.append(LinearCurve(rng.uniform(0.6, 1.0), -rng.uniform(0.5, 2.0)))
    return SecurityGame(u, v, space="box", C=2.0)


class TestCurves:
    @given(st.floats(-2, 2), st.floats(0.1, 5), st.floats(0, 1))
    def test_linear_inverse_roundtrip(self, b, s, x):
        c = LinearCurve(b, -s)
        assert c.inverse(c(x)) == pytest.approx(x, abs=1e-9)

    def test_logistic_inverse_roundtrip(self):
        c = LogisticCurve(base=0.0, scale=1.0, rate=3.0, mid=0.4)
        for x in np.linspace(0, 1, 17):
            assert c.inverse(c(x)) == pytest.approx(x, abs=1e-9)

    def test_piecewise_inverse_roundtrip(self):
        c = PiecewiseLinearCurve([0.0, 0.4, 1.0], [0.9, 0.5, 0.1])
        for x in np.linspace(0, 1, 17):
            assert c.inverse(c(x)) == pytest.approx(x, abs=1e-9)

    def test_slope_range_bounds_finite_differences(self):
        for c in (LinearCurve(0.9, -0.7),
                  LogisticCurve(base=0.0, scale=1.0, rate=4.0, mid=0.5),
                  PiecewiseLinearCurve([0.0, 0.3, 1.0], [1.0, 0.6, 0.2])):
            lo, hi = c.slope_range()
            xs = np.linspace(0, 1, 101)
            diffs = np.abs(np.diff([c(x) for x in xs]) / np.diff(xs))
            assert np.all(diffs >= lo - 1e-6)
            assert np.all(diffs <= hi + 1e-6)

    def test_curve_from_config_rejects_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            curve_from_config({"kind": "spline"})


class TestGame:
    def test_width_is_min_region_width(self):
        # symmetric two-target game: each region is half the square
        game = SecurityGame([LinearCurve(0.0, 1.0)] * 2,
                            [LinearCurve(1.0, -1.0)] * 2, space="box")
        assert compute_width(game) == pytest.approx(1.0, abs=0.02)

    def test_auto_constants_cover_curves(self):
        rng = np.random.default_rng(0)
        game = random_box_game(3, rng)
        for c in game.u_curves + game.v_curves:
            lo, hi = c.slope_range()
            assert max(abs(lo), abs(hi)) <= game.C + 1e-9
        assert 0.0 < game.W <= 1.0


class TestCentroid:
    def test_box_is_midpoint(self):
        lo, hi = np.array([0.1, 0.2]), np.array([0.5, 0.8])
        assert np.allclose(region_centroid("box", lo, hi), [0.3, 0.5])

    def test_simplex_with_slack_is_midpoint(self):
        lo, hi = np.array([0.0, 0.1]), np.array([0.3, 0.4])
        assert np.allclose(region_centroid("simplex", lo, hi), [0.15, 0.25])

    def test_corner_simplex_centroid_is_exact(self):
        # full unit box cut by the budget: the corner simplex, centroid 1/(n+1)
        for n in (2, 3, 5):
            c = region_centroid("simplex", np.zeros(n), np.ones(n))
            assert np.allclose(c, 1.0 / (n + 1), atol=1e-12)

    def test_crossed_bounds_raise(self):
        with pytest.raises(EmptyRegionError):
            region_centroid("box", np.array([0.5]), np.array([0.2]))
        with pytest.raises(EmptyRegionError):
            region_centroid("simplex", np.array([0.7, 0.6]), np.ones(2))

    def test_truncated_box_matches_monte_carlo(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            n = int(rng.integers(2, 5))
            lower = rng.uniform(0.0, 0.2, n)
            upper = lower + rng.uniform(0.2, 0.6, n)
            if upper.sum() <= 1.0:
                continue
            exact = _truncated_box_centroid(lower, upper,
                                            np.ones(n, dtype=bool))
            # rejection-sampled centroid of the same region
            pts = rng.uniform(lower, upper, size=(400_000, n))
            pts = pts[pts.sum(axis=1) <= 1.0]
            assert len(pts) > 1000
            assert np.allclose(exact, pts.mean(axis=0), atol=4e-3)

    def test_exact_matches_hit_and_run_path(self):
        from stacklab.ssg.centroid import _hit_and_run_centroid
        lower = np.array([0.1, 0.0, 0.2])
        upper = np.array([0.6, 0.5, 0.7])
        exact = _truncated_box_centroid(lower, upper, np.ones(3, dtype=bool))
        mc = _hit_and_run_centroid(lower, upper, np.random.default_rng(0),
                                   200_000)
        assert np.allclose(exact, mc, atol=5e-3)


class TestClinch:
    def test_recovers_optimum_box(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            game = random_box_game(int(rng.integers(2, 6)), rng)
            delta = 1e-3
            x_star = np.asarray(
                water_filling_optimum(game.v_curves, space="box")[0])
            x_hat, stats = clinch(lambda x: exact_best_response(game, x),
                                  game, delta, eps=0.0,
                                  rng=np.random.default_rng(0))
            assert np.max(np.abs(x_hat - x_star)) <= delta
            assert stats["queries"] > 0

    def test_tolerates_adversarial_oracle(self):
        rng = np.random.default_rng(12)
        game = random_box_game(4, rng)
        delta = 1e-3
        eps = default_oracle_accuracy(game, delta)
        from stacklab.core.game import eps_adversarial_response
        x_star = np.asarray(
            water_filling_optimum(game.v_curves, space="box")[0])
        x_hat, _ = clinch(
            lambda x: eps_adversarial_response(game, x, eps,
                                               "worst_for_principal"),
            game, delta, rng=np.random.default_rng(0))
        assert np.max(np.abs(x_hat - x_star)) <= delta

    def test_invalid_delta_raises(self):
        game = random_box_game(2, np.random.default_rng(0))
        with pytest.raises(ValueError, match="delta"):
            clinch(lambda x: 0, game, 0.0)

    def test_simplex_variant_approaches_optimum(self):
        game = SecurityGame([LinearCurve(0.2, 0.7), LinearCurve(0.1, 0.8),
                             LinearCurve(0.3, 0.6)],
                            [LinearCurve(0.9, -0.8), LinearCurve(0.8, -0.7),
                             LinearCurve(0.7, -0.9)], space="simplex")
        lam = 1e-3
        eps = simplex_oracle_accuracy(game, lam)
        assert eps > 0
        x_tilde = clinch_simplex(lambda x: exact_best_response(game, x),
                                 game, lam)
        x_star, _ = water_filling_optimum(game.v_curves, space="simplex")
        u_star = game.principal_payoff(
            np.asarray(x_star), exact_best_response(game, np.asarray(x_star)))
        u_hat = game.principal_payoff(x_tilde,
                                      exact_best_response(game, x_tilde))
        assert u_hat >= u_star - 20 * game.C ** 2 * lam

    def test_perturb_makes_response_unique(self):
        from stacklab.core.game import best_response_set
        rng = np.random.default_rng(13)
        game = random_box_game(3, rng)
        x_star = np.asarray(
            water_filling_optimum(game.v_curves, space="box")[0])
        lam = 1e-2
        x_tilde = perturb(x_star, lam, game)
        eps = perturb_epsilon(game, lam)
        assert len(best_response_set(game, x_tilde, eps)) == 1
        assert np.abs(x_tilde - x_star).sum() <= game.W * lam / 2 + 1e-12

    def test_exact_round_produces_dyadic_rationals(self):
        vals = exact_round(np.array([0.5, 0.25]), L_bits=1, n=2)
        assert vals == [Fraction(1, 2), Fraction(1, 4)]
        with pytest.raises(ValueError, match="precision"):
            exact_round(np.zeros(4), L_bits=64, n=4)

    def test_exact_search_recovers_rational_optimum(self):
        # dyadic game: v = 3/4 - x/2 and 7/8 - x/4; optimum has exact bits
        game = SecurityGame([LinearCurve(0.0, 0.5), LinearCurve(0.0, 0.5)],
                            [LinearCurve(Fraction(3, 4), Fraction(-1, 2)),
                             LinearCurve(Fraction(7, 8), Fraction(-1, 4))],
                            space="box")
        got = exact_search(lambda x: exact_best_response(game, x), game,
                           L_bits=1)
        x_star, _ = water_filling_optimum(game.v_curves, space="box")
        assert [float(g) for g in got] == pytest.approx(list(x_star),
                                                        abs=1e-9)


class TestPolicies:
    def _game(self):
        return SecurityGame([LinearCurve(0.2, 0.7), LinearCurve(0.1, 0.8),
                             LinearCurve(0.3, 0.6)],
                            [LinearCurve(0.9, -0.8), LinearCurve(0.8, -0.7),
                             LinearCurve(0.7, -0.9)], space="simplex")

    def _benchmark(self, game):
        x_star = np.asarray(
            water_filling_optimum(game.v_curves, space="simplex")[0])
        return game.principal_payoff(x_star,
                                     exact_best_response(game, x_star))

    def test_batched_clinch_small_horizon_regret(self):
        game = self._game()
        T = 4000
        tr = run_episode(BatchedClinchPolicy(game, T, 0.8), MyopicAgent(),
                         game, T, seed=0)
        regret = self._benchmark(game) * T - tr.principal_payoffs().sum()
        assert 0.0 <= regret <= 0.25 * T  # far better than constant play

    def test_multithreaded_clinch_small_horizon_regret(self):
        game = self._game()
        T = 4000
        policy = MultiThreadedClinchPolicy(game, T)
        tr = run_episode(policy, MyopicAgent(), game, T, seed=0)
        regret = self._benchmark(game) * T - tr.principal_payoffs().sum()
        assert 0.0 <= regret <= 0.25 * T
        # every thread's box still contains the conservative optimum
        x_star = np.asarray(
            water_filling_optimum(game.v_curves, space="simplex")[0])
        for thr in policy.threads.values():
            assert np.all(thr["lower"] <= x_star + 1e-9)
            assert np.all(x_star <= thr["upper"] + 1e-9)

    def test_deterministic_given_seed(self):
        game = self._game()
        a = run_episode(BatchedClinchPolicy(game, 500, 0.8), MyopicAgent(),
                        game, 500, seed=1)
        b = run_episode(BatchedClinchPolicy(game, 500, 0.8), MyopicAgent(),
                        game, 500, seed=1)
        assert a.to_csv() == b.to_csv()
