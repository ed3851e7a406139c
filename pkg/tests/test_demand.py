"""Demand learning: buyer models, elimination bandit, pricing policies."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacklab.core import EpsAdversarialAgent, MyopicAgent, run_episode
from stacklab.demand import (ArmState, BatchedBinarySearchPolicy,
                             FixedValueModel, SEDelayedPricingPolicy,
                             StochasticValueModel, demand_pricing_parameters,
                             demand_pricing_policy, eliminate,
                             linear_demand_model, response_envelope,
                             run_se_delayed, update_confidence_bounds)


class TestModels:
    def test_fixed_value_benchmark_and_payoffs(self):
        m = FixedValueModel(0.63)
        assert m.benchmark() == pytest.approx(0.63)
        assert m.principal_payoff(0.5, 1) == pytest.approx(0.5)
        assert m.principal_payoff(0.5, 0) == 0.0
        assert m.agent_payoff(0.5, 1) == pytest.approx(0.13)

    def test_linear_demand_benchmark(self):
        m = linear_demand_model()
        assert m.benchmark() == pytest.approx(0.25)
        assert m.f(0.5) == pytest.approx(0.25)
        # p* maximizes expected revenue on a fine grid
        grid = np.linspace(0.01, 0.99, 199)
        assert max(m.f(p) for p in grid) <= m.benchmark() + 1e-12

    def test_curvature_validation_rejects_bad_constants(self):
        with pytest.raises(ValueError):
            StochasticValueModel(value_sampler=lambda rng: rng.random(),
                                 demand_fn=lambda p: 1.0 - p, L=1.0,
                                 C1=50.0, C2=1.0, p_star=0.5)

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(1e-9, 0.5))
    @settings(max_examples=300)
    def test_response_envelope_brackets_rational_play(self, v, p, eps):
        lo, hi = response_envelope(v, p, eps)
        assert lo <= hi
        # exact myopic play always sits inside the envelope
        myopic = 1 if v >= p else 0
        assert lo <= myopic <= hi
        # forced actions are strictly better than the alternative by > eps
        if lo == 1:
            assert v - p >= eps
        if hi == 0:
            assert p - v >= eps


class TestBandit:
    def test_confidence_bounds_shrink_with_pulls(self):
        a = ArmState(price=0.5, pulls=4, reward_sum=2.0)
        b = ArmState(price=0.5, pulls=100, reward_sum=50.0)
        update_confidence_bounds([a, b], T=1000, delta=0.0)
        assert (a.ucb - a.lcb) > (b.ucb - b.lcb)
        assert a.lcb <= 0.5 <= a.ucb

    def test_eliminate_drops_dominated_arms(self):
        arms = [ArmState(price=0.1), ArmState(price=0.9)]
        arms[0].lcb, arms[0].ucb = 0.6, 0.8
        arms[1].lcb, arms[1].ucb = 0.1, 0.3
        surviving = eliminate(arms, [0, 1])
        assert surviving == [0]
        assert arms[1].eliminated

    def test_best_arm_survives_without_delay(self):
        means = [0.9, 0.5, 0.2]
        arms, _, surviving = run_se_delayed(
            lambda i, rng: float(rng.random() < means[i]), K=3, D=0,
            T=5000, seed=0)
        assert surviving == [0]
        assert not arms[0].eliminated

    def test_delay_defers_but_does_not_break_elimination(self):
        means = [0.9, 0.2]
        _, _, fast = run_se_delayed(
            lambda i, rng: float(rng.random() < means[i]), K=2, D=0,
            T=3000, seed=1)
        _, _, slow = run_se_delayed(
            lambda i, rng: float(rng.random() < means[i]), K=2, D=500,
            T=3000, seed=1)
        assert fast == [0] and slow == [0]

    def test_adversary_shift_is_capped(self):
        with pytest.raises(ValueError, match="shift"):
            run_se_delayed(lambda i, rng: 0.5, K=2, D=0, T=10, delta=0.01,
                           adversary=lambda t, i, h: 0.5, seed=0)

    def test_on_update_hook_sees_every_refresh(self):
        ticks = []
        run_se_delayed(lambda i, rng: 0.5, K=2, D=0, T=20,
                       on_update=lambda t, arms, surviving: ticks.append(t))
        assert ticks and ticks[-1] == 20
        assert ticks == sorted(ticks)


class TestBatchedBinarySearch:
    def test_interval_always_contains_value(self):
        for v in (0.11, 0.5, 0.93):
            game = FixedValueModel(v)
            policy = BatchedBinarySearchPolicy(3000, 0.8)
            run_episode(policy, MyopicAgent(), game, 3000, seed=0)
            assert all(lo <= v <= hi for lo, hi in policy.interval_trace)

    def test_final_interval_is_fine(self):
        T = 3000
        game = FixedValueModel(0.47)
        policy = BatchedBinarySearchPolicy(T, 0.8)
        run_episode(policy, MyopicAgent(), game, T, seed=0)
        lo, hi = policy.interval_trace[-1]
        assert hi - lo <= 0.05

    def test_exploit_price_always_sells(self):
        game = FixedValueModel(0.47)
        tr = run_episode(BatchedBinarySearchPolicy(3000, 0.8), MyopicAgent(),
                         game, 3000, seed=0)
        # the overwhelming majority of rounds post a selling price
        sold = tr.principal_payoffs() > 0
        assert sold.mean() > 0.95


class TestPricingPolicy:
    def test_parameters_scale_sensibly(self):
        m = linear_demand_model()
        K1, eps1, D1, d1 = demand_pricing_parameters(m, 0.9, 10_000)
        K2, eps2, D2, d2 = demand_pricing_parameters(m, 0.9, 1_000_000)
        assert K2 > K1 >= 2
        assert eps2 < eps1
        assert D1 == D2 or D2 > D1  # delay grows (logarithmically) with T
        assert d1 == pytest.approx(m.L * eps1)

    def test_small_horizon_beats_constant_low_price(self):
        m = linear_demand_model()
        T = 20_000
        policy = demand_pricing_policy(m, 0.9, T)
        tr = run_episode(policy, MyopicAgent(), m, T, seed=0)
        mean_payoff = tr.principal_payoffs().mean()
        assert mean_payoff >= m.f(0.1)  # clearly better than a bad price

    def test_eps_adversarial_buyer_changes_little(self):
        m = linear_demand_model()
        T = 10_000
        _, eps, _, _ = demand_pricing_parameters(m, 0.9, T)
        a = run_episode(demand_pricing_policy(m, 0.9, T), MyopicAgent(),
                        m, T, seed=0).principal_payoffs().mean()
        b = run_episode(demand_pricing_policy(m, 0.9, T),
                        EpsAdversarialAgent(eps, "worst_for_principal"),
                        m, T, seed=0).principal_payoffs().mean()
        assert abs(a - b) <= 0.02
