"""Exact discounted-agent optimum by depth-first policy enumeration.

Ground truth for agent rationality at desk scale: maximizes
sum_t gamma^t * v(x_t, y_t) over every deterministic agent policy, replaying
a fresh copy of the (deterministic) principal policy along each hypothetical
history.  Written independently of the simulated agents it validates.
"""

from __future__ import annotations

MAX_HORIZON = 8
MAX_ACTIONS = 4


def exhaustive_agent_optimum(game, policy_factory, gamma: float, horizon: int):
    """Return (optimal discounted value, optimal action path)."""
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if horizon > MAX_HORIZON:
        raise ValueError(f"horizon limited to {MAX_HORIZON}")
    actions = list(game.agent_actions())
    if len(actions) > MAX_ACTIONS:
        raise ValueError(f"agent action set limited to {MAX_ACTIONS}")

    def principal_action(history, t):
        policy = policy_factory()
        delivered = 0
        for s in range(1, t + 1):
            bound = min(policy.screen.release_bound(s), len(history))
            while delivered < bound:
                delivered += 1
                xs, ys = history[delivered - 1]
                policy.feedback(delivered, xs, ys)
            a = policy.action(s)
        return a

    def search(history):
        t = len(history) + 1
        if t > horizon:
            return 0.0, ()
        x = principal_action(history, t)
        best, best_path = -float("inf"), ()
        for y in actions:
            gain = (gamma ** t) * game.agent_payoff(x, y, t)
            future, path = search(history + [(x, y)])
            if gain + future > best:
                best, best_path = gain + future, ((x, y),) + path
        return best, best_path

    value, path = search([])
    return value, [y for _, y in path]
