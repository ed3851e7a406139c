"""Strategic classification: linear classifiers vs feature manipulation.

One agent type per round: features x in the R-ball, label y in {-1, +1},
quadratic manipulation cost (alpha/2)||xhat - x||^2.  Negative-label agents
manipulate; positive-label agents are non-strategic.  The agent's reply is
encoded as a length-(d+1) vector: manipulated features followed by the label
(the label is revealed to the principal each round).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.game import Game


@dataclass(frozen=True)
class AgentType:
    x: np.ndarray
    y: int  # -1 manipulates, +1 plays truthfully


def ell_log(theta, x_hat, y) -> float:
    m = -y * float(np.dot(theta, x_hat))
    # stable log(1 + e^m)
    return math.log1p(math.exp(m)) if m < 30 else m + math.exp(-m)

def ell_hinge(theta, x_hat, y) -> float:
    return max(0.0, 1.0 - y * float(np.dot(theta, x_hat)))


LOSSES = {"logistic": ell_log, "hinge": ell_hinge}


class ClassificationGame(Game):
    """Repeated strategic classification with i.i.d. agent types."""

    name = "classify"

    def __init__(self, d: int, R: float, alpha: float, loss: str = "logistic",
                 neg_prob: float = 0.5):
        if R < 1:
            raise ValueError("R must be >= 1 (the domain contains the unit ball)")
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        if loss not in LOSSES:
            raise ValueError(f"unknown loss: {loss!r}")
        self.d, self.R, self.alpha = int(d), float(R), float(alpha)
        self.dim = int(d)
        self.loss_kind = loss
        self.loss_fn = LOSSES[loss]
        self.neg_prob = float(neg_prob)
        self.loss_bound = 1.0 + R ** 2 + R ** 2 / alpha
        self.lipschitz = R + 2 * R / alpha
        self.agent_payoff_range = (-R ** 2, R ** 2 * (1 + 1 / alpha))
        self._type = None

    def principal_valid(self, theta) -> bool:
        theta = np.asarray(theta, dtype=float)
        return theta.shape == (self.d,) and np.linalg.norm(theta) <= self.R + 1e-9

    def agent_actions(self, x=None):
        raise ValueError("the manipulation space is continuous; use the "
                         "closed-form strategic agents instead")

    def sample_round_state(self, t, rng) -> AgentType:
        x = rng.standard_normal(self.d)
        norm = np.linalg.norm(x)
        if norm > self.R:
            x *= self.R / norm
        y = -1 if rng.random() < self.neg_prob else 1
        x.setflags(write=False)
        return AgentType(x=x, y=y)

    def set_round_state(self, state):
        self._type = state

    def round_state_key(self):
        return (self._type.x.tobytes(), self._type.y)

    @property
    def current_type(self) -> AgentType:
        if self._type is None:
            raise RuntimeError("round type not sampled yet")
        return self._type

    def split_response(self, resp):
        resp = np.asarray(resp, dtype=float)
        return resp[:-1], int(resp[-1])

    def loss(self, theta, resp) -> float:
        x_hat, y = self.split_response(resp)
        return self.loss_fn(np.asarray(theta, dtype=float), x_hat, y)

    def principal_payoff(self, theta, resp, t=None) -> float:
        # normalized so the runner's [0,1] payoff invariant holds; regret
        # accounting happens in raw loss units at the policy/harness level
        u = 1.0 - self.loss(theta, resp) / self.loss_bound
        return min(max(u, 0.0), 1.0)

    def agent_payoff(self, theta, resp, t=None) -> float:
        x_hat, y = self.split_response(resp)
        a = self.current_type
        if y != a.y:
            raise ValueError("response label does not match the round type")
        if a.y == 1:
            if not np.allclose(x_hat, a.x):
                raise ValueError("positive-label agents cannot manipulate")
            return 0.0
        theta = np.asarray(theta, dtype=float)
        cost = 0.5 * self.alpha * float(np.sum((x_hat - a.x) ** 2))
        return float(np.dot(theta, x_hat)) - cost
