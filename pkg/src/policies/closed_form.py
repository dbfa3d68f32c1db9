"""
Closed-form best-execution policy B_t = e_t * S_t + f_t * X_{t-1} with

    e_t = 1 / (T - t + 1),    f_t = gamma / (theta * (T - t + 1)) * sum_{k=1}^{t} (t - k) * rho^k

The f_t sum is implemented as displayed (weights t - k over k = 1..t).
"""

from __future__ import annotations

import dataclasses

import numpy as np

from src.market.params import ExecutionProblem, MarketParams
from src.utilities.utils import ParameterDomainError, get_logger


log = get_logger(__name__)


@dataclasses.dataclass
class PolicyCoefficients:
    """
    Attributes:
        e: e[t-1] = 1 / (T - t + 1), the share of the remaining position bought at period t.
        f: f[t-1], shares bought per unit of last period's information X_{t-1}.
    """

    e: np.ndarray
    f: np.ndarray

    @property
    def horizon(self) -> int:
        return len(self.e)


def information_weight(t: int, rho: float) -> float:
    """sum_{k=1}^{t} (t - k) * rho^k"""
    k = np.arange(1, t + 1)
    return float(np.sum((t - k) * rho**k))


def coefficients(problem: ExecutionProblem, params: MarketParams) -> PolicyCoefficients:
    horizon = problem.horizon
    periods_left = horizon - np.arange(1, horizon + 1) + 1  # T - t + 1
    e = 1.0 / periods_left
    if params.gamma == 0:
        f = np.zeros(horizon)
    elif params.theta == 0:
        raise ParameterDomainError(
            f"theta={params.theta} violates theta > 0 (required when gamma={params.gamma} != 0, f_t divides by theta)"
        )
    else:
        weights = np.array([information_weight(t, params.rho) for t in range(1, horizon + 1)])
        f = params.gamma / (params.theta * periods_left) * weights
    return PolicyCoefficients(e=e, f=f)


def optimal_order(t: int, remaining: float, x_prev: float, coeffs: PolicyCoefficients) -> float:
    """Order size at period t (1-based), clipped to [0, remaining]; the last period buys everything left."""
    if not 1 <= t <= coeffs.horizon:
        raise ValueError(f"Period t={t} is outside of 1..{coeffs.horizon}")
    if remaining < 0:
        raise ValueError(f"Remaining position must be nonnegative, got {remaining}")
    if t == coeffs.horizon:
        return remaining
    raw = coeffs.e[t - 1] * remaining + coeffs.f[t - 1] * x_prev
    return float(min(max(raw, 0.0), remaining))


@dataclasses.dataclass
class ClosedFormPolicy:
    """State-feedback policy usable with :func:`src.market.simulation.simulate_policy`."""

    coeffs: PolicyCoefficients

    @classmethod
    def build(cls, problem: ExecutionProblem, params: MarketParams) -> ClosedFormPolicy:
        return cls(coefficients(problem, params))

    def __call__(self, t: int, remaining: float, x_prev: float) -> float:
        return optimal_order(t, remaining, x_prev, self.coeffs)
