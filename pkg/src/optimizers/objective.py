"""
Pathwise execution cost sum_t P_t * b_t and its exact gradient for a fixed noise path.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from src.market.params import ExecutionProblem, MarketParams, NoisePath, Schedule
from src.market.simulation import propagate_info, realized_prices
from src.utilities.utils import DimensionError, raise_if_invalid_shape


def _as_array(schedule: Schedule | np.ndarray, problem: ExecutionProblem) -> np.ndarray:
    b = schedule.b if isinstance(schedule, Schedule) else np.asarray(schedule, dtype=np.float64)
    raise_if_invalid_shape(b, (problem.horizon,), name="schedule")
    return b


def cost_and_gradient(
    params: MarketParams, problem: ExecutionProblem, schedule: Schedule | np.ndarray, noise: NoisePath
) -> Tuple[float, np.ndarray]:
    """Execution cost and d(cost)/d(b_t) = P_t + theta * sum_{k>=t} b_k."""
    b = _as_array(schedule, problem)
    if noise.horizon != problem.horizon:
        raise DimensionError(f"Noise path has {noise.horizon} periods but the horizon is {problem.horizon}")
    info = propagate_info(params.x0, params.rho, noise.eta)
    prices = realized_prices(params, b, info, noise)
    tail_shares = np.cumsum(b[::-1])[::-1]
    return float(np.dot(prices, b)), prices + params.theta * tail_shares


def cost_gradient(
    params: MarketParams, problem: ExecutionProblem, schedule: Schedule | np.ndarray, noise: NoisePath
) -> np.ndarray:
    return cost_and_gradient(params, problem, schedule, noise)[1]


def path_cost(
    params: MarketParams, problem: ExecutionProblem, schedule: Schedule | np.ndarray, noise: NoisePath
) -> float:
    return cost_and_gradient(params, problem, schedule, noise)[0]


def minibatch_cost_and_gradient(
    params: MarketParams, problem: ExecutionProblem, schedule: np.ndarray, noises: Sequence[NoisePath]
) -> Tuple[float, np.ndarray]:
    """Average cost and gradient over a minibatch of noise paths."""
    costs, grads = zip(*(cost_and_gradient(params, problem, schedule, noise) for noise in noises))
    return float(np.mean(costs)), np.mean(grads, axis=0)
