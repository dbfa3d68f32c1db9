"""
Exhaustive grid search over schedules, used to check the closed form on tiny instances.
"""

from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np

from src.market.params import ExecutionProblem, MarketParams, NoisePath, Schedule
from src.market.simulation import simulate_schedule
from src.utilities.utils import ParameterDomainError, get_logger


log = get_logger(__name__)

MAX_ORACLE_HORIZON = 4
MAX_ORACLE_SCHEDULES = 1e7


def _grid_prefixes(n_units: int, depth: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of ``depth`` nonnegative integers whose sum is at most ``n_units``."""
    if depth == 0:
        yield ()
        return
    for k in range(n_units + 1):
        for rest in _grid_prefixes(n_units - k, depth - 1):
            yield (k,) + rest


def brute_force_oracle(
    params: MarketParams, problem: ExecutionProblem, grid_step: float, noise: NoisePath
) -> Tuple[Schedule, float]:
    """Grid-minimal schedule and its cost on a fixed noise path.

    Periods 1..T-1 buy a multiple of ``grid_step`` (at most what is left), the last period buys the rest.
    Ties keep the first schedule in lexicographic order.
    """
    horizon = problem.horizon
    if grid_step <= 0:
        raise ParameterDomainError(f"grid_step={grid_step} violates grid_step > 0")
    n_units = int(np.floor(problem.total_shares / grid_step + 1e-9))
    if horizon > MAX_ORACLE_HORIZON or (problem.total_shares / grid_step) ** (horizon - 1) > MAX_ORACLE_SCHEDULES:
        raise ParameterDomainError(
            f"Oracle instance too large: horizon={horizon} (max {MAX_ORACLE_HORIZON}) and "
            f"(total_shares/grid_step)^(horizon-1)={(problem.total_shares / grid_step) ** (horizon - 1):.3g} "
            f"(max {MAX_ORACLE_SCHEDULES:.0e})"
        )

    best_schedule, best_cost, n_evaluated = None, np.inf, 0
    for prefix in _grid_prefixes(n_units, horizon - 1):
        head = np.asarray(prefix, dtype=np.float64) * grid_step
        last = max(problem.total_shares - head.sum(), 0.0)
        schedule = Schedule(np.append(head, last))
        cost = simulate_schedule(params, problem, schedule, noise).cost
        n_evaluated += 1
        if cost < best_cost:
            best_schedule, best_cost = schedule, cost

    log.info(f"Oracle evaluated {n_evaluated} schedules, best cost {best_cost:.6f}")
    return best_schedule, float(best_cost)
