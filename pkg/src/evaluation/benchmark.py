"""
Common-random-numbers evaluation: every strategy is simulated on the very same noise paths.
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Sequence

import numpy as np
import tqdm.auto as tqdm
import xarray as xr

from src.market.params import ExecutionProblem, MarketParams, NoisePath, Schedule
from src.market.simulation import Policy, path_checksum, simulate_policy, simulate_schedule
from src.utilities.utils import DimensionError, get_logger


log = get_logger(__name__)


@dataclasses.dataclass
class Strategy:
    """
    A named strategy: either a fixed ``schedule`` (does not react to the path) or a feedback ``policy``
    (re-reads X_{t-1} on every path). Exactly one of the two must be given.
    """

    name: str
    schedule: Optional[Schedule] = None
    policy: Optional[Policy] = None

    def __post_init__(self):
        if (self.schedule is None) == (self.policy is None):
            raise ValueError(f"Strategy {self.name} needs exactly one of schedule or policy")

    @property
    def is_adaptive(self) -> bool:
        return self.policy is not None

    def run(self, params: MarketParams, problem: ExecutionProblem, noise: NoisePath):
        if self.is_adaptive:
            return simulate_policy(params, problem, self.policy, noise)
        return self.schedule, simulate_schedule(params, problem, self.schedule, noise)


def evaluate_common(
    strategies: Sequence[Strategy],
    params: MarketParams,
    problem: ExecutionProblem,
    noise_paths: Sequence[NoisePath],
    verbose: bool = False,
) -> xr.Dataset:
    """Simulates every strategy on every noise path.

    Returns:
        A dataset with ``cost(strategy, path)``, the executed ``schedule(strategy, path, period)`` and the
        ``checksum(strategy, path)`` of the noise path each simulation consumed.
    """
    if len(noise_paths) == 0:
        raise DimensionError("At least one noise path is required")
    if len(strategies) == 0:
        raise DimensionError("At least one strategy is required")
    names = [strategy.name for strategy in strategies]
    if len(set(names)) != len(names):
        raise ValueError(f"Strategy names must be unique, got {names}")
    for strategy in strategies:
        if strategy.schedule is not None:
            strategy.schedule.validate(problem)
    for noise in noise_paths:
        if noise.horizon != problem.horizon:
            raise DimensionError(f"Noise path has {noise.horizon} periods but the horizon is {problem.horizon}")

    n_strategies, n_paths, horizon = len(strategies), len(noise_paths), problem.horizon
    costs = np.empty((n_strategies, n_paths))
    schedules = np.empty((n_strategies, n_paths, horizon))
    checksums = np.empty((n_strategies, n_paths), dtype=object)
    for j, noise in enumerate(tqdm.tqdm(noise_paths, desc="Evaluating strategies", disable=not verbose)):
        for i, strategy in enumerate(strategies):
            executed, outcome = strategy.run(params, problem, noise)
            costs[i, j] = outcome.cost
            schedules[i, j] = executed.b
            checksums[i, j] = path_checksum(noise)

    coords = {"strategy": names, "path": np.arange(n_paths), "period": np.arange(1, horizon + 1)}
    return xr.Dataset(
        data_vars={
            "cost": (("strategy", "path"), costs),
            "schedule": (("strategy", "path", "period"), schedules),
            "checksum": (("strategy", "path"), checksums.astype(str)),
        },
        coords=coords,
    )


def verify_common_noise(results: xr.Dataset):
    """Raises if any path was not evaluated on identical shocks by every strategy."""
    checksums = results["checksum"].values
    mismatched = np.flatnonzero((checksums != checksums[0:1]).any(axis=0))
    if len(mismatched) > 0:
        raise RuntimeError(f"Strategies consumed different noise on paths {mismatched.tolist()}")
