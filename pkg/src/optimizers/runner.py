from __future__ import annotations

import math
from typing import Callable, Optional, Tuple

import numpy as np

from src.market.params import ExecutionProblem, MarketParams, Schedule
from src.market.simulation import sample_noise_paths, uniform_schedule
from src.optimizers._base_optimizer import ConvergenceTrace, OptimizerConfig, OptimizerState
from src.optimizers.objective import minibatch_cost_and_gradient
from src.optimizers.projections import project, project_budget
from src.optimizers.registry import get_variant
from src.utilities.utils import get_logger


log = get_logger(__name__)


def _iteration_limit(state: OptimizerState, config: OptimizerConfig, adaptive_budget: bool) -> int:
    if adaptive_budget:
        return min(math.floor(state.budget_current), config.hard_cap)
    return config.max_iters


def run_optimizer(
    variant: str,
    config: OptimizerConfig,
    params: MarketParams,
    problem: ExecutionProblem,
    rng: np.random.Generator,
    callback: Optional[Callable[[int, np.ndarray], None]] = None,
) -> Tuple[Schedule, ConvergenceTrace]:
    """Projected SGD on the expected execution cost, starting from the uniform split.

    Every iteration samples ``config.minibatch`` fresh noise paths from ``rng``, averages their pathwise
    gradients at the current iterate, applies the variant's update and maps the result back onto the
    feasible set (box clipping or the variant's own reset rule, then the budget rescale).

    Args:
        variant: one of ``adagrad``, ``rmsprop``, ``adam``, ``custom``.
        config: optimizer hyperparameters.
        params: market coefficients.
        problem: block size and horizon.
        rng: random source owned by this run.
        callback: called as ``callback(iteration, iterate)`` after every completed (projected) iteration.

    Returns:
        The final feasible schedule and the convergence trace (empty if ``config.record_trace`` is False).
    """
    sgd_variant = get_variant(variant)
    state = OptimizerState.initialize(uniform_schedule(problem).b, config)
    trace = ConvergenceTrace()
    total_shares = problem.total_shares

    while state.iteration < _iteration_limit(state, config, sgd_variant.adaptive_budget):
        noises = sample_noise_paths(rng, config.minibatch, problem.horizon, params.sigma_eps, params.sigma_eta)
        objective, gradient = minibatch_cost_and_gradient(params, problem, state.iterate, noises)

        if sgd_variant.resets_out_of_box:
            state = sgd_variant.step(state, gradient, config, total_shares)
            state.iterate = project_budget(state.iterate, total_shares)
        else:
            state = sgd_variant.step(state, gradient, config)
            state.iterate = project(state.iterate, total_shares)

        learning_rate = state.lr_current if sgd_variant.adaptive_budget else config.learning_rate
        if config.record_trace:
            trace.append(state.iteration, objective, float(np.linalg.norm(gradient)), learning_rate)
        if callback is not None:
            callback(state.iteration, state.iterate)
        if config.log_every and state.iteration % config.log_every == 0:
            log.info(f"[{variant}] iteration {state.iteration}: objective={objective:.6f}, lr={learning_rate:.6g}")

    log.info(f"[{variant}] finished after {state.iteration} iterations")
    return Schedule(state.iterate), trace
