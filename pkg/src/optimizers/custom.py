"""
Custom SGD: a plain gradient step whose learning rate and iteration budget both adapt to whether the
gradient norm is shrinking, with a reset-to-uniform rule in place of box clipping.
"""

from __future__ import annotations

import numpy as np

from src.optimizers._base_optimizer import OptimizerConfig, OptimizerState
from src.optimizers.projections import reset_out_of_box


def weighted_norm_average(norms: np.ndarray) -> float:
    """Average of the trailing norms with linearly increasing weights 1..n (oldest to newest)."""
    weights = np.arange(1, len(norms) + 1, dtype=np.float64)
    return float(np.dot(weights, norms) / weights.sum())


def step_custom(
    state: OptimizerState, gradient: np.ndarray, config: OptimizerConfig, total_shares: float
) -> OptimizerState:
    state.iteration += 1
    grad_norm = float(np.linalg.norm(gradient))
    budget = state.budget_current
    # An empty history counts as a growing gradient.
    if len(state.norm_history) > 0 and weighted_norm_average(state.history_norms()) >= grad_norm:
        state.lr_current += 2.0 / budget
        state.budget_current += 0.5 / budget
    else:
        state.lr_current += 0.5 / budget
        state.budget_current += 2.0 / budget
    if config.max_learning_rate is not None:
        state.lr_current = min(state.lr_current, config.max_learning_rate)

    state.iterate, was_reset = reset_out_of_box(state.iterate - state.lr_current * gradient, total_shares)

    state.norm_history.append(gradient**2)
    state.norm_history = state.norm_history[-config.window :]
    if was_reset.any():
        # purge reset periods from the window
        for row in state.norm_history:
            row[was_reset] = 0.0
    return state
