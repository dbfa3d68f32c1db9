import numpy as np

from src.optimizers._base_optimizer import OptimizerConfig, OptimizerState


def step_adagrad(state: OptimizerState, gradient: np.ndarray, config: OptimizerConfig) -> OptimizerState:
    """G_i = G_{i-1} + g^2;  b <- b - lr * g / sqrt(G_i + eps)"""
    state.iteration += 1
    state.accum_sq = state.accum_sq + gradient**2
    state.iterate = state.iterate - config.learning_rate * gradient / np.sqrt(state.accum_sq + config.numeric_eps)
    return state
