import numpy as np

from src.optimizers._base_optimizer import OptimizerConfig, OptimizerState


def step_adam(state: OptimizerState, gradient: np.ndarray, config: OptimizerConfig) -> OptimizerState:
    """Adam with bias-corrected moments. The numeric guard sits inside the square root:

    b <- b - lr * m_hat / sqrt(v_hat + eps)
    """
    state.iteration += 1
    i = state.iteration
    state.moment1 = config.beta1 * state.moment1 + (1 - config.beta1) * gradient
    state.moment2 = config.beta2 * state.moment2 + (1 - config.beta2) * gradient**2
    m_hat = state.moment1 / (1 - config.beta1**i)
    v_hat = state.moment2 / (1 - config.beta2**i)
    state.iterate = state.iterate - config.learning_rate * m_hat / np.sqrt(v_hat + config.numeric_eps)
    return state
