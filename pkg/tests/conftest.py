import numpy as np
import pytest

from src.market.params import ExecutionProblem, MarketParams, NoisePath
from src.optimizers._base_optimizer import OptimizerConfig
from src.utilities.utils import get_rng


@pytest.fixture
def params() -> MarketParams:
    return MarketParams()


@pytest.fixture
def problem() -> ExecutionProblem:
    return ExecutionProblem()


@pytest.fixture
def noiseless_params() -> MarketParams:
    return MarketParams(gamma=0.0, sigma_eps=0.0, sigma_eta=0.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return get_rng(0)


@pytest.fixture
def small_optimizer_config() -> OptimizerConfig:
    return OptimizerConfig(max_iters=200, log_every=0)


def zero_noise(horizon: int) -> NoisePath:
    return NoisePath.zeros(horizon)
