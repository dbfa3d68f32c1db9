import numpy as np
import pytest

from src.market.params import ExecutionProblem, MarketParams, NoisePath, Schedule
from src.market.simulation import sample_noise, simulate_schedule
from src.optimizers.objective import cost_gradient, minibatch_cost_and_gradient, path_cost
from src.utilities.utils import DimensionError, get_rng


def _central_differences(params, problem, b, noise, step=1e-3):
    grad = np.empty_like(b)
    for t in range(len(b)):
        up, down = b.copy(), b.copy()
        up[t] += step
        down[t] -= step
        grad[t] = (path_cost(params, problem, up, noise) - path_cost(params, problem, down, noise)) / (2 * step)
    return grad


def test_gradient_matches_finite_differences(params, problem):
    rng = get_rng(2024)
    for _ in range(100):
        b = rng.dirichlet(np.ones(problem.horizon)) * problem.total_shares
        noise = sample_noise(rng, problem.horizon, params.sigma_eps, params.sigma_eta)
        analytic = cost_gradient(params, problem, Schedule(b), noise)
        numeric = _central_differences(params, problem, b, noise)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-6)


def test_gradient_without_impact_is_the_price_path(problem):
    params = MarketParams(theta=0.0, gamma=0.0)
    noise = sample_noise(get_rng(1), problem.horizon, params.sigma_eps, params.sigma_eta)
    b = np.full(problem.horizon, 5000.0)
    prices = simulate_schedule(params, problem, Schedule(b), noise).prices
    np.testing.assert_allclose(cost_gradient(params, problem, b, noise), prices)


def test_path_cost_agrees_with_simulation(params, problem):
    noise = sample_noise(get_rng(9), problem.horizon, params.sigma_eps, params.sigma_eta)
    b = get_rng(9).dirichlet(np.ones(problem.horizon)) * problem.total_shares
    expected = simulate_schedule(params, problem, Schedule(b), noise).cost
    assert path_cost(params, problem, b, noise) == pytest.approx(expected)


def test_minibatch_averages(params, problem):
    rng = get_rng(4)
    noises = [sample_noise(rng, problem.horizon, params.sigma_eps, params.sigma_eta) for _ in range(3)]
    b = np.full(problem.horizon, 5000.0)
    cost, grad = minibatch_cost_and_gradient(params, problem, b, noises)
    assert cost == pytest.approx(np.mean([path_cost(params, problem, b, n) for n in noises]))
    np.testing.assert_allclose(grad, np.mean([cost_gradient(params, problem, b, n) for n in noises], axis=0))


def test_gradient_dimension_mismatch(params, problem):
    with pytest.raises(DimensionError):
        cost_gradient(params, problem, np.ones(5), NoisePath.zeros(problem.horizon))
    with pytest.raises(DimensionError):
        cost_gradient(params, ExecutionProblem(horizon=5), np.ones(5), NoisePath.zeros(4))


def test_gradient_hand_computed():
    params = MarketParams(theta=1.0, gamma=0.0, sigma_eps=0.0, sigma_eta=0.0, p0=10.0)
    problem = ExecutionProblem(total_shares=5.0, horizon=2)
    gradient = cost_gradient(params, problem, Schedule([3.0, 2.0]), NoisePath.zeros(2))
    np.testing.assert_allclose(gradient, [18.0, 17.0])
