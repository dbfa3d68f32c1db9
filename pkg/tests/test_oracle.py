import numpy as np
import pytest

from src.market.params import ExecutionProblem, MarketParams, NoisePath
from src.market.simulation import simulate_policy
from src.policies.closed_form import ClosedFormPolicy
from src.policies.oracle import brute_force_oracle
from src.utilities.utils import ParameterDomainError


def test_closed_form_matches_brute_force_without_information_impact(noiseless_params):
    problem = ExecutionProblem(total_shares=100_000.0, horizon=3)
    grid_step = problem.total_shares / 60
    noise = NoisePath.zeros(3)
    oracle_schedule, oracle_cost = brute_force_oracle(noiseless_params, problem, grid_step, noise)
    schedule, outcome = simulate_policy(
        noiseless_params, problem, ClosedFormPolicy.build(problem, noiseless_params), noise
    )
    assert np.all(np.abs(schedule.b - oracle_schedule.b) <= grid_step)
    assert outcome.cost <= oracle_cost + noiseless_params.theta * grid_step * problem.total_shares
    assert oracle_schedule.is_feasible(problem)


def test_oracle_keeps_first_schedule_on_ties():
    params = MarketParams(theta=0.0, gamma=0.0, sigma_eps=0.0, sigma_eta=0.0)
    problem = ExecutionProblem(total_shares=60.0, horizon=3)
    schedule, cost = brute_force_oracle(params, problem, 1.0, NoisePath.zeros(3))
    np.testing.assert_array_equal(schedule.b, [0.0, 0.0, 60.0])
    assert cost == params.p0 * 60.0


def test_oracle_refuses_large_instances(noiseless_params):
    with pytest.raises(ParameterDomainError, match="horizon"):
        brute_force_oracle(noiseless_params, ExecutionProblem(horizon=5), 25_000.0, NoisePath.zeros(5))
    with pytest.raises(ParameterDomainError):
        brute_force_oracle(noiseless_params, ExecutionProblem(horizon=4), 1.0, NoisePath.zeros(4))
    with pytest.raises(ParameterDomainError, match="grid_step"):
        brute_force_oracle(noiseless_params, ExecutionProblem(horizon=2), 0.0, NoisePath.zeros(2))
