import numpy as np
import pytest

from src.evaluation.benchmark import Strategy, evaluate_common, verify_common_noise
from src.market.params import ExecutionProblem, MarketParams, NoisePath, Schedule
from src.market.simulation import path_checksum, sample_noise_paths, uniform_schedule
from src.policies.closed_form import ClosedFormPolicy
from src.utilities.utils import DimensionError, ParameterDomainError, get_rng


def _paths(params, problem, n=5, seed=0):
    return sample_noise_paths(get_rng(seed, "benchmark"), n, problem.horizon, params.sigma_eps, params.sigma_eta)


def test_identical_schedules_have_identical_costs(params, problem):
    strategies = [Strategy("a", schedule=uniform_schedule(problem)), Strategy("b", schedule=uniform_schedule(problem))]
    results = evaluate_common(strategies, params, problem, _paths(params, problem))
    np.testing.assert_array_equal(results["cost"].sel(strategy="a"), results["cost"].sel(strategy="b"))
    assert results["cost"].dims == ("strategy", "path")
    assert results["schedule"].shape == (2, 5, problem.horizon)


def test_no_impact_no_noise_costs_equal_initial_value(problem):
    params = MarketParams(theta=0.0, gamma=0.0, sigma_eps=0.0, sigma_eta=0.0)
    rng = get_rng(1)
    strategies = [
        Strategy("optimum", policy=ClosedFormPolicy.build(problem, params)),
        Strategy("random", schedule=Schedule(rng.dirichlet(np.ones(problem.horizon)) * problem.total_shares)),
    ]
    results = evaluate_common(strategies, params, problem, [NoisePath.zeros(problem.horizon)] * 3)
    np.testing.assert_allclose(results["cost"].values, params.p0 * problem.total_shares, rtol=1e-12)


def test_optimum_equals_uniform_without_information_impact(problem):
    params = MarketParams(gamma=0.0)
    strategies = [
        Strategy("optimum", policy=ClosedFormPolicy.build(problem, params)),
        Strategy("uniform", schedule=uniform_schedule(problem)),
    ]
    results = evaluate_common(strategies, params, problem, _paths(params, problem, n=10))
    np.testing.assert_allclose(
        results["cost"].sel(strategy="optimum"), results["cost"].sel(strategy="uniform"), rtol=1e-12
    )


def test_policies_adapt_per_path_while_schedules_do_not(params, problem):
    strategies = [
        Strategy("optimum", policy=ClosedFormPolicy.build(problem, params)),
        Strategy("uniform", schedule=uniform_schedule(problem)),
    ]
    results = evaluate_common(strategies, params, problem, _paths(params, problem))
    executed = results["schedule"]
    assert float(executed.sel(strategy="uniform").std("path").max()) == 0.0
    assert float(executed.sel(strategy="optimum").std("path").max()) > 0.0


def test_common_noise_pairing_is_recorded(params, problem):
    paths = _paths(params, problem)
    strategies = [
        Strategy("optimum", policy=ClosedFormPolicy.build(problem, params)),
        Strategy("uniform", schedule=uniform_schedule(problem)),
    ]
    results = evaluate_common(strategies, params, problem, paths)
    verify_common_noise(results)
    assert list(results["checksum"].sel(strategy="uniform").values) == [path_checksum(p) for p in paths]

    results["checksum"].values[1, 2] = "tampered"
    with pytest.raises(RuntimeError, match="2"):
        verify_common_noise(results)


def test_evaluate_common_errors(params, problem):
    strategy = Strategy("uniform", schedule=uniform_schedule(problem))
    with pytest.raises(DimensionError):
        evaluate_common([strategy], params, problem, [])
    with pytest.raises(DimensionError):
        evaluate_common([strategy], params, problem, [NoisePath.zeros(problem.horizon - 1)])
    with pytest.raises(DimensionError):
        evaluate_common([strategy], params, ExecutionProblem(horizon=10), [NoisePath.zeros(10)])
    with pytest.raises(ValueError, match="unique"):
        evaluate_common([strategy, strategy], params, problem, [NoisePath.zeros(problem.horizon)])


def test_strategy_needs_exactly_one_rule(problem):
    with pytest.raises(ValueError):
        Strategy("empty")
    with pytest.raises(ValueError):
        Strategy("both", schedule=uniform_schedule(problem), policy=lambda t, s, x: s)


def test_infeasible_fixed_schedules_are_rejected(params, problem):
    short = Strategy("short", schedule=Schedule(np.full(problem.horizon, 1000.0)))
    with pytest.raises(ParameterDomainError, match="total_shares"):
        evaluate_common([short], params, problem, [NoisePath.zeros(problem.horizon)])
    negative = Strategy("negative", schedule=Schedule(np.r_[-1.0, np.full(problem.horizon - 1, 100_001.0 / 19)]))
    with pytest.raises(ParameterDomainError, match="negative"):
        evaluate_common([negative], params, problem, [NoisePath.zeros(problem.horizon)])
