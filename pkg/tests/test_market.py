import numpy as np
import pytest

from src.market.params import ExecutionProblem, MarketParams, NoisePath, Schedule
from src.market.simulation import (
    path_checksum,
    propagate_info,
    sample_noise,
    sample_noise_paths,
    simulate_policy,
    simulate_schedule,
    uniform_schedule,
)
from src.utilities.utils import DimensionError, ParameterDomainError, get_rng


@pytest.mark.parametrize(
    "kwargs, name",
    [
        ({"rho": 1.5}, "rho"),
        ({"rho": -1.0}, "rho"),
        ({"theta": -1e-6}, "theta"),
        ({"theta": 0.0, "gamma": 0.005}, "theta"),
        ({"sigma_eps": -0.1}, "sigma_eps"),
        ({"sigma_eta": -1.0}, "sigma_eta"),
        ({"p0": float("nan")}, "p0"),
    ],
)
def test_market_params_reject_invalid_values(kwargs, name):
    with pytest.raises(ParameterDomainError, match=name):
        MarketParams(**kwargs)


@pytest.mark.parametrize("kwargs", [{"total_shares": 0.0}, {"horizon": 0}, {"horizon": 2.5}])
def test_execution_problem_rejects_invalid_values(kwargs):
    with pytest.raises(ParameterDomainError):
        ExecutionProblem(**kwargs)


def test_noise_path_lengths_must_match():
    with pytest.raises(DimensionError):
        NoisePath(eps=np.zeros(3), eta=np.zeros(4))


def test_propagate_info_ar1():
    info = propagate_info(1.0, 0.5, np.zeros(3))
    np.testing.assert_allclose(info, [1.0, 0.5, 0.25, 0.125])
    info = propagate_info(0.0, 0.5, np.array([1.0, 2.0]))
    np.testing.assert_allclose(info, [0.0, 1.0, 2.5])


def test_propagate_info_rejects_nonstationary_rho():
    with pytest.raises(ParameterDomainError, match="rho"):
        propagate_info(0.0, 1.0, np.zeros(2))


def test_simulate_schedule_hand_computed():
    params = MarketParams(theta=1.0, gamma=0.0, sigma_eps=0.0, sigma_eta=0.0, p0=0.0)
    problem = ExecutionProblem(total_shares=2.0, horizon=2)
    outcome = simulate_schedule(params, problem, Schedule([1.0, 1.0]), NoisePath.zeros(2))
    np.testing.assert_allclose(outcome.prices, [1.0, 2.0])
    np.testing.assert_allclose(outcome.remaining, [2.0, 1.0, 0.0])
    assert outcome.cost == pytest.approx(3.0)


def test_simulate_schedule_information_and_shocks():
    params = MarketParams(theta=0.2, gamma=2.0, rho=0.5, p0=10.0, x0=1.0)
    problem = ExecutionProblem(total_shares=1.0, horizon=2)
    noise = NoisePath(eps=[0.1, -0.2], eta=[0.0, 1.0])
    outcome = simulate_schedule(params, problem, Schedule([0.5, 0.5]), noise)
    # X = [1, 0.5, 1.25]; P_1 = 10 + 0.1 + 1 + 0.1, P_2 = P_1 + 0.1 + 2.5 - 0.2
    np.testing.assert_allclose(outcome.info, [1.0, 0.5, 1.25])
    np.testing.assert_allclose(outcome.prices, [11.2, 13.6])
    assert outcome.cost == pytest.approx(0.5 * 11.2 + 0.5 * 13.6)


def test_no_impact_no_noise_cost_is_initial_price_times_block(problem):
    params = MarketParams(theta=0.0, gamma=0.0, sigma_eps=0.0, sigma_eta=0.0)
    outcome = simulate_schedule(params, problem, uniform_schedule(problem), NoisePath.zeros(problem.horizon))
    assert outcome.cost == pytest.approx(params.p0 * problem.total_shares, rel=1e-12)
    assert outcome.remaining[-1] == pytest.approx(0.0, abs=1e-6)


def test_simulate_schedule_dimension_mismatch(params, problem):
    with pytest.raises(DimensionError):
        simulate_schedule(params, problem, Schedule(np.ones(3)), NoisePath.zeros(problem.horizon))
    with pytest.raises(DimensionError):
        simulate_schedule(params, problem, uniform_schedule(problem), NoisePath.zeros(3))


def test_simulate_policy_clips_orders_and_forces_final_period(params):
    problem = ExecutionProblem(total_shares=100.0, horizon=4)
    orders = {1: -5.0, 2: 1e9, 3: 7.0}
    schedule, outcome = simulate_policy(
        params, problem, lambda t, remaining, x_prev: orders.get(t, 0.0), NoisePath.zeros(4)
    )
    np.testing.assert_allclose(schedule.b, [0.0, 100.0, 0.0, 0.0])
    assert schedule.is_feasible(problem)
    np.testing.assert_allclose(outcome.remaining, [100.0, 100.0, 0.0, 0.0, 0.0])


def test_simulate_policy_buys_leftover_in_last_period(params):
    problem = ExecutionProblem(total_shares=100.0, horizon=3)
    schedule, _ = simulate_policy(params, problem, lambda t, remaining, x_prev: 10.0, NoisePath.zeros(3))
    np.testing.assert_allclose(schedule.b, [10.0, 10.0, 80.0])


def test_simulate_policy_rejects_non_finite_orders(params):
    problem = ExecutionProblem(total_shares=100.0, horizon=3)
    with pytest.raises(ValueError, match="non-finite"):
        simulate_policy(params, problem, lambda t, remaining, x_prev: float("nan"), NoisePath.zeros(3))


def test_sample_noise_draws_eps_before_eta():
    noise = sample_noise(get_rng(3), 5, sigma_eps=0.5, sigma_eta=2.0)
    reference = get_rng(3)
    eps, eta = reference.standard_normal(5), reference.standard_normal(5)
    np.testing.assert_array_equal(noise.eps, 0.5 * eps)
    np.testing.assert_array_equal(noise.eta, 2.0 * eta)


def test_random_streams_are_reproducible_and_independent():
    a = sample_noise_paths(get_rng(42, "benchmark"), 3, 20, 0.125, 1.0)
    b = sample_noise_paths(get_rng(42, "benchmark"), 3, 20, 0.125, 1.0)
    c = sample_noise_paths(get_rng(42, "adam"), 3, 20, 0.125, 1.0)
    assert [path_checksum(p) for p in a] == [path_checksum(p) for p in b]
    assert path_checksum(a[0]) != path_checksum(c[0])
    assert len({path_checksum(p) for p in a}) == 3


def test_schedule_validation(problem):
    assert uniform_schedule(problem).is_feasible(problem)
    np.testing.assert_allclose(uniform_schedule(problem).b, 5000.0)
    with pytest.raises(ParameterDomainError, match="negative"):
        Schedule(np.r_[-1.0, np.full(19, 100_001.0 / 19)]).validate(problem)
    with pytest.raises(ParameterDomainError, match="total_shares"):
        Schedule(np.full(20, 4000.0)).validate(problem)
    with pytest.raises(DimensionError):
        Schedule(np.full(10, 10_000.0)).validate(problem)


def test_zero_impact_is_allowed_without_information_impact():
    assert MarketParams(theta=0.0, gamma=0.0).theta == 0.0


def test_price_impact_and_information_hand_computed():
    problem = ExecutionProblem(total_shares=5.0, horizon=2)
    impact_only = MarketParams(theta=1.0, gamma=0.0, sigma_eps=0.0, sigma_eta=0.0, p0=10.0)
    outcome = simulate_schedule(impact_only, problem, Schedule([3.0, 2.0]), NoisePath.zeros(2))
    np.testing.assert_allclose(outcome.prices, [13.0, 15.0])
    assert outcome.cost == 69.0

    with_information = MarketParams(theta=1.0, gamma=1.0, rho=0.0, x0=0.0, p0=10.0)
    noise = NoisePath(eps=[0.0, 0.0], eta=[1.0, 0.0])
    outcome = simulate_schedule(with_information, problem, Schedule([3.0, 2.0]), noise)
    np.testing.assert_allclose(outcome.prices, [14.0, 16.0])
    assert outcome.cost == 74.0


def test_price_shock_variance(params):
    paths = sample_noise_paths(get_rng(42, "simulate"), 10_000, 20, params.sigma_eps, params.sigma_eta)
    eps = np.concatenate([path.eps for path in paths])
    assert np.var(eps, ddof=1) == pytest.approx(0.125**2, rel=0.05)


def test_prices_decompose_into_impact_information_and_shocks(params, problem):
    rng = get_rng(17)
    for _ in range(20):
        b = rng.dirichlet(np.ones(problem.horizon)) * problem.total_shares
        noise = sample_noise(rng, problem.horizon, params.sigma_eps, params.sigma_eta)
        outcome = simulate_schedule(params, problem, Schedule(b), noise)
        expected = (
            params.theta * np.cumsum(b) + params.gamma * np.cumsum(outcome.info[1:]) + np.cumsum(noise.eps)
        )
        np.testing.assert_allclose(outcome.prices - params.p0, expected, rtol=1e-9, atol=1e-9)


def test_cost_is_nondecreasing_in_theta(problem):
    b = get_rng(5).dirichlet(np.ones(problem.horizon)) * problem.total_shares
    costs = [
        simulate_schedule(
            MarketParams(theta=theta, gamma=0.0), problem, Schedule(b), NoisePath.zeros(problem.horizon)
        ).cost
        for theta in (0.0, 1e-6, 5e-5, 1e-4, 1e-3)
    ]
    assert all(later >= earlier for earlier, later in zip(costs, costs[1:]))


def test_purchases_move_all_later_prices_permanently(params, problem):
    noise = sample_noise(get_rng(23), problem.horizon, params.sigma_eps, params.sigma_eta)
    b = np.full(problem.horizon, 5000.0)
    t = 7
    without = b.copy()
    without[t] = 0.0
    shift = (
        simulate_schedule(params, problem, Schedule(b), noise).prices
        - simulate_schedule(params, problem, Schedule(without), noise).prices
    )
    np.testing.assert_allclose(shift[:t], 0.0, atol=1e-9)
    np.testing.assert_allclose(shift[t:], params.theta * b[t], rtol=1e-9)
