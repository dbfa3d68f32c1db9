"""
Noise generation and forward simulation of prices, information and execution cost.

Periods are 1-based in the documentation (t = 1..T) and 0-based in arrays (b[t-1] is B_t).
"""

from __future__ import annotations

import hashlib
from typing import Callable, Tuple

import numpy as np

from src.market.params import ExecutionProblem, MarketParams, NoisePath, PathOutcome, Schedule
from src.utilities.utils import DimensionError, check_domain, get_logger


log = get_logger(__name__)

# policy(t, S_t, X_{t-1}) -> order size for period t (1-based)
Policy = Callable[[int, float, float], float]


def sample_noise(rng: np.random.Generator, horizon: int, sigma_eps: float, sigma_eta: float) -> NoisePath:
    """Draws one noise path: ``horizon`` price shocks first, then ``horizon`` information shocks."""
    check_domain("horizon", horizon, "horizon >= 1", horizon >= 1)
    check_domain("sigma_eps", sigma_eps, "sigma_eps >= 0", sigma_eps >= 0)
    check_domain("sigma_eta", sigma_eta, "sigma_eta >= 0", sigma_eta >= 0)
    eps = sigma_eps * rng.standard_normal(horizon)
    eta = sigma_eta * rng.standard_normal(horizon)
    return NoisePath(eps=eps, eta=eta)


def sample_noise_paths(
    rng: np.random.Generator, n_paths: int, horizon: int, sigma_eps: float, sigma_eta: float
) -> list[NoisePath]:
    return [sample_noise(rng, horizon, sigma_eps, sigma_eta) for _ in range(n_paths)]


def propagate_info(x0: float, rho: float, eta: np.ndarray) -> np.ndarray:
    """AR(1) information levels X_0..X_T with X_t = rho * X_{t-1} + eta_t."""
    check_domain("rho", rho, "|rho| < 1", abs(rho) < 1)
    eta = np.asarray(eta, dtype=np.float64)
    info = np.empty(len(eta) + 1)
    info[0] = x0
    for t, shock in enumerate(eta, start=1):
        info[t] = rho * info[t - 1] + shock
    return info


def path_checksum(noise: NoisePath) -> str:
    """Fingerprint of a noise path, used to prove that strategies were evaluated on identical shocks."""
    digest = hashlib.sha256()
    digest.update(noise.eps.tobytes())
    digest.update(noise.eta.tobytes())
    return digest.hexdigest()


def _check_noise(problem: ExecutionProblem, noise: NoisePath):
    if noise.horizon != problem.horizon:
        raise DimensionError(f"Noise path has {noise.horizon} periods but the horizon is {problem.horizon}")


def realized_prices(params: MarketParams, b: np.ndarray, info: np.ndarray, noise: NoisePath) -> np.ndarray:
    """P_t = p0 + sum_{k<=t} (theta * b_k + gamma * X_k + eps_k)."""
    increments = params.theta * b + params.gamma * info[1:] + noise.eps
    return params.p0 + np.cumsum(increments)


def simulate_schedule(
    params: MarketParams, problem: ExecutionProblem, schedule: Schedule, noise: NoisePath
) -> PathOutcome:
    """Executes a fixed schedule on one noise path.

    Only the horizon is checked, so perturbed (infeasible) schedules can be evaluated too, e.g. when
    differencing costs numerically.
    """
    schedule.check_horizon(problem)
    _check_noise(problem, noise)
    b = schedule.b
    info = propagate_info(params.x0, params.rho, noise.eta)
    prices = realized_prices(params, b, info, noise)
    remaining = problem.total_shares - np.concatenate(([0.0], np.cumsum(b)))
    return PathOutcome(prices=prices, info=info, remaining=remaining, cost=float(np.dot(prices, b)))


def simulate_policy(
    params: MarketParams, problem: ExecutionProblem, policy: Policy, noise: NoisePath
) -> Tuple[Schedule, PathOutcome]:
    """Executes a state-feedback policy on one noise path.

    At every period the policy sees (t, S_t, X_{t-1}); its order is clipped to [0, S_t] and the last
    period buys whatever is left.
    """
    _check_noise(problem, noise)
    horizon = problem.horizon
    info = propagate_info(params.x0, params.rho, noise.eta)
    b = np.zeros(horizon)
    remaining = float(problem.total_shares)
    for t in range(1, horizon + 1):
        if t == horizon:
            order = remaining
        else:
            raw = float(policy(t, remaining, float(info[t - 1])))
            if not np.isfinite(raw):
                raise ValueError(f"Policy returned a non-finite order ({raw}) at period {t}")
            order = min(max(raw, 0.0), remaining)
        b[t - 1] = order
        remaining -= order
    schedule = Schedule(b)
    return schedule, simulate_schedule(params, problem, schedule, noise)


def uniform_schedule(problem: ExecutionProblem) -> Schedule:
    """The TWAP schedule total_shares / T in every period."""
    return Schedule(np.full(problem.horizon, problem.total_shares / problem.horizon))
