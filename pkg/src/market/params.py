from __future__ import annotations

import dataclasses

import numpy as np

from src.utilities.utils import DimensionError, ParameterDomainError, check_domain


BUDGET_RTOL = 1e-9


@dataclasses.dataclass
class MarketParams:
    """
    Coefficients of the additive permanent price-impact market with an AR(1) information process.

        P_t = P_{t-1} + theta * B_t + gamma * X_t + eps_t,    X_t = rho * X_{t-1} + eta_t

    The defaults are calibration choices (only sigma_eps=0.125 is a published value) chosen so that
    buying 100,000 shares over 20 periods costs roughly 5.27e6.

    Attributes:
        theta: price impact per share traded.
        gamma: price impact per unit of information.
        rho: autocorrelation of the information process, |rho| < 1.
        sigma_eps: standard deviation of the price shocks.
        sigma_eta: standard deviation of the information shocks.
        p0: price before the first trade.
        x0: information level before the first trade.
    """

    theta: float = 5e-5
    gamma: float = 5e-3
    rho: float = 0.5
    sigma_eps: float = 0.125
    sigma_eta: float = 1.0
    p0: float = 50.0
    x0: float = 0.0

    def __post_init__(self):
        for name in ("theta", "gamma", "rho", "sigma_eps", "sigma_eta", "p0", "x0"):
            value = getattr(self, name)
            check_domain(name, value, "finiteness", np.isfinite(value))
        check_domain("theta", self.theta, "theta >= 0", self.theta >= 0)
        check_domain("theta", self.theta, "theta > 0 when gamma != 0", self.theta > 0 or self.gamma == 0)
        check_domain("sigma_eps", self.sigma_eps, "sigma_eps >= 0", self.sigma_eps >= 0)
        check_domain("sigma_eta", self.sigma_eta, "sigma_eta >= 0", self.sigma_eta >= 0)
        check_domain("rho", self.rho, "|rho| < 1", abs(self.rho) < 1)


@dataclasses.dataclass
class ExecutionProblem:
    """
    Attributes:
        total_shares: size of the block to acquire (real-valued shares).
        horizon: number of trading periods T.
    """

    total_shares: float = 100_000.0
    horizon: int = 20

    def __post_init__(self):
        check_domain("total_shares", self.total_shares, "total_shares > 0", self.total_shares > 0)
        check_domain("horizon", self.horizon, "horizon >= 1 (integer)", int(self.horizon) == self.horizon >= 1)
        self.horizon = int(self.horizon)


@dataclasses.dataclass
class NoisePath:
    """One realization of the price shocks ``eps`` and information shocks ``eta`` (both of length T)."""

    eps: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        self.eps = np.asarray(self.eps, dtype=np.float64)
        self.eta = np.asarray(self.eta, dtype=np.float64)
        if self.eps.ndim != 1 or self.eps.shape != self.eta.shape:
            raise DimensionError(f"eps and eta must be 1-d of equal length, got {self.eps.shape} and {self.eta.shape}")

    @property
    def horizon(self) -> int:
        return len(self.eps)

    @classmethod
    def zeros(cls, horizon: int) -> NoisePath:
        return cls(eps=np.zeros(horizon), eta=np.zeros(horizon))


@dataclasses.dataclass
class Schedule:
    """Purchases ``b[t]`` per period. Feasible schedules are nonnegative and sum to the block."""

    b: np.ndarray

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=np.float64)
        if self.b.ndim != 1:
            raise DimensionError(f"Schedule must be 1-d, got shape {self.b.shape}")

    def __len__(self) -> int:
        return len(self.b)

    def check_horizon(self, problem: ExecutionProblem):
        if len(self.b) != problem.horizon:
            raise DimensionError(f"Schedule has {len(self.b)} periods but the horizon is {problem.horizon}")

    def is_feasible(self, problem: ExecutionProblem, rtol: float = BUDGET_RTOL) -> bool:
        return (
            len(self.b) == problem.horizon
            and bool(np.all(self.b >= 0))
            and abs(self.b.sum() - problem.total_shares) <= rtol * problem.total_shares
        )

    def validate(self, problem: ExecutionProblem, rtol: float = BUDGET_RTOL) -> Schedule:
        self.check_horizon(problem)
        if np.any(self.b < 0):
            raise ParameterDomainError(f"Schedule has negative purchases: min(b)={self.b.min()}")
        if abs(self.b.sum() - problem.total_shares) > rtol * problem.total_shares:
            raise ParameterDomainError(
                f"Schedule buys {self.b.sum()} shares but total_shares={problem.total_shares} (rtol={rtol})"
            )
        return self


@dataclasses.dataclass
class PathOutcome:
    """
    Attributes:
        prices: realized prices P_1..P_T.
        info: information levels X_0..X_T (length T+1).
        remaining: remaining[0] = total_shares and remaining[t] = remaining[t-1] - b[t], so remaining[T] = 0
            for a complete schedule (remaining[t-1] is S_t, the position still to buy at period t).
        cost: total execution cost sum_t P_t * b_t.
    """

    prices: np.ndarray
    info: np.ndarray
    remaining: np.ndarray
    cost: float
