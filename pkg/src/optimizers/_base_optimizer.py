from __future__ import annotations

import dataclasses
from typing import List, Optional

import numpy as np
import pandas as pd

from src.utilities.utils import check_domain


@dataclasses.dataclass
class OptimizerConfig:
    """
    Hyperparameters shared by the SGD variants.

    Attributes:
        learning_rate: step size eta (shares per unit gradient).
        beta1: decay of the squared-gradient average (RMSprop) and of the first moment (Adam).
        beta2: decay of Adam's second moment.
        max_iters: iteration budget. The Custom variant starts from it and adapts it while running.
        numeric_eps: guard added inside the square root of the adaptive denominators.
        minibatch: number of fresh noise paths averaged per gradient estimate.
        window: trailing iterations used by Custom's weighted gradient-norm average.
        hard_cap_factor: Custom stops after hard_cap_factor * max_iters iterations whatever its live budget.
        log_every: log progress every that many iterations (0 disables).
        record_trace: whether to keep the per-iteration convergence trace.
        max_learning_rate: upper bound on Custom's adaptive learning rate (None leaves it unbounded).
    """

    learning_rate: float = 0.025
    beta1: float = 0.98
    beta2: float = 0.99
    max_iters: int = 10_000
    numeric_eps: float = 1e-8
    minibatch: int = 1
    window: int = 10
    hard_cap_factor: int = 10
    log_every: int = 1000
    record_trace: bool = True
    max_learning_rate: Optional[float] = None

    def __post_init__(self):
        check_domain("learning_rate", self.learning_rate, "learning_rate > 0", self.learning_rate > 0)
        check_domain("beta1", self.beta1, "0 < beta1 < 1", 0 < self.beta1 < 1)
        check_domain("beta2", self.beta2, "0 < beta2 < 1", 0 < self.beta2 < 1)
        check_domain("numeric_eps", self.numeric_eps, "numeric_eps > 0", self.numeric_eps > 0)
        check_domain("max_iters", self.max_iters, "max_iters >= 1", self.max_iters >= 1)
        check_domain("minibatch", self.minibatch, "minibatch >= 1", self.minibatch >= 1)
        check_domain("window", self.window, "window >= 1", self.window >= 1)
        check_domain("hard_cap_factor", self.hard_cap_factor, "hard_cap_factor >= 1", self.hard_cap_factor >= 1)
        check_domain("log_every", self.log_every, "log_every >= 0", self.log_every >= 0)
        if self.max_learning_rate is not None:
            check_domain(
                "max_learning_rate",
                self.max_learning_rate,
                "max_learning_rate >= learning_rate",
                self.max_learning_rate >= self.learning_rate,
            )

    @property
    def hard_cap(self) -> int:
        return self.hard_cap_factor * self.max_iters


@dataclasses.dataclass
class OptimizerState:
    """
    Mutable state of one optimizer run. Step functions update it in place and return it.

    Attributes:
        iterate: current schedule candidate.
        accum_sq: accumulated (AdaGrad) or decayed (RMSprop) squared gradients per period.
        moment1: Adam's decayed gradient average.
        moment2: Adam's decayed squared-gradient average.
        iteration: number of completed steps.
        lr_current: Custom's adaptive learning rate.
        budget_current: Custom's real-valued iteration budget.
        norm_history: Custom's trailing window of squared gradient components (one row per iteration);
            the norm of an iteration is the square root of its row sum.
    """

    iterate: np.ndarray
    accum_sq: np.ndarray
    moment1: np.ndarray
    moment2: np.ndarray
    iteration: int = 0
    lr_current: float = 0.0
    budget_current: float = 0.0
    norm_history: List[np.ndarray] = dataclasses.field(default_factory=list)

    @classmethod
    def initialize(cls, iterate: np.ndarray, config: OptimizerConfig) -> OptimizerState:
        iterate = np.array(iterate, dtype=np.float64)
        return cls(
            iterate=iterate,
            accum_sq=np.zeros_like(iterate),
            moment1=np.zeros_like(iterate),
            moment2=np.zeros_like(iterate),
            lr_current=config.learning_rate,
            budget_current=float(config.max_iters),
        )

    def history_norms(self) -> np.ndarray:
        return np.array([np.sqrt(row.sum()) for row in self.norm_history])


@dataclasses.dataclass
class ConvergenceTrace:
    """Per-iteration records of an optimizer run."""

    iteration: List[int] = dataclasses.field(default_factory=list)
    objective: List[float] = dataclasses.field(default_factory=list)
    grad_norm: List[float] = dataclasses.field(default_factory=list)
    learning_rate: List[float] = dataclasses.field(default_factory=list)

    def append(self, iteration: int, objective: float, grad_norm: float, learning_rate: float):
        self.iteration.append(iteration)
        self.objective.append(objective)
        self.grad_norm.append(grad_norm)
        self.learning_rate.append(learning_rate)

    def __len__(self) -> int:
        return len(self.iteration)

    def to_dataframe(self, strategy: str) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "strategy": strategy,
                "iteration": self.iteration,
                "objective": self.objective,
                "grad_norm": self.grad_norm,
                "learning_rate": self.learning_rate,
            }
        )
