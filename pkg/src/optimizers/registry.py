import dataclasses
from typing import Any, Callable, Dict, Mapping

from src.optimizers.adagrad import step_adagrad
from src.optimizers.adam import step_adam
from src.optimizers.custom import step_custom
from src.optimizers.rmsprop import step_rmsprop
from src.utilities.utils import raise_error_if_invalid_value


@dataclasses.dataclass(frozen=True)
class SGDVariant:
    """
    Attributes:
        name: label used in configs, reports and random stream names.
        step: update rule (state, gradient, config[, total_shares]) -> state.
        resets_out_of_box: if True the step applies its own reset-to-uniform rule and takes
            ``total_shares``; otherwise iterates are clipped into the box after the step.
        adaptive_budget: if True the run length follows the state's live ``budget_current``.
        default_overrides: optimizer fields this variant replaces before any user override is applied.
    """

    name: str
    step: Callable
    resets_out_of_box: bool = False
    adaptive_budget: bool = False
    default_overrides: Dict[str, Any] = dataclasses.field(default_factory=dict)


OPTIMIZER_REGISTRY: Mapping[str, SGDVariant] = {
    "adagrad": SGDVariant("adagrad", step_adagrad),
    "rmsprop": SGDVariant("rmsprop", step_rmsprop),
    "adam": SGDVariant("adam", step_adam),
    "custom": SGDVariant(
        "custom",
        step_custom,
        resets_out_of_box=True,
        adaptive_budget=True,
        # the rescale onto the budget amplifies deviations by about (1 + 0.011 * lr) per step at defaults
        default_overrides={"learning_rate": 0.01, "max_iters": 1000, "max_learning_rate": 0.1},
    ),
}

VARIANTS = tuple(OPTIMIZER_REGISTRY.keys())


def get_variant(name: str) -> SGDVariant:
    raise_error_if_invalid_value(name, VARIANTS, name="variant")
    return OPTIMIZER_REGISTRY[name]
