from src.optimizers._base_optimizer import ConvergenceTrace, OptimizerConfig, OptimizerState
from src.optimizers.adagrad import step_adagrad
from src.optimizers.adam import step_adam
from src.optimizers.custom import step_custom
from src.optimizers.objective import cost_gradient, path_cost
from src.optimizers.projections import project_box, project_budget
from src.optimizers.registry import OPTIMIZER_REGISTRY, VARIANTS, get_variant
from src.optimizers.rmsprop import step_rmsprop
from src.optimizers.runner import run_optimizer
