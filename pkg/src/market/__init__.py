from src.market.params import ExecutionProblem, MarketParams, NoisePath, PathOutcome, Schedule
from src.market.simulation import (
    path_checksum,
    propagate_info,
    sample_noise,
    sample_noise_paths,
    simulate_policy,
    simulate_schedule,
    uniform_schedule,
)
