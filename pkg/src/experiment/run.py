"""
Experiment drivers behind the ``simulate``, ``optimize``, ``benchmark`` and ``oracle`` subcommands.
"""

from __future__ import annotations

import dataclasses
import os
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
import xarray as xr

from src.evaluation.benchmark import Strategy, evaluate_common, verify_common_noise
from src.evaluation.metrics import (
    StrategyReport,
    metrics,
    rank_report,
    render_ranking_table,
    reports_to_dataframe,
    schedule_distances,
)
from src.experiment.config import ExperimentConfig, config_to_flat_dict, emit_config
from src.experiment.data_writer import DataWriter, DataWriterConfig
from src.market.params import NoisePath
from src.market.simulation import sample_noise, sample_noise_paths, uniform_schedule
from src.optimizers._base_optimizer import ConvergenceTrace
from src.optimizers.runner import run_optimizer
from src.policies.closed_form import ClosedFormPolicy
from src.policies.oracle import brute_force_oracle
from src.utilities.utils import MissingArtifactError, get_logger, get_rng


log = get_logger(__name__)

TRACE_COLUMNS = ["strategy", "iteration", "objective", "grad_norm", "learning_rate"]


@dataclasses.dataclass
class BenchmarkResult:
    """
    Attributes:
        results: per-strategy, per-path costs, executed schedules and noise checksums.
        reports: one report per strategy, ordered by rank.
        traces: convergence trace of every SGD variant.
    """

    results: xr.Dataset
    reports: List[StrategyReport]
    traces: Dict[str, ConvergenceTrace]

    @property
    def reference_schedules(self) -> xr.DataArray:
        return self.results["schedule"].isel(path=0)


def optimize_variant(config: ExperimentConfig, variant: str):
    """Runs one SGD variant on its own random stream of the master seed."""
    rng = get_rng(config.seed, variant)
    return run_optimizer(variant, config.optimizer_config_for(variant), config.market, config.problem, rng)


def build_strategies(config: ExperimentConfig) -> Tuple[List[Strategy], Dict[str, ConvergenceTrace]]:
    strategies = [Strategy("optimum", policy=ClosedFormPolicy.build(config.problem, config.market))]
    traces = {}
    for variant in config.variants:
        schedule, traces[variant] = optimize_variant(config, variant)
        strategies.append(Strategy(variant, schedule=schedule))
    if config.include_uniform:
        strategies.append(Strategy("uniform", schedule=uniform_schedule(config.problem)))
    return strategies, traces


def run_benchmark(config: ExperimentConfig) -> BenchmarkResult:
    """Optimizes every configured variant and evaluates all strategies on common noise paths."""
    params, problem = config.market, config.problem
    strategies, traces = build_strategies(config)
    noise_paths = sample_noise_paths(
        get_rng(config.seed, "benchmark"), config.paths, problem.horizon, params.sigma_eps, params.sigma_eta
    )
    results = evaluate_common(strategies, params, problem, noise_paths, verbose=config.verbose)
    verify_common_noise(results)
    reports = rank_report(metrics(results["cost"], results["schedule"], problem.total_shares))
    return BenchmarkResult(results=results, reports=reports, traces=traces)


def schedules_table(schedules: xr.DataArray) -> pd.DataFrame:
    """Wide table: ``period`` then one column of purchases per strategy."""
    table = {"period": schedules["period"].values.astype(int)}
    for name in schedules["strategy"].values:
        table[str(name)] = schedules.sel(strategy=name).values
    return pd.DataFrame(table)


def traces_table(traces: Dict[str, ConvergenceTrace]) -> pd.DataFrame:
    frames = [trace.to_dataframe(name) for name, trace in traces.items()]
    if not frames:
        return pd.DataFrame(columns=TRACE_COLUMNS)
    return pd.concat(frames, ignore_index=True)[TRACE_COLUMNS]


def emit_plot_data(output_dir: str, writer: Optional[DataWriter] = None) -> str:
    """Writes plot_data.csv, the long-format (strategy, period, shares) version of schedules.csv."""
    schedules_path = os.path.join(output_dir, "schedules.csv")
    if not os.path.isfile(schedules_path):
        raise MissingArtifactError(f"{schedules_path} not found; run the benchmark first")
    wide = pd.read_csv(schedules_path, float_precision="round_trip")
    strategies = [column for column in wide.columns if column != "period"]
    long = wide.melt(id_vars="period", value_vars=strategies, var_name="strategy", value_name="shares")
    long = long[["strategy", "period", "shares"]]
    writer = writer or DataWriter(output_dir)
    return writer.write_table("plot_data.csv", long)


def run_experiment(config: ExperimentConfig) -> int:
    """Runs the full benchmark and writes its artifacts to ``config.output_dir``.

    Writes schedules.csv, trace.csv, plot_data.csv and the resolved config.yaml, plus report.csv and/or
    report.json depending on ``config.output_format``.
    If anything fails, the files written so far are removed and the error re-raised.
    """
    writer_config = DataWriterConfig(output_format=config.output_format)
    with writer_config.build(config.output_dir) as writer:
        benchmark = run_benchmark(config)
        if config.verbose:
            render_ranking_table(benchmark.reports)

        if writer_config.write_csv_report:
            writer.write_table("report.csv", reports_to_dataframe(benchmark.reports))
        writer.write_table("schedules.csv", schedules_table(benchmark.reference_schedules))
        writer.write_table("trace.csv", traces_table(benchmark.traces))
        if writer_config.write_json_report:
            distances = schedule_distances(benchmark.results["schedule"])
            writer.write_json(
                "report.json",
                {
                    "seed": config.seed,
                    "config": config_to_flat_dict(config),
                    "strategies": [
                        {**report.to_row(), "std_increase": report.std_increase} for report in benchmark.reports
                    ],
                    "schedule_distances": {
                        str(name): {
                            str(other): float(distances.sel(strategy=name, other=other))
                            for other in distances["other"].values
                        }
                        for name in distances["strategy"].values
                    },
                },
            )
        emit_plot_data(config.output_dir, writer=writer)
        writer.write_text("config.yaml", emit_config(config))
    return 0


def run_simulate(config: ExperimentConfig) -> int:
    """Executes ``config.strategy`` on one noise path and writes the realized path."""
    params, problem = config.market, config.problem
    noise = sample_noise(get_rng(config.seed, "simulate"), problem.horizon, params.sigma_eps, params.sigma_eta)
    if config.strategy == "optimum":
        strategy = Strategy("optimum", policy=ClosedFormPolicy.build(problem, params))
    elif config.strategy == "uniform":
        strategy = Strategy("uniform", schedule=uniform_schedule(problem))
    else:
        schedule, _ = optimize_variant(config, config.strategy)
        strategy = Strategy(config.strategy, schedule=schedule)
    schedule, outcome = strategy.run(params, problem, noise)
    log.info(f"[{config.strategy}] cost={outcome.cost:.6f}")

    periods = np.arange(1, problem.horizon + 1)
    path = pd.DataFrame(
        {
            "period": periods,
            "shares": schedule.b,
            "price": outcome.prices,
            "info": outcome.info[1:],
            "remaining": outcome.remaining[:-1],
        }
    )
    writer_config = DataWriterConfig(output_format=config.output_format)
    with writer_config.build(config.output_dir) as writer:
        if writer_config.write_csv_report:
            writer.write_table("simulation.csv", path)
        if writer_config.write_json_report:
            writer.write_json(
                "simulation.json",
                {"seed": config.seed, "strategy": config.strategy, "cost": outcome.cost, **path.to_dict("list")},
            )
    return 0


def run_optimize(config: ExperimentConfig) -> int:
    """Runs ``config.variant`` alone and writes its schedule and convergence trace."""
    schedule, trace = optimize_variant(config, config.variant)
    periods = np.arange(1, config.problem.horizon + 1)
    writer_config = DataWriterConfig(output_format=config.output_format)
    with writer_config.build(config.output_dir) as writer:
        writer.write_table("schedules.csv", pd.DataFrame({"period": periods, config.variant: schedule.b}))
        writer.write_table("trace.csv", traces_table({config.variant: trace}))
        if writer_config.write_json_report:
            writer.write_json(
                "optimize.json",
                {
                    "seed": config.seed,
                    "variant": config.variant,
                    "iterations": len(trace),
                    "schedule": schedule.b.tolist(),
                    "config": config_to_flat_dict(config),
                },
            )
    return 0


def run_oracle(config: ExperimentConfig) -> int:
    """Brute-force check of the closed form on the noiseless path of a tiny instance."""
    params, problem = config.market, config.problem
    grid_step = problem.total_shares / config.oracle_grid_divisions
    noise = NoisePath.zeros(problem.horizon)
    oracle_schedule, oracle_cost = brute_force_oracle(params, problem, grid_step, noise)
    optimum_schedule, optimum = Strategy("optimum", policy=ClosedFormPolicy.build(problem, params)).run(
        params, problem, noise
    )
    max_deviation = float(np.max(np.abs(optimum_schedule.b - oracle_schedule.b)) / grid_step)
    log.info(
        f"oracle cost={oracle_cost:.6f}, closed-form cost={optimum.cost:.6f}, "
        f"max deviation={max_deviation:.3f} grid steps"
    )

    periods = np.arange(1, problem.horizon + 1)
    writer_config = DataWriterConfig(output_format=config.output_format)
    with writer_config.build(config.output_dir) as writer:
        comparison = pd.DataFrame({"period": periods, "oracle": oracle_schedule.b, "optimum": optimum_schedule.b})
        writer.write_table("oracle.csv", comparison)
        if writer_config.write_json_report:
            writer.write_json(
                "oracle.json",
                {
                    "grid_step": grid_step,
                    "oracle_cost": oracle_cost,
                    "optimum_cost": optimum.cost,
                    "max_deviation_in_grid_steps": max_deviation,
                },
            )
    return 0


SUBCOMMANDS = {
    "simulate": run_simulate,
    "optimize": run_optimize,
    "benchmark": run_experiment,
    "oracle": run_oracle,
}
