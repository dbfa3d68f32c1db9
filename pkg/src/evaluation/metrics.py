"""
Comparison metrics of execution strategies: mean cost, excess cost per share over the closed form,
dispersion of the purchases, and the cost ranking.
"""

from __future__ import annotations

import dataclasses
from typing import List, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd
import xarray as xr

from src.utilities.utils import get_logger


log = get_logger(__name__)

OPTIMUM = "optimum"
DISPLAY_NAMES = {
    "optimum": "Optimum",
    "adagrad": "AdaGrad",
    "rmsprop": "RMSprop",
    "adam": "Adam",
    "custom": "Custom",
    "uniform": "Uniform",
}
REPORT_COLUMNS = ["strategy", "cost", "excess_per_share", "std_within_path", "std_across_paths_total", "rank"]


@dataclasses.dataclass
class StrategyReport:
    """
    Attributes:
        name: strategy label.
        cost: mean execution cost over the evaluated paths.
        excess_per_share: (cost - optimum cost) / total_shares.
        std_within_path: standard deviation of b_t over the periods of the reference path (path 0).
        std_across_paths_total: standard deviation of b_t pooled over all paths and periods.
        rank: 1-based cost rank (ties broken by name).
        std_increase: std_within_path minus the optimum's std_within_path.
    """

    name: str
    cost: float
    excess_per_share: float
    std_within_path: float = float("nan")
    std_across_paths_total: float = float("nan")
    rank: int = 0
    std_increase: float = float("nan")

    def to_row(self) -> dict:
        return {
            "strategy": self.name,
            "cost": self.cost,
            "excess_per_share": self.excess_per_share,
            "std_within_path": self.std_within_path,
            "std_across_paths_total": self.std_across_paths_total,
            "rank": self.rank,
        }


def _to_cost_matrix(costs: Union[xr.DataArray, Mapping[str, Sequence[float]]]) -> xr.DataArray:
    if isinstance(costs, xr.DataArray):
        return costs
    if len(costs) == 0:
        raise ValueError("Cannot compute metrics of an empty cost matrix")
    names = list(costs.keys())
    values = np.array([np.atleast_1d(np.asarray(costs[name], dtype=np.float64)) for name in names])
    return xr.DataArray(values, dims=("strategy", "path"), coords={"strategy": names})


def rank_report(reports: Sequence[StrategyReport]) -> List[StrategyReport]:
    """Rows ordered by cost (ascending, ties by name) with ranks 1..n assigned in that order."""
    ordered = sorted(reports, key=lambda report: (report.cost, report.name))
    return [dataclasses.replace(report, rank=rank) for rank, report in enumerate(ordered, start=1)]


def metrics(
    costs: Union[xr.DataArray, Mapping[str, Sequence[float]]],
    schedules: Optional[xr.DataArray],
    total_shares: float,
    optimum_name: str = OPTIMUM,
) -> List[StrategyReport]:
    """Builds one report per strategy (in the order of the cost matrix).

    Args:
        costs: cost matrix with dims (strategy, path), or a mapping from strategy name to its path costs.
        schedules: executed purchases with dims (strategy, path, period); dispersion columns are NaN if None.
        total_shares: block size used to express excess costs per share.
        optimum_name: the strategy that excess costs are measured against.
    """
    costs = _to_cost_matrix(costs)
    if costs.size == 0:
        raise ValueError("Cannot compute metrics of an empty cost matrix")
    names = [str(name) for name in costs["strategy"].values]
    if optimum_name not in names:
        raise ValueError(f"Optimum strategy ``{optimum_name}`` not in {names}")

    mean_costs = costs.mean("path") if "path" in costs.dims else costs
    optimum_cost = float(mean_costs.sel(strategy=optimum_name))
    if schedules is not None:
        std_within = schedules.isel(path=0).std("period")
        std_total = schedules.std(("path", "period"))
        optimum_std = float(std_within.sel(strategy=optimum_name))

    reports = []
    for name in names:
        cost = float(mean_costs.sel(strategy=name))
        report = StrategyReport(name=name, cost=cost, excess_per_share=(cost - optimum_cost) / total_shares)
        if schedules is not None:
            report.std_within_path = float(std_within.sel(strategy=name))
            report.std_across_paths_total = float(std_total.sel(strategy=name))
            report.std_increase = report.std_within_path - optimum_std
        reports.append(report)

    ranks = {report.name: report.rank for report in rank_report(reports)}
    for report in reports:
        report.rank = ranks[report.name]
    return reports


def schedule_distances(schedules: xr.DataArray) -> xr.DataArray:
    """Pairwise Euclidean distances between the reference-path schedules of all strategies."""
    reference = schedules.isel(path=0) if "path" in schedules.dims else schedules
    values = reference.values
    distances = np.linalg.norm(values[:, None, :] - values[None, :, :], axis=-1)
    names = reference["strategy"].values
    return xr.DataArray(distances, dims=("strategy", "other"), coords={"strategy": names, "other": names})


def reports_to_dataframe(reports: Sequence[StrategyReport]) -> pd.DataFrame:
    return pd.DataFrame([report.to_row() for report in reports], columns=REPORT_COLUMNS)


def render_ranking_table(reports: Sequence[StrategyReport], console=None):
    """Prints the ranking with rich (Execution Costs, Standard Deviation, Rank)."""
    import rich.console
    import rich.table

    table = rich.table.Table(title="Strategies ranked by execution cost")
    table.add_column("Strategy")
    table.add_column("Execution Costs", justify="right")
    table.add_column("Excess / Share", justify="right")
    table.add_column("Standard Deviation", justify="right")
    table.add_column("Rank", justify="right")
    for report in rank_report(reports):
        table.add_row(
            DISPLAY_NAMES.get(report.name, report.name),
            f"{report.cost:.6e}",
            f"{report.excess_per_share:.6f}",
            f"{report.std_across_paths_total:.6f}",
            str(report.rank),
        )
    console = console or rich.console.Console()
    console.print(table)
