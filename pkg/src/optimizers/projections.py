"""
Maps SGD iterates back onto the feasible set {0 <= b_t <= S_t, sum_t b_t = total_shares}.

The box projection runs first (forward sweep), the budget rescale second.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np


def project_box(b: np.ndarray, total_shares: float) -> np.ndarray:
    """Clip every b_t into [0, S_t], where S_t is computed from the clipped prefix."""
    projected = np.array(b, dtype=np.float64)
    remaining = float(total_shares)
    for t in range(len(projected)):
        projected[t] = min(max(projected[t], 0.0), remaining)
        remaining -= projected[t]
    return projected


def project_budget(b: np.ndarray, total_shares: float) -> np.ndarray:
    """Rescale multiplicatively so that the purchases add up to the block (uniform split if they sum to 0)."""
    b = np.asarray(b, dtype=np.float64)
    total_bought = b.sum()
    if total_bought == 0:
        return np.full(len(b), total_shares / len(b))
    return b * (total_shares / total_bought)


def project(b: np.ndarray, total_shares: float) -> np.ndarray:
    """Box clipping followed by the budget rescale."""
    return project_budget(project_box(b, total_shares), total_shares)


def reset_out_of_box(b: np.ndarray, total_shares: float) -> Tuple[np.ndarray, np.ndarray]:
    """Replace every b_t outside [0, S_t] by S_t / (T - t + 1), a uniform split of what is still left.

    Returns the new iterate and a boolean mask of the periods that were reset.
    """
    projected = np.array(b, dtype=np.float64)
    horizon = len(projected)
    was_reset = np.zeros(horizon, dtype=bool)
    remaining = float(total_shares)
    for t in range(horizon):
        if projected[t] < 0 or projected[t] > remaining:
            projected[t] = remaining / (horizon - t)
            was_reset[t] = True
        remaining -= projected[t]
    return projected, was_reset
