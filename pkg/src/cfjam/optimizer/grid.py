"""Exhaustive lattice search over the power box: the ground-truth solver."""

from __future__ import annotations

import numpy as np

from .env import PowerEnv

DEFAULT_BUDGET = 10**8
_CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    pass


def power_levels(p_max: float, step: float) -> np.ndarray:
    """``0, step, 2 step, ...`` up to ``p_max``, always ending exactly at ``p_max``."""
    if not step > 0:
        raise ValueError("grid step must be > 0")
    m = int(np.floor(p_max / step + 1e-9))
    levels = np.arange(m + 1) * step
    levels = levels[levels < p_max * (1 - 1e-12)]
    return np.append(levels, p_max)


def grid_search_oracle(env: PowerEnv, grid_step_watts: float, budget: int = DEFAULT_BUDGET):
    """Evaluate every lattice allocation and return ``(powers, revenue)``.

    Points are visited in lexicographic order and only a strictly better
    revenue replaces the incumbent, so ties resolve to the lexicographically
    smallest allocation.
    """
    levels = power_levels(env.p_max, grid_step_watts)
    n = env.n_aps
    total = len(levels) ** n
    if total > budget:
        raise BudgetExceeded(
            f"grid needs {len(levels)}^{n} = {total} evaluations, budget is {budget}")
    shape = (len(levels),) * n
    best_rev, best_idx = -np.inf, 0
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total))
        idx = np.stack(np.unravel_index(flat, shape), axis=-1)
        rev = env.revenue(levels[idx])
        i = int(np.argmax(rev))
        if rev[i] > best_rev:
            best_rev, best_idx = float(rev[i]), start + i
    powers = levels[np.array(np.unravel_index(best_idx, shape))]
    return powers, best_rev
