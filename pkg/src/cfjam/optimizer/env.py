"""Single-step power-allocation environment.

The state is the node layout, which never changes, and the action fully
determines the revenue, so every episode is one step long (a contextual
bandit).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..association import associate_max_secrecy
from ..capacity import check_association, sum_secrecy
from ..propagation import GainMatrix, gain_matrix
from ..scenario import MAP_SIDE_METERS, Scenario

log = logging.getLogger(__name__)

CELL_METERS = 1.0


def encode_observation(scenario: Scenario, map_side: float = MAP_SIDE_METERS) -> np.ndarray:
    """Snap nodes to 1 m cells and normalise cell centres by the map side.

    Order is APs, users, eves; output is ``[x0, y0, x1, y1, ...]``.
    """
    xy = np.concatenate([scenario.ap_xy, scenario.user_xy, scenario.eve_xy], axis=0)
    if np.any(xy < 0) or np.any(xy > map_side):
        raise ValueError(f"node outside the {map_side:g} m map: cannot encode observation")
    n_cells = max(1, math.ceil(map_side / CELL_METERS))
    cell = np.minimum(np.floor(xy / CELL_METERS), n_cells - 1)
    centre = (cell + 0.5) * CELL_METERS
    return (centre / map_side).reshape(-1)


@dataclass(frozen=True)
class PowerEnv:
    scenario: Scenario
    gains: GainMatrix = None
    association: np.ndarray = None
    map_side: float = MAP_SIDE_METERS
    _evals: list = field(default_factory=lambda: [0], repr=False, compare=False)

    def __post_init__(self):
        if self.gains is None:
            object.__setattr__(self, "gains", gain_matrix(self.scenario))
        if self.association is None:
            a = associate_max_secrecy(self.scenario, self.gains)
        else:
            a = check_association(self.association, self.scenario.n_aps, self.scenario.n_users)
        a = np.array(a, dtype=np.intp)
        a.setflags(write=False)
        object.__setattr__(self, "association", a)

    @property
    def n_aps(self) -> int:
        return self.scenario.n_aps

    @property
    def p_max(self) -> float:
        return self.scenario.radio.p_max_watts

    @cached_property
    def observation(self) -> np.ndarray:
        obs = encode_observation(self.scenario, self.map_side)
        obs.setflags(write=False)
        return obs

    @property
    def evaluations(self) -> int:
        return self._evals[0]

    def reset(self) -> np.ndarray:
        return self.observation

    def revenue(self, powers):
        """Sum secrecy for one allocation or a ``(M, N)`` batch; no clipping."""
        powers = np.asarray(powers, dtype=float)
        self._evals[0] += 1 if powers.ndim == 1 else powers.shape[0]
        return sum_secrecy(self.gains, powers, self.association, self.scenario.radio)

    def step(self, action) -> float:
        action = np.asarray(action, dtype=float)
        if action.shape != (self.n_aps,):
            raise ValueError(f"action must have shape ({self.n_aps},), got {action.shape}")
        if not np.all(np.isfinite(action)):
            raise ValueError(f"non-finite action: {action}")
        clipped = np.clip(action, 0.0, self.p_max)
        if not np.array_equal(clipped, action):
            log.warning("action outside [0, %g] clipped: %s", self.p_max, action)
        return float(self.revenue(clipped))


def env_step(env: PowerEnv, action) -> float:
    return env.step(action)
