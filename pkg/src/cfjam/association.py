"""User-to-AP association policies and baseline power vectors.

Ties always go to the lowest AP index (``np.argmax`` returns the first
maximum).
"""

from __future__ import annotations

import numpy as np

from .capacity import user_capacity_matrix, worst_eve_capacity
from .propagation import GainMatrix
from .scenario import Scenario

BASELINE = "baseline"
JAMMING = "jamming"


def associate_strongest_signal(g: GainMatrix) -> np.ndarray:
    """Normal Wi-Fi: each user joins the AP it hears loudest at equal power.

    Received power is used instead of post-association SINR, which would be
    circular since the idle set depends on the association. With identical
    radios this is nearest-AP selection.
    """
    return np.argmax(g.user, axis=0).astype(np.intp)


def secrecy_margins(scenario: Scenario, g: GainMatrix) -> np.ndarray:
    """``C[n, k] - C_eve(n)`` at uniform full power, shape ``(N, K)``. Not clamped."""
    p = np.full(scenario.n_aps, scenario.radio.p_max_watts)
    c_user = user_capacity_matrix(g, p, scenario.radio)
    c_eve = worst_eve_capacity(g, p, scenario.radio)
    return c_user - c_eve[:, None]


def associate_max_secrecy(scenario: Scenario, g: GainMatrix) -> np.ndarray:
    """Smart AP selection: maximize user capacity minus worst eavesdropper capacity.

    Evaluated with every AP at ``p_max``. Picks the least-bad AP when every
    margin is negative.
    """
    return np.argmax(secrecy_margins(scenario, g), axis=0).astype(np.intp)


def idle_ap_powers(a, n_aps: int, mode: str, p_max: float) -> np.ndarray:
    """Transmit powers for the fixed-power implementations.

    ``baseline``: serving APs at ``p_max``, idle APs silent.
    ``jamming``: every AP at ``p_max`` (idle APs jam).
    """
    if mode == JAMMING:
        return np.full(n_aps, float(p_max))
    if mode != BASELINE:
        raise ValueError(f"unknown idle-AP mode {mode!r}")
    p = np.zeros(n_aps)
    p[np.unique(np.asarray(a, dtype=np.intp))] = p_max
    return p
