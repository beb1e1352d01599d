"""SINR, Shannon and secrecy capacities, and the per-scenario metrics.

Allocations are arrays of transmit powers in watts, one per AP, and may
carry leading batch dimensions (``(..., N)``) so that optimizers can score
many candidates in one call. Associations are 0-based integer arrays of
length K mapping each user to its serving AP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .propagation import GainMatrix
from .scenario import RadioParams, Scenario

_LN2 = math.log(2.0)


def check_allocation(p, p_max: float, n_aps: int | None = None) -> np.ndarray:
    """Return ``p`` as a float array after checking ``0 <= p <= p_max``."""
    p = np.asarray(p, dtype=float)
    if n_aps is not None and p.shape[-1:] != (n_aps,):
        raise ValueError(f"allocation must have {n_aps} entries, got shape {p.shape}")
    if not np.all(np.isfinite(p)) or np.any(p < 0) or np.any(p > p_max):
        raise ValueError(f"allocation outside the box [0, {p_max}]: {p}")
    return p


def check_association(a, n_aps: int, n_users: int | None = None) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 1 or (n_users is not None and a.shape[0] != n_users):
        raise ValueError(f"association must be a length-{n_users} vector, got shape {a.shape}")
    if not np.issubdtype(a.dtype, np.integer):
        raise ValueError("association entries must be integer AP indices")
    if np.any(a < 0) or np.any(a >= n_aps):
        raise ValueError(f"association entries must lie in 0..{n_aps - 1}: {a}")
    return a.astype(np.intp)


def _capacity(signal, interference, radio: RadioParams):
    sinr = signal / (interference + radio.noise_watts)
    return radio.bandwidth_hz * np.log1p(sinr) / _LN2


def _link_capacities(gain, p, radio):
    """Capacity of every (AP n -> receiver) link, shape ``(..., N, R)``.

    The interference term for AP n sums every other AP explicitly (total
    minus signal would cancel badly when the serving link dominates), in
    AP order for every receiver so identical gain columns give identical
    capacities.
    """
    rx = p[..., :, None] * gain
    others = 1.0 - np.eye(gain.shape[0])
    interference = np.zeros(rx.shape)
    for v in range(gain.shape[0]):
        interference += rx[..., v:v + 1, :] * others[:, v:v + 1]
    return _capacity(rx, interference, radio)


def user_capacity_matrix(g: GainMatrix, p, radio: RadioParams) -> np.ndarray:
    """``C[..., n, k]``: capacity from AP n to user k under allocation p."""
    return _link_capacities(g.user, np.asarray(p, dtype=float), radio)


def eve_capacity_matrix(g: GainMatrix, p, radio: RadioParams) -> np.ndarray:
    """``C[..., n, j]``: eavesdropper j's capacity on AP n's traffic."""
    return _link_capacities(g.eve, np.asarray(p, dtype=float), radio)


def worst_eve_capacity(g: GainMatrix, p, radio: RadioParams) -> np.ndarray:
    """Best eavesdropping capacity on each AP's traffic, shape ``(..., N)``; 0 when J = 0."""
    return np.max(eve_capacity_matrix(g, p, radio), axis=-1, initial=0.0)


def _check_index(i, size, what):
    if not 0 <= i < size:
        raise IndexError(f"{what} index {i} out of range 0..{size - 1}")


def user_capacity(g: GainMatrix, p, n: int, k: int, radio: RadioParams) -> float:
    _check_index(n, g.n_aps, "AP")
    _check_index(k, g.n_users, "user")
    return float(user_capacity_matrix(g, p, radio)[n, k])


def eve_capacity(g: GainMatrix, p, n: int, j: int, radio: RadioParams) -> float:
    _check_index(n, g.n_aps, "AP")
    if g.n_eves == 0:
        raise IndexError("scenario has no eavesdroppers")
    _check_index(j, g.n_eves, "eavesdropper")
    return float(eve_capacity_matrix(g, p, radio)[n, j])


def max_eve_capacity(g: GainMatrix, p, n: int, radio: RadioParams) -> float:
    _check_index(n, g.n_aps, "AP")
    return float(worst_eve_capacity(g, p, radio)[n])


def secrecy_capacity(g: GainMatrix, p, k: int, alpha_k: int, radio: RadioParams) -> float:
    c_user = user_capacity(g, p, alpha_k, k, radio)
    return max(c_user - max_eve_capacity(g, p, alpha_k, radio), 0.0)


def user_secrecies(g: GainMatrix, p, a, radio: RadioParams) -> np.ndarray:
    """Clamped secrecy capacity of every user, shape ``(..., K)``."""
    a = np.asarray(a, dtype=np.intp)
    users = np.arange(a.shape[0])
    c_user = user_capacity_matrix(g, p, radio)[..., a, users]
    c_eve = worst_eve_capacity(g, p, radio)[..., a]
    return np.maximum(c_user - c_eve, 0.0)


def sum_secrecy(g: GainMatrix, p, a, radio: RadioParams):
    """Sum of clamped secrecy capacities; the reinforcement-learning revenue.

    Returns a float for a single allocation, an array for a batch.
    """
    out = user_secrecies(g, p, a, radio).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SecrecyReport:
    user_capacity: np.ndarray      # (K,) capacity on the serving link
    eve_worst_per_ap: np.ndarray   # (N,) best eavesdropper on each AP's traffic
    user_secrecy: np.ndarray       # (K,) clamped secrecy capacity
    sum_secrecy: float
    sum_eve_capacity: float
    secrecy_ratio: float           # percent of users with secrecy > 0


def report(scenario: Scenario, g: GainMatrix, p, a) -> SecrecyReport:
    radio = scenario.radio
    p = check_allocation(p, radio.p_max_watts, scenario.n_aps)
    a = check_association(a, scenario.n_aps, scenario.n_users)
    users = np.arange(scenario.n_users)
    c_user = user_capacity_matrix(g, p, radio)[a, users]
    c_eve_all = eve_capacity_matrix(g, p, radio)
    worst = np.max(c_eve_all, axis=-1, initial=0.0)
    secrecy = np.maximum(c_user - worst[a], 0.0)
    # each eavesdropper's capacity is its best shot at any serving AP
    if scenario.n_eves:
        sum_eve = float(np.max(c_eve_all[np.unique(a)], axis=0).sum())
    else:
        sum_eve = 0.0
    ratio = 100.0 * np.count_nonzero(secrecy > 0) / scenario.n_users
    return SecrecyReport(
        user_capacity=c_user,
        eve_worst_per_ap=worst,
        user_secrecy=secrecy,
        sum_secrecy=float(secrecy.sum()),
        sum_eve_capacity=sum_eve,
        secrecy_ratio=float(ratio),
    )
