"""Friis free-space propagation and unit-power link gains."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scenario import RadioParams, Scenario

SPEED_OF_LIGHT = 299_792_458.0  # m/s, SI exact


def wavelength(frequency_hz: float) -> float:
    if not frequency_hz > 0:
        raise ValueError(f"frequency must be positive, got {frequency_hz!r}")
    return SPEED_OF_LIGHT / frequency_hz


def received_power(p_t, radio: RadioParams, d):
    """Received power in watts at distance ``d`` meters for transmit power ``p_t``.

    ``p_r = p_t * G_t * G_r * (lambda / (4 pi))**2 * (1 / d)**gamma`` with
    ``d`` clamped to ``radio.d_min_meters``. Broadcasts over array inputs.
    """
    lam = wavelength(radio.frequency_hz)
    d = np.maximum(np.asarray(d, dtype=float), radio.d_min_meters)
    out = (np.asarray(p_t, dtype=float) * radio.gain_tx * radio.gain_rx
           * (lam / (4.0 * np.pi)) ** 2 * d ** (-radio.path_loss_exp))
    return float(out) if out.ndim == 0 else out


def dbm_to_watts(p_dbm):
    out = 10.0 ** ((np.asarray(p_dbm, dtype=float) - 30.0) / 10.0)
    return float(out) if out.ndim == 0 else out


def watts_to_dbm(p_watts):
    arr = np.asarray(p_watts, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("power in watts must be > 0 to convert to dBm")
    out = 10.0 * np.log10(arr) + 30.0
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class GainMatrix:
    """Received watts per transmitted watt.

    ``user[n, k]`` is the gain from AP ``n`` to user ``k``; ``eve[n, j]`` from
    AP ``n`` to eavesdropper ``j``. ``eve`` has shape ``(N, 0)`` when the
    scenario has no eavesdroppers.
    """

    user: np.ndarray
    eve: np.ndarray

    @property
    def n_aps(self) -> int:
        return self.user.shape[0]

    @property
    def n_users(self) -> int:
        return self.user.shape[1]

    @property
    def n_eves(self) -> int:
        return self.eve.shape[1]


def _distances(src, dst):
    if len(dst) == 0:
        return np.zeros((len(src), 0))
    return np.hypot(src[:, None, 0] - dst[None, :, 0], src[:, None, 1] - dst[None, :, 1])


def gain_matrix(scenario: Scenario) -> GainMatrix:
    radio = scenario.radio
    user = np.asarray(received_power(1.0, radio, _distances(scenario.ap_xy, scenario.user_xy)),
                      dtype=float).reshape(scenario.n_aps, scenario.n_users)
    eve = np.asarray(received_power(1.0, radio, _distances(scenario.ap_xy, scenario.eve_xy)),
                     dtype=float).reshape(scenario.n_aps, scenario.n_eves)
    user.setflags(write=False)
    eve.setflags(write=False)
    return GainMatrix(user, eve)
