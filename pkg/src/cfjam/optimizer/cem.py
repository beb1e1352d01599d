"""Cross-entropy method over the power box [0, p_max]^N."""

from __future__ import annotations

import itertools

import numpy as np
from scipy.stats import truncnorm

from .config import CEMConfig, SolverConfig
from .env import PowerEnv


def cem_optimize(env: PowerEnv, config: SolverConfig | CEMConfig, seed: int,
                 warm_starts=(), history: list | None = None):
    """Maximize revenue with truncated-Gaussian cross-entropy search.

    The sampling mean starts at uniform ``p_max``, which is scored before any
    sampling, as is every allocation in ``warm_starts``. For small N every
    on/off allocation (each AP silent or at ``p_max``) is scored too: optima
    often switch an AP fully off, and revenue only recovers in the last
    microwatts, which continuous sampling does not reach.

    Each iteration draws ``population`` candidates inside the box. The
    best-ever point joins the elites, and mean/std move toward the elite
    statistics by ``smoothing``. Returns the best allocation ever seen and
    its revenue.
    When ``history`` is a list, the best-ever revenue after each iteration is
    appended to it (index 0 is the initial evaluation).
    """
    cfg = config.cem if isinstance(config, SolverConfig) else config
    rng = np.random.default_rng(seed)
    n, p_max = env.n_aps, env.p_max

    mean = np.full(n, p_max)
    std = np.full(n, cfg.init_std * p_max)
    floor = cfg.min_std * p_max
    n_elite = max(1, int(round(cfg.elite_fraction * cfg.population)))

    starts = [mean] + [np.clip(np.asarray(w, dtype=float), 0.0, p_max) for w in warm_starts]
    if 0 < n <= cfg.on_off_max_aps:
        starts += list(p_max * np.array(list(itertools.product((0.0, 1.0), repeat=n))))
    starts = np.stack(starts)
    rev = np.atleast_1d(env.revenue(starts))
    i = int(np.argmax(rev))
    best_p, best_rev = starts[i].copy(), float(rev[i])
    if history is not None:
        history.append(best_rev)

    for _ in range(cfg.iterations):
        lo = (0.0 - mean) / std
        hi = (p_max - mean) / std
        samples = truncnorm.rvs(lo, hi, loc=mean, scale=std,
                                size=(cfg.population, n), random_state=rng)
        samples = np.clip(samples, 0.0, p_max)
        rev = env.revenue(samples)
        order = np.argsort(-rev, kind="stable")
        if rev[order[0]] > best_rev:
            best_rev = float(rev[order[0]])
            best_p = samples[order[0]].copy()
        elite = np.vstack([samples[order[:n_elite - 1]], best_p])
        mean = cfg.smoothing * elite.mean(axis=0) + (1.0 - cfg.smoothing) * mean
        std = np.maximum(cfg.smoothing * elite.std(axis=0) + (1.0 - cfg.smoothing) * std, floor)
        if history is not None:
            history.append(best_rev)
    return best_p, best_rev
