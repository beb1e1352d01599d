"""Solver configuration.

Only the actor/critic depth and the 32..256 width range come from the
reference experiment; every other default is ordinary SAC/CEM practice.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields, replace


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CEMConfig:
    population: int = 128
    elite_fraction: float = 0.125
    iterations: int = 200
    init_std: float = 2.0          # fraction of p_max; wide enough to be near-uniform on the box
    min_std: float = 1e-4          # fraction of p_max
    smoothing: float = 0.7         # weight of the elite statistics in each refit
    on_off_max_aps: int = 14       # score all 2^N on/off allocations up to this N; 0 disables


@dataclass(frozen=True)
class SACConfig:
    hidden_layers: int = 8         # 8 hidden + 1 output linear layer = depth 9
    hidden_units: int | None = None  # None -> derived from the AP count
    replay_capacity: int = 100_000
    batch_size: int = 64
    actor_lr: float = 3e-4
    critic_lr: float = 3e-4
    alpha_lr: float = 3e-3
    init_alpha: float = 0.1
    discount: float = 0.99
    target_smoothing: float = 5e-3
    # None -> -3 per AP; at -1 per AP the tanh-squashed mean sits ~18% inside the box
    entropy_target: float | None = None
    train_episodes: int = 4000
    warmup_episodes: int = 256
    updates_per_episode: int = 1
    eval_episodes: int = 10
    reward_scale: float | None = None    # None -> 1 / max(1, revenue at uniform p_max)


def default_hidden_units(n_aps: int) -> int:
    return min(256, max(32, 32 * math.ceil(n_aps / 4)))


@dataclass(frozen=True)
class SolverConfig:
    grid_step_watts: float = 0.05
    grid_budget: int = 10**8
    cem: CEMConfig = field(default_factory=CEMConfig)
    sac: SACConfig = field(default_factory=SACConfig)
    seed: int = 0

    def __post_init__(self):
        problems = []
        if not self.grid_step_watts > 0:
            problems.append("grid_step_watts must be > 0")
        if self.grid_budget < 1:
            problems.append("grid_budget must be >= 1")
        c = self.cem
        for name in ("population", "iterations"):
            if getattr(c, name) < 1:
                problems.append(f"cem.{name} must be >= 1")
        if not 0 < c.elite_fraction <= 1:
            problems.append("cem.elite_fraction must be in (0, 1]")
        if not c.init_std > 0 or not c.min_std > 0:
            problems.append("cem.init_std and cem.min_std must be > 0")
        if not 0 < c.smoothing <= 1:
            problems.append("cem.smoothing must be in (0, 1]")
        if c.on_off_max_aps < 0:
            problems.append("cem.on_off_max_aps must be >= 0")
        s = self.sac
        for name in ("hidden_layers", "replay_capacity", "batch_size",
                     "train_episodes", "eval_episodes", "updates_per_episode"):
            if getattr(s, name) < 1:
                problems.append(f"sac.{name} must be >= 1")
        if s.hidden_units is not None and s.hidden_units < 1:
            problems.append("sac.hidden_units must be >= 1")
        if s.warmup_episodes < 0:
            problems.append("sac.warmup_episodes must be >= 0")
        for name in ("actor_lr", "critic_lr", "alpha_lr", "init_alpha"):
            if not getattr(s, name) > 0:
                problems.append(f"sac.{name} must be > 0")
        if not 0 <= s.discount <= 1 or not 0 < s.target_smoothing <= 1:
            problems.append("sac.discount must be in [0, 1] and sac.target_smoothing in (0, 1]")
        if problems:
            raise ConfigError("; ".join(problems))

    def to_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def with_seed(self, seed: int) -> "SolverConfig":
        return replace(self, seed=seed)

    @classmethod
    def from_dict(cls, doc: dict) -> "SolverConfig":
        doc = dict(doc)
        top = {f.name for f in fields(cls)}
        unknown = set(doc) - top
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        for key, sub in (("cem", CEMConfig), ("sac", SACConfig)):
            if key in doc:
                if isinstance(doc[key], sub):
                    continue
                names = {f.name for f in fields(sub)}
                bad = set(doc[key]) - names
                if bad:
                    raise ConfigError(f"unknown {key} config fields: {sorted(bad)}")
                doc[key] = sub(**doc[key])
        return cls(**doc)

    @classmethod
    def load(cls, path) -> "SolverConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"malformed config {path}: {exc}") from exc
        return cls.from_dict(doc)
