"""Soft actor-critic for the single-step power-allocation environment.

Actions live in ``[-1, 1]^N`` inside the agent (tanh-squashed Gaussian) and
are mapped affinely onto ``[0, p_max]^N`` before reaching the environment,
so the box constraint holds by construction. Twin critics, target critics
and automatic entropy tuning follow the usual SAC recipe; because every
episode terminates after one step the bootstrap term is always masked out,
but it is kept so that multi-step environments can reuse the trainer.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np
import torch
import torch.nn as nn
import torch.nn.functional as F

from .config import SACConfig, SolverConfig, default_hidden_units
from .env import PowerEnv

log = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "cfjam-sac-policy"
CHECKPOINT_VERSION = 1
LOG_STD_MIN, LOG_STD_MAX = -10.0, 2.0


class TrainingDiverged(RuntimeError):
    """A loss became non-finite; ``state`` holds the diagnostics at that step."""

    def __init__(self, message, state):
        super().__init__(f"{message}: {json.dumps(state, default=str)}")
        self.state = state


def mlp(n_in, n_out, hidden_layers, hidden_units):
    layers, width = [], n_in
    for _ in range(hidden_layers):
        layers += [nn.Linear(width, hidden_units), nn.ReLU()]
        width = hidden_units
    layers.append(nn.Linear(width, n_out))
    return nn.Sequential(*layers)


class Actor(nn.Module):
    def __init__(self, obs_dim, act_dim, hidden_layers, hidden_units):
        super().__init__()
        self.net = mlp(obs_dim, 2 * act_dim, hidden_layers, hidden_units)
        self.act_dim = act_dim

    def forward(self, obs):
        mu, log_std = self.net(obs).split(self.act_dim, dim=-1)
        return mu, log_std.clamp(LOG_STD_MIN, LOG_STD_MAX)

    def sample(self, obs, generator=None):
        """Reparameterised tanh-Gaussian sample and its log-density."""
        mu, log_std = self(obs)
        std = log_std.exp()
        eps = torch.randn(mu.shape, generator=generator, dtype=mu.dtype)
        u = mu + std * eps
        logp = (-0.5 * eps.pow(2) - log_std - 0.5 * math.log(2 * math.pi)).sum(-1)
        # log|d tanh(u)/du| = 2 (log 2 - u - softplus(-2u))
        logp = logp - (2.0 * (math.log(2.0) - u - F.softplus(-2.0 * u))).sum(-1)
        return torch.tanh(u), logp


class Critic(nn.Module):
    def __init__(self, obs_dim, act_dim, hidden_layers, hidden_units):
        super().__init__()
        self.net = mlp(obs_dim + act_dim, 1, hidden_layers, hidden_units)

    def forward(self, obs, act):
        return self.net(torch.cat([obs, act], dim=-1)).squeeze(-1)


class ReplayBuffer:
    def __init__(self, capacity, obs_dim, act_dim):
        self.capacity = capacity
        self.obs = np.zeros((capacity, obs_dim), dtype=np.float32)
        self.act = np.zeros((capacity, act_dim), dtype=np.float32)
        self.rew = np.zeros(capacity, dtype=np.float32)
        self.next_obs = np.zeros((capacity, obs_dim), dtype=np.float32)
        self.done = np.zeros(capacity, dtype=np.float32)
        self.size = 0
        self._ptr = 0

    def add(self, obs, act, rew, next_obs, done):
        i = self._ptr
        self.obs[i], self.act[i], self.rew[i] = obs, act, rew
        self.next_obs[i], self.done[i] = next_obs, done
        self._ptr = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size, rng):
        idx = rng.integers(0, self.size, size=batch_size)
        return tuple(torch.as_tensor(a[idx]) for a in
                     (self.obs, self.act, self.rew, self.next_obs, self.done))


def unit_to_power(a, p_max):
    """Map ``[-1, 1]`` onto ``[0, p_max]``; clipped so rounding never leaves the box."""
    return np.clip((np.asarray(a, dtype=float) + 1.0) * 0.5 * p_max, 0.0, p_max)


@dataclass
class Policy:
    """Trained actor plus what is needed to turn observations into powers."""

    actor: Actor
    obs_dim: int
    n_aps: int
    p_max: float
    hidden_layers: int
    hidden_units: int
    config: dict = field(default_factory=dict)
    config_hash: str = ""
    curve: list = field(default_factory=list)   # (episode, revenue, actor_loss, critic_loss)
    meta: dict = field(default_factory=dict)

    def act(self, obs, stochastic=False, generator=None, size=None) -> np.ndarray:
        """Transmit powers for ``obs``; ``size`` draws that many samples at once."""
        obs = np.asarray(obs, dtype=np.float32)
        if obs.shape != (self.obs_dim,):
            raise ValueError(f"observation must have shape ({self.obs_dim},), got {obs.shape}")
        if isinstance(generator, int):
            generator = torch.Generator().manual_seed(generator)
        with torch.no_grad():
            x = torch.as_tensor(obs).expand(1 if size is None else size, -1)
            if stochastic:
                a, _ = self.actor.sample(x, generator)
            else:
                a = torch.tanh(self.actor(x)[0])
        a = a.double().numpy()
        return unit_to_power(a[0] if size is None else a, self.p_max)

    def save(self, path):
        torch.save({
            "format": CHECKPOINT_FORMAT,
            "version": CHECKPOINT_VERSION,
            "obs_dim": self.obs_dim,
            "n_aps": self.n_aps,
            "p_max": self.p_max,
            "hidden_layers": self.hidden_layers,
            "hidden_units": self.hidden_units,
            "config": json.dumps(self.config, sort_keys=True),
            "config_hash": self.config_hash,
            "meta": json.dumps(self.meta, sort_keys=True),
            "actor": self.actor.state_dict(),
        }, path)

    @classmethod
    def load(cls, path) -> "Policy":
        blob = torch.load(path, map_location="cpu", weights_only=True)
        if blob.get("format") != CHECKPOINT_FORMAT:
            raise ValueError(f"{path} is not a policy checkpoint")
        if blob.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {blob.get('version')}")
        actor = Actor(blob["obs_dim"], blob["n_aps"], blob["hidden_layers"], blob["hidden_units"])
        actor.load_state_dict(blob["actor"])
        actor.eval()
        return cls(actor, blob["obs_dim"], blob["n_aps"], blob["p_max"],
                   blob["hidden_layers"], blob["hidden_units"],
                   json.loads(blob["config"]), blob["config_hash"],
                   meta=json.loads(blob["meta"]))


def policy_act(policy: Policy, state, stochastic: bool = False, generator=None) -> np.ndarray:
    return policy.act(state, stochastic, generator)


def write_training_curve(curve, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["episode", "revenue", "actor_loss", "critic_loss"])
        for ep, rev, al, cl in curve:
            w.writerow([ep, repr(float(rev)),
                        "" if al is None else repr(float(al)),
                        "" if cl is None else repr(float(cl))])


def _soft_update(target, source, tau):
    with torch.no_grad():
        for t, s in zip(target.parameters(), source.parameters()):
            t.mul_(1.0 - tau).add_(s, alpha=tau)


def sac_train(env: PowerEnv, config: SolverConfig, seed: int | None = None) -> Policy:
    """Train a policy on ``env`` and return it.

    Deterministic given ``(env, config, seed)`` on a single thread.
    """
    seed = config.seed if seed is None else seed
    cfg: SACConfig = config.sac
    n, p_max = env.n_aps, env.p_max
    obs = env.reset().astype(np.float32)
    obs_dim = obs.shape[0]
    units = cfg.hidden_units or default_hidden_units(n)
    target_entropy = -3.0 * n if cfg.entropy_target is None else cfg.entropy_target
    base = env.step(np.full(n, p_max))
    scale = cfg.reward_scale if cfg.reward_scale is not None else 1.0 / max(1.0, base)

    rng = np.random.default_rng(seed)
    gen = torch.Generator().manual_seed(seed)
    started = time.perf_counter()
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        actor = Actor(obs_dim, n, cfg.hidden_layers, units)
        q1, q2 = (Critic(obs_dim, n, cfg.hidden_layers, units) for _ in range(2))
        q1_t, q2_t = (Critic(obs_dim, n, cfg.hidden_layers, units) for _ in range(2))
    q1_t.load_state_dict(q1.state_dict())
    q2_t.load_state_dict(q2.state_dict())
    for p in (*q1_t.parameters(), *q2_t.parameters()):
        p.requires_grad_(False)
    log_alpha = torch.tensor([math.log(cfg.init_alpha)], requires_grad=True)
    actor_opt = torch.optim.Adam(actor.parameters(), lr=cfg.actor_lr)
    critic_opt = torch.optim.Adam([*q1.parameters(), *q2.parameters()], lr=cfg.critic_lr)
    alpha_opt = torch.optim.Adam([log_alpha], lr=cfg.alpha_lr)
    buf = ReplayBuffer(min(cfg.replay_capacity, cfg.train_episodes), obs_dim, n)
    obs_t = torch.as_tensor(obs).unsqueeze(0)

    curve = []
    for ep in range(cfg.train_episodes):
        if ep < cfg.warmup_episodes:
            a = rng.uniform(-1.0, 1.0, size=n).astype(np.float32)
        else:
            with torch.no_grad():
                a = actor.sample(obs_t, gen)[0].squeeze(0).numpy()
        revenue = env.step(unit_to_power(a, p_max))
        next_obs = env.reset().astype(np.float32)
        buf.add(obs, a, revenue * scale, next_obs, 1.0)

        actor_loss = critic_loss = None
        if buf.size >= cfg.batch_size and ep >= cfg.warmup_episodes:
            for _ in range(cfg.updates_per_episode):
                actor_loss, critic_loss, alpha = _update(
                    buf, rng, gen, actor, q1, q2, q1_t, q2_t, log_alpha,
                    actor_opt, critic_opt, alpha_opt, cfg, target_entropy)
                if not (math.isfinite(actor_loss) and math.isfinite(critic_loss)):
                    raise TrainingDiverged("non-finite loss", {
                        "episode": ep, "actor_loss": actor_loss, "critic_loss": critic_loss,
                        "alpha": alpha, "last_action": a.tolist(), "last_revenue": revenue,
                        "reward_scale": scale, "seed": seed})
        curve.append((ep, revenue, actor_loss, critic_loss))

    actor.eval()
    policy = Policy(actor, obs_dim, n, p_max, cfg.hidden_layers, units,
                    config.to_dict(), config.digest(), curve)
    det = env.step(policy.act(obs))
    eval_gen = torch.Generator().manual_seed(seed + 1)
    stoch = [env.step(policy.act(obs, True, eval_gen)) for _ in range(cfg.eval_episodes)]
    policy.meta = {
        "seed": seed,
        "deterministic_revenue": det,
        "stochastic_mean_revenue": float(np.mean(stoch)),
        "uniform_pmax_revenue": base,
        "alpha": log_alpha.exp().item(),
        "wall_time_s": time.perf_counter() - started,
    }
    log.info("sac: deterministic revenue %.4f (uniform p_max %.4f)", det, base)
    return policy


def _update(buf, rng, gen, actor, q1, q2, q1_t, q2_t, log_alpha,
            actor_opt, critic_opt, alpha_opt, cfg, target_entropy):
    o, a, r, o2, d = buf.sample(cfg.batch_size, rng)
    alpha = log_alpha.exp().detach()

    with torch.no_grad():
        a2, logp2 = actor.sample(o2, gen)
        q_next = torch.min(q1_t(o2, a2), q2_t(o2, a2)) - alpha * logp2
        target = r + cfg.discount * (1.0 - d) * q_next
    critic_loss = F.mse_loss(q1(o, a), target) + F.mse_loss(q2(o, a), target)
    critic_opt.zero_grad()
    critic_loss.backward()
    critic_opt.step()

    a_new, logp = actor.sample(o, gen)
    q_new = torch.min(q1(o, a_new), q2(o, a_new))
    actor_loss = (alpha * logp - q_new).mean()
    actor_opt.zero_grad()
    actor_loss.backward()
    actor_opt.step()

    alpha_loss = -(log_alpha * (logp.detach() + target_entropy)).mean()
    alpha_opt.zero_grad()
    alpha_loss.backward()
    alpha_opt.step()

    _soft_update(q1_t, q1, cfg.target_smoothing)
    _soft_update(q2_t, q2, cfg.target_smoothing)
    return actor_loss.item(), critic_loss.item(), alpha.item()
