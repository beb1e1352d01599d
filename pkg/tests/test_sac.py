import math

import numpy as np
import pytest
import torch

from cfjam.optimizer import (PowerEnv, SACConfig, SolverConfig, TrainingDiverged, policy_act,
                             sac_train, write_training_curve)
from cfjam.optimizer.sac import Actor, Policy, ReplayBuffer, unit_to_power
from cfjam.scenario import Scenario

TINY = SolverConfig(sac=SACConfig(hidden_layers=2, hidden_units=16, train_episodes=160,
                                  warmup_episodes=64, batch_size=32, eval_episodes=3))


@pytest.fixture(scope="module")
def env():
    return PowerEnv(Scenario([(10, 10), (40, 10)], [(14, 12)], [(30, 14)]))


@pytest.fixture(scope="module")
def policy(env):
    return sac_train(env, TINY, 0)


def test_unit_to_power_bounds():
    assert unit_to_power([-1.0, 0.0, 1.0], 2.0).tolist() == [0.0, 1.0, 2.0]
    assert unit_to_power([1.0000001], 1.0).tolist() == [1.0]


def test_tanh_log_density_matches_change_of_variables():
    torch.manual_seed(0)
    actor = Actor(3, 2, 1, 8)
    obs = torch.zeros(1, 3)
    a, logp = actor.sample(obs, torch.Generator().manual_seed(1))
    mu, log_std = actor(obs)
    u = torch.atanh(a)
    base = torch.distributions.Normal(mu, log_std.exp()).log_prob(u).sum(-1)
    jac = torch.log(1 - a.pow(2)).sum(-1)
    assert logp.item() == pytest.approx((base - jac).item(), abs=1e-4)


def test_replay_buffer_wraps():
    buf = ReplayBuffer(3, 2, 1)
    for i in range(5):
        buf.add([i, i], [0.0], float(i), [i, i], 1.0)
    assert buf.size == 3
    assert sorted(buf.rew.tolist()) == [2.0, 3.0, 4.0]


def test_policy_box_over_many_samples(policy, env):
    p = policy.act(env.observation, stochastic=True, generator=0, size=100_000)
    assert p.shape == (100_000, 2)
    assert np.all((p >= 0) & (p <= env.p_max))


def test_policy_deterministic_and_seeded(policy, env):
    obs = env.observation
    assert np.array_equal(policy_act(policy, obs), policy_act(policy, obs))
    assert np.array_equal(policy_act(policy, obs, True, 5), policy_act(policy, obs, True, 5))
    assert not np.array_equal(policy_act(policy, obs, True, 5), policy_act(policy, obs, True, 6))


def test_policy_dimension_check(policy):
    with pytest.raises(ValueError):
        policy.act(np.zeros(3))


def test_training_is_seed_deterministic(env, policy):
    again = sac_train(env, TINY, 0)
    assert np.array_equal(again.act(env.observation), policy.act(env.observation))
    assert [c[1] for c in again.curve] == [c[1] for c in policy.curve]


def test_training_curve(policy, tmp_path):
    assert len(policy.curve) == TINY.sac.train_episodes
    assert policy.curve[0][2] is None  # no updates during warm-up
    assert policy.curve[-1][2] is not None
    path = tmp_path / "curve.csv"
    write_training_curve(policy.curve, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "episode,revenue,actor_loss,critic_loss"
    assert len(lines) == TINY.sac.train_episodes + 1


def test_meta_revenue_non_negative(policy, env):
    assert policy.meta["deterministic_revenue"] >= 0
    assert policy.meta["deterministic_revenue"] == env.step(policy.act(env.observation))


def test_checkpoint_round_trip(policy, env, tmp_path):
    path = tmp_path / "p.pt"
    policy.save(path)
    loaded = Policy.load(path)
    assert np.array_equal(loaded.act(env.observation), policy.act(env.observation))
    assert loaded.config_hash == TINY.digest()
    assert (loaded.obs_dim, loaded.n_aps, loaded.hidden_units) == (8, 2, 16)


def test_checkpoint_rejects_other_files(tmp_path):
    path = tmp_path / "x.pt"
    torch.save({"format": "something-else"}, path)
    with pytest.raises(ValueError):
        Policy.load(path)


def test_default_width_follows_ap_count(env):
    cfg = SolverConfig(sac=SACConfig(train_episodes=2, warmup_episodes=2, eval_episodes=1))
    pol = sac_train(env, cfg, 0)
    assert pol.hidden_units == 32 and pol.hidden_layers == 8
    linear = [m for m in pol.actor.modules() if isinstance(m, torch.nn.Linear)]
    assert len(linear) == 9


def test_non_finite_loss_aborts(env):
    cfg = SolverConfig(sac=SACConfig(hidden_layers=1, hidden_units=8, train_episodes=40,
                                     warmup_episodes=8, batch_size=8, reward_scale=math.nan))
    with pytest.raises(TrainingDiverged) as err:
        sac_train(env, cfg, 0)
    assert err.value.state["episode"] == 8
    assert "critic_loss" in err.value.state
