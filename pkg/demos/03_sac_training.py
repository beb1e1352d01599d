"""
Learning power allocations with soft actor-critic
=================================================

Each episode is a single step: observe the layout, choose every AP's
power, receive the sum secrecy. We train on one random 3-AP layout and
compare the learned allocation with an exhaustive grid.
Training takes about 40 s on one CPU core.
"""

from cfjam.optimizer import PowerEnv, SolverConfig, grid_search_oracle, sac_train
from cfjam.scenario import RandomSpec, generate_random_scenario

sc = generate_random_scenario(RandomSpec(3, 3, 2), seed=0)
env = PowerEnv(sc)

best_p, best = grid_search_oracle(env, 0.05)
print(f"grid optimum (0.05 W step): {best:.4f} at {best_p}")

policy = sac_train(env, SolverConfig(), seed=0)
p = policy.act(env.observation)
print(f"SAC allocation:             {env.revenue(p):.4f} at {p.round(3)}")

###############################################################################
# The training curve holds (episode, revenue, actor loss, critic loss).
# Early entries are uniform-random warm-up actions.

for ep, rev, _, _ in policy.curve[::500]:
    print(f"episode {ep:5d}  revenue {rev:.4f}")
