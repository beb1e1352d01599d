"""Regenerate the six bundled scenario files in src/cfjam/data/.

The layouts are synthetic stand-ins for the published scatter plots: AP
counts 4, 5, 5, 7, 9, 13; scenarios 3-6 share users and eavesdroppers and
each adds APs to the previous AP list; in scenario 2 every user is nearer
than every eavesdropper to some AP. Coordinates are rounded to 0.1 m.

    python scripts/make_builtin_scenarios.py [--layout-seed N]   # bundled files: 19
"""

import argparse
from pathlib import Path

import numpy as np

from cfjam.scenario import RadioParams, Scenario, save_scenario

DATA = Path(__file__).resolve().parents[1] / "src" / "cfjam" / "data"

# AP sites for scenarios 3..6: each scenario extends the previous list
DENSE_APS = [(10, 10), (40, 10), (10, 40), (40, 40), (25, 25),
             (25, 5), (25, 45),
             (5, 25), (45, 25),
             (17.5, 17.5), (32.5, 17.5), (17.5, 32.5), (32.5, 32.5)]
DENSE_COUNTS = {3: 5, 4: 7, 5: 9, 6: 13}


def _pts(rng, n, lo=2.0, hi=48.0):
    return np.round(rng.uniform(lo, hi, size=(n, 2)), 1).tolist()


def _near_user_layout(rng, aps, n_users, n_eves):
    """Users within a few meters of an AP, eves kept away from every AP."""
    aps = np.asarray(aps, dtype=float)
    users = []
    for i in range(n_users):
        ap = aps[i % len(aps)]
        users.append(np.round(ap + rng.uniform(-4, 4, size=2), 1).tolist())
    eves = []
    while len(eves) < n_eves:
        e = np.round(rng.uniform(2, 48, size=2), 1)
        d_eve = np.hypot(*(aps - e).T)
        d_user = np.array([np.hypot(*(aps - u).T) for u in users])
        # every user strictly nearer than this eve to at least one AP
        if all(np.any(du < d_eve) for du in d_user) and d_eve.min() > 12:
            eves.append(e.tolist())
    return users, eves


def build(layout_seed):
    rng = np.random.default_rng(layout_seed)
    radio = RadioParams()
    out = {}
    aps1 = [(12.5, 12.5), (37.5, 12.5), (12.5, 37.5), (37.5, 37.5)]
    out[1] = Scenario(aps1, _pts(rng, 4), _pts(rng, 2), radio, "scenario-1")
    aps2 = [(10, 10), (40, 10), (25, 25), (10, 40), (40, 40)]
    u2, e2 = _near_user_layout(rng, aps2, 5, 2)
    out[2] = Scenario(aps2, u2, e2, radio, "scenario-2")
    users, eves = _pts(rng, 8), _pts(rng, 4)
    for sid, n in DENSE_COUNTS.items():
        out[sid] = Scenario(DENSE_APS[:n], users, eves, radio, f"scenario-{sid}")
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--layout-seed", type=int, default=19)
    args = ap.parse_args()
    for sid, sc in build(args.layout_seed).items():
        save_scenario(sc, DATA / f"scenario_{sid}.json")


if __name__ == "__main__":
    main()
