"""
Secrecy capacity on a four-AP floor
===================================

Two users, two eavesdroppers, four access points on a 50 m square. We
compute unit-power gains, pick each user's AP, and see what happens to
secrecy when the idle APs start transmitting.
"""

import numpy as np

from cfjam.association import (BASELINE, JAMMING, associate_max_secrecy,
                               associate_strongest_signal, idle_ap_powers)
from cfjam.capacity import report
from cfjam.propagation import gain_matrix, watts_to_dbm
from cfjam.scenario import Scenario

sc = Scenario(aps=[(10, 10), (40, 10), (10, 40), (40, 40)],
              users=[(14, 12), (12, 36)],
              eves=[(20, 18), (22, 30)],
              name="floor")
g = gain_matrix(sc)

# Gains are received watts per transmitted watt. In dBm at 1 W:
print("user gains [dBm at 1 W]\n", np.round(watts_to_dbm(g.user), 1))
print("eve gains  [dBm at 1 W]\n", np.round(watts_to_dbm(g.eve), 1))

###############################################################################
# Association. With identical radios, strongest signal means nearest AP.
# The secrecy-aware rule can pick a farther AP if its traffic is harder to
# overhear.

a_near = associate_strongest_signal(g)
a_safe = associate_max_secrecy(sc, g)
print("strongest-signal association (1-based):", a_near + 1)
print("secrecy-aware association    (1-based):", a_safe + 1)

###############################################################################
# Idle APs silent versus idle APs jamming at full power.

for mode in (BASELINE, JAMMING):
    p = idle_ap_powers(a_safe, sc.n_aps, mode, sc.radio.p_max_watts)
    r = report(sc, g, p, a_safe)
    print(f"{mode:>8}: powers {p}, sum secrecy {r.sum_secrecy:.3f} bit/s, "
          f"ratio {r.secrecy_ratio:.0f}%")

# Full-power jamming also interferes with the users, so it is not
# automatically better. The optimizers search the powers in between.
