"""Physical-layer security for multi-AP Wi-Fi with cooperative friendly jamming.

Compute secrecy capacities from node geometry and search for the AP
transmit powers that maximize the network's sum secrecy capacity.
"""

from .association import associate_max_secrecy, associate_strongest_signal, idle_ap_powers
from .capacity import (SecrecyReport, eve_capacity, max_eve_capacity, report,
                       secrecy_capacity, sum_secrecy, user_capacity)
from .propagation import GainMatrix, dbm_to_watts, gain_matrix, received_power, watts_to_dbm, wavelength
from .scenario import (RadioParams, RandomSpec, Scenario, ScenarioError, builtin_scenario,
                       generate_random_scenario, load_scenario, save_scenario)

__version__ = "0.1.0"
