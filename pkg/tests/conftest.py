import numpy as np
import pytest

from cfjam.propagation import GainMatrix
from cfjam.scenario import RadioParams, RandomSpec, Scenario, generate_random_scenario

NOISE = 3.16e-12


def gains(user, eve=None):
    """GainMatrix from nested lists, eve defaulting to an empty set."""
    user = np.asarray(user, dtype=float)
    eve = np.zeros((user.shape[0], 0)) if eve is None else np.asarray(eve, dtype=float)
    return GainMatrix(user, eve)


def random_scenario(seed, n_aps=3, n_users=3, n_eves=2, **radio):
    return generate_random_scenario(
        RandomSpec(n_aps, n_users, n_eves, radio=RadioParams(**radio)), seed)


@pytest.fixture
def radio():
    return RadioParams()


@pytest.fixture
def fig1():
    """Four APs, two users served by APs 1 and 3, two eavesdroppers."""
    return Scenario(
        aps=[(10, 10), (40, 10), (10, 40), (40, 40)],
        users=[(14, 12), (12, 36)],
        eves=[(20, 18), (22, 30)],
        name="fig1",
    )


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
