import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import gains, random_scenario
from cfjam.capacity import (check_allocation, check_association, eve_capacity,
                            eve_capacity_matrix, max_eve_capacity, report, secrecy_capacity,
                            sum_secrecy, user_capacity, user_capacity_matrix, user_secrecies)
from cfjam.propagation import gain_matrix
from cfjam.scenario import RadioParams, Scenario

UNIT = RadioParams(noise_watts=1.0)
# zero or physically meaningful; subnormal products lose precision in any float64 code
POWER = st.one_of(st.just(0.0), st.floats(1e-12, 1.0))


def test_single_ap_capacity():
    assert user_capacity(gains([[1.0]]), [1.0], 0, 0, UNIT) == pytest.approx(1.0, rel=1e-15)
    assert user_capacity(gains([[3.0]]), [1.0], 0, 0, UNIT) == pytest.approx(2.0, rel=1e-15)


def test_two_ap_substitution():
    g = gains([[2.0], [1.0]])
    assert user_capacity(g, [1, 1], 0, 0, UNIT) == pytest.approx(1.0, rel=1e-15)


def test_bandwidth_scales_capacity():
    r = RadioParams(noise_watts=1.0, bandwidth_hz=20e6)
    assert user_capacity(gains([[1.0]]), [1.0], 0, 0, r) == pytest.approx(20e6, rel=1e-15)


def test_zero_serving_power():
    assert user_capacity(gains([[5.0], [1.0]]), [0, 1], 0, 0, UNIT) == 0.0


def test_index_errors():
    g = gains([[1.0]], [[1.0]])
    with pytest.raises(IndexError):
        user_capacity(g, [1], 1, 0, UNIT)
    with pytest.raises(IndexError):
        eve_capacity(g, [1], 0, 3, UNIT)
    with pytest.raises(IndexError):
        eve_capacity(gains([[1.0]]), [1], 0, 0, UNIT)


def test_eve_colocated_with_user(fig1):
    sc = Scenario(fig1.aps, fig1.users, [fig1.users[0]])
    g = gain_matrix(sc)
    p = [1, 0.3, 0.7, 0.1]
    for n in range(4):
        assert eve_capacity(g, p, n, 0, sc.radio) == user_capacity(g, p, n, 0, sc.radio)
        assert secrecy_capacity(g, p, 0, n, sc.radio) == 0.0


def test_silent_jammer_leaves_noise_only():
    g = gains([[1.0], [1.0]], [[4.0], [9.0]])
    assert eve_capacity(g, [1, 0], 0, 0, UNIT) == pytest.approx(math.log2(5), rel=1e-15)


def test_max_eve():
    g = gains([[1.0]], [[3.0]])
    assert max_eve_capacity(g, [1], 0, UNIT) == eve_capacity(g, [1], 0, 0, UNIT)
    assert max_eve_capacity(gains([[1.0]]), [1], 0, UNIT) == 0.0
    # eve 2 hears every AP better than eve 1
    g = gains([[1.0], [1.0]], [[1.0, 6.0], [0.5, 2.0]])
    p = [1.0, 1.0]
    brute = max(eve_capacity(g, p, 0, j, UNIT) for j in range(2))
    assert max_eve_capacity(g, p, 0, UNIT) == brute == eve_capacity(g, p, 0, 1, UNIT)


def test_secrecy_clamp_values():
    # capacity 5 vs 7 bits: SINR 31 and 127
    assert secrecy_capacity(gains([[31.0]], [[127.0]]), [1], 0, 0, UNIT) == 0.0
    assert secrecy_capacity(gains([[127.0]], [[31.0]]), [1], 0, 0, UNIT) == pytest.approx(2.0, rel=1e-14)


def test_sum_secrecy_examples():
    g = gains([[8, 1], [2, 3], [1, 9], [0.5, 0.5]], [[3, 1], [1, 2], [0.5, 4], [2, 2]])
    assert sum_secrecy(g, [0, 0, 0, 0], [0, 2], UNIT) == 0.0
    # frozen from a 40-digit evaluation of the link equations
    assert sum_secrecy(g, [1, 0.5, 1, 0.25], [0, 2], UNIT) == pytest.approx(1.395068531515046, rel=1e-13)
    single = gains([[127.0]], [[31.0]])
    assert sum_secrecy(single, [1], [0], UNIT) == secrecy_capacity(single, [1], 0, 0, UNIT)


def test_batch_matches_single():
    sc = random_scenario(3, n_aps=4)
    g = gain_matrix(sc)
    rng = np.random.default_rng(0)
    P = rng.uniform(0, 1, size=(50, 4))
    a = [0, 3, 1]
    batch = sum_secrecy(g, P, a, sc.radio)
    assert batch.shape == (50,)
    for p, b in zip(P, batch):
        assert sum_secrecy(g, p, a, sc.radio) == b


def test_report_j0():
    sc = Scenario([(0, 0), (30, 0)], [(3, 3), (28, 1)], [])
    g = gain_matrix(sc)
    rep = report(sc, g, [1.0, 1.0], [0, 1])
    assert rep.sum_eve_capacity == 0.0
    assert np.array_equal(rep.user_secrecy, rep.user_capacity)
    assert rep.secrecy_ratio == 100.0


def test_report_single_user_single_eve():
    sc = Scenario([(0, 0), (30, 0)], [(3, 3)], [(10, 10)])
    g = gain_matrix(sc)
    p = [1.0, 0.4]
    rep = report(sc, g, p, [0])
    assert rep.sum_eve_capacity == eve_capacity(g, p, 0, 0, sc.radio)
    assert rep.sum_secrecy == rep.user_secrecy.sum()


def test_report_sum_eve_uses_serving_aps_only(fig1):
    g = gain_matrix(fig1)
    p = [1.0, 1.0, 1.0, 1.0]
    a = [0, 2]
    rep = report(fig1, g, p, a)
    expected = sum(max(eve_capacity(g, p, n, j, fig1.radio) for n in set(a)) for j in range(2))
    assert rep.sum_eve_capacity == pytest.approx(expected, rel=1e-15)
    assert 0 <= rep.secrecy_ratio <= 100
    assert rep.eve_worst_per_ap.shape == (4,)


def test_report_validates_inputs(fig1):
    g = gain_matrix(fig1)
    with pytest.raises(ValueError):
        report(fig1, g, [1.5, 1, 1, 1], [0, 2])
    with pytest.raises(ValueError):
        report(fig1, g, [1, 1, 1, 1], [0, 4])
    with pytest.raises(ValueError):
        report(fig1, g, [1, 1, 1], [0, 1])


def test_checks():
    with pytest.raises(ValueError):
        check_allocation([-0.1], 1.0)
    with pytest.raises(ValueError):
        check_allocation([np.nan], 1.0)
    with pytest.raises(ValueError):
        check_association([0.5], 2)
    assert check_association(np.array([1, 0]), 2, 2).tolist() == [1, 0]


def test_log_base_two():
    # SINR exactly 1 gives exactly W
    assert user_capacity(gains([[2.0], [1.0]]), [0.5, 0.0], 0, 0, UNIT) == 1.0


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 4), k=st.integers(1, 3), j=st.integers(0, 3),
       data=st.data())
def test_against_mpmath_oracle(seed, n, k, j, data):
    sc = random_scenario(seed, n, k, j)
    p = data.draw(st.lists(POWER, min_size=n, max_size=n))
    g = gain_matrix(sc)
    cu = user_capacity_matrix(g, p, sc.radio)
    ce = eve_capacity_matrix(g, p, sc.radio)
    for a in range(n):
        for u in range(k):
            assert oracle.rel_err(cu[a, u], oracle.user_cap(sc, p, a, u)) < 1e-12
        for e in range(j):
            assert oracle.rel_err(ce[a, e], oracle.eve_cap(sc, p, a, e)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_clamp_and_nonnegativity(seed, data):
    sc = random_scenario(seed, 3, 3, 3)
    g = gain_matrix(sc)
    p = data.draw(st.lists(st.floats(0, 1), min_size=3, max_size=3))
    a = data.draw(st.lists(st.integers(0, 2), min_size=3, max_size=3))
    s = user_secrecies(g, p, a, sc.radio)
    assert np.all(s >= 0)
    assert sum_secrecy(g, p, a, sc.radio) >= 0


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_interference_accounting(seed, data):
    sc = random_scenario(seed, 4, 2, 2)
    g = gain_matrix(sc)
    p = np.array(data.draw(st.lists(POWER, min_size=4, max_size=4)))
    cu = user_capacity_matrix(g, p, sc.radio)
    for n in range(4):
        for k in range(2):
            interference = sum(p[v] * g.user[v, k] for v in range(4) if v != n)
            sinr = p[n] * g.user[n, k] / (interference + sc.radio.noise_watts)
            assert cu[n, k] == pytest.approx(math.log1p(sinr) / math.log(2), rel=1e-12, abs=1e-300)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), m=st.integers(0, 3), data=st.data())
def test_silencing_an_ap_raises_other_sinrs(seed, m, data):
    sc = random_scenario(seed, 4, 2, 2)
    g = gain_matrix(sc)
    p = np.array(data.draw(st.lists(st.floats(0.01, 1), min_size=4, max_size=4)))
    q = p.copy()
    q[m] = 0.0
    cu_p, cu_q = user_capacity_matrix(g, p, sc.radio), user_capacity_matrix(g, q, sc.radio)
    ce_p, ce_q = eve_capacity_matrix(g, p, sc.radio), eve_capacity_matrix(g, q, sc.radio)
    others = [n for n in range(4) if n != m]
    assert np.all(cu_q[others] >= cu_p[others])
    assert np.all(ce_q[others] >= ce_p[others])
