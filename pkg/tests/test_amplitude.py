import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boostdecay import masspec
from boostdecay.amplitude import (REST, Boost, amplitude_at, spacetime_amplitude,
                                  survival_heuristic, survival_naive_boost, survival_rest)
from boostdecay.errors import InvalidParameters
from boostdecay.quadrature import TimeGrid, riemann_oracle

from strategies import distributions

ONE = TimeGrid(0.0, 1.0, 2)
speeds = st.floats(0.0, 0.99)


def at_one(curve):
    return curve.values[-1]


def test_boost_gamma():
    b = Boost(0.6)
    assert b.gamma == pytest.approx(1.25, abs=1e-15)
    assert Boost.from_gamma(5 / 3).v == pytest.approx(0.8, abs=1e-15)
    assert REST.gamma == 1.0


@given(speeds)
def test_boost_invariant(v):
    b = Boost(v)
    assert b.gamma >= 1
    assert abs(b.gamma * math.sqrt(1 - v * v) - 1) < 1e-14


@pytest.mark.parametrize("v", [-0.1, 1.0, 1.5, float("nan")])
def test_boost_rejects(v):
    with pytest.raises(InvalidParameters):
        Boost(v)


def test_rest_examples(bw, gauss):
    assert at_one(survival_rest(bw, ONE)) == pytest.approx(0.367879, abs=1e-6)
    assert at_one(survival_rest(gauss, ONE)) == pytest.approx(0.990050, abs=1e-6)
    # the oracle agrees with the closed forms
    for w, expected in ((bw, math.exp(-1)), (gauss, math.exp(-0.01))):
        o = riemann_oracle(w, 1.0)
        assert abs(abs(o.value) ** 2 - expected) < 1e-9


def test_naive_examples(bw, gauss):
    assert at_one(survival_naive_boost(bw, Boost(0.6), ONE)) == pytest.approx(0.286505, abs=1e-6)
    c = survival_naive_boost(gauss, Boost(0.8), ONE, method="numeric")
    assert at_one(c) == pytest.approx(0.972604, abs=1e-6)
    assert at_one(c) == pytest.approx(math.exp(-0.01 * 25 / 9), abs=1e-9)


def test_heuristic_examples(bw):
    assert at_one(survival_heuristic(bw, Boost(0.6), ONE)) == pytest.approx(0.449329, abs=1e-6)
    near_light = survival_heuristic(bw, Boost(1 - 1e-12), ONE)
    assert at_one(near_light) == pytest.approx(1.0, abs=1e-5)


def test_spacetime_examples(bw):
    b = Boost(0.6)
    a = spacetime_amplitude(bw, b, 1.0, 0.6)
    assert abs(a) == pytest.approx(0.670320, abs=1e-6)
    assert a == pytest.approx(amplitude_at(bw, 1.0 / b.gamma)[0], abs=1e-15)
    # beyond the worldline the argument changes sign; the modulus is still closed-form
    t, x = 1.0, 1.0 / 0.6
    expected = math.exp(-0.5 * b.gamma * abs(t - 0.6 * x))
    assert abs(spacetime_amplitude(bw, b, t, x)) == pytest.approx(expected, abs=1e-12)
    x = 4.0
    expected = math.exp(-0.5 * b.gamma * abs(t - 0.6 * x))
    assert abs(spacetime_amplitude(bw, b, t, x, method="numeric")) == pytest.approx(expected,
                                                                                  abs=1e-9)


@given(distributions(), st.floats(0.0, 20.0), st.floats(-50.0, 50.0))
@settings(max_examples=30)
def test_spacetime_rest_frame(dist, wt, x):
    t = wt / dist.scale
    a = spacetime_amplitude(dist, REST, t, x)
    b, e = amplitude_at(dist, t)
    assert abs(a - b) <= 1e-15


def test_values_start_at_one(bw_trunc):
    c = survival_rest(bw_trunc, TimeGrid(0.0, 30.0, 7))
    assert abs(c.values[0] - 1) <= c.error_estimates[0] + 1e-15
    assert np.all(c.values <= 1 + c.error_estimates)
    assert np.all(c.values >= 0)


@given(distributions(), st.floats(0.1, 20.0))
@settings(max_examples=20)
def test_zero_speed_equivalence(dist, wt):
    grid = TimeGrid(0.0, wt / dist.scale, 3)
    rest = survival_rest(dist, grid)
    for f in (survival_naive_boost, survival_heuristic):
        c = f(dist, REST, grid)
        np.testing.assert_array_equal(c.values, rest.values)


@given(distributions(), speeds, st.floats(0.01, 20.0))
@settings(max_examples=40)
def test_naive_heuristic_duality(dist, v, wt):
    b = Boost(v)
    t = wt / dist.scale
    grid = TimeGrid(0.0, t, 2)
    naive = survival_naive_boost(dist, b, grid, method="numeric")
    heur = survival_heuristic(dist, b, grid, method="numeric")
    fast = survival_rest(dist, TimeGrid(0.0, b.gamma * t, 2), method="numeric")
    slow = survival_rest(dist, TimeGrid(0.0, t / b.gamma, 2), method="numeric")
    assert abs(naive.values[1] - fast.values[1]) <= naive.error_estimates[1] + fast.error_estimates[1]
    assert abs(heur.values[1] - slow.values[1]) <= heur.error_estimates[1] + slow.error_estimates[1]


@given(st.floats(0.01, 0.99), st.floats(1e-3, 30.0))
def test_time_dilation_ordering(v, t):
    w = masspec.breit_wigner(1.0, 1.0)
    grid = TimeGrid(0.0, t, 2)
    b = Boost(v)
    rest = survival_rest(w, grid).values[1]
    assert survival_heuristic(w, b, grid).values[1] >= rest >= survival_naive_boost(w, b, grid).values[1]


def test_small_time_flatness(gauss):
    eps = np.array([1e-2, 1e-3, 1e-4]) / gauss.sigma_m
    deficits = []
    for e in eps:
        p = survival_rest(gauss, TimeGrid(0.0, float(e), 2), method="numeric", tol=1e-12).values[1]
        deficits.append(1 - p)
    deficits = np.array(deficits)
    # (1 - P)/eps shrinks in proportion to eps, and the quadratic coefficient is sigma_m^2
    ratios = deficits / eps
    assert ratios[0] > 9 * ratios[1]
    assert deficits[0] / eps[0] ** 2 == pytest.approx(gauss.sigma_m**2, rel=1e-3)


def test_breit_wigner_is_not_flat(bw):
    # the Lorentzian has no mean: the slope at zero is -Gamma, not zero
    eps = 1e-6
    p = survival_rest(bw, TimeGrid(0.0, eps, 2)).values[1]
    assert (1 - p) / eps == pytest.approx(bw.Gamma, rel=1e-5)


def test_khalfin_tail():
    w = masspec.truncated_breit_wigner(1.0, 0.1, 0.0)
    ts = np.array([1e2, 1e3, 1e4]) / w.Gamma
    p = np.array([abs(amplitude_at(w, float(t))[0]) ** 2 for t in ts])
    slope = np.polyfit(np.log(ts), np.log(p), 1)[0]
    assert slope == pytest.approx(-2.0, abs=1e-3)
    # the oracle finds the same power law
    po = np.array([abs(riemann_oracle(w, float(t)).value) ** 2 for t in ts])
    np.testing.assert_allclose(po, p, rtol=1e-5)
