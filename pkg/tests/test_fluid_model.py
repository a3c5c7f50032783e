import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubic_response.core_model import CubicParams, NetworkPath, cubic_window
from cubic_response.fluid_model import (
    fixed_point,
    fluid_coefficient,
    inter_loss_time,
    iterate_loss_map,
    lemma5_check,
    loss_map,
    mean_window_fluid,
    packets_sent,
    solve,
    tau_of_x,
)

HEADLINE = NetworkPath(1.0, 0.01)


def test_fixed_point_value(params):
    assert fixed_point(params, HEADLINE) == pytest.approx(36.03, abs=5e-3)


def test_fixed_point_scaling(params):
    x1 = fixed_point(params, NetworkPath(1.0, 0.01))
    assert fixed_point(params, NetworkPath(1.0, 0.005)) / x1 == pytest.approx(2 ** 0.75)
    assert fixed_point(params, NetworkPath(0.2, 0.01)) / x1 == pytest.approx(0.2 ** 0.75)


@pytest.mark.parametrize("p, expected", [(1e-2, 33.33), (5e-3, 56.05), (8e-5, 1245.81)])
def test_mean_window_fluid_table_cells(params, p, expected):
    assert mean_window_fluid(params, NetworkPath(1.0, p)) == pytest.approx(expected, rel=0.005)


def test_fluid_coefficient(params):
    assert round(fluid_coefficient(params), 4) == 1.0538


def test_inter_loss_time(params):
    tau = inter_loss_time(params, HEADLINE)
    assert tau == pytest.approx(3.0006, abs=5e-4)
    assert inter_loss_time(params, NetworkPath(1.0, 0.01 / 16)) == pytest.approx(2 * tau)
    assert tau == pytest.approx((params.beta * fixed_point(params, HEADLINE) / params.c) ** (1 / 3), rel=1e-9)


def test_solution_fields(params):
    sol = solve(params, NetworkPath(0.5, 0.002))
    assert sol.throughput == pytest.approx(sol.mean_window / 0.5)


def test_packets_sent_matches_quadrature(params):
    from scipy.integrate import quad

    val, _ = quad(lambda t: cubic_window(t, 50.0, params), 0, 7.3, epsabs=1e-12)
    assert packets_sent(params, 50.0, 7.3) == pytest.approx(val, rel=1e-10)


def test_tau_of_x_at_fixed_point(params):
    x = fixed_point(params, HEADLINE)
    assert tau_of_x(params, HEADLINE, x) == pytest.approx(inter_loss_time(params, HEADLINE), abs=1e-8)


def test_tau_of_x_monotone_above_small_windows(params):
    xs = np.geomspace(5, 1e4, 60)
    taus = [tau_of_x(params, HEADLINE, x) for x in xs]
    assert all(b < a for a, b in zip(taus, taus[1:]))


def test_tau_of_x_not_monotone_for_tiny_windows(params):
    # a larger pre-loss window also pushes the plateau later, which wins near x = 1
    assert tau_of_x(params, HEADLINE, 2.0) > tau_of_x(params, HEADLINE, 1.0)


def test_tau_of_x_budget(params):
    for x in (1.0, 10.0, 36.0, 500.0):
        tau = tau_of_x(params, HEADLINE, x)
        assert packets_sent(params, x, tau) == pytest.approx(HEADLINE.rtt / HEADLINE.drop_prob, rel=1e-8)


def test_tau_of_x_domain(params):
    with pytest.raises(ValueError):
        tau_of_x(params, HEADLINE, 0.5)


def test_loss_map_fixed_point(params):
    x = fixed_point(params, HEADLINE)
    assert loss_map(params, HEADLINE, x) == pytest.approx(x, rel=1e-6)


@pytest.mark.parametrize("x", [1.0, 5.0, 20.0, 35.0, 37.0, 50.0, 200.0, 5000.0])
def test_loss_map_sign_condition(params, x):
    x_star = fixed_point(params, HEADLINE)
    nxt = loss_map(params, HEADLINE, x)
    if x < x_star:
        assert nxt > x
    else:
        assert x_star < nxt < x


def test_iterate_constant_at_fixed_point(params):
    x = fixed_point(params, HEADLINE)
    orbit = iterate_loss_map(params, HEADLINE, x, 5)
    assert len(orbit) == 6
    assert np.allclose(orbit, x, rtol=1e-6)


def test_loss_map_is_neutral_at_fixed_point(params):
    # L(x) - x = C (tau - J)^3 vanishes to third order, so L'(x*) = 1
    x = fixed_point(params, HEADLINE)
    h = 1e-3
    slope = (loss_map(params, HEADLINE, x + h) - loss_map(params, HEADLINE, x - h)) / (2 * h)
    assert slope == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("x0", [1.0, 10.0, 50.0, 100.0])
def test_iterate_converges_slowly(params, x0):
    x = fixed_point(params, HEADLINE)
    orbit = np.array(iterate_loss_map(params, HEADLINE, x0, 2000))
    err = np.abs(orbit - x)
    # after the first overshoot the error never grows and keeps shrinking
    assert np.all(np.diff(err[5:]) <= 1e-12)
    assert err[2000] < err[200] < err[20]
    # cubic contraction: error decays like k^(-1/2)
    assert err[2000] * np.sqrt(2000) == pytest.approx(err[500] * np.sqrt(500), rel=0.1)


def test_iterate_from_above_decreases(params):
    x = fixed_point(params, HEADLINE)
    orbit = np.array(iterate_loss_map(params, HEADLINE, 2 * x, 100))
    assert np.all(np.diff(orbit) < 0) and np.all(orbit > x)


@settings(max_examples=60, deadline=None)
@given(
    c=st.floats(0.05, 5.0),
    beta=st.floats(0.05, 0.95),
    rtt=st.floats(0.01, 2.0),
    p=st.floats(1e-5, 0.2),
)
def test_fluid_invariants(c, beta, rtt, p):
    params, path = CubicParams(c, beta), NetworkPath(rtt, p)
    sol = solve(params, path)
    assert sol.mean_window == pytest.approx(sol.x_star * (4 - beta) / 4, rel=1e-9)
    assert sol.mean_window * sol.tau / rtt == pytest.approx(1 / p, rel=1e-9)


def test_lemma5_examples():
    assert lemma5_check(4 / 3, 1.0)
    assert 2 ** (4 / 3) - 1 == pytest.approx(1.5198, abs=5e-5)
    assert lemma5_check(1.000001, 3.0)
    with pytest.raises(ValueError):
        lemma5_check(2.0, 1.0)
    with pytest.raises(ValueError):
        lemma5_check(1.5, 0.0)


@given(k=st.floats(1.001, 1.999), x=st.floats(1e-6, 1e8))
def test_lemma5_property(k, x):
    assert lemma5_check(k, x)
