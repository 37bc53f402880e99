import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from autoecon import distributions as d


def test_pareto_calibration_hits_initial_share():
    dist, path = d.pareto_from_initial_share(0.608, 0.01)
    assert d.automated_fraction(dist, path, 0.0) == pytest.approx(0.608, abs=1e-12)


def test_pareto_unautomated_share_decays_exponentially():
    dist, path = d.pareto_from_initial_share(0.5, 0.03)
    for t in (0.0, 1.0, 10.0, 100.0):
        expected = 0.5 * math.exp(-0.03 * t)
        assert 1.0 - d.automated_fraction(dist, path, t) == pytest.approx(
            expected, rel=1e-12
        )


def test_power_completes_at_horizon():
    dist, path = d.power_from_initial_share(0.608, 20.0)
    assert d.full_automation_time(dist, path) == pytest.approx(20.0, abs=1e-9)
    assert d.automated_fraction(dist, path, 20.0) == 1.0
    assert d.automated_fraction(dist, path, 19.999) < 1.0
    assert d.automated_fraction(dist, path, 0.0) == pytest.approx(0.608, abs=1e-12)


def test_power_beta_shapes_approach():
    # Higher beta front-loads automation: the share at mid-horizon is larger.
    slow, path_s = d.power_from_initial_share(0.3, 10.0, beta=1.0)
    fast, path_f = d.power_from_initial_share(0.3, 10.0, beta=3.0)
    assert d.automated_fraction(fast, path_f, 5.0) > d.automated_fraction(
        slow, path_s, 5.0
    )


def test_mixture_blends_components():
    dist, path = d.mixture_from_initial_share(0.608, 0.95, 0.01, 5.0)
    assert d.automated_fraction(dist, path, 0.0) == pytest.approx(0.608, abs=1e-10)
    # After the bounded part completes only the Pareto tail is left.
    late = d.automated_fraction(dist, path, 50.0)
    assert 0.95 < late < 1.0
    assert d.full_automation_time(dist, path) is None


def test_time_to_fraction_inverts_automated_fraction():
    dist, path = d.pareto_from_initial_share(0.4, 0.02)
    t = d.time_to_fraction(dist, path, 0.9)
    assert t is not None
    assert d.automated_fraction(dist, path, t) == pytest.approx(0.9, abs=1e-9)


def test_time_to_fraction_unreachable_target():
    dist, path = d.pareto_from_initial_share(0.4, 0.02)
    assert d.time_to_fraction(dist, path, 1.0) is None
    bounded, bpath = d.power_from_initial_share(0.4, 7.0)
    assert d.time_to_fraction(bounded, bpath, 1.0) == pytest.approx(7.0)


def test_time_to_fraction_already_reached():
    dist, path = d.pareto_from_initial_share(0.6, 0.01)
    assert d.time_to_fraction(dist, path, 0.5) == 0.0


@given(
    phi0=st.floats(0.05, 0.95),
    lam_g=st.floats(0.005, 0.15),
    t=st.floats(0.0, 100.0),
)
@settings(max_examples=60, deadline=None)
def test_pareto_cdf_monotone_and_bounded(phi0, lam_g, t):
    dist, path = d.pareto_from_initial_share(phi0, lam_g)
    a = d.automated_fraction(dist, path, t)
    b = d.automated_fraction(dist, path, t + 1.0)
    assert 0.0 <= a <= b < 1.0


@given(phi0=st.floats(0.05, 0.95), T=st.floats(1.0, 50.0), beta=st.floats(0.5, 4.0))
@settings(max_examples=60, deadline=None)
def test_power_calibration_round_trip(phi0, T, beta):
    try:
        dist, path = d.power_from_initial_share(phi0, T, beta=beta)
    except ValueError:
        # Extreme corners push the index past double range; rejected cleanly.
        assume(False)
    assert d.automated_fraction(dist, path, 0.0) == pytest.approx(phi0, abs=1e-9)
    assert d.full_automation_time(dist, path) == pytest.approx(T, rel=1e-9)


def test_density_matches_cdf_slope():
    dist, _ = d.pareto_from_initial_share(0.5, 0.05)
    i = 40.0
    h = 1e-4
    slope = (d.phi_cdf(dist, i + h) - d.phi_cdf(dist, i - h)) / (2 * h)
    assert d.phi_density(dist, i) == pytest.approx(slope, rel=1e-6)


def test_encode_family_codes():
    from autoecon import kernels

    p, _ = d.pareto_from_initial_share(0.5, 0.01)
    q, _ = d.power_from_initial_share(0.5, 10.0)
    m, _ = d.mixture_from_initial_share(0.5, 0.5, 0.01, 10.0)
    assert d.encode(p)[0] == kernels.PARETO
    assert d.encode(q)[0] == kernels.POWER
    assert d.encode(m)[0] == kernels.MIXTURE


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        d.pareto_from_initial_share(0.0, 0.01)
    with pytest.raises(ValueError):
        d.pareto_from_initial_share(1.0, 0.01)
    with pytest.raises(ValueError):
        d.power_from_initial_share(0.5, 0.0)
    with pytest.raises(ValueError):
        d.Pareto(-0.1)
    dist, path = d.pareto_from_initial_share(0.5, 0.01)
    with pytest.raises(ValueError):
        d.automated_fraction(dist, path, -1.0)
    with pytest.raises(ValueError):
        d.time_to_fraction(dist, path, 0.0)
