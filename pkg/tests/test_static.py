import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from autoecon import (
    EconomyParams,
    Region,
    fpf_wage,
    kappa,
    limit_wage,
    oracle_equilibrium,
    region_threshold_phi,
    static_equilibrium,
    wage_response,
)
from autoecon import static_economy

PARAMS = EconomyParams(A=0.5, sigma=0.5, L=1.0)


def test_calibrated_labor_share():
    eq = static_equilibrium(PARAMS, 4.6, 0.608)
    assert eq.region is Region.ONE
    assert eq.labor_share == pytest.approx(0.6566, abs=5e-4)


def test_region_boundary_tie_break():
    K = 3.0
    boundary = region_threshold_phi(K, PARAMS.L)
    below = static_equilibrium(PARAMS, K, boundary - 1e-9)
    at = static_equilibrium(PARAMS, K, boundary)
    above = static_equilibrium(PARAMS, K, boundary + 1e-9)
    assert below.region is Region.ONE
    assert at.region is Region.TWO
    assert above.region is Region.TWO
    # The tie point is the perfect-substitutes economy.
    assert at.w == at.R
    assert at.Y == pytest.approx(PARAMS.A * (K + PARAMS.L), rel=1e-12)


def test_prices_continuous_across_boundary():
    K = 3.0
    boundary = region_threshold_phi(K, PARAMS.L)
    just_in = static_equilibrium(PARAMS, K, boundary - 1e-10)
    at = static_equilibrium(PARAMS, K, boundary)
    assert just_in.w == pytest.approx(at.w, rel=1e-6)
    assert just_in.R == pytest.approx(at.R, rel=1e-6)
    assert just_in.Y == pytest.approx(at.Y, rel=1e-8)


def test_wage_hump_in_automated_share():
    # At fixed K the wage first rises with phi (productivity effect) and
    # then falls (displacement); the response crosses zero exactly once.
    K = 4.6
    boundary = region_threshold_phi(K, PARAMS.L)
    phis = np.linspace(1e-4, boundary - 1e-4, 400)
    ws = [static_equilibrium(PARAMS, K, p).w for p in phis]
    peak = int(np.argmax(ws))
    assert 0 < peak < len(phis) - 1
    assert wage_response(PARAMS, K, phis[peak - 5]) > 0.0
    assert wage_response(PARAMS, K, phis[peak + 5]) < 0.0


def test_wage_response_matches_finite_difference():
    K, phi = 4.6, 0.45
    h = 1e-6
    lo = static_equilibrium(PARAMS, K, phi - h).w
    hi = static_equilibrium(PARAMS, K, phi + h).w
    fd = (math.log(hi) - math.log(lo)) / (2.0 * h)
    assert wage_response(PARAMS, K, phi) == pytest.approx(fd, rel=1e-5)


@given(
    K=st.floats(0.1, 50.0),
    phi=st.floats(0.01, 0.99),
    dk=st.floats(1e-3, 1.0),
)
@settings(max_examples=80, deadline=None)
def test_wage_rises_and_rental_falls_in_capital(K, phi, dk):
    assume(phi < region_threshold_phi(K, PARAMS.L) - 1e-6)
    a = static_equilibrium(PARAMS, K, phi)
    b = static_equilibrium(PARAMS, K + dk, phi)
    assert b.w >= a.w
    assert b.R <= a.R


@given(K=st.floats(0.1, 50.0), phi=st.floats(0.0, 0.99))
@settings(max_examples=80, deadline=None)
def test_factor_payments_exhaust_output(K, phi):
    eq = static_equilibrium(PARAMS, K, phi)
    assert eq.w * PARAMS.L + eq.R * K == pytest.approx(eq.Y, rel=1e-10)


def test_oracle_agrees_with_closed_form():
    for K, phi in [(4.6, 0.608), (2.0, 0.3), (10.0, 0.85), (0.5, 0.1)]:
        eq = static_equilibrium(PARAMS, K, phi)
        oracle = oracle_equilibrium(PARAMS, K, phi, n_tasks=1000)
        assert oracle.Y == pytest.approx(eq.Y, rel=1e-6)
        assert oracle.w == pytest.approx(eq.w, rel=1e-6)
        assert oracle.R == pytest.approx(eq.R, rel=1e-6)


def test_oracle_handles_region_two():
    K = 10.0
    phi = 0.95  # above K/(K+L) is impossible here; use scarce-labor side
    boundary = region_threshold_phi(K, PARAMS.L)
    assert phi > boundary
    eq = static_equilibrium(PARAMS, K, phi)
    oracle = oracle_equilibrium(PARAMS, K, phi, n_tasks=2000)
    assert oracle.region is Region.TWO
    assert oracle.Y == pytest.approx(eq.Y, rel=1e-4)
    assert oracle.w == pytest.approx(eq.w, rel=1e-3)


def test_fpf_identity():
    # Frontier locus: (1-phi) w^(1-sigma) + phi R^(1-sigma) = A^(1-sigma).
    phi = 0.6
    for R in (0.4, 0.2, 0.05, 0.001):
        w = fpf_wage(PARAMS, phi, R)
        lhs = (1.0 - phi) * w ** (1.0 - PARAMS.sigma) + phi * R ** (
            1.0 - PARAMS.sigma
        )
        assert lhs == pytest.approx(PARAMS.A ** (1.0 - PARAMS.sigma), rel=1e-12)


def test_fpf_endpoints():
    phi = 0.6
    assert fpf_wage(PARAMS, phi, PARAMS.A) == pytest.approx(PARAMS.A, rel=1e-12)
    # As R -> 0 the frontier wage tends to the scarce-labor limit wage
    # (convergence is in R**(1-sigma), so slow).
    assert fpf_wage(PARAMS, phi, 1e-14) == pytest.approx(
        limit_wage(PARAMS, phi), rel=1e-6
    )
    with pytest.raises(ValueError):
        fpf_wage(PARAMS, phi, PARAMS.A * 1.01)


def test_equilibrium_prices_sit_on_frontier():
    eq = static_equilibrium(PARAMS, 4.6, 0.608)
    assert fpf_wage(PARAMS, 0.608, eq.R) == pytest.approx(eq.w, rel=1e-12)


def test_limit_wage_is_capital_rich_limit():
    phi = 0.608
    big = static_equilibrium(PARAMS, 1e8, phi)
    assert big.w == pytest.approx(limit_wage(PARAMS, phi), rel=1e-3)


def test_static_arrays_matches_scalar():
    Ks = np.array([0.5, 2.0, 4.6, 10.0, 10.0])
    phis = np.array([0.1, 0.3, 0.608, 0.95, 10.0 / 11.0])
    y, w, r, region = static_economy.static_arrays(PARAMS, Ks, phis)
    for i in range(len(Ks)):
        eq = static_equilibrium(PARAMS, float(Ks[i]), float(phis[i]))
        assert y[i] == pytest.approx(eq.Y, rel=1e-12)
        assert w[i] == pytest.approx(eq.w, rel=1e-12)
        assert r[i] == pytest.approx(eq.R, rel=1e-12)
        assert region[i] == int(eq.region)


def test_kappa_and_threshold_are_inverses():
    for phi in (0.1, 0.5, 0.9):
        K = kappa(phi) * PARAMS.L
        assert region_threshold_phi(K, PARAMS.L) == pytest.approx(phi, rel=1e-12)


def test_invalid_inputs_rejected():
    with pytest.raises(ValueError):
        EconomyParams(A=0.5, sigma=1.0)
    with pytest.raises(ValueError):
        EconomyParams(A=0.0, sigma=0.5)
    with pytest.raises(ValueError):
        static_equilibrium(PARAMS, -1.0, 0.5)
    with pytest.raises(ValueError):
        static_equilibrium(PARAMS, 1.0, 1.5)
    with pytest.raises(ValueError):
        wage_response(PARAMS, 1.0, 0.9)  # region 2
    with pytest.raises(ValueError):
        limit_wage(PARAMS, 1.0)
    with pytest.raises(ValueError):
        oracle_equilibrium(PARAMS, 1.0, 0.5, n_tasks=1)
