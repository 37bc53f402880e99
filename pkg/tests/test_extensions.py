import math

import numpy as np
import pytest
from scipy.optimize import bisect

from autoecon import (
    ConstantSavings,
    EconomyParams,
    FixedFactorParams,
    PreferenceParams,
    Ramsey,
    RndParams,
    SkillDistribution,
    SolverSettings,
    SpecificCapitalState,
    fixed_factor_equilibrium,
    fixed_factor_steady_capital,
    fixed_factor_steady_savings,
    nostalgic_cap_path,
    pareto_from_initial_share,
    power_from_initial_share,
    simulate_fixed_factor,
    simulate_nostalgic,
    simulate_two_sector,
    singularity_condition,
    skill_wages,
    specific_capital_returns,
    static_equilibrium,
)
from autoecon import distributions, extensions

PARAMS = EconomyParams(A=0.5, sigma=0.5, L=1.0)
PREFS = PreferenceParams(rho=0.04, eta=2.0, delta=0.1)


# --- fixed factor ----------------------------------------------------------


def test_alpha_one_reduces_to_baseline():
    ff = FixedFactorParams(alpha=1.0, M=7.3)
    for K, phi in [(4.6, 0.608), (1.0, 0.2), (10.0, 0.95)]:
        base = static_equilibrium(PARAMS, K, phi)
        eq = fixed_factor_equilibrium(PARAMS, ff, K, phi)
        assert eq.Y == pytest.approx(base.Y, rel=1e-12)
        assert eq.w == pytest.approx(base.w, rel=1e-12)
        assert eq.R == pytest.approx(base.R, rel=1e-12)
        assert eq.Q == 0.0


def test_factor_payments_exhaust_output_with_fixed_factor():
    ff = FixedFactorParams(alpha=0.9, M=0.7)
    for K, phi in [(4.6, 0.608), (1.0, 0.2), (10.0, 0.95), (3.0, 0.75)]:
        eq = fixed_factor_equilibrium(PARAMS, ff, K, phi)
        total = eq.w * PARAMS.L + eq.R * K + eq.Q * ff.M
        assert total == pytest.approx(eq.Y, rel=1e-10)


def test_fixed_factor_compresses_the_wage_hump():
    # Decreasing returns to the task bundle pull the wage peak toward a
    # smaller automated share than in the baseline.
    K = 4.6
    phis = np.linspace(1e-3, 0.8, 600)
    base_w = [static_equilibrium(PARAMS, K, p).w for p in phis]
    ff = FixedFactorParams(alpha=0.7, M=1.0)
    ff_w = [fixed_factor_equilibrium(PARAMS, ff, K, p).w for p in phis]
    assert phis[int(np.argmax(ff_w))] < phis[int(np.argmax(base_w))]


def test_steady_capital_closed_form_vs_bisection():
    ff = FixedFactorParams(alpha=0.5, M=1.0)
    k_star = fixed_factor_steady_capital(PARAMS, PREFS, ff)

    def gap(K):
        # Region-2 rental rate: alpha*A*(K+L)^(alpha-1)*M^(1-alpha).
        return ff.alpha * PARAMS.A * (K + PARAMS.L) ** (
            ff.alpha - 1.0
        ) * ff.M ** (1.0 - ff.alpha) - (PREFS.rho + PREFS.delta)

    assert k_star == pytest.approx(bisect(gap, 1e-8, 1e6, xtol=1e-12), rel=1e-8)


def test_steady_capital_rejects_degenerate_configs():
    with pytest.raises(ValueError):
        fixed_factor_steady_capital(PARAMS, PREFS, FixedFactorParams(alpha=1.0))


def test_steady_savings_rate_sustains_steady_capital():
    ff = FixedFactorParams(alpha=0.5, M=1.0)
    k_star = fixed_factor_steady_capital(PARAMS, PREFS, ff)
    s_star = fixed_factor_steady_savings(PARAMS, PREFS, ff)
    dist, path = pareto_from_initial_share(0.608, 0.145)
    traj = simulate_fixed_factor(
        dist, path, PARAMS, PREFS, ff, 0.9 * k_star,
        ConstantSavings(s_star), SolverSettings(horizon=200.0),
    )
    assert traj.K[-1] == pytest.approx(k_star, rel=0.01)
    assert traj.region[-1] == 2
    # Once labor is no longer scarce the wage equals the rental rate.
    assert traj.w[-1] == pytest.approx(traj.R[-1], rel=1e-10)


def test_fixed_factor_ramsey_converges_to_steady_state():
    ff = FixedFactorParams(alpha=0.5, M=1.0)
    k_star = fixed_factor_steady_capital(PARAMS, PREFS, ff)
    dist, path = pareto_from_initial_share(0.608, 0.145)
    traj = simulate_fixed_factor(
        dist, path, PARAMS, PREFS, ff, 1.6, Ramsey(),
        SolverSettings(horizon=200.0),
    )
    assert traj.K[-1] == pytest.approx(k_star, rel=0.02)
    assert traj.R[-1] == pytest.approx(PREFS.rho + PREFS.delta, rel=0.02)


# --- compute singularity ---------------------------------------------------


def _two_sector(phi0, gamma0, theta, horizon):
    dist, path = pareto_from_initial_share(phi0, 0.01)
    lam_gamma = -math.log(1.0 - gamma0) / path.log_i0
    rnd = RndParams(
        theta=theta, gamma_dist=distributions.Pareto(lam_gamma), s=0.3, c=0.5
    )
    return simulate_two_sector(
        rnd, dist, path, SolverSettings(horizon=horizon), freeze_fractions=True
    )


def test_singularity_condition_ratio():
    ratio, triggered = singularity_condition(0.7, 0.8, 0.5)
    assert ratio == pytest.approx(0.8 / (0.3 * 0.5), rel=1e-12)
    assert triggered
    ratio, triggered = singularity_condition(0.3, 0.2, 0.0)
    assert ratio == pytest.approx(0.2 / 0.7, rel=1e-12)
    assert not triggered
    with pytest.raises(ValueError):
        singularity_condition(0.5, 0.5, 1.0)


def test_supercritical_research_blows_up():
    res = _two_sector(0.7, 0.8, 0.5, horizon=100.0)
    assert res.blowup_time is not None and res.blowup_time < 50.0
    growth = np.diff(res.log_A)
    assert np.all(np.diff(growth[-20:]) > 0.0)


def test_subcritical_research_stays_bounded():
    res = _two_sector(0.3, 0.2, 0.0, horizon=100.0)
    assert res.blowup_time is None
    growth = np.diff(res.log_A)
    assert np.all(np.diff(growth[-20:]) <= 1e-12)


# --- nostalgic demand cap --------------------------------------------------


def test_cap_path_tracks_then_binds():
    dist, path = power_from_initial_share(0.608, 20.0)
    times = np.linspace(0.0, 40.0, 401)
    capped = nostalgic_cap_path(dist, path, 0.09, times)
    phi = np.array(
        [distributions.automated_fraction(dist, path, t) for t in times]
    )
    assert np.all(capped <= phi + 1e-12)
    assert np.all(np.diff(capped) >= -1e-15)
    # Before the cap binds the path is just the automated share; the bound
    # first becomes active at T - 1/cap.
    t_bind = 20.0 - 1.0 / 0.09
    early = times < t_bind - 0.2
    late = times > t_bind + 0.2
    assert np.allclose(capped[early], phi[early], atol=1e-9)
    assert np.all(capped[late] < phi[late] - 1e-6)


def test_infinite_cap_is_identity():
    dist, path = power_from_initial_share(0.608, 20.0)
    times = np.linspace(0.0, 30.0, 301)
    capped = nostalgic_cap_path(dist, path, math.inf, times)
    phi = np.array(
        [distributions.automated_fraction(dist, path, t) for t in times]
    )
    assert np.allclose(capped, phi, atol=1e-12)


def test_nostalgic_output_gap_is_nonnegative():
    dist, path = power_from_initial_share(0.608, 20.0)
    capped, uncapped, gap = simulate_nostalgic(
        dist, path, PARAMS, PREFS, 0.09, 4.6, Ramsey(),
        SolverSettings(horizon=60.0),
    )
    assert gap.shape == capped.Y.shape
    assert np.all(gap >= -1e-9)
    assert np.allclose(gap, 1.0 - capped.Y / uncapped.Y, atol=1e-12)
    # Both economies start from the same state; the gap opens only later
    # (forward-looking savings differ slightly even before the cap binds).
    assert gap[0] == pytest.approx(0.0, abs=1e-9)
    assert np.max(gap[capped.t < 8.0]) < 0.02
    assert gap[-1] > 0.1


def test_cap_path_rejects_bad_inputs():
    dist, path = power_from_initial_share(0.608, 20.0)
    times = np.linspace(0.0, 10.0, 11)
    with pytest.raises(ValueError):
        nostalgic_cap_path(dist, path, 0.0, times)
    with pytest.raises(ValueError):
        nostalgic_cap_path(dist, path, 0.09, times[::-1])


# --- heterogeneous skills --------------------------------------------------


def test_skill_wages_order_and_exhaustion():
    skills = SkillDistribution(upsilon=distributions.Pareto(0.005))
    dist, path = pareto_from_initial_share(0.608, 0.01)
    K, t = 4.6, 10.0
    log_i = path.log_i0 + path.g * t
    phi = distributions.automated_fraction(dist, path, t)
    u, w_low, w_high = skill_wages(PARAMS, skills, K, phi, math.exp(log_i))
    assert 0.0 < u <= phi + 1e-12
    assert w_high >= w_low
    assert w_low == PARAMS.A
    # Substituted workers supply effective capital; payments to remaining
    # labor plus the enlarged capital stock exhaust output.
    eq = static_equilibrium(
        EconomyParams(PARAMS.A, PARAMS.sigma, PARAMS.L * (1.0 - u)),
        K + PARAMS.L * u,
        phi,
    )
    assert w_high == pytest.approx(eq.w, rel=1e-12)
    total = (1.0 - u) * PARAMS.L * w_high + eq.R * (K + u * PARAMS.L)
    assert total == pytest.approx(eq.Y, rel=1e-10)


def test_skill_wages_rejects_displacement_beyond_automation():
    # More workers displaced than tasks automated is inconsistent.
    skills = SkillDistribution(upsilon=distributions.Pareto(5.0))
    dist, path = pareto_from_initial_share(0.3, 0.01)
    with pytest.raises(ValueError):
        skill_wages(PARAMS, skills, 4.6, 0.3, math.exp(path.log_i0))


# --- task-specific capital -------------------------------------------------


def _spec_state(k_spec):
    return SpecificCapitalState(
        K=4.6, L=1.0, phi_minus=0.55, delta_mass=0.05, k_spec=k_spec
    )


def test_specific_capital_phases_and_continuity():
    # Scan the specific-capital intensity through all three phases.
    k1 = 1.0 / (1.0 - 0.6)  # pooled below general labor intensity
    k2 = 4.6 / 0.55
    lo = specific_capital_returns(PARAMS, _spec_state(0.5 * k1))
    mid = specific_capital_returns(PARAMS, _spec_state(0.5 * (k1 + k2)))
    hi = specific_capital_returns(PARAMS, _spec_state(2.0 * k2))
    assert lo[3] == 1 and mid[3] == 2 and hi[3] == 3
    # Phase 1: the marginal new-task unit competes with labor, w = r_spec.
    assert lo[0] == pytest.approx(lo[2], rel=1e-12)
    # Phase 3: specific capital pools with traditional capital.
    assert hi[1] == pytest.approx(hi[2], rel=1e-12)
    # Returns are continuous at both phase boundaries.
    for edge in (k1, k2):
        a = specific_capital_returns(PARAMS, _spec_state(edge * (1.0 - 1e-9)))
        b = specific_capital_returns(PARAMS, _spec_state(edge * (1.0 + 1e-9)))
        for x, y in zip(a[:3], b[:3]):
            assert x == pytest.approx(y, rel=1e-6)


def test_specific_capital_return_falls_with_intensity():
    rs = [
        specific_capital_returns(PARAMS, _spec_state(ks))[2]
        for ks in np.linspace(0.5, 12.0, 40)
    ]
    assert all(b <= a + 1e-12 for a, b in zip(rs, rs[1:]))


def test_specific_capital_state_validation():
    with pytest.raises(ValueError):
        SpecificCapitalState(K=-1.0, L=1.0, phi_minus=0.5, delta_mass=0.1, k_spec=1.0)
    with pytest.raises(ValueError):
        SpecificCapitalState(K=1.0, L=1.0, phi_minus=0.95, delta_mass=0.1, k_spec=1.0)
    with pytest.raises(ValueError):
        SpecificCapitalState(K=1.0, L=1.0, phi_minus=0.5, delta_mass=0.0, k_spec=1.0)


def test_rnd_params_validation():
    gd = distributions.Pareto(0.5)
    with pytest.raises(ValueError):
        RndParams(theta=1.0, gamma_dist=gd, s=0.3, c=0.5)
    with pytest.raises(ValueError):
        RndParams(theta=0.5, gamma_dist=gd, s=0.0, c=0.5)
    with pytest.raises(ValueError):
        RndParams(theta=0.5, gamma_dist=gd, s=0.3, c=1.0)
