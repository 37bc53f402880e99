import numpy as np
import pytest

from autoecon import EconomyParams, PreferenceParams
from autoecon import analysis
from autoecon.analysis import (
    Regime,
    classify_long_run,
    labor_share_limit_case3,
    omega,
    wage_growth_curve,
    wage_max_rate,
)

PARAMS = EconomyParams(A=0.5, sigma=0.5, L=1.0)
PREFS = PreferenceParams(rho=0.04, eta=2.0, delta=0.1)


def test_threshold_values():
    hi, lo = sorted(analysis.thresholds(PARAMS, PREFS), reverse=True)
    assert hi == pytest.approx(0.18, abs=1e-12)
    assert lo == pytest.approx(0.09, abs=1e-12)


def test_regime_classification_samples():
    fast = classify_long_run(PARAMS, PREFS, 0.25)
    mid = classify_long_run(PARAMS, PREFS, 0.12)
    slow = classify_long_run(PARAMS, PREFS, 0.01)
    assert fast.regime is Regime.COLLAPSE
    assert fast.asymptotic_wage_growth == 0.0
    assert fast.asymptotic_labor_share == 0.0
    assert mid.regime is Regime.CAPITAL_CONSTRAINED
    assert mid.asymptotic_wage_growth == pytest.approx(
        (0.18 - 0.12) / PARAMS.sigma, rel=1e-12
    )
    assert mid.asymptotic_labor_share == 1.0
    assert slow.regime is Regime.AUTOMATION_CONSTRAINED
    assert slow.asymptotic_wage_growth == pytest.approx(
        0.01 / (1.0 - PARAMS.sigma), rel=1e-12
    )


def test_curve_is_continuous_at_both_thresholds():
    eps = 1e-9
    for edge in (0.09, 0.18):
        pairs = wage_growth_curve(PARAMS, PREFS, [edge - eps, edge, edge + eps])
        values = [g for _, g in pairs]
        assert max(values) - min(values) < 1e-7


def test_curve_peak_at_lower_threshold():
    grid = np.linspace(0.005, 0.3, 1000)
    pairs = wage_growth_curve(PARAMS, PREFS, grid)
    values = np.array([g for _, g in pairs])
    lam_peak, g_peak = wage_max_rate(PARAMS, PREFS)
    assert lam_peak == pytest.approx(0.09, abs=1e-12)
    assert g_peak == pytest.approx(0.18, abs=1e-12)
    assert grid[int(np.argmax(values))] == pytest.approx(lam_peak, abs=0.001)
    assert values.max() <= g_peak + 1e-12


def test_collapse_region_is_flat_zero():
    pairs = wage_growth_curve(PARAMS, PREFS, [0.19, 0.25, 0.5])
    assert all(g == 0.0 for _, g in pairs)


def test_case3_labor_share_value():
    # At slow automation the asymptotic labor share under the constant
    # long-run savings rate is (1-sigma)-weighted: 4/7 at this calibration.
    assert labor_share_limit_case3(PARAMS, PREFS, 0.01) == pytest.approx(
        0.5714, abs=5e-4
    )
    with pytest.raises(ValueError):
        labor_share_limit_case3(PARAMS, PREFS, 0.1)  # above lo threshold


def test_omega_diagnostic():
    from autoecon import ConstantSavings, SolverSettings, simulate
    from autoecon import pareto_from_initial_share

    dist, path = pareto_from_initial_share(0.608, 0.01)
    traj = simulate(
        dist, path, PARAMS, PREFS, 4.6, ConstantSavings(0.4),
        SolverSettings(horizon=5.0),
    )
    p = traj.point(0)
    diag = omega(PARAMS, p)
    expected = p.K ** ((PARAMS.sigma - 1.0) / PARAMS.sigma) * (
        p.phi / (1.0 - p.phi)
    ) ** (1.0 / PARAMS.sigma)
    assert diag.omega == pytest.approx(expected, rel=1e-12)

    # Region-2 points have no omega.
    dist2, path2 = pareto_from_initial_share(0.608, 0.3)
    traj2 = simulate(
        dist2, path2, PARAMS, PREFS, 4.6, ConstantSavings(0.2),
        SolverSettings(horizon=40.0),
    )
    last = traj2.point(len(traj2.t) - 1)
    assert last.region == 2
    with pytest.raises(ValueError):
        omega(PARAMS, last)


def test_tail_growth_recovers_exponential_rate():
    t = np.linspace(0.0, 50.0, 501)
    x = 3.0 * np.exp(0.07 * t)
    assert analysis.tail_growth(t, x) == pytest.approx(0.07, rel=1e-9)
    with pytest.raises(ValueError):
        analysis.tail_growth(t, x[:-1])
    with pytest.raises(ValueError):
        analysis.tail_growth(t, x, frac=0.0)


def test_classify_rejects_nonpositive_rate():
    with pytest.raises(ValueError):
        classify_long_run(PARAMS, PREFS, 0.0)
