"""Long-run regime classification and asymptotic wage growth.

Under a heavy-tailed task distribution the unautomated share decays
forever at rate lambda*g, and the economy settles into one of three
regimes depending on how that rate compares to the balanced growth rate
g_bgp = (A - rho - delta)/eta:

* Collapse (lambda*g > g_bgp): automation outruns capital accumulation,
  the economy reaches the linear regime, wages fall to A and the labor
  share to zero.
* Capital constrained (lambda*g in ((1-sigma)*g_bgp, g_bgp]): wages grow
  at (g_bgp - lambda*g)/sigma.
* Automation constrained (lambda*g <= (1-sigma)*g_bgp): wages grow at
  lambda*g/(1-sigma) and the labor share converges to an interior value.

The predicted wage-growth curve over lambda*g is a tent: rising with
slope 1/(1-sigma), peaking at ((1-sigma)*g_bgp, g_bgp), falling with
slope -1/sigma, and zero past g_bgp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple

import numpy as np

from .dynamics import PreferenceParams, TrajectoryPoint, bgp_growth, long_run_savings
from .static_economy import EconomyParams, Region


class Regime(Enum):
    COLLAPSE = "collapse"
    CAPITAL_CONSTRAINED = "capital_constrained"
    AUTOMATION_CONSTRAINED = "automation_constrained"


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    asymptotic_wage_growth: float
    asymptotic_labor_share: float
    thresholds: Tuple[float, float]  # (lambda_g_hi, lambda_g_lo)


@dataclass(frozen=True)
class OmegaDiagnostic:
    """Value of K^((sigma-1)/sigma) * (phi/(1-phi))^(1/sigma) at a point.

    Its trend along a trajectory tail reveals the realized regime:
    divergence in collapse, decay toward zero when capital is the
    constraint, a finite positive limit when automation is.
    """

    omega: float


def thresholds(params: EconomyParams, prefs: PreferenceParams) -> Tuple[float, float]:
    """(lambda_g_hi, lambda_g_lo) regime boundaries."""
    hi = bgp_growth(prefs, params.A)
    return hi, (1.0 - params.sigma) * hi


def classify_long_run(
    params: EconomyParams, prefs: PreferenceParams, lambda_g: float
) -> RegimeReport:
    """Regime, asymptotic wage growth, and asymptotic labor share for a
    heavy-tail scenario with unautomated-share decay rate ``lambda_g``."""
    if lambda_g <= 0.0:
        raise ValueError(f"automation rate must be > 0, got {lambda_g}")
    hi, lo = thresholds(params, prefs)
    if lambda_g > hi:
        return RegimeReport(Regime.COLLAPSE, 0.0, 0.0, (hi, lo))
    if lambda_g > lo:
        growth = (hi - lambda_g) / params.sigma
        return RegimeReport(Regime.CAPITAL_CONSTRAINED, growth, 1.0, (hi, lo))
    growth = lambda_g / (1.0 - params.sigma)
    share = labor_share_limit_case3(params, prefs, lambda_g)
    return RegimeReport(Regime.AUTOMATION_CONSTRAINED, growth, share, (hi, lo))


def labor_share_limit_case3(
    params: EconomyParams, prefs: PreferenceParams, lambda_g: float
) -> float:
    """Limiting labor share in the automation-constrained regime.

    Comes from balanced capital growth at the wage growth rate under the
    long-run savings rate: 1 - [s_inf*A/(g_w + delta)]^((sigma-1)/sigma).
    """
    _, lo = thresholds(params, prefs)
    if not 0.0 < lambda_g <= lo:
        raise ValueError(
            f"labor-share limit applies for lambda_g in (0, {lo}], got {lambda_g}"
        )
    g_w = lambda_g / (1.0 - params.sigma)
    s_a = long_run_savings(prefs, params.A) * params.A
    exponent = (params.sigma - 1.0) / params.sigma
    return 1.0 - (s_a / (g_w + prefs.delta)) ** exponent


def predicted_wage_growth(
    params: EconomyParams, prefs: PreferenceParams, lambda_g: float
) -> float:
    return classify_long_run(params, prefs, lambda_g).asymptotic_wage_growth


def wage_growth_curve(
    params: EconomyParams, prefs: PreferenceParams, lambda_g_grid: Iterable[float]
) -> List[Tuple[float, float]]:
    """Predicted asymptotic wage growth over a grid of automation rates."""
    return [
        (lg, predicted_wage_growth(params, prefs, lg)) for lg in lambda_g_grid
    ]


def wage_max_rate(
    params: EconomyParams, prefs: PreferenceParams
) -> Tuple[float, float]:
    """Automation rate maximizing asymptotic wage growth, and that maximum:
    ((1-sigma)*(A-rho-delta)/eta, (A-rho-delta)/eta)."""
    hi, lo = thresholds(params, prefs)
    return lo, hi


def omega(params: EconomyParams, point: TrajectoryPoint) -> OmegaDiagnostic:
    if point.region != Region.ONE or point.phi >= 1.0:
        raise ValueError("omega diagnostic is defined for Region-1 points only")
    sigma = params.sigma
    value = point.K ** ((sigma - 1.0) / sigma) * (
        point.phi / (1.0 - point.phi)
    ) ** (1.0 / sigma)
    return OmegaDiagnostic(value)


def collapse_savings_bound_holds(
    params: EconomyParams, prefs: PreferenceParams, lambda_g: float
) -> bool:
    """Whether s_inf*A - delta > lambda_g, the capital-growth floor that
    rules out collapse."""
    s_inf = long_run_savings(prefs, params.A)
    return s_inf * params.A - prefs.delta > lambda_g


def tail_growth(t: np.ndarray, x: np.ndarray, frac: float = 0.2) -> float:
    """Mean log-derivative of ``x`` over the final ``frac`` of the horizon.

    This is the numerical stand-in for 'asymptotic growth rate' used when
    comparing simulations against regime predictions.
    """
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if len(t) != len(x) or len(t) < 2:
        raise ValueError("need two equal-length series")
    if not 0.0 < frac <= 1.0:
        raise ValueError(f"window fraction must lie in (0, 1], got {frac}")
    t0 = t[-1] - frac * (t[-1] - t[0])
    i0 = int(np.searchsorted(t, t0))
    i0 = min(i0, len(t) - 2)
    if np.any(x[i0:] <= 0.0):
        raise ValueError("series must be positive over the measurement window")
    return (math.log(x[-1]) - math.log(x[i0])) / (t[-1] - t[i0])
