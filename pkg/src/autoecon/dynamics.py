"""Dynamic general equilibrium under an exogenous automation path.

The household side is standard CRRA/Ramsey: consumption follows the Euler
equation C'/C = (F_K - rho - delta)/eta, capital follows
K' = Y - delta*K - C.  Because the automation path is exogenous, the whole
system is a two-dimensional non-autonomous ODE.  Two policies are
supported:

* ``Ramsey`` — the saddle path is found by shooting on initial
  consumption: integrate forward, compare the terminal consumption/output
  ratio against the analytically known asymptote for the scenario's
  long-run regime, and bisect.
* ``ConstantSavings`` — C = (1-s)Y with fixed s, defaulting to the
  balanced-growth savings rate s_inf = (A - rho - delta + eta*delta)/(A*eta).

Integration happens in :mod:`autoecon.kernels`; this module owns policy,
terminal conditions, event bookkeeping and trajectory assembly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from . import distributions, kernels
from .distributions import AutomationPath, Mixture, Pareto, PowerBounded, TaskDistribution
from .static_economy import EconomyParams, Region, static_arrays, static_equilibrium


class SolverError(RuntimeError):
    """Shooting failed to bracket or converge; carries the last bracket."""


@dataclass(frozen=True)
class PreferenceParams:
    """Discount rate rho, inverse EIS eta, depreciation delta (all per year)."""

    rho: float
    eta: float
    delta: float

    def __post_init__(self):
        if self.rho < 0.0:
            raise ValueError(f"discount rate must be >= 0, got {self.rho}")
        if self.eta <= 0.0:
            raise ValueError(f"inverse EIS must be > 0, got {self.eta}")
        if self.delta < 0.0:
            raise ValueError(f"depreciation must be >= 0, got {self.delta}")


@dataclass(frozen=True)
class SolverSettings:
    dt: float = 0.01
    horizon: float = 100.0
    shoot_tol: float = 1e-8
    max_shoot_iter: int = 80
    integrator: str = "rk4"

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"step must be > 0, got {self.dt}")
        if self.horizon < 1.0:
            raise ValueError(f"horizon must be >= 1 year, got {self.horizon}")
        if self.shoot_tol <= 0.0:
            raise ValueError(f"tolerance must be > 0, got {self.shoot_tol}")
        if self.integrator not in ("rk4", "euler"):
            raise ValueError(f"integrator must be 'rk4' or 'euler', got {self.integrator!r}")


@dataclass(frozen=True)
class Ramsey:
    pass


@dataclass(frozen=True)
class ConstantSavings:
    """Fixed savings rate; None means use long_run_savings for the scenario."""

    s: Optional[float] = None


Policy = Union[Ramsey, ConstantSavings]


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    I: float
    phi: float
    region: Region
    K: float
    C: float
    Y: float
    w: float
    R: float
    labor_share: float
    savings_rate: float


@dataclass
class Trajectory:
    """Recorded path of the economy plus located events.

    Columns are parallel numpy arrays; ``events`` is a list of
    (kind, time) pairs with kind one of region2_entry, region1_reentry,
    full_automation, wage_peak.
    """

    t: np.ndarray
    I: np.ndarray
    phi: np.ndarray
    region: np.ndarray
    K: np.ndarray
    C: np.ndarray
    Y: np.ndarray
    w: np.ndarray
    R: np.ndarray
    labor_share: np.ndarray
    savings_rate: np.ndarray
    events: List[Tuple[str, float]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def points(self) -> List[TrajectoryPoint]:
        return [self.point(i) for i in range(len(self.t))]

    def point(self, i: int) -> TrajectoryPoint:
        return TrajectoryPoint(
            t=float(self.t[i]),
            I=float(self.I[i]),
            phi=float(self.phi[i]),
            region=Region(int(self.region[i])),
            K=float(self.K[i]),
            C=float(self.C[i]),
            Y=float(self.Y[i]),
            w=float(self.w[i]),
            R=float(self.R[i]),
            labor_share=float(self.labor_share[i]),
            savings_rate=float(self.savings_rate[i]),
        )

    def event_time(self, kind: str) -> Optional[float]:
        for k, t in self.events:
            if k == kind:
                return t
        return None


def consumption_growth(
    params: EconomyParams, prefs: PreferenceParams, K: float, phi: float, C: float
) -> float:
    """Instantaneous Euler growth rate (F_K - rho - delta)/eta at the state."""
    eq = static_equilibrium(params, K, phi)
    return (eq.R - prefs.rho - prefs.delta) / prefs.eta


def bgp_growth(prefs: PreferenceParams, A: float) -> float:
    """Balanced growth rate (A - rho - delta)/eta in the linear regime."""
    if A <= prefs.rho + prefs.delta:
        raise ValueError(
            f"balanced growth needs A > rho + delta ({A} <= {prefs.rho + prefs.delta})"
        )
    return (A - prefs.rho - prefs.delta) / prefs.eta


def long_run_savings(prefs: PreferenceParams, A: float) -> float:
    """Savings rate on the balanced growth path: (A - rho - delta + eta*delta)/(A*eta)."""
    s = (A - prefs.rho - prefs.delta + prefs.eta * prefs.delta) / (A * prefs.eta)
    if not 0.0 < s < 1.0:
        raise ValueError(f"balanced-growth savings rate {s} outside (0, 1); bad calibration")
    return s


def capital_upper_bound(
    params: EconomyParams, prefs: PreferenceParams, phi: float
) -> float:
    """Largest capital stock consistent with F_K >= rho + delta at this phi.

    Closed form from inverting the marginal product of capital; confirmed
    by bisection in the tests.  Infinite at full automation.
    """
    if phi > 1.0:
        raise ValueError(f"automated share must be <= 1, got {phi}")
    if phi >= 1.0:
        return math.inf
    if phi == 0.0:
        return 0.0
    A, sigma, L = params.A, params.sigma, params.L
    R = prefs.rho + prefs.delta
    denom = R ** (sigma - 1.0) - A ** (sigma - 1.0) * phi
    if denom <= 0.0:
        return math.inf
    return (
        A ** sigma
        * L
        * (1.0 - phi) ** (1.0 / (sigma - 1.0))
        * phi
        / denom ** (sigma / (sigma - 1.0))
    )


def _phi_array(dist: TaskDistribution, path: AutomationPath, t: np.ndarray) -> np.ndarray:
    code, lam, beta, log_imax, weight = distributions.encode(dist)
    out = np.empty(len(t))
    for i, ti in enumerate(t):
        out[i] = kernels.phi_from_log(code, lam, beta, log_imax, weight, path.log_index(ti))
    return out


def _record_grid(settings: SolverSettings, record_stride: float) -> Tuple[int, int]:
    rec_every = max(1, round(record_stride / settings.dt))
    n_steps = round(settings.horizon / settings.dt)
    if n_steps % rec_every:
        n_steps += rec_every - n_steps % rec_every
    return n_steps, rec_every


def _assemble(
    dist: TaskDistribution,
    path: AutomationPath,
    params: EconomyParams,
    t: np.ndarray,
    K: np.ndarray,
    C: np.ndarray,
    phi: Optional[np.ndarray] = None,
    alpha: float = 1.0,
    M: float = 1.0,
) -> Trajectory:
    if phi is None:
        phi = _phi_array(dist, path, t)
    y, w, r, region = static_arrays(params, K, phi, alpha, M)
    with np.errstate(over="ignore"):
        index = np.exp(path.log_i0 + path.g * t)
    savings = (y - C) / y
    return Trajectory(
        t=t,
        I=index,
        phi=phi,
        region=region,
        K=K,
        C=C,
        Y=y,
        w=w,
        R=r,
        labor_share=w * params.L / y,
        savings_rate=savings,
    )


def terminal_consumption_ratio(
    dist: TaskDistribution,
    path: AutomationPath,
    params: EconomyParams,
    prefs: PreferenceParams,
) -> float:
    """C/Y on the asymptotic path the scenario converges to.

    Scenarios that reach (or approach fast enough) the linear regime settle
    on the balanced growth path with savings s_inf.  Under a heavy tail
    slow enough that automation is the binding constraint, the Euler
    equation pins F_K at rho + delta + eta*g_w with g_w = lambda*g/(1-sigma),
    and the consumption ratio follows from balanced capital growth at g_w.
    The two expressions agree at the regime boundary.
    """
    s_inf = long_run_savings(prefs, params.A)
    lam_tail = None
    if isinstance(dist, Pareto):
        lam_tail = dist.lam
    elif isinstance(dist, Mixture) and dist.omega < 1.0:
        lam_tail = dist.lam
    if lam_tail is None:
        return 1.0 - s_inf
    lam_g = lam_tail * path.g
    lam_lo = (1.0 - params.sigma) * bgp_growth(prefs, params.A)
    if lam_g > lam_lo:
        return 1.0 - s_inf
    g_w = lam_g / (1.0 - params.sigma)
    f_k = prefs.rho + prefs.delta + prefs.eta * g_w
    # K/Y = 1/(F_K^sigma * A^(1-sigma)) on the asymptotic Region-1 path.
    k_over_y = 1.0 / (f_k ** params.sigma * params.A ** (1.0 - params.sigma))
    return 1.0 - (g_w + prefs.delta) * k_over_y


def simulate(
    dist: TaskDistribution,
    path: AutomationPath,
    params: EconomyParams,
    prefs: PreferenceParams,
    K0: float,
    policy: Policy,
    settings: SolverSettings = SolverSettings(),
    record_stride: float = 0.1,
    phi_grid: Optional[np.ndarray] = None,
    alpha: float = 1.0,
    M: float = 1.0,
    terminal_ratio: Optional[float] = None,
) -> Trajectory:
    """Integrate the economy forward and return the recorded trajectory.

    ``phi_grid``, when given, must hold the effective automated fraction at
    half-step resolution (length 2*n_steps + 1) and replaces the
    distribution CDF inside the integrator; the capped-automation
    extension uses this hook.  ``alpha``/``M`` switch on the fixed-factor
    production variant, and ``terminal_ratio`` overrides the asymptotic
    C/Y target used by the Ramsey shooting (the extensions supply their
    own asymptotes).
    """
    if K0 <= 0.0:
        raise ValueError(f"initial capital must be > 0, got {K0}")
    n_steps, rec_every = _record_grid(settings, record_stride)
    code, lam, beta, log_imax, weight = distributions.encode(dist)
    use_rk4 = settings.integrator == "rk4"
    use_grid = phi_grid is not None
    if use_grid:
        if len(phi_grid) != 2 * n_steps + 1:
            raise ValueError(
                f"phi_grid must have length {2 * n_steps + 1}, got {len(phi_grid)}"
            )
        grid = np.ascontiguousarray(phi_grid, dtype=float)
    else:
        grid = np.zeros(1)

    def run(control: float, ramsey: bool):
        return kernels.integrate(
            code, lam, beta, log_imax, weight,
            path.log_i0, path.g,
            params.A, params.sigma, params.L, alpha, M,
            prefs.rho, prefs.eta, prefs.delta,
            K0, control, ramsey,
            settings.dt, n_steps, rec_every,
            use_grid, grid, use_rk4,
        )

    if isinstance(policy, ConstantSavings):
        s = policy.s if policy.s is not None else long_run_savings(prefs, params.A)
        if not 0.0 < s < 1.0:
            raise ValueError(f"savings rate must lie in (0, 1), got {s}")
        status, k_rec, c_rec, ev2, ev_re, peak_t, _, _ = run(s, False)
        if status != kernels.STATUS_OK:
            raise SolverError(f"constant-savings run depleted capital (s={s})")
    else:
        k_rec, c_rec, ev2, ev_re, peak_t = _shoot(
            dist, path, params, prefs, settings, run, K0,
            use_grid, grid, alpha, M, terminal_ratio,
        )

    t = np.arange(n_steps // rec_every + 1) * (rec_every * settings.dt)
    phi = grid[:: 2 * rec_every].copy() if use_grid else None
    traj = _assemble(dist, path, params, t, k_rec, c_rec, phi, alpha, M)
    if ev2 >= 0.0:
        traj.events.append(("region2_entry", ev2))
    if ev_re >= 0.0:
        traj.events.append(("region1_reentry", ev_re))
    t_full = distributions.full_automation_time(dist, path) if not use_grid else None
    if t_full is not None and t_full <= settings.horizon:
        traj.events.append(("full_automation", t_full))
    traj.events.append(("wage_peak", peak_t))
    traj.events.sort(key=lambda kt: kt[1])
    return traj


def _shoot(dist, path, params, prefs, settings, run, K0, use_grid, grid, alpha, M, terminal_ratio):
    """Bisection on initial consumption toward the asymptotic C/Y ratio."""
    if terminal_ratio is None:
        target = terminal_consumption_ratio(dist, path, params, prefs)
    else:
        target = terminal_ratio
    if use_grid:
        phi_end = grid[-1]
    else:
        code, lam, beta, log_imax, weight = distributions.encode(dist)
        phi_end = kernels.phi_from_log(
            code, lam, beta, log_imax, weight, path.log_index(settings.horizon)
        )

    def mismatch(c0):
        status, k_rec, c_rec, ev2, ev_re, peak_t, k_end, c_end = run(c0, True)
        if status != kernels.STATUS_OK:
            return 1.0, None
        y_end, _, _, _ = kernels.static_core(
            params.A, params.sigma, params.L, k_end, phi_end, alpha, M
        )
        return c_end / y_end - target, (k_rec, c_rec, ev2, ev_re, peak_t)

    phi0 = grid[0] if use_grid else distributions.automated_fraction(dist, path, 0.0)
    y0, _, _, _ = kernels.static_core(params.A, params.sigma, params.L, K0, phi0, alpha, M)
    lo, hi = 1e-6 * y0, y0
    m_lo, out_lo = mismatch(lo)
    if m_lo > 0.0:
        raise SolverError(f"cannot bracket initial consumption: mismatch {m_lo} at C0={lo}")
    best = (lo, out_lo)
    for _ in range(settings.max_shoot_iter):
        mid = 0.5 * (lo + hi)
        m_mid, out_mid = mismatch(mid)
        if m_mid > 0.0:
            hi = mid
        else:
            lo, best = mid, (mid, out_mid)
        if abs(m_mid) <= settings.shoot_tol and out_mid is not None:
            best = (mid, out_mid)
            break
        if hi - lo <= 1e-15 * y0:
            break
    else:
        if hi - lo > 1e-12 * y0:
            raise SolverError(
                f"shooting did not converge: bracket [{lo}, {hi}] after "
                f"{settings.max_shoot_iter} iterations"
            )
    _, out = best
    if out is None:
        raise SolverError("shooting converged to a depleted-capital path")
    return out


def bounds(
    dist: TaskDistribution,
    path: AutomationPath,
    params: EconomyParams,
    prefs: PreferenceParams,
    K0: float,
    settings: SolverSettings = SolverSettings(),
    record_stride: float = 0.1,
) -> Tuple[Trajectory, Trajectory]:
    """Envelope trajectories: capital frozen at K0 (lower) and capital at
    its Euler-consistent ceiling each instant (upper).

    Requires F_K(K0, phi0) >= rho + delta, i.e. no past over-accumulation;
    any simulated path then stays inside the envelope pointwise.  The
    consumption and savings columns of the bound paths are undefined (NaN).
    """
    phi0 = distributions.automated_fraction(dist, path, 0.0)
    eq0 = static_equilibrium(params, K0, phi0)
    if eq0.R < prefs.rho + prefs.delta:
        raise ValueError(
            f"initial return {eq0.R} below rho + delta; capital starts over-accumulated"
        )
    n_steps, rec_every = _record_grid(settings, record_stride)
    t = np.arange(n_steps // rec_every + 1) * (rec_every * settings.dt)
    phi = _phi_array(dist, path, t)
    nan = np.full(len(t), np.nan)

    k_lower = np.full(len(t), K0)
    lower = _assemble(dist, path, params, t, k_lower, nan, phi)

    k_upper = np.array([capital_upper_bound(params, prefs, p) for p in phi])
    upper = _assemble(dist, path, params, t, k_upper, nan, phi)
    return lower, upper


def balancing_savings(
    params: EconomyParams,
    state: TrajectoryPoint,
    dist: TaskDistribution,
    path: AutomationPath,
    prefs: Optional[PreferenceParams] = None,
) -> float:
    """Savings rate that holds the wage exactly flat at this instant.

    Valid only without depreciation (the underlying derivation sets
    delta = 0); passing preferences with delta > 0 is refused rather than
    silently extrapolated.  Requires a Region-1 state.
    """
    if prefs is not None and prefs.delta != 0.0:
        raise ValueError("balancing savings rate is derived for delta = 0 only")
    if state.region != Region.ONE:
        raise ValueError("balancing savings rate is a Region-1 quantity")
    sigma = params.sigma
    phi = state.phi
    kap = phi / (1.0 - phi)
    k = state.K / phi
    ell = params.L / (1.0 - phi)
    ratio_pow = (k / ell) ** ((1.0 - sigma) / sigma)
    log_i = path.log_index(state.t)
    dens = distributions.density_times_index(dist, log_i)
    bracket = (kap + 1.0 / (1.0 - sigma)) - (sigma / (1.0 - sigma)) * ratio_pow
    return bracket * (state.K / state.Y) * (dens / phi) * path.g


def wage_growth_decomposition(
    params: EconomyParams, p1: TrajectoryPoint, p2: TrajectoryPoint
) -> Tuple[float, float, float]:
    """Split wage growth between consecutive Region-1 points into capital
    accumulation, productivity, and displacement terms.

    The three terms sum to d(log w)/dt up to the discretization error of
    the central state.
    """
    if p1.region != Region.ONE or p2.region != Region.ONE:
        raise ValueError("decomposition applies to Region-1 point pairs")
    dt = p2.t - p1.t
    if dt <= 0.0:
        raise ValueError("points must be in increasing time order")
    sigma = params.sigma
    phi = 0.5 * (p1.phi + p2.phi)
    s_k = 0.5 * ((p1.R * p1.K / p1.Y) + (p2.R * p2.K / p2.Y))
    s_l = 0.5 * (p1.labor_share + p2.labor_share)
    dk = (math.log(p2.K) - math.log(p1.K)) / dt
    dphi = (p2.phi - p1.phi) / dt
    capital = s_k * dk / sigma
    productivity = (
        (1.0 / (1.0 - sigma))
        * (dphi / (1.0 - phi))
        * (s_l - s_k * (1.0 - phi) / phi)
        / sigma
    )
    displacement = -dphi / ((1.0 - phi) * sigma)
    return capital, productivity, displacement
