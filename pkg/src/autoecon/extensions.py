"""Model extensions: fixed factor, automated R&D, capped automation,
heterogeneous skills, and task-specific capital.

Each extension is a small variation on the baseline economy:

* fixed factor — output is Cobb-Douglas between the task composite and a
  factor M in fixed supply, so returns to accumulable inputs diminish and
  the linear regime has a steady state instead of endless growth.
* two-sector R&D — technology A is produced from capital and knowledge
  workers; when automation of R&D tasks outpaces the remaining final
  tasks strongly enough, growth turns super-exponential in finite time.
* capped automation — society deploys at most an effective automated
  share Psi <= Phi, with the unautomated share under the cap decaying at
  a chosen rate once the cap binds.
* skills — workers below the automation index are substituted by capital
  and earn A; those above earn the marginal product of the remaining
  scarce labor.
* task-specific capital — newly automated tasks are served by capital
  that cannot be repurposed; its return passes through three phases as
  the installed amount per task grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import distributions, dynamics, kernels
from .distributions import AutomationPath, TaskDistribution
from .dynamics import (
    Policy,
    PreferenceParams,
    Ramsey,
    SolverSettings,
    Trajectory,
    _record_grid,
)
from .static_economy import EconomyParams, Region, region_threshold_phi


# --- fixed factor ----------------------------------------------------------


@dataclass(frozen=True)
class FixedFactorParams:
    """Cobb-Douglas share alpha of the task composite and quantity M of the
    fixed factor; alpha = 1 collapses to the baseline economy."""

    alpha: float
    M: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"composite share must lie in (0, 1], got {self.alpha}")
        if self.M <= 0.0:
            raise ValueError(f"fixed factor quantity must be > 0, got {self.M}")


@dataclass(frozen=True)
class FixedFactorEquilibrium:
    region: Region
    Y: float
    w: float
    R: float
    Q: float  # return to the fixed factor
    labor_share: float


def fixed_factor_equilibrium(
    params: EconomyParams, ff: FixedFactorParams, K: float, phi: float
) -> FixedFactorEquilibrium:
    """Static equilibrium with the fixed factor; the region threshold is the
    same as in the baseline and does not involve M."""
    if K < 0.0:
        raise ValueError(f"capital must be >= 0, got {K}")
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"automated share must lie in [0, 1], got {phi}")
    y, w, r, region = kernels.static_core(
        params.A, params.sigma, params.L, K, phi, ff.alpha, ff.M
    )
    q = (1.0 - ff.alpha) * y / ff.M
    return FixedFactorEquilibrium(Region(region), y, w, r, q, w * params.L / y)


def fixed_factor_steady_capital(
    params: EconomyParams, prefs: PreferenceParams, ff: FixedFactorParams
) -> float:
    """Capital stock where the linear-regime return equals rho + delta:
    K* = (alpha*A*M^(1-alpha)/(rho+delta))^(1/(1-alpha)) - L."""
    if ff.alpha >= 1.0:
        raise ValueError("steady state requires alpha < 1 (baseline is unbounded)")
    base = ff.alpha * params.A * ff.M ** (1.0 - ff.alpha) / (prefs.rho + prefs.delta)
    k_star = base ** (1.0 / (1.0 - ff.alpha)) - params.L
    if k_star <= 0.0:
        raise ValueError(
            f"no positive steady-state capital (return below rho + delta at K = 0)"
        )
    return k_star


def fixed_factor_steady_savings(
    params: EconomyParams, prefs: PreferenceParams, ff: FixedFactorParams
) -> float:
    """Savings rate delta*K*/Y* whose constant-savings steady state is K*.

    Holding this rate fixed, capital converges to the same K* as the
    Ramsey steady state, which makes it a convenient stand-in policy for
    long fixed-factor runs.
    """
    k_star = fixed_factor_steady_capital(params, prefs, ff)
    y_star = params.A * (k_star + params.L) ** ff.alpha * ff.M ** (1.0 - ff.alpha)
    return prefs.delta * k_star / y_star


def _fixed_factor_terminal_ratio(dist, path, params, prefs, ff):
    """Asymptotic C/Y for the fixed-factor Ramsey shooting.

    With alpha < 1 the economy always ends up in Region 2 and converges
    to the Ramsey steady state at K*, where R = rho + delta and
    C = Y - delta*K*.  Shooting toward the steady-state consumption share
    selects the saddle path even when the horizon ends mid-transition:
    paths above it crash capital, paths below it over-accumulate and
    drive C/Y toward zero, so the bisection pins the initial consumption
    tightly either way.
    """
    k_star = fixed_factor_steady_capital(params, prefs, ff)
    total = k_star + params.L
    y_star = params.A * total ** ff.alpha * ff.M ** (1.0 - ff.alpha)
    return 1.0 - prefs.delta * k_star / y_star


def simulate_fixed_factor(
    dist: TaskDistribution,
    path: AutomationPath,
    params: EconomyParams,
    prefs: PreferenceParams,
    ff: FixedFactorParams,
    K0: float,
    policy: Policy = Ramsey(),
    settings: SolverSettings = SolverSettings(),
    record_stride: float = 0.1,
) -> Trajectory:
    """Same contract as :func:`autoecon.dynamics.simulate` with fixed-factor
    production."""
    terminal = None
    if isinstance(policy, Ramsey) and ff.alpha < 1.0:
        terminal = _fixed_factor_terminal_ratio(dist, path, params, prefs, ff)
    return dynamics.simulate(
        dist, path, params, prefs, K0, policy, settings, record_stride,
        alpha=ff.alpha, M=ff.M, terminal_ratio=terminal,
    )


# --- automated R&D and the singularity -------------------------------------


@dataclass(frozen=True)
class RndParams:
    """Two-sector economy: final output Y = A*(c*K)^Phi*L_Y^(1-Phi) and
    ideas A' = A^theta*((1-c)*K)^Gamma*L_A^(1-Gamma), no depreciation."""

    theta: float
    gamma_dist: TaskDistribution
    s: float
    c: float
    L_A: float = 1.0
    L_Y: float = 1.0

    def __post_init__(self):
        if self.theta >= 1.0:
            raise ValueError(f"knowledge spillover must be < 1, got {self.theta}")
        if not 0.0 < self.s < 1.0:
            raise ValueError(f"savings rate must lie in (0, 1), got {self.s}")
        if not 0.0 < self.c < 1.0:
            raise ValueError(f"capital split must lie in (0, 1), got {self.c}")
        if self.L_A <= 0.0 or self.L_Y <= 0.0:
            raise ValueError("sector labor endowments must be > 0")


@dataclass
class TwoSectorResult:
    t: np.ndarray
    log_K: np.ndarray
    log_A: np.ndarray
    log_Y: np.ndarray
    log_w: np.ndarray
    phi: np.ndarray
    gamma: np.ndarray
    blowup_time: Optional[float]


def singularity_condition(phi: float, gamma: float, theta: float) -> Tuple[float, bool]:
    """Ratio Gamma/((1-Phi)(1-theta)) and whether it strictly exceeds 1,
    the threshold for super-exponential technology growth."""
    if theta >= 1.0:
        raise ValueError(f"knowledge spillover must be < 1, got {theta}")
    if not 0.0 <= gamma <= 1.0 or not 0.0 <= phi <= 1.0:
        raise ValueError("task fractions must lie in [0, 1]")
    if phi >= 1.0:
        return math.inf, gamma > 0.0
    ratio = gamma / ((1.0 - phi) * (1.0 - theta))
    return ratio, ratio > 1.0


def simulate_two_sector(
    rnd: RndParams,
    phi_dist: TaskDistribution,
    path: AutomationPath,
    settings: SolverSettings = SolverSettings(),
    K0: float = 1.0,
    A0: float = 1.0,
    record_stride: float = 0.1,
    growth_cap: float = 10.0,
    freeze_fractions: bool = False,
) -> TwoSectorResult:
    """Integrate the two-sector economy in log space.

    Integration stops when the instantaneous growth rate of output exceeds
    ``growth_cap`` per year (blow-up detected) or the horizon ends.  With
    ``freeze_fractions`` the automated shares Phi and Gamma are held at
    their initial values, the configuration used to probe both sides of
    the singularity threshold cleanly.
    """
    if K0 <= 0.0 or A0 <= 0.0:
        raise ValueError("initial capital and technology must be > 0")
    n_steps, rec_every = _record_grid(settings, record_stride)
    dt = settings.dt
    log_c = math.log(rnd.c)
    log_1c = math.log(1.0 - rnd.c)
    log_ly = math.log(rnd.L_Y)
    log_la_sector = math.log(rnd.L_A)
    phi0 = distributions.automated_fraction(phi_dist, path, 0.0)
    gamma0 = distributions.automated_fraction(rnd.gamma_dist, path, 0.0)

    def fractions(t):
        if freeze_fractions:
            return phi0, gamma0
        return (
            distributions.automated_fraction(phi_dist, path, t),
            distributions.automated_fraction(rnd.gamma_dist, path, t),
        )

    def deriv(lk, la, t):
        phi, gamma = fractions(t)
        log_y = la + phi * (log_c + lk) + (1.0 - phi) * log_ly
        dlk = rnd.s * math.exp(log_y - lk)
        dla = math.exp(
            (rnd.theta - 1.0) * la + gamma * (log_1c + lk) + (1.0 - gamma) * log_la_sector
        )
        return dlk, dla

    n_rec = n_steps // rec_every + 1
    t_rec = np.full(n_rec, np.nan)
    lk_rec = np.full(n_rec, np.nan)
    la_rec = np.full(n_rec, np.nan)
    phi_rec = np.full(n_rec, np.nan)
    gam_rec = np.full(n_rec, np.nan)

    lk, la = math.log(K0), math.log(A0)
    blowup = None
    last = 0
    for step in range(n_steps + 1):
        t = step * dt
        phi, gamma = fractions(t)
        if step % rec_every == 0:
            i = step // rec_every
            t_rec[i], lk_rec[i], la_rec[i] = t, lk, la
            phi_rec[i], gam_rec[i] = phi, gamma
            last = i
        dlk, dla = deriv(lk, la, t)
        # d(log Y)/dt, holding the slow-moving phi term's drift aside.
        dly = dla + phi * dlk
        if dly > growth_cap or not math.isfinite(dly):
            blowup = t
            break
        if step == n_steps:
            break
        h = 0.5 * dt
        k2 = deriv(lk + h * dlk, la + h * dla, t + h)
        k3 = deriv(lk + h * k2[0], la + h * k2[1], t + h)
        k4 = deriv(lk + dt * k3[0], la + dt * k3[1], t + dt)
        lk += dt * (dlk + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0
        la += dt * (dla + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0
        if not (math.isfinite(lk) and math.isfinite(la)):
            blowup = t
            break

    n = last + 1
    t_rec, lk_rec, la_rec = t_rec[:n], lk_rec[:n], la_rec[:n]
    phi_rec, gam_rec = phi_rec[:n], gam_rec[:n]
    log_y = la_rec + phi_rec * (log_c + lk_rec) + (1.0 - phi_rec) * log_ly
    with np.errstate(divide="ignore"):
        log_w = log_y + np.log(1.0 - phi_rec) - log_ly
    return TwoSectorResult(t_rec, lk_rec, la_rec, log_y, log_w, phi_rec, gam_rec, blowup)


# --- capped automation ------------------------------------------------------


def nostalgic_cap_path(
    phi_dist: TaskDistribution,
    path: AutomationPath,
    lambda_g_cap: float,
    times: np.ndarray,
) -> np.ndarray:
    """Effective automated share Psi_t <= Phi_t on the given time grid.

    Society tracks Phi exactly until automating faster than
    ``lambda_g_cap`` (decay rate of the unautomated share); from then on
    the unautomated share under Psi shrinks at most at that rate.
    """
    if lambda_g_cap <= 0.0:
        raise ValueError(f"cap rate must be > 0, got {lambda_g_cap}")
    times = np.asarray(times, dtype=float)
    if len(times) == 0:
        return np.empty(0)
    if np.any(np.diff(times) <= 0.0):
        raise ValueError("time grid must be strictly increasing")
    psi = np.empty(len(times))
    psi[0] = distributions.automated_fraction(phi_dist, path, float(times[0]))
    if math.isinf(lambda_g_cap):
        for i in range(1, len(times)):
            psi[i] = distributions.automated_fraction(phi_dist, path, float(times[i]))
        return psi
    for i in range(1, len(times)):
        dt = times[i] - times[i - 1]
        ceiling = 1.0 - (1.0 - psi[i - 1]) * math.exp(-lambda_g_cap * dt)
        phi = distributions.automated_fraction(phi_dist, path, float(times[i]))
        psi[i] = min(phi, ceiling)
    return psi


def simulate_nostalgic(
    phi_dist: TaskDistribution,
    path: AutomationPath,
    params: EconomyParams,
    prefs: PreferenceParams,
    lambda_g_cap: float,
    K0: float,
    policy: Policy = Ramsey(),
    settings: SolverSettings = SolverSettings(),
    record_stride: float = 0.1,
) -> Tuple[Trajectory, Trajectory, np.ndarray]:
    """Run the capped and uncapped economies side by side.

    Returns (capped trajectory, uncapped trajectory, output gap series
    1 - Y_capped/Y_uncapped on the recording grid).
    """
    n_steps, _ = _record_grid(settings, record_stride)
    half_times = np.arange(2 * n_steps + 1) * (0.5 * settings.dt)
    psi = nostalgic_cap_path(phi_dist, path, lambda_g_cap, half_times)

    terminal = None
    if isinstance(policy, Ramsey):
        terminal = _capped_terminal_ratio(phi_dist, params, prefs, lambda_g_cap, path)
    capped = dynamics.simulate(
        phi_dist, path, params, prefs, K0, policy, settings, record_stride,
        phi_grid=psi, terminal_ratio=terminal,
    )
    uncapped = dynamics.simulate(
        phi_dist, path, params, prefs, K0, policy, settings, record_stride
    )
    gap = 1.0 - capped.Y / uncapped.Y
    return capped, uncapped, gap


def _capped_terminal_ratio(phi_dist, params, prefs, lambda_g_cap, path):
    """Long-run C/Y of the capped economy: its unautomated share decays at
    the lesser of the cap rate and the distribution's own tail rate."""
    from .distributions import Mixture, Pareto

    tail = math.inf
    if isinstance(phi_dist, Pareto):
        tail = phi_dist.lam * path.g
    elif isinstance(phi_dist, Mixture) and phi_dist.omega < 1.0:
        tail = phi_dist.lam * path.g
    lam_eff = min(tail, lambda_g_cap)
    s_inf = dynamics.long_run_savings(prefs, params.A)
    lam_lo = (1.0 - params.sigma) * dynamics.bgp_growth(prefs, params.A)
    if lam_eff > lam_lo:
        return 1.0 - s_inf
    g_w = lam_eff / (1.0 - params.sigma)
    f_k = prefs.rho + prefs.delta + prefs.eta * g_w
    k_over_y = 1.0 / (f_k ** params.sigma * params.A ** (1.0 - params.sigma))
    return 1.0 - (g_w + prefs.delta) * k_over_y


# --- heterogeneous skills ---------------------------------------------------


@dataclass(frozen=True)
class SkillDistribution:
    """CDF over worker skill; the mass below the automation index has been
    substituted by capital."""

    upsilon: TaskDistribution


def skill_wages(
    params: EconomyParams,
    skills: SkillDistribution,
    K: float,
    phi: float,
    I: float,
) -> Tuple[float, float, float]:
    """(substituted share, wage of substituted workers, wage of the rest).

    Substituted workers compete with capital and earn A; the remaining
    1 - Upsilon(I) workers earn the marginal product of labor in the
    economy with endowments (K + Upsilon, 1 - Upsilon).  Requires
    Phi(I) >= Upsilon(I): tasks must be automatable before the workers
    doing them are substitutable.
    """
    u = distributions.phi_cdf(skills.upsilon, I)
    if u > phi + 1e-12:
        raise ValueError(
            f"substituted worker share {u} exceeds automatable task share {phi}"
        )
    if u >= 1.0:
        return 1.0, params.A, params.A
    shifted = EconomyParams(params.A, params.sigma, params.L * (1.0 - u))
    eq = kernels.static_core(
        params.A, params.sigma, shifted.L, K + params.L * u, phi, 1.0, 1.0
    )
    return u, params.A, eq[1]


# --- task-specific capital --------------------------------------------------


@dataclass(frozen=True)
class SpecificCapitalState:
    """Economy right after a discrete mass of tasks becomes automatable.

    ``phi_minus`` tasks are served by the traditional capital stock K;
    ``delta_mass`` newly automated tasks can use only the task-specific
    capital installed for them, ``k_spec`` per task.
    """

    K: float
    L: float
    phi_minus: float
    delta_mass: float
    k_spec: float

    def __post_init__(self):
        if self.K < 0.0 or self.L <= 0.0 or self.k_spec < 0.0:
            raise ValueError("factor quantities out of range")
        if self.phi_minus < 0.0 or self.delta_mass <= 0.0:
            raise ValueError("task masses out of range")
        if self.phi_minus + self.delta_mass > 1.0:
            raise ValueError(
                f"automated mass {self.phi_minus + self.delta_mass} exceeds 1"
            )


def specific_capital_returns(
    params: EconomyParams, state: SpecificCapitalState
) -> Tuple[float, float, float, int]:
    """(w, R_traditional, R_specific, phase) at the given specific-capital
    intensity.

    Phase 1 (k_spec < L/(1-Phi)): specific capital substitutes for labor
    one-for-one on the new tasks, so w = R_specific and both fall as more
    is installed.  Phase 2: labor has fully left the new tasks; three
    separate input pools.  Phase 3 (k_spec >= K/phi_minus): specific
    capital is as abundant per task as traditional capital and the two
    merge.  All three returns are continuous across the phase boundaries.
    """
    A, sigma = params.A, params.sigma
    m = (sigma - 1.0) / sigma
    K, L = state.K, state.L
    pm, dm, ks = state.phi_minus, state.delta_mass, state.k_spec
    phi_t = pm + dm
    k1 = L / (1.0 - phi_t) if phi_t < 1.0 else math.inf
    k2 = K / pm if pm > 0.0 else math.inf

    def mp(y, theta):
        return A ** m * y ** (1.0 / sigma) * theta ** (-1.0 / sigma)

    def ces(buckets):
        # buckets: (mass, per-task level) pairs
        total = 0.0
        for mass, theta in buckets:
            if mass > 0.0:
                total += mass * theta ** m
        return A * total ** (sigma / (sigma - 1.0))

    theta_k = K / pm if pm > 0.0 else None
    if ks < k1:
        phase = 1
        theta_pool = (ks * dm + L) / (1.0 - pm)
        buckets = [(1.0 - pm, theta_pool)]
        if theta_k is not None:
            buckets.append((pm, theta_k))
        y = ces(buckets)
        w = r_spec = mp(y, theta_pool)
        r_trad = mp(y, theta_k) if theta_k is not None else 0.0
    elif ks < k2:
        phase = 2
        theta_l = L / (1.0 - phi_t)
        buckets = [(dm, ks), (1.0 - phi_t, theta_l)]
        if theta_k is not None:
            buckets.append((pm, theta_k))
        y = ces(buckets)
        w = mp(y, theta_l)
        r_spec = mp(y, ks)
        r_trad = mp(y, theta_k) if theta_k is not None else 0.0
    else:
        phase = 3
        theta_merged = (K + ks * dm) / phi_t
        theta_l = L / (1.0 - phi_t) if phi_t < 1.0 else None
        buckets = [(phi_t, theta_merged)]
        if theta_l is not None:
            buckets.append((1.0 - phi_t, theta_l))
        y = ces(buckets)
        w = mp(y, theta_l) if theta_l is not None else A
        r_trad = r_spec = mp(y, theta_merged)
    return w, r_trad, r_spec, phase
