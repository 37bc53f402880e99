"""Scenario presets, line-oriented configuration, and CSV emission.

A scenario bundles everything one run needs: the task distribution and
automation path, economy and preference parameters, initial conditions,
the policy, solver settings, and optional extension toggles.  Four
presets cover the transition narratives (slow heavy tail, twenty-year
and five-year full automation, and a mixture), all sharing the same
calibration: A = 0.5, sigma = 0.5, L = 1, rho = 0.04, eta = 2,
delta = 0.1, Phi(0) = 0.608, K0 = 4.6.

Config files are plain ``key = value`` lines; ``#`` starts a comment.
Unknown keys are hard errors so typos cannot silently fall back to
defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import analysis, distributions, dynamics, extensions
from .analysis import RegimeReport
from .distributions import AutomationPath, Mixture, Pareto, PowerBounded, TaskDistribution
from .dynamics import (
    ConstantSavings,
    Policy,
    PreferenceParams,
    Ramsey,
    SolverSettings,
    Trajectory,
)
from .extensions import FixedFactorParams, RndParams, TwoSectorResult
from .static_economy import EconomyParams


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DistributionSpec:
    """Declarative distribution parameters; the concrete family is built
    against phi0 at scenario-construction time."""

    family: str  # pareto | power | mixture
    lambda_g: float = 0.01
    T: float = 20.0
    beta: float = 1.0
    omega: float = 0.5


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    dist_spec: DistributionSpec
    economy: EconomyParams
    prefs: PreferenceParams
    phi0: float
    K0: float
    policy: Policy
    settings: SolverSettings
    record_stride: float = 0.1
    svg: bool = False
    fixed_factor: Optional[FixedFactorParams] = None
    nostalgic_cap: Optional[float] = None
    rnd_theta: Optional[float] = None
    rnd_gamma_lambda_g: Optional[float] = None
    rnd_s: float = 0.3
    rnd_c: float = 0.5
    skills_upsilon_lambda: Optional[float] = None
    specific_delta_mass: Optional[float] = None
    specific_k_spec_max: float = 10.0

    def build_distribution(self) -> Tuple[TaskDistribution, AutomationPath]:
        ds = self.dist_spec
        if ds.family == "pareto":
            return distributions.pareto_from_initial_share(self.phi0, ds.lambda_g)
        if ds.family == "power":
            return distributions.power_from_initial_share(self.phi0, ds.T, ds.beta)
        if ds.family == "mixture":
            return distributions.mixture_from_initial_share(
                self.phi0, ds.omega, ds.lambda_g, ds.T, ds.beta
            )
        raise ConfigError(f"unknown distribution family {ds.family!r}")


@dataclass
class RunResult:
    spec: ScenarioSpec
    trajectory: Optional[Trajectory]
    regime: Optional[RegimeReport]
    summary: Dict[str, float]
    uncapped: Optional[Trajectory] = None
    output_gap: Optional[np.ndarray] = None
    two_sector: Optional[TwoSectorResult] = None
    specific_sweep: Optional[np.ndarray] = None  # columns k_spec, w, R_trad, R_spec, phase


_TABLE = dict(
    economy=EconomyParams(A=0.5, sigma=0.5, L=1.0),
    prefs=PreferenceParams(rho=0.04, eta=2.0, delta=0.1),
    phi0=0.608,
    K0=4.6,
    policy=Ramsey(),
)


def presets() -> Dict[str, ScenarioSpec]:
    return {
        "business_as_usual": ScenarioSpec(
            name="business_as_usual",
            dist_spec=DistributionSpec("pareto", lambda_g=0.01),
            settings=SolverSettings(horizon=150.0),
            **_TABLE,
        ),
        "baseline_agi": ScenarioSpec(
            name="baseline_agi",
            dist_spec=DistributionSpec("power", T=20.0, beta=1.0),
            settings=SolverSettings(horizon=100.0),
            **_TABLE,
        ),
        "aggressive_agi": ScenarioSpec(
            name="aggressive_agi",
            dist_spec=DistributionSpec("power", T=5.0, beta=1.0),
            settings=SolverSettings(horizon=100.0),
            **_TABLE,
        ),
        # The mixture weight is pinned by the narrative (brief linear-regime
        # spell, Region-1 return around year nine), not by a stated value.
        "mixed": ScenarioSpec(
            name="mixed",
            dist_spec=DistributionSpec("mixture", lambda_g=0.01, T=5.0, beta=1.0, omega=0.95),
            settings=SolverSettings(horizon=100.0),
            **_TABLE,
        ),
    }


def get_preset(name: str) -> ScenarioSpec:
    table = presets()
    if name not in table:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(sorted(table))}"
        )
    return table[name]


_KNOWN_KEYS = {
    "scenario",
    "distribution.family", "distribution.lambda_g", "distribution.T",
    "distribution.beta", "distribution.omega",
    "economy.A", "economy.sigma", "economy.L",
    "preferences.rho", "preferences.eta", "preferences.delta",
    "initial.phi0", "initial.K0",
    "policy", "savings_rate",
    "solver.dt", "solver.horizon", "solver.shoot_tol", "solver.max_iter",
    "extension.fixed_factor.alpha", "extension.fixed_factor.M",
    "extension.nostalgic.lambda_g_cap",
    "extension.rnd.theta", "extension.rnd.gamma_lambda_g",
    "extension.rnd.s", "extension.rnd.c",
    "extension.skills.upsilon_lambda",
    "extension.specific.delta_mass", "extension.specific.k_spec_max",
    "output.stride", "output.svg",
}


def _parse_lines(text: str) -> Dict[str, Tuple[str, int]]:
    pairs: Dict[str, Tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        pairs[key] = (value, lineno)
    return pairs


def _as_float(pairs, key):
    if key not in pairs:
        return None
    value, lineno = pairs[key]
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: invalid number {value!r} for {key}") from None


def _as_bool(pairs, key):
    if key not in pairs:
        return None
    value, lineno = pairs[key]
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"line {lineno}: invalid flag {value!r} for {key}")


def parse_config(text: str) -> ScenarioSpec:
    pairs = _parse_lines(text)
    if "scenario" in pairs:
        name, _ = pairs["scenario"]
        spec = get_preset(name)
    elif "distribution.family" in pairs:
        spec = replace(get_preset("business_as_usual"), name="custom")
    else:
        raise ConfigError("config must set 'scenario' or 'distribution.family'")

    ds = spec.dist_spec
    if "distribution.family" in pairs:
        family, lineno = pairs["distribution.family"]
        if family not in ("pareto", "power", "mixture"):
            raise ConfigError(f"line {lineno}: unknown distribution family {family!r}")
        ds = replace(ds, family=family)
    for attr, key in (
        ("lambda_g", "distribution.lambda_g"),
        ("T", "distribution.T"),
        ("beta", "distribution.beta"),
        ("omega", "distribution.omega"),
    ):
        v = _as_float(pairs, key)
        if v is not None:
            ds = replace(ds, **{attr: v})

    def econ_field(key, default):
        v = _as_float(pairs, key)
        return default if v is None else v

    try:
        economy = EconomyParams(
            A=econ_field("economy.A", spec.economy.A),
            sigma=econ_field("economy.sigma", spec.economy.sigma),
            L=econ_field("economy.L", spec.economy.L),
        )
        prefs = PreferenceParams(
            rho=econ_field("preferences.rho", spec.prefs.rho),
            eta=econ_field("preferences.eta", spec.prefs.eta),
            delta=econ_field("preferences.delta", spec.prefs.delta),
        )
        settings = SolverSettings(
            dt=econ_field("solver.dt", spec.settings.dt),
            horizon=econ_field("solver.horizon", spec.settings.horizon),
            shoot_tol=econ_field("solver.shoot_tol", spec.settings.shoot_tol),
            max_shoot_iter=int(econ_field("solver.max_iter", spec.settings.max_shoot_iter)),
            integrator=spec.settings.integrator,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    policy: Policy = spec.policy
    if "policy" in pairs:
        value, lineno = pairs["policy"]
        if value == "ramsey":
            policy = Ramsey()
        elif value == "constant_savings":
            policy = ConstantSavings(_as_float(pairs, "savings_rate"))
        else:
            raise ConfigError(f"line {lineno}: policy must be ramsey or constant_savings")
    elif "savings_rate" in pairs:
        policy = ConstantSavings(_as_float(pairs, "savings_rate"))

    ff = spec.fixed_factor
    alpha = _as_float(pairs, "extension.fixed_factor.alpha")
    if alpha is not None:
        m = _as_float(pairs, "extension.fixed_factor.M")
        try:
            ff = FixedFactorParams(alpha=alpha, M=1.0 if m is None else m)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    phi0 = econ_field("initial.phi0", spec.phi0)
    k0 = econ_field("initial.K0", spec.K0)
    if not 0.0 < phi0 < 1.0:
        raise ConfigError(f"initial.phi0 must lie in (0, 1), got {phi0}")
    if k0 <= 0.0:
        raise ConfigError(f"initial.K0 must be > 0, got {k0}")

    stride = econ_field("output.stride", spec.record_stride)
    svg = _as_bool(pairs, "output.svg")

    return replace(
        spec,
        dist_spec=ds,
        economy=economy,
        prefs=prefs,
        phi0=phi0,
        K0=k0,
        policy=policy,
        settings=settings,
        record_stride=stride,
        svg=spec.svg if svg is None else svg,
        fixed_factor=ff,
        nostalgic_cap=_first(_as_float(pairs, "extension.nostalgic.lambda_g_cap"), spec.nostalgic_cap),
        rnd_theta=_first(_as_float(pairs, "extension.rnd.theta"), spec.rnd_theta),
        rnd_gamma_lambda_g=_first(
            _as_float(pairs, "extension.rnd.gamma_lambda_g"), spec.rnd_gamma_lambda_g
        ),
        rnd_s=_first(_as_float(pairs, "extension.rnd.s"), spec.rnd_s),
        rnd_c=_first(_as_float(pairs, "extension.rnd.c"), spec.rnd_c),
        skills_upsilon_lambda=_first(
            _as_float(pairs, "extension.skills.upsilon_lambda"), spec.skills_upsilon_lambda
        ),
        specific_delta_mass=_first(
            _as_float(pairs, "extension.specific.delta_mass"), spec.specific_delta_mass
        ),
        specific_k_spec_max=_first(
            _as_float(pairs, "extension.specific.k_spec_max"), spec.specific_k_spec_max
        ),
    )


def _first(*values):
    for v in values:
        if v is not None:
            return v
    return None


def load_config(path: str) -> ScenarioSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def dump_config(spec: ScenarioSpec) -> str:
    """Emit a config that parses back to an identical spec (round-trip)."""
    ds = spec.dist_spec
    lines = [
        f"distribution.family = {ds.family}",
        f"distribution.lambda_g = {ds.lambda_g!r}",
        f"distribution.T = {ds.T!r}",
        f"distribution.beta = {ds.beta!r}",
        f"distribution.omega = {ds.omega!r}",
        f"economy.A = {spec.economy.A!r}",
        f"economy.sigma = {spec.economy.sigma!r}",
        f"economy.L = {spec.economy.L!r}",
        f"preferences.rho = {spec.prefs.rho!r}",
        f"preferences.eta = {spec.prefs.eta!r}",
        f"preferences.delta = {spec.prefs.delta!r}",
        f"initial.phi0 = {spec.phi0!r}",
        f"initial.K0 = {spec.K0!r}",
        f"solver.dt = {spec.settings.dt!r}",
        f"solver.horizon = {spec.settings.horizon!r}",
        f"solver.shoot_tol = {spec.settings.shoot_tol!r}",
        f"solver.max_iter = {spec.settings.max_shoot_iter}",
        f"output.stride = {spec.record_stride!r}",
        f"output.svg = {'true' if spec.svg else 'false'}",
    ]
    if isinstance(spec.policy, Ramsey):
        lines.append("policy = ramsey")
    else:
        lines.append("policy = constant_savings")
        if spec.policy.s is not None:
            lines.append(f"savings_rate = {spec.policy.s!r}")
    if spec.fixed_factor is not None:
        lines.append(f"extension.fixed_factor.alpha = {spec.fixed_factor.alpha!r}")
        lines.append(f"extension.fixed_factor.M = {spec.fixed_factor.M!r}")
    if spec.nostalgic_cap is not None:
        lines.append(f"extension.nostalgic.lambda_g_cap = {spec.nostalgic_cap!r}")
    if spec.rnd_theta is not None:
        lines.append(f"extension.rnd.theta = {spec.rnd_theta!r}")
    if spec.rnd_gamma_lambda_g is not None:
        lines.append(f"extension.rnd.gamma_lambda_g = {spec.rnd_gamma_lambda_g!r}")
        lines.append(f"extension.rnd.s = {spec.rnd_s!r}")
        lines.append(f"extension.rnd.c = {spec.rnd_c!r}")
    if spec.skills_upsilon_lambda is not None:
        lines.append(f"extension.skills.upsilon_lambda = {spec.skills_upsilon_lambda!r}")
    if spec.specific_delta_mass is not None:
        lines.append(f"extension.specific.delta_mass = {spec.specific_delta_mass!r}")
        lines.append(f"extension.specific.k_spec_max = {spec.specific_k_spec_max!r}")
    return "\n".join(lines) + "\n"


def run(spec: ScenarioSpec) -> RunResult:
    """Dispatch a scenario to the appropriate simulator."""
    dist, path = spec.build_distribution()

    if spec.rnd_theta is not None:
        if spec.rnd_gamma_lambda_g is None:
            raise ConfigError("extension.rnd.gamma_lambda_g required with extension.rnd.theta")
        gamma_dist, _ = distributions.pareto_from_initial_share(
            spec.phi0, spec.rnd_gamma_lambda_g
        )
        rnd = RndParams(
            theta=spec.rnd_theta, gamma_dist=gamma_dist, s=spec.rnd_s, c=spec.rnd_c
        )
        result = extensions.simulate_two_sector(
            rnd, dist, path, spec.settings, record_stride=spec.record_stride
        )
        summary = {"blowup_time": result.blowup_time if result.blowup_time is not None else float("nan")}
        return RunResult(spec, None, None, summary, two_sector=result)

    if spec.specific_delta_mass is not None:
        state0 = extensions.SpecificCapitalState(
            K=spec.K0,
            L=spec.economy.L,
            phi_minus=spec.phi0,
            delta_mass=spec.specific_delta_mass,
            k_spec=0.0,
        )
        ks_grid = np.linspace(0.0, spec.specific_k_spec_max, 501)
        rows = np.empty((len(ks_grid), 5))
        for i, ks in enumerate(ks_grid):
            state = replace(state0, k_spec=float(ks))
            w, r_trad, r_spec, phase = extensions.specific_capital_returns(
                spec.economy, state
            )
            rows[i] = (ks, w, r_trad, r_spec, phase)
        return RunResult(spec, None, None, {}, specific_sweep=rows)

    uncapped = None
    output_gap = None
    if spec.nostalgic_cap is not None:
        traj, uncapped, output_gap = extensions.simulate_nostalgic(
            dist, path, spec.economy, spec.prefs, spec.nostalgic_cap,
            spec.K0, spec.policy, spec.settings, spec.record_stride,
        )
    elif spec.fixed_factor is not None:
        traj = extensions.simulate_fixed_factor(
            dist, path, spec.economy, spec.prefs, spec.fixed_factor,
            spec.K0, spec.policy, spec.settings, spec.record_stride,
        )
    else:
        traj = dynamics.simulate(
            dist, path, spec.economy, spec.prefs, spec.K0,
            spec.policy, spec.settings, spec.record_stride,
        )

    regime = None
    if isinstance(dist, Pareto):
        regime = analysis.classify_long_run(spec.economy, spec.prefs, dist.lam * path.g)

    summary: Dict[str, float] = {
        "terminal_output_growth": analysis.tail_growth(traj.t, traj.Y),
        "terminal_wage_growth": analysis.tail_growth(traj.t, traj.w),
    }
    peak = traj.event_time("wage_peak")
    if peak is not None:
        summary["wage_peak_time"] = peak
    entry = traj.event_time("region2_entry")
    if entry is not None:
        summary["collapse_time"] = entry
    full = traj.event_time("full_automation")
    if full is not None:
        summary["full_automation_time"] = full

    return RunResult(
        spec, traj, regime, summary, uncapped=uncapped, output_gap=output_gap
    )


CSV_HEADER = "t,I,phi,region,K,C,Y,w,R,labor_share,savings_rate"


def emit_csv(result: RunResult, path: str) -> None:
    """Write the trajectory as CSV with full float precision plus an events
    sidecar ``<path>.events.csv``."""
    traj = result.trajectory
    if traj is None:
        raise ValueError(f"scenario {result.spec.name!r} produced no trajectory to emit")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for i in range(len(traj)):
            fh.write(
                "%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n"
                % (
                    traj.t[i], traj.I[i], traj.phi[i], int(traj.region[i]),
                    traj.K[i], traj.C[i], traj.Y[i], traj.w[i], traj.R[i],
                    traj.labor_share[i], traj.savings_rate[i],
                )
            )
    with open(path + ".events.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("kind,t\n")
        for kind, t in traj.events:
            fh.write("%s,%.17g\n" % (kind, t))
