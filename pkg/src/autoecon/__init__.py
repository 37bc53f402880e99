"""Deterministic simulator of a compute-driven automation economy.

Static CES task equilibria, Ramsey dynamics under exogenous automation
paths, long-run wage regime classification, scenario presets, and five
model extensions.  See the README for the command line interface.
"""

from .distributions import (
    AutomationPath,
    Mixture,
    Pareto,
    PowerBounded,
    TaskDistribution,
    automated_fraction,
    full_automation_time,
    mixture_from_initial_share,
    pareto_from_initial_share,
    phi_cdf,
    phi_density,
    power_from_initial_share,
    time_to_fraction,
)
from .static_economy import (
    EconomyParams,
    Region,
    StaticEquilibrium,
    fpf_wage,
    kappa,
    limit_wage,
    oracle_equilibrium,
    region_threshold_phi,
    static_equilibrium,
    wage_response,
)
from .dynamics import (
    ConstantSavings,
    PreferenceParams,
    Ramsey,
    SolverError,
    SolverSettings,
    Trajectory,
    TrajectoryPoint,
    balancing_savings,
    bgp_growth,
    bounds,
    capital_upper_bound,
    consumption_growth,
    long_run_savings,
    simulate,
    wage_growth_decomposition,
)
from .analysis import (
    OmegaDiagnostic,
    Regime,
    RegimeReport,
    classify_long_run,
    labor_share_limit_case3,
    omega,
    wage_growth_curve,
    wage_max_rate,
)
from .extensions import (
    FixedFactorParams,
    RndParams,
    SkillDistribution,
    SpecificCapitalState,
    fixed_factor_equilibrium,
    fixed_factor_steady_capital,
    fixed_factor_steady_savings,
    nostalgic_cap_path,
    simulate_fixed_factor,
    simulate_nostalgic,
    simulate_two_sector,
    singularity_condition,
    skill_wages,
    specific_capital_returns,
)
from .scenarios import (
    ConfigError,
    RunResult,
    ScenarioSpec,
    emit_csv,
    get_preset,
    load_config,
    parse_config,
    presets,
    run,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
