"""Task-complexity distributions and the exponential automation path.

The automation index I(t) = I0 * exp(g*t) sweeps through a distribution of
task complexities; the CDF value at I(t) is the fraction of tasks that can
currently be automated.  Three families are supported:

* ``Pareto(lam)`` — log-complexity is exponential, so the unautomated share
  decays forever at rate lam*g and never reaches zero.
* ``PowerBounded(beta, imax)`` — bounded support; every task is automatable
  once the index passes ``imax``.
* ``Mixture(omega, lam, beta, imax)`` — omega-weighted blend of the two;
  full automation is never reached when omega < 1.

Calibration helpers pin each family to an initial automated share, which is
how scenario presets are defined.  All evaluation is done in log-index
space (see :mod:`autoecon.kernels`) so enormous indices stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from scipy.optimize import bisect

from . import kernels


@dataclass(frozen=True)
class AutomationPath:
    """Exponential growth of the automation index: I(t) = I0 * exp(g*t)."""

    I0: float
    g: float

    def __post_init__(self):
        if self.I0 < 1.0:
            raise ValueError(f"initial index must be >= 1, got {self.I0}")
        if self.g <= 0.0:
            raise ValueError(f"index growth rate must be > 0, got {self.g}")

    @property
    def log_i0(self) -> float:
        return math.log(self.I0)

    def log_index(self, t: float) -> float:
        return self.log_i0 + self.g * t

    def index(self, t: float) -> float:
        return math.exp(self.log_index(t))


@dataclass(frozen=True)
class Pareto:
    """Unbounded family: Phi(i) = 1 - i**(-lam) for i >= 1."""

    lam: float

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError(f"decay rate must be > 0, got {self.lam}")


@dataclass(frozen=True)
class PowerBounded:
    """Bounded family: Phi(i) = 1 - (1 - log(i)/log(imax))**beta, capped at 1."""

    beta: float
    imax: float

    def __post_init__(self):
        if self.beta <= 0.0:
            raise ValueError(f"shape must be > 0, got {self.beta}")
        if self.imax <= 1.0:
            raise ValueError(f"support bound must exceed 1, got {self.imax}")

    @property
    def log_imax(self) -> float:
        return math.log(self.imax)


@dataclass(frozen=True)
class Mixture:
    """omega * PowerBounded + (1 - omega) * Pareto over a shared index."""

    omega: float
    lam: float
    beta: float
    imax: float

    def __post_init__(self):
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"weight must lie in [0, 1], got {self.omega}")
        if self.lam <= 0.0 or self.beta <= 0.0 or self.imax <= 1.0:
            raise ValueError("invalid mixture component parameters")

    @property
    def log_imax(self) -> float:
        return math.log(self.imax)


TaskDistribution = Union[Pareto, PowerBounded, Mixture]


def encode(dist: TaskDistribution):
    """Pack a distribution into the (code, lam, beta, log_imax, omega) scalars
    consumed by the numba kernels."""
    if isinstance(dist, Pareto):
        return kernels.PARETO, dist.lam, 1.0, 1.0, 0.0
    if isinstance(dist, PowerBounded):
        return kernels.POWER, 1.0, dist.beta, dist.log_imax, 1.0
    if isinstance(dist, Mixture):
        return kernels.MIXTURE, dist.lam, dist.beta, dist.log_imax, dist.omega
    raise TypeError(f"not a task distribution: {dist!r}")


def phi_cdf(dist: TaskDistribution, i: float) -> float:
    """Fraction of tasks with complexity <= i (the automatable mass at index i)."""
    if i < 1.0:
        raise ValueError(f"complexity index must be >= 1, got {i}")
    code, lam, beta, log_imax, omega = encode(dist)
    return kernels.phi_from_log(code, lam, beta, log_imax, omega, math.log(i))


def phi_log_cdf(dist: TaskDistribution, log_i: float) -> float:
    """As :func:`phi_cdf` but taking log(i); safe for huge indices."""
    if log_i < 0.0:
        raise ValueError(f"log-index must be >= 0, got {log_i}")
    code, lam, beta, log_imax, omega = encode(dist)
    return kernels.phi_from_log(code, lam, beta, log_imax, omega, log_i)


def phi_density(dist: TaskDistribution, i: float) -> float:
    """Density dPhi/di per unit of the complexity index."""
    if i < 1.0:
        raise ValueError(f"complexity index must be >= 1, got {i}")
    if isinstance(dist, Pareto):
        return dist.lam * i ** (-dist.lam - 1.0)
    if isinstance(dist, PowerBounded):
        log_i = math.log(i)
        if log_i >= dist.log_imax:
            return 0.0
        u = 1.0 - log_i / dist.log_imax
        return dist.beta * u ** (dist.beta - 1.0) / (i * dist.log_imax)
    if isinstance(dist, Mixture):
        p = Pareto(dist.lam)
        q = PowerBounded(dist.beta, dist.imax)
        return dist.omega * phi_density(q, i) + (1.0 - dist.omega) * phi_density(p, i)
    raise TypeError(f"not a task distribution: {dist!r}")


def density_times_index(dist: TaskDistribution, log_i: float) -> float:
    """phi(i) * i evaluated from log(i); the hazard-like mass that the index
    sweep is currently automating per unit of log-index."""
    if isinstance(dist, Pareto):
        return dist.lam * math.exp(-dist.lam * log_i)
    if isinstance(dist, PowerBounded):
        if log_i >= dist.log_imax:
            return 0.0
        u = 1.0 - log_i / dist.log_imax
        return dist.beta * u ** (dist.beta - 1.0) / dist.log_imax
    if isinstance(dist, Mixture):
        p = Pareto(dist.lam)
        q = PowerBounded(dist.beta, dist.imax)
        return dist.omega * density_times_index(q, log_i) + (
            1.0 - dist.omega
        ) * density_times_index(p, log_i)
    raise TypeError(f"not a task distribution: {dist!r}")


def automated_fraction(dist: TaskDistribution, path: AutomationPath, t: float) -> float:
    """Automated task share at time t along the index path."""
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t}")
    return phi_log_cdf(dist, path.log_index(t))


def time_to_fraction(
    dist: TaskDistribution, path: AutomationPath, target: float
) -> Optional[float]:
    """Smallest t at which the automated share reaches ``target``.

    Returns None when the target is unreachable (e.g. target 1 under a
    Pareto tail).
    """
    if not 0.0 < target <= 1.0:
        raise ValueError(f"target fraction must lie in (0, 1], got {target}")
    start = automated_fraction(dist, path, 0.0)
    if target <= start:
        return 0.0
    tmax = full_automation_time(dist, path)
    if tmax is None:
        # Unbounded tail: sup over finite t of the automated share.
        if isinstance(dist, Pareto):
            reachable = target < 1.0
        elif isinstance(dist, Mixture):
            reachable = target < 1.0 or dist.omega == 1.0
        else:
            reachable = True
        if not reachable:
            return None
        hi = 1.0
        while automated_fraction(dist, path, hi) < target:
            hi *= 2.0
            if hi > 1e12:
                return None
        lo = hi / 2.0 if hi > 1.0 else 0.0
    else:
        if target >= 1.0:
            return tmax
        lo, hi = 0.0, tmax
    return bisect(
        lambda t: automated_fraction(dist, path, t) - target, lo, hi, xtol=1e-12
    )


def full_automation_time(
    dist: TaskDistribution, path: AutomationPath
) -> Optional[float]:
    """Time at which every task is automated; None when that never happens."""
    if isinstance(dist, PowerBounded):
        return max(0.0, (dist.log_imax - path.log_i0) / path.g)
    if isinstance(dist, Mixture) and dist.omega == 1.0:
        return max(0.0, (dist.log_imax - path.log_i0) / path.g)
    return None


# --- calibration -----------------------------------------------------------


def pareto_from_initial_share(
    phi0: float, lambda_g: float, g: float = 1.0
) -> tuple[Pareto, AutomationPath]:
    """Pareto family pinned so the automated share at t=0 equals ``phi0`` and
    the unautomated share decays at rate ``lambda_g``.

    Only the product lam*g is observable once phi0 is fixed; by convention g
    is taken as given (default 1) and lam carries the rate.
    """
    if not 0.0 < phi0 < 1.0:
        raise ValueError(f"initial share must lie in (0, 1), got {phi0}")
    lam = lambda_g / g
    log_i0 = -math.log(1.0 - phi0) / lam
    return Pareto(lam), AutomationPath(math.exp(log_i0), g)


def power_from_initial_share(
    phi0: float, T: float, beta: float = 1.0, g: float = 1.0
) -> tuple[PowerBounded, AutomationPath]:
    """Bounded family pinned to an initial share ``phi0`` and a completion
    horizon of ``T`` years (index reaches the support bound at t=T)."""
    if not 0.0 < phi0 < 1.0:
        raise ValueError(f"initial share must lie in (0, 1), got {phi0}")
    if T <= 0.0:
        raise ValueError(f"completion horizon must be > 0, got {T}")
    if beta == 1.0:
        log_i0 = g * T * phi0 / (1.0 - phi0)
    else:
        # Solve 1 - (g*T / (s + g*T))**beta == phi0 for s = log(I0).
        def gap(s):
            return 1.0 - (g * T / (s + g * T)) ** beta - phi0

        hi = g * T
        while gap(hi) < 0.0:
            hi *= 2.0
        log_i0 = bisect(gap, 0.0, hi, xtol=1e-12)
    if log_i0 + g * T > 700.0:
        raise ValueError(
            "automation index exceeds double-precision range at this "
            f"calibration (phi0={phi0}, T={T}, beta={beta})"
        )
    return (
        PowerBounded(beta, math.exp(log_i0 + g * T)),
        AutomationPath(math.exp(log_i0), g),
    )


def mixture_from_initial_share(
    phi0: float,
    omega: float,
    lambda_g: float,
    T: float,
    beta: float = 1.0,
    g: float = 1.0,
) -> tuple[Mixture, AutomationPath]:
    """Mixture over a shared index, pinned so the *mixture* CDF at t=0 equals
    ``phi0``, the bounded part completes at t=T, and the Pareto tail decays
    at ``lambda_g``."""
    if not 0.0 < phi0 < 1.0:
        raise ValueError(f"initial share must lie in (0, 1), got {phi0}")
    lam = lambda_g / g

    def share_at(log_i0):
        p_pow = 1.0 - (g * T / (log_i0 + g * T)) ** beta
        p_par = 1.0 - math.exp(-lam * log_i0)
        return omega * p_pow + (1.0 - omega) * p_par - phi0

    hi = 1.0
    while share_at(hi) < 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise ValueError("cannot calibrate mixture to requested share")
    log_i0 = bisect(share_at, 0.0, hi, xtol=1e-12)
    if log_i0 + g * T > 700.0:
        raise ValueError(
            "automation index exceeds double-precision range at this "
            f"calibration (phi0={phi0}, T={T}, beta={beta})"
        )
    return (
        Mixture(omega, lam, beta, math.exp(log_i0 + g * T)),
        AutomationPath(math.exp(log_i0), g),
    )
