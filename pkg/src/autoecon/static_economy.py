"""Static task-economy equilibrium in closed form, plus a brute-force
allocation oracle used to cross-check it.

Tasks are aggregated by a CES with elasticity sigma < 1.  A fraction
``phi`` of the task mass can be performed by capital or labor, the rest by
labor only.  Two regimes arise:

* Region 1 (labor scarce): capital is spread over the automatable tasks,
  labor concentrates on the rest, and w > R.
* Region 2: labor and capital are perfect substitutes at the margin,
  w = R = A, and output is linear in K + L.

The boundary is purely a factor-supply condition: Region 1 holds iff
K/L > phi/(1-phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import kernels


class Region(IntEnum):
    ONE = 1
    TWO = 2


@dataclass(frozen=True)
class EconomyParams:
    """Technology level A, task elasticity sigma, labor endowment L."""

    A: float
    sigma: float
    L: float = 1.0

    def __post_init__(self):
        if self.A <= 0.0:
            raise ValueError(f"productivity must be > 0, got {self.A}")
        if not 0.0 < self.sigma < 1.0:
            raise ValueError(f"elasticity must lie in (0, 1), got {self.sigma}")
        if self.L <= 0.0:
            raise ValueError(f"labor endowment must be > 0, got {self.L}")


@dataclass(frozen=True)
class StaticEquilibrium:
    region: Region
    Y: float
    w: float
    R: float
    labor_share: float
    k: float  # capital per automated task
    ell: float  # labor per unautomated task


def region_threshold_phi(K: float, L: float) -> float:
    """Automated share above which labor stops being scarce, = K/(K+L)."""
    if L <= 0.0:
        raise ValueError(f"labor must be > 0, got {L}")
    if K < 0.0:
        raise ValueError(f"capital must be >= 0, got {K}")
    return K / (K + L)


def kappa(phi: float) -> float:
    """Capital/labor ratio at the region boundary: phi/(1-phi)."""
    if not 0.0 <= phi < 1.0:
        raise ValueError(f"automated share must lie in [0, 1), got {phi}")
    return phi / (1.0 - phi)


def static_equilibrium(params: EconomyParams, K: float, phi: float) -> StaticEquilibrium:
    """Closed-form equilibrium for capital K and automated share phi."""
    if K < 0.0:
        raise ValueError(f"capital must be >= 0, got {K}")
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"automated share must lie in [0, 1], got {phi}")
    y, w, r, region = kernels.static_core(params.A, params.sigma, params.L, K, phi, 1.0, 1.0)
    if region == 2:
        k = ell = K + params.L
    else:
        k = K / phi if phi > 0.0 else math.inf
        ell = params.L / (1.0 - phi)
    return StaticEquilibrium(Region(region), y, w, r, w * params.L / y, k, ell)


def static_arrays(params: EconomyParams, K, phi, alpha: float = 1.0, M: float = 1.0):
    """Vectorized (Y, w, R, region) over numpy arrays of K and phi.

    Mirrors :func:`kernels.static_core` exactly, including the tie-break of
    the boundary into region 2.
    """
    K = np.asarray(K, dtype=float)
    phi = np.asarray(phi, dtype=float)
    A, sigma, L = params.A, params.sigma, params.L
    total = K + L
    with np.errstate(divide="ignore", invalid="ignore"):
        region2 = phi >= K / total
        m = (sigma - 1.0) / sigma
        term_k = np.where(phi > 0.0, K ** m * phi ** (1.0 / sigma), 0.0)
        term_l = L ** m * np.where(region2, 1.0, (1.0 - phi)) ** (1.0 / sigma)
        bracket = term_k + term_l
        base = bracket ** (sigma / (sigma - 1.0))
        y1 = A * base ** alpha * M ** (1.0 - alpha)
        w1 = alpha * y1 * term_l / (bracket * L)
        r1 = np.where(phi > 0.0, alpha * y1 * term_k / (bracket * K), 0.0)
    y2 = A * total ** alpha * M ** (1.0 - alpha)
    p2 = alpha * A * total ** (alpha - 1.0) * M ** (1.0 - alpha)
    y = np.where(region2, y2, y1)
    w = np.where(region2, p2, w1)
    r = np.where(region2, p2, r1)
    region = np.where(region2, 2, 1)
    return y, w, r, region


def fpf_wage(params: EconomyParams, phi: float, R: float) -> float:
    """Wage on the factor price frontier at rental rate R.

    The frontier is the unit-cost locus of the task technology; it is
    degenerate (the single point w = R = A) at full automation.
    """
    A, sigma = params.A, params.sigma
    if phi >= 1.0:
        if R > A:
            raise ValueError(f"no frontier point with R={R} > A={A}")
        return A
    if R > A:
        raise ValueError(f"no frontier point with R={R} > A={A}")
    if R <= 0.0:
        raise ValueError(f"rental rate must be > 0, got {R}")
    num = A ** (1.0 - sigma) - R ** (1.0 - sigma) * phi
    if num <= 0.0:
        raise ValueError(f"no frontier point at phi={phi}, R={R}")
    return (num / (1.0 - phi)) ** (1.0 / (1.0 - sigma))


def limit_wage(params: EconomyParams, phi: float) -> float:
    """Wage as K/L grows without bound: A * (1-phi)**(1/(sigma-1))."""
    if not 0.0 <= phi < 1.0:
        raise ValueError(f"limit wage is unbounded as phi -> 1, got {phi}")
    return params.A * (1.0 - phi) ** (1.0 / (params.sigma - 1.0))


def wage_response(params: EconomyParams, K: float, phi: float) -> float:
    """d(log w)/d(phi): productivity effect minus displacement effect.

    Positive at phi=0 (value 1/(1-sigma)), crosses zero exactly once before
    the region boundary.  Only defined in Region 1.
    """
    sigma, L = params.sigma, params.L
    if phi >= region_threshold_phi(K, L):
        raise ValueError("wage response is a Region-1 quantity")
    eq = static_equilibrium(params, K, phi)
    m = (sigma - 1.0) / sigma
    # k**m written as K**m * phi**(-m) so phi=0 gives 0 rather than inf**m.
    k_pow = K ** m * phi ** (-m) if K > 0.0 else 0.0
    ell_pow = eq.ell ** m
    productivity = (k_pow - ell_pow) * (eq.Y / params.A) ** ((1.0 - sigma) / sigma)
    return productivity / (sigma * (sigma - 1.0)) - 1.0 / (sigma * (1.0 - phi))


def fpf_samples(params: EconomyParams, phi: float, n_points: int = 100):
    """Log-spaced frontier samples from R = A down to A/1000; (R, w) pairs."""
    rs = np.geomspace(params.A, params.A / 1000.0, n_points)
    return [(float(r), fpf_wage(params, phi, float(r))) for r in rs]


def oracle_equilibrium(
    params: EconomyParams,
    K: float,
    phi: float,
    n_tasks: int,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> StaticEquilibrium:
    """Discretized allocation oracle for the static equilibrium.

    Splits the task mass into buckets (phi automatable, 1-phi labor-only),
    then alternately water-fills capital and labor so marginal products are
    equalized within each factor's feasible buckets.  Shadow prices are read
    off the waterline levels.  Deliberately never uses the closed forms
    above; agreement with them is what the tests check.
    """
    if n_tasks < 2:
        raise ValueError(f"need at least 2 task buckets, got {n_tasks}")
    if not 0.0 <= phi < 1.0:
        raise ValueError(f"oracle requires phi in [0, 1), got {phi}")
    A, sigma, L = params.A, params.sigma, params.L

    n_auto = max(1, round(n_tasks * phi)) if phi > 0.0 else 0
    n_manual = n_tasks - n_auto
    if n_manual < 1:
        n_auto, n_manual = n_tasks - 1, 1
    masses = np.empty(n_tasks)
    if n_auto:
        masses[:n_auto] = phi / n_auto
    masses[n_auto:] = (1.0 - phi) / n_manual

    k_alloc = np.zeros(n_tasks)  # per-task capital intensity
    if n_auto:
        k_alloc[:n_auto] = K / phi
    l_alloc = np.full(n_tasks, L)  # start with labor spread everywhere

    theta_l = theta_k = 0.0
    for _ in range(max_iter):
        prev = l_alloc.copy()
        theta_l = kernels.water_fill(k_alloc, masses, L)
        l_alloc = np.maximum(theta_l - k_alloc, 0.0)
        if n_auto:
            theta_k = kernels.water_fill(l_alloc[:n_auto], masses[:n_auto], K)
            k_alloc[:n_auto] = np.maximum(theta_k - l_alloc[:n_auto], 0.0)
        if np.max(np.abs(l_alloc - prev)) < tol:
            break
    else:
        raise RuntimeError(f"allocation oracle did not converge in {max_iter} sweeps")

    levels = k_alloc + l_alloc
    m = (sigma - 1.0) / sigma
    y = A * float(np.sum(masses * levels ** m)) ** (sigma / (sigma - 1.0))
    marginal = A ** m * y ** (1.0 / sigma)
    w = marginal * theta_l ** (-1.0 / sigma)
    r = marginal * theta_k ** (-1.0 / sigma) if n_auto and K > 0.0 else 0.0
    region = Region.TWO if phi >= region_threshold_phi(K, L) else Region.ONE
    k_per = K / phi if phi > 0.0 else math.inf
    return StaticEquilibrium(region, y, w, r, w * L / y, k_per, L / (1.0 - phi))
