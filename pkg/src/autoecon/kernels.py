"""Hot numeric inner loops.

Everything here is scalar-and-loop code that runs two ways: JIT-compiled
with numba (the default) or as plain Python when the environment variable
``AUTOECON_DISABLE_NUMBA=1`` is set before import.  The fallback is slow
but follows the identical code path, which makes it useful for debugging
and for the numpy-vs-numba benchmark under ``benchmarks/``.

Distribution evaluation works entirely in log-index space so that
automation indices like exp(400) never have to be materialized.
"""

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("AUTOECON_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)

if USE_NUMBA:
    from numba import njit
else:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# Distribution family codes shared with the pure-Python layer.
PARETO = 0
POWER = 1
MIXTURE = 2

# Bounded-family fractions this close to one are snapped to exactly one so
# the region logic is exact at full automation (the support bound is only
# known up to log/exp roundoff).  Heavy tails are never snapped: they
# approach one but must stay strictly below it at every finite index.
FULL_EPS = 1e-12

# Integrator status codes.
STATUS_OK = 0
STATUS_CAPITAL_DEPLETED = 1


@njit(cache=True)
def phi_from_log(code, lam, beta, log_imax, weight, log_i):
    """Automated task fraction at log-index ``log_i``."""
    if log_i <= 0.0:
        return 0.0
    if code == PARETO:
        phi = 1.0 - math.exp(-lam * log_i)
    elif code == POWER:
        if log_i >= log_imax:
            phi = 1.0
        else:
            phi = 1.0 - (1.0 - log_i / log_imax) ** beta
            if phi > 1.0 - FULL_EPS:
                phi = 1.0
    else:
        if log_i >= log_imax:
            p_pow = 1.0
        else:
            p_pow = 1.0 - (1.0 - log_i / log_imax) ** beta
            if p_pow > 1.0 - FULL_EPS:
                p_pow = 1.0
        phi = weight * p_pow + (1.0 - weight) * (1.0 - math.exp(-lam * log_i))
        if phi > 1.0:
            phi = 1.0
    if phi < 0.0:
        return 0.0
    return phi


@njit(cache=True)
def static_core(A, sigma, L, K, phi, alpha, M):
    """Static equilibrium quantities (Y, w, R, region) for given state.

    ``alpha``/``M`` extend the task composite with a Cobb-Douglas fixed
    factor; alpha=1, M=1 is the baseline economy.  Region 2 includes the
    boundary K/L == phi/(1-phi).
    """
    if phi >= K / (K + L):
        total = K + L
        if alpha == 1.0:
            y = A * total
            price = A
        else:
            y = A * total ** alpha * M ** (1.0 - alpha)
            price = alpha * A * total ** (alpha - 1.0) * M ** (1.0 - alpha)
        return y, price, price, 2
    m = (sigma - 1.0) / sigma
    if phi > 0.0:
        term_k = math.exp(m * math.log(K) + math.log(phi) / sigma)
    else:
        term_k = 0.0
    term_l = math.exp(m * math.log(L) + math.log(1.0 - phi) / sigma)
    bracket = term_k + term_l
    base = math.exp((sigma / (sigma - 1.0)) * math.log(bracket))
    if alpha == 1.0:
        y = A * base
    else:
        y = A * base ** alpha * M ** (1.0 - alpha)
    w = alpha * y * term_l / (bracket * L)
    if phi > 0.0:
        r = alpha * y * term_k / (bracket * K)
    else:
        r = 0.0
    return y, w, r, 1


@njit(cache=True)
def _phi_at(code, lam, beta, log_imax, weight, log_i0, g, t, use_grid, grid, idx):
    if use_grid:
        return grid[idx]
    return phi_from_log(code, lam, beta, log_imax, weight, log_i0 + g * t)


@njit(cache=True)
def integrate(
    code,
    lam,
    beta,
    log_imax,
    weight,
    log_i0,
    g,
    A,
    sigma,
    L,
    alpha,
    M,
    rho,
    eta,
    delta,
    K0,
    control,
    ramsey,
    dt,
    n_steps,
    rec_every,
    use_grid,
    phi_grid,
    use_rk4,
):
    """Integrate the economy forward and record capital and consumption.

    ``control`` is the initial consumption level for a Ramsey run and the
    constant savings rate otherwise.  ``phi_grid``, when enabled, supplies
    the automated fraction at half-step resolution (length 2*n_steps+1) and
    overrides the closed-form path; this is how policy-capped automation
    paths are integrated.

    Returns (status, K_rec, C_rec, region2_entry, region1_reentry,
    wage_peak_t, K_end, C_end).  Event times are -1.0 when absent.
    """
    n_rec = n_steps // rec_every + 1
    k_rec = np.empty(n_rec)
    c_rec = np.empty(n_rec)
    ev_region2 = -1.0
    ev_reentry = -1.0
    peak_w = -1.0
    peak_t = 0.0
    seen_region2 = False
    status = STATUS_OK

    K = K0
    C = control if ramsey else 0.0
    s = control
    half = 0.5 * dt

    for step in range(n_steps + 1):
        t = step * dt
        phi = _phi_at(
            code, lam, beta, log_imax, weight, log_i0, g, t, use_grid, phi_grid, 2 * step
        )
        y, w, r, region = static_core(A, sigma, L, K, phi, alpha, M)
        if ramsey:
            c_now = C
        else:
            c_now = (1.0 - s) * y

        if region == 2:
            if not seen_region2:
                ev_region2 = t
                seen_region2 = True
        elif seen_region2 and ev_reentry < 0.0:
            ev_reentry = t
        if w > peak_w:
            peak_w = w
            peak_t = t
        if step % rec_every == 0:
            k_rec[step // rec_every] = K
            c_rec[step // rec_every] = c_now
        if step == n_steps:
            break

        phi_mid = _phi_at(
            code,
            lam,
            beta,
            log_imax,
            weight,
            log_i0,
            g,
            t + half,
            use_grid,
            phi_grid,
            2 * step + 1,
        )
        phi_next = _phi_at(
            code,
            lam,
            beta,
            log_imax,
            weight,
            log_i0,
            g,
            t + dt,
            use_grid,
            phi_grid,
            2 * step + 2,
        )

        if ramsey:
            k1k, k1c = _deriv_ramsey(A, sigma, L, alpha, M, rho, eta, delta, K, C, phi)
            if use_rk4:
                k2k, k2c = _deriv_ramsey(
                    A, sigma, L, alpha, M, rho, eta, delta,
                    K + half * k1k, C + half * k1c, phi_mid,
                )
                k3k, k3c = _deriv_ramsey(
                    A, sigma, L, alpha, M, rho, eta, delta,
                    K + half * k2k, C + half * k2c, phi_mid,
                )
                k4k, k4c = _deriv_ramsey(
                    A, sigma, L, alpha, M, rho, eta, delta,
                    K + dt * k3k, C + dt * k3c, phi_next,
                )
                K += dt * (k1k + 2.0 * k2k + 2.0 * k3k + k4k) / 6.0
                C += dt * (k1c + 2.0 * k2c + 2.0 * k3c + k4c) / 6.0
            else:
                K += dt * k1k
                C += dt * k1c
        else:
            k1 = _deriv_constant_s(A, sigma, L, alpha, M, delta, s, K, phi)
            if use_rk4:
                k2 = _deriv_constant_s(A, sigma, L, alpha, M, delta, s, K + half * k1, phi_mid)
                k3 = _deriv_constant_s(A, sigma, L, alpha, M, delta, s, K + half * k2, phi_mid)
                k4 = _deriv_constant_s(A, sigma, L, alpha, M, delta, s, K + dt * k3, phi_next)
                K += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            else:
                K += dt * k1

        if K <= 0.0 or not math.isfinite(K) or (ramsey and (C <= 0.0 or not math.isfinite(C))):
            status = STATUS_CAPITAL_DEPLETED
            break

    return status, k_rec, c_rec, ev_region2, ev_reentry, peak_t, K, C


@njit(cache=True)
def _deriv_ramsey(A, sigma, L, alpha, M, rho, eta, delta, K, C, phi):
    if K <= 0.0:
        return 0.0, 0.0
    y, w, r, region = static_core(A, sigma, L, K, phi, alpha, M)
    dk = y - delta * K - C
    dc = C * (r - rho - delta) / eta
    return dk, dc


@njit(cache=True)
def _deriv_constant_s(A, sigma, L, alpha, M, delta, s, K, phi):
    if K <= 0.0:
        return 0.0
    y, w, r, region = static_core(A, sigma, L, K, phi, alpha, M)
    return s * y - delta * K


@njit(cache=True)
def water_fill(levels, masses, amount):
    """Raise per-bucket levels to a common waterline using ``amount``.

    Solves sum_j masses[j] * max(theta - levels[j], 0) == amount for theta
    exactly (sort-free two-pass) and returns theta.
    """
    n = levels.shape[0]
    order = np.argsort(levels)
    filled = 0.0
    covered_mass = 0.0
    theta = levels[order[0]]
    for j in range(n):
        b = levels[order[j]]
        add = covered_mass * (b - theta)
        if filled + add >= amount:
            break
        filled += add
        theta = b
        covered_mass += masses[order[j]]
    if covered_mass <= 0.0:
        covered_mass = masses[order[0]]
        theta = levels[order[0]]
    theta += (amount - filled) / covered_mass
    return theta
