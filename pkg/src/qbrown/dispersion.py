"""Dispersion dynamics of a quantum Brownian particle.

Closed-form dispersion laws, the zero-temperature inertial ODE, the
harmonic self-consistent ODE, the bounded overdamped equation and the
full self-consistent high-friction equation, all producing comparable
sigma_x^2(t) trajectories.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .numerics import (ConvergenceError, OdeSolverConfig, cumulative_trapezoid,
                       lambert_w_minus1, coth, solve_ode)
from .params import PhysicalParams, derived_scales, momentum_dispersion


class ModelCompatibilityError(ValueError):
    """A dispersion model was requested with incompatible parameters."""


class SemiclassicalDomainWarning(UserWarning):
    """The semiclassical log law was evaluated where it can be negative."""


class ClosedForm(Enum):
    EINSTEIN = "einstein"
    VACUUM_SPREADING = "vacuum-spreading"
    PURE_QUANTUM = "pure-quantum"
    SUPERPOSITION = "superposition"
    LAMBERT_EXACT = "lambert-exact"
    COTH_INTERPOLATION = "coth-interpolation"
    SEMICLASSICAL_LOG = "semiclassical-log"
    ELEMENTARY_LOG_APPROX = "elementary-log-approx"


_THERMAL_KINDS = {ClosedForm.EINSTEIN, ClosedForm.SUPERPOSITION,
                  ClosedForm.LAMBERT_EXACT, ClosedForm.COTH_INTERPOLATION,
                  ClosedForm.SEMICLASSICAL_LOG, ClosedForm.ELEMENTARY_LOG_APPROX}


def lambert_dispersion_scaled(c):
    """Solve s - ln(1 + s) = c for s >= 0 (dispersion in units of lambda_T^2).

    Uses the lower Lambert branch, s = -1 - W_-1(-exp(-1 - c)), switching
    to Newton on the defining relation once exp(-1 - c) underflows.
    """
    c = np.asarray(c, dtype=float)
    scalar = c.ndim == 0
    c = np.atleast_1d(c)
    if np.any(c < 0):
        raise ValueError("scaled time must be non-negative")
    s = np.zeros_like(c)
    pos = c > 0
    small = pos & (c < 650.0)
    if np.any(small):
        s[small] = -1.0 - lambert_w_minus1(-np.exp(-1.0 - c[small]))
    big = pos & ~small
    if np.any(big):
        x = c[big] + np.log1p(c[big])
        for _ in range(60):
            step = (x - np.log1p(x) - c[big]) / (x / (1.0 + x))
            x = x - step
            if np.all(np.abs(step) <= 1e-14 * x):
                break
        s[big] = x
    return float(s[0]) if scalar else s


def eval_closed_form(kind: ClosedForm, t, p: PhysicalParams, *, sigma0: float | None = None):
    """Evaluate one of the closed-form dispersion laws at times t >= 0.

    sigma0 is required (and only allowed) for VACUUM_SPREADING.  The
    semiclassical log law is returned as written even where 2Dt <= lambda_T^2
    makes it negative; a SemiclassicalDomainWarning flags that range.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(t_arr < 0):
        raise ValueError("t must be non-negative")

    if kind is ClosedForm.VACUUM_SPREADING:
        if p.friction != 0:
            raise ModelCompatibilityError("vacuum spreading requires b = 0")
        if sigma0 is None or sigma0 <= 0:
            raise ModelCompatibilityError("vacuum spreading needs sigma0 > 0")
        out = sigma0 ** 2 + (p.hbar * t_arr / (2.0 * p.mass * sigma0)) ** 2
        return float(out[0]) if scalar else out
    if sigma0 is not None:
        raise ModelCompatibilityError(f"{kind.value} takes no sigma0")

    if kind is ClosedForm.PURE_QUANTUM:
        if p.friction <= 0:
            raise ModelCompatibilityError("pure quantum diffusion requires b > 0")
        out = p.hbar * np.sqrt(t_arr / (p.mass * p.friction))
        return float(out[0]) if scalar else out

    if kind not in _THERMAL_KINDS:
        raise ModelCompatibilityError(f"unknown closed form {kind!r}")
    if p.temperature <= 0 or p.friction <= 0:
        raise ModelCompatibilityError(f"{kind.value} requires T > 0 and b > 0")
    sc = derived_scales(p)
    D, lam2 = sc.D, sc.lambda_T ** 2

    if kind is ClosedForm.EINSTEIN:
        out = 2.0 * D * t_arr
    elif kind is ClosedForm.SUPERPOSITION:
        out = p.hbar * np.sqrt(t_arr / (p.mass * p.friction)) + 2.0 * D * t_arr
    elif kind is ClosedForm.LAMBERT_EXACT:
        out = lam2 * np.atleast_1d(lambert_dispersion_scaled(2.0 * D * t_arr / lam2))
    elif kind is ClosedForm.COTH_INTERPOLATION:
        out = np.zeros_like(t_arr)
        pos = t_arr > 0
        root = np.sqrt(D * t_arr[pos])
        out[pos] = 2.0 * sc.lambda_T * root * coth(sc.lambda_T / root)
    elif kind is ClosedForm.SEMICLASSICAL_LOG:
        c = 2.0 * D * t_arr
        if np.any(c <= lam2):
            warnings.warn(
                "semiclassical log law evaluated at 2Dt <= lambda_T^2 where "
                "it can turn negative", SemiclassicalDomainWarning, stacklevel=2)
        with np.errstate(divide="ignore"):
            out = c + lam2 * np.log(c / lam2) / 3.0
    else:  # ELEMENTARY_LOG_APPROX
        out = 2.0 * D * t_arr + 2.0 * lam2 * np.log1p(np.sqrt(D * t_arr) / sc.lambda_T)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# Trajectories and the time x inverse-temperature surface


@dataclass(frozen=True)
class DispersionTrajectory:
    """Time series of position dispersion with derived momentum dispersion."""

    times: np.ndarray
    sigma_x2: np.ndarray
    sigma_p2: np.ndarray
    label: str
    mu: np.ndarray | None = None

    def __post_init__(self):
        n = self.times.size
        if self.sigma_x2.size != n or self.sigma_p2.size != n:
            raise ValueError("trajectory arrays must share one length")
        if self.mu is not None and self.mu.size != n:
            raise ValueError("trajectory arrays must share one length")
        if self.times[0] < 0 or np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be non-negative and increasing")
        pos = self.times > 0
        if np.any(self.sigma_x2[pos] <= 0):
            raise ValueError("sigma_x2 must be positive for t > 0")

    @classmethod
    def from_sigma(cls, times, sigma_x2, p: PhysicalParams, label: str,
                   mu=None, classical_momentum: bool = False):
        times = np.asarray(times, dtype=float)
        sigma_x2 = np.asarray(sigma_x2, dtype=float)
        if classical_momentum:
            sp2 = np.full_like(sigma_x2, p.mass * p.k_B * p.temperature)
        else:
            sp2 = np.where(sigma_x2 > 0,
                           momentum_dispersion(np.maximum(sigma_x2, 1e-300), p),
                           np.inf)
        return cls(times=times, sigma_x2=sigma_x2, sigma_p2=sp2, label=label,
                   mu=None if mu is None else np.asarray(mu, dtype=float))


@dataclass(frozen=True)
class BetaGridFunction:
    """sigma_x^2 sampled on a time x inverse-temperature tensor grid.

    The beta = 0 column is the infinite-temperature classical marker and
    stores +inf for t > 0; every integrand built from the surface vanishes
    there.  All other columns are finite and positive for t > 0.
    """

    t_grid: np.ndarray
    beta_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        nt, nb = self.values.shape
        if nt != self.t_grid.size or nb != self.beta_grid.size:
            raise ValueError("surface shape does not match its grids")
        if self.beta_grid[0] != 0.0 or np.any(np.diff(self.beta_grid) <= 0):
            raise ValueError("beta_grid must increase from 0")
        body = self.values[self.t_grid > 0, 1:]
        if np.any(~np.isfinite(body)) or np.any(body <= 0):
            raise ValueError("surface must be finite and positive for t > 0")

    def column(self, beta: float) -> np.ndarray:
        j = int(np.argmin(np.abs(self.beta_grid - beta)))
        if not math.isclose(self.beta_grid[j], beta, rel_tol=1e-9, abs_tol=0.0):
            raise ValueError(f"beta = {beta} is not a grid node")
        return self.values[:, j]


def make_beta_grid(beta: float, n: int = 48, cutoff: float = 1e-3,
                   extend_factor: float = 1.0, n_extend: int = 16) -> np.ndarray:
    """Log-spaced beta nodes: {0} U [cutoff*beta, beta], optionally extended.

    The physical beta is always a node.  extend_factor > 1 appends colder
    nodes up to extend_factor * beta (used to probe the T -> 0 column).
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    core = np.geomspace(cutoff * beta, beta, n)
    core[-1] = beta
    grid = np.concatenate(([0.0], core))
    if extend_factor > 1.0:
        ext = np.geomspace(beta, extend_factor * beta, n_extend + 1)[1:]
        grid = np.concatenate((grid, ext))
    return grid


# ---------------------------------------------------------------------------
# Zero-temperature inertial dynamics (mean + dispersion, second order)


def solve_inertial_zero_T(p: PhysicalParams, sigma0: float, dsigma0: float,
                          mu0: float, dmu0: float, t_grid,
                          cfg: OdeSolverConfig = OdeSolverConfig()) -> DispersionTrajectory:
    """Integrate the coupled zero-temperature mean/dispersion ODEs.

    m mu'' + b mu' = f and m sigma'' + b sigma' = hbar^2 / (4 m sigma^3),
    as a 4-component first-order system.  sigma0 must be positive: the
    dispersion equation is singular at sigma = 0 and those initial states
    are served by the closed forms.
    """
    if p.temperature != 0:
        raise ModelCompatibilityError("inertial zero-T solver requires T = 0")
    if sigma0 <= 0:
        raise ValueError("sigma0 must be positive (sigma = 0 is singular)")
    t_grid = np.asarray(t_grid, dtype=float)

    h2_4m2 = p.hbar ** 2 / (4.0 * p.mass ** 2)
    b_m = p.friction / p.mass
    f_m = p.force / p.mass

    def rhs(t, y):
        mu, dmu, sig, dsig = y
        if sig <= 0:
            raise ConvergenceError(
                f"sigma reached {sig} at t = {t}; integrator misconfigured")
        return np.array([dmu, f_m - b_m * dmu,
                         dsig, h2_4m2 / sig ** 3 - b_m * dsig])

    y = solve_ode(rhs, [mu0, dmu0, sigma0, dsigma0], t_grid, cfg)
    return DispersionTrajectory.from_sigma(
        t_grid, y[:, 2] ** 2, p, "inertial-zero-T", mu=y[:, 0])


# ---------------------------------------------------------------------------
# Harmonic oscillator with temperature self-consistency


def _interp_rows(t_nodes, rows, t):
    """Linear interpolation of a (nt, k) table along its first axis."""
    i = int(np.searchsorted(t_nodes, t))
    if i <= 0:
        return rows[0]
    if i >= t_nodes.size:
        return rows[-1]
    w = (t - t_nodes[i - 1]) / (t_nodes[i] - t_nodes[i - 1])
    return (1.0 - w) * rows[i - 1] + w * rows[i]


def solve_harmonic(p: PhysicalParams, sigma0_sq: float, dsigma0_sq: float,
                   mu0: float, dmu0: float, t_grid, beta_grid=None,
                   cfg: OdeSolverConfig | None = None, relaxation: float = 0.7,
                   tol: float = 1e-8, max_iter: int = 200,
                   full_output: bool = False):
    """Integrate the harmonic dispersion equation with its beta-integral.

    m S'' + b S' + 2 m (omega0^2 - k_B T int_0^beta hbar^2/(4 m^2 S^4...)
    with S = sigma_x^2: the spring constant is softened by the quantum
    term, which requires the same ODE solved at every beta node.  The
    surface is iterated to self-consistency (Picard with relaxation);
    the friction coefficient stays fixed across beta nodes while k_B T
    is recomputed per node.
    """
    if p.omega0 <= 0:
        raise ModelCompatibilityError("harmonic solver requires omega0 > 0")
    if p.temperature <= 0:
        raise ModelCompatibilityError("harmonic solver requires T > 0")
    if sigma0_sq <= 0:
        raise ValueError("sigma0_sq must be positive")
    t_grid = np.asarray(t_grid, dtype=float)
    beta_phys = p.beta
    if beta_grid is None:
        beta_grid = make_beta_grid(beta_phys)
    beta_grid = np.asarray(beta_grid, dtype=float)
    if cfg is None:
        span = t_grid[-1] - t_grid[0]
        cfg = OdeSolverConfig(method="rk4", max_step=min(span / 200.0,
                                                         0.02 / p.omega0))

    nb = beta_grid.size
    kT = np.empty(nb)
    kT[0] = np.inf
    kT[1:] = 1.0 / beta_grid[1:]
    kT_cols = kT[1:]
    w0sq = p.omega0 ** 2
    spring_floor = 1e-8 * w0sq
    quantum_coef = p.hbar ** 2 / (4.0 * p.mass ** 2)

    # mean: damped driven oscillator, no beta dependence
    def mu_rhs(t, y):
        mu, v = y
        return np.array([v, (p.force - p.friction * v) / p.mass - w0sq * mu])

    mu_sol = solve_ode(mu_rhs, [mu0, dmu0], t_grid,
                       OdeSolverConfig(method="rk45", rel_tol=1e-10, abs_tol=1e-12))

    ncol = nb - 1
    y0 = np.concatenate((np.full(ncol, sigma0_sq), np.full(ncol, dsigma0_sq)))

    def sweep(I_table):
        def rhs(t, y):
            S, V = y[:ncol], y[ncol:]
            I_row = _interp_rows(t_grid, I_table, t)
            spring = np.maximum(w0sq - kT_cols * I_row, spring_floor)
            dV = (2.0 * kT_cols - p.friction * V) / p.mass - 2.0 * spring * S
            return np.concatenate((V, dV))

        sol = solve_ode(rhs, y0, t_grid, cfg)
        return sol[:, :ncol]

    surface = sweep(np.zeros((t_grid.size, ncol)))  # classical first pass
    residuals = []
    for _ in range(max_iter):
        integrand = np.zeros((t_grid.size, nb))
        integrand[:, 1:] = quantum_coef / surface ** 2
        I_full = cumulative_trapezoid(integrand, beta_grid)
        new = sweep(I_full[:, 1:])
        if np.any(new <= 0):
            raise ConvergenceError("negative dispersion during harmonic "
                                   "iteration; refine grids", residuals)
        res = float(np.max(np.abs(new - surface) / np.abs(new)))
        residuals.append(res)
        surface = (1.0 - relaxation) * surface + relaxation * new
        if res <= tol:
            break
    else:
        raise ConvergenceError(
            f"harmonic beta self-consistency not converged "
            f"(last residual {residuals[-1]:.3e})", residuals)

    values = np.empty((t_grid.size, nb))
    values[:, 0] = np.inf
    values[t_grid == 0, 0] = sigma0_sq
    values[:, 1:] = surface
    grid_fn = BetaGridFunction(t_grid=t_grid, beta_grid=beta_grid, values=values)
    traj = DispersionTrajectory.from_sigma(
        t_grid, grid_fn.column(beta_phys), p, "harmonic", mu=mu_sol[:, 0])
    return (traj, grid_fn) if full_output else traj


def stationary_harmonic_dispersion(beta: float, p: PhysicalParams,
                                   tol: float = 1e-10, n_nodes: int = 129,
                                   relaxation: float = 0.7, max_iter: int = 500,
                                   full_profile: bool = False):
    """Equilibrium dispersion of the self-consistent harmonic equation.

    Imposes the stationary condition at every beta node simultaneously
    and iterates the whole profile from the classical equipartition
    profile.  The effective spring constant is clamped positive while
    iterating (the classical start overestimates the quantum softening
    at cold nodes); the converged profile is off the clamp.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if p.omega0 <= 0:
        raise ModelCompatibilityError("requires omega0 > 0")
    nodes = make_beta_grid(beta, n=n_nodes, cutoff=1e-4)
    kT = np.empty(nodes.size)
    kT[0] = np.inf
    kT[1:] = 1.0 / nodes[1:]
    w0sq = p.omega0 ** 2
    coef = p.hbar ** 2 / (4.0 * p.mass ** 2)

    profile = kT[1:] / (p.mass * w0sq)  # classical start
    residuals = []
    for _ in range(max_iter):
        integrand = np.zeros(nodes.size)
        integrand[1:] = coef / profile ** 2
        I = cumulative_trapezoid(integrand, nodes)
        spring = np.maximum(w0sq - kT[1:] * I[1:], 1e-8 * w0sq)
        new = kT[1:] / (p.mass * spring)
        res = float(np.max(np.abs(new - profile) / new))
        residuals.append(res)
        profile = (1.0 - relaxation) * profile + relaxation * new
        if res <= tol:
            break
    else:
        raise ConvergenceError(
            f"stationary harmonic profile not converged "
            f"(last residual {residuals[-1]:.3e})", residuals)
    if full_profile:
        return nodes[1:], profile
    return float(profile[-1])


# ---------------------------------------------------------------------------
# Overdamped free particle


def solve_overdamped_bounded(p: PhysicalParams, sigma0_sq: float, t_grid,
                             cfg: OdeSolverConfig = OdeSolverConfig()) -> DispersionTrajectory:
    """Integrate dS/dt = 2D (1 + lambda_T^2 / S), the bounded overdamped law.

    sigma0_sq = 0 is served by anchoring at the exact Lambert value at the
    first positive grid time (the ODE itself is singular at S = 0).
    """
    if p.temperature <= 0 or p.friction <= 0:
        raise ModelCompatibilityError("overdamped solver requires T > 0, b > 0")
    if sigma0_sq < 0:
        raise ValueError("sigma0_sq must be non-negative")
    t_grid = np.asarray(t_grid, dtype=float)
    sc = derived_scales(p)
    D, lam2 = sc.D, sc.lambda_T ** 2

    def rhs(t, y):
        return np.array([2.0 * D * (1.0 + lam2 / y[0])])

    sigma = np.empty(t_grid.size)
    if sigma0_sq == 0.0:
        if t_grid[0] == 0.0:
            sigma[0] = 0.0
            start = 1
        else:
            start = 0
        anchor = float(eval_closed_form(ClosedForm.LAMBERT_EXACT, t_grid[start], p))
        sigma[start] = anchor
        if start + 1 < t_grid.size:
            sol = solve_ode(rhs, [anchor], t_grid[start:], cfg)
            sigma[start:] = sol[:, 0]
    else:
        sol = solve_ode(rhs, [sigma0_sq], t_grid, cfg)
        sigma[:] = sol[:, 0]
    return DispersionTrajectory.from_sigma(t_grid, sigma, p, "overdamped-bounded")


def solve_overdamped_full(p: PhysicalParams, t_grid, beta_grid=None,
                          relaxation: float = 0.7, tol: float = 1e-8,
                          max_iter: int = 200, explicit_substitution: bool = False,
                          anchor_factor: float = 1e-8):
    """Self-consistent high-friction dispersion across inverse temperature.

    dS/dt = 2 D(beta) [1 + S int_0^beta hbar^2 / (4 m S(t, beta')^2) dbeta'],
    with D and lambda_T recomputed per beta node while b stays constant.
    Picard iteration starts from the quantum+classical superposition at
    every node; each sweep re-solves the outer ODE (or, with
    explicit_substitution, integrates the previous right-hand side
    directly) and is relaxed until the surface stops moving.

    The time grid is extended internally far below its first positive
    node so the small-time quantum asymptote anchors the integration;
    values are reported on the caller's grid only.
    Returns (BetaGridFunction, trajectory at the physical beta).
    """
    if p.temperature <= 0 or p.friction <= 0:
        raise ModelCompatibilityError("overdamped solver requires T > 0, b > 0")
    t_grid = np.asarray(t_grid, dtype=float)
    beta_phys = p.beta
    if beta_grid is None:
        beta_grid = make_beta_grid(beta_phys)
    beta_grid = np.asarray(beta_grid, dtype=float)
    if beta_grid[0] != 0.0:
        raise ValueError("beta_grid must start at 0")
    j_phys = int(np.argmin(np.abs(beta_grid - beta_phys)))
    if not math.isclose(beta_grid[j_phys], beta_phys, rel_tol=1e-9):
        raise ValueError("beta_grid must contain the physical beta")

    has_zero = t_grid[0] == 0.0
    tp = t_grid[1:] if has_zero else t_grid
    if tp.size == 0 or tp[0] <= 0:
        raise ValueError("t_grid needs at least one positive time")
    # internal anchor grid below the first reported time
    t_anchor = tp[0] * anchor_factor
    n_pre = max(2, int(math.ceil(12 * math.log10(tp[0] / t_anchor))))
    pre = np.geomspace(t_anchor, tp[0], n_pre + 1)[:-1]
    ti = np.concatenate((pre, tp))
    tau = np.log(ti)

    nb = beta_grid.size
    ncol = nb - 1
    Dj = 1.0 / (beta_grid[1:] * p.friction)
    q_coef = p.hbar ** 2 / (4.0 * p.mass)
    pq = p.hbar * np.sqrt(ti / (p.mass * p.friction))

    S = pq[:, None] + 2.0 * Dj[None, :] * ti[:, None]  # superposition start
    anchor_row = S[0].copy()

    cfg = OdeSolverConfig(method="rk4", max_step=0.05)

    residuals = []
    for _ in range(max_iter):
        integrand = np.zeros((ti.size, nb))
        integrand[:, 1:] = q_coef / S ** 2
        I_full = cumulative_trapezoid(integrand, beta_grid)
        I_cols = I_full[:, 1:]
        if explicit_substitution:
            rhs_prev = 2.0 * Dj[None, :] * (1.0 + S * I_cols)
            d = np.diff(ti)
            new = np.empty_like(S)
            new[0] = anchor_row
            new[1:] = anchor_row + np.cumsum(
                0.5 * (rhs_prev[1:] + rhs_prev[:-1]) * d[:, None], axis=0)
        else:
            logI = np.log(np.maximum(I_cols, 1e-300))

            def rhs(lt, y):
                t = math.exp(lt)
                I_row = np.exp(_interp_rows(tau, logI, lt))
                return t * 2.0 * Dj * (1.0 + y * I_row)

            sol = solve_ode(rhs, anchor_row, tau, cfg)
            new = sol
        if np.any(new <= 0):
            raise ConvergenceError("negative dispersion during Picard "
                                   "iteration; refine grids", residuals)
        res = float(np.max(np.abs(new - S) / new))
        residuals.append(res)
        S = (1.0 - relaxation) * S + relaxation * new
        if res <= tol:
            break
    else:
        raise ConvergenceError(
            f"overdamped Picard iteration not converged "
            f"(last residual {residuals[-1]:.3e})", residuals)

    keep = ti.size - tp.size
    S_out = S[keep:]
    if has_zero:
        values = np.empty((t_grid.size, nb))
        values[0] = 0.0
        values[1:, 1:] = S_out
        values[1:, 0] = np.inf
    else:
        values = np.empty((t_grid.size, nb))
        values[:, 1:] = S_out
        values[:, 0] = np.inf
    grid_fn = BetaGridFunction(t_grid=t_grid, beta_grid=beta_grid, values=values)
    traj = DispersionTrajectory.from_sigma(
        t_grid, values[:, j_phys], p, "overdamped-full")
    return grid_fn, traj


# ---------------------------------------------------------------------------
# Model comparison


@dataclass
class ComparisonTable:
    """Per-time dispersions for several models with deviation summaries."""

    times: np.ndarray
    columns: dict = field(default_factory=dict)   # label -> sigma_x2 array
    errors: dict = field(default_factory=dict)    # label -> error message
    max_rel_deviation: dict = field(default_factory=dict)  # (a, b) -> float
    verdicts: dict = field(default_factory=dict)  # name -> bool


def compare_models(p: PhysicalParams, t_grid, models, *,
                   sigma0: float | None = None) -> ComparisonTable:
    """Evaluate closed-form models on a common grid and compare them.

    Incompatible model/parameter combinations are reported per model and
    do not abort the rest.  Ordering verdicts are recorded for the pairs
    the theory ranks: superposition >= exact Lambert bound, and the
    elementary log approximation >= the semiclassical log law at large t.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    table = ComparisonTable(times=t_grid)
    for kind in models:
        try:
            kw = {"sigma0": sigma0} if kind is ClosedForm.VACUUM_SPREADING else {}
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", SemiclassicalDomainWarning)
                table.columns[kind.value] = eval_closed_form(kind, t_grid, p, **kw)
        except (ModelCompatibilityError, ValueError) as exc:
            table.errors[kind.value] = str(exc)

    labels = list(table.columns)
    for i, a in enumerate(labels):
        for b_ in labels[i + 1:]:
            va, vb = table.columns[a], table.columns[b_]
            mask = (va > 0) & (vb > 0)
            if np.any(mask):
                dev = np.abs(va[mask] - vb[mask]) / np.maximum(va[mask], vb[mask])
                table.max_rel_deviation[(a, b_)] = float(np.max(dev))

    sup = table.columns.get(ClosedForm.SUPERPOSITION.value)
    lam = table.columns.get(ClosedForm.LAMBERT_EXACT.value)
    if sup is not None and lam is not None:
        table.verdicts["superposition_ge_lambert"] = bool(np.all(sup >= lam - 1e-12 * sup))
    elem = table.columns.get(ClosedForm.ELEMENTARY_LOG_APPROX.value)
    semi = table.columns.get(ClosedForm.SEMICLASSICAL_LOG.value)
    if elem is not None and semi is not None:
        sc = derived_scales(p)
        late = t_grid > sc.t_c
        if np.any(late):
            table.verdicts["elementary_ge_semiclassical_late"] = bool(
                np.all(elem[late] >= semi[late]))
    return table
