"""Explicit conservative time stepping for the density equation.

Forward Euler in flux form with upwinded drift and CFL-limited diffusion;
steps that would produce a negative cell are rejected and retried at dt/2.
The elliptic fields are re-solved after every accepted step, so mass
identities hold frame by frame.
"""

import copy
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from . import _kernels, diagnostics
from .elliptic import HelmholtzOperator
from .errors import (InvalidInitialData, InvalidKappa, NonPositiveCoefficient,
                     StepCollapse)
from .grid import RadialGrid
from .model import DomainSpec, ModelParams


@dataclass
class State:
    t: float
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    dt_last: float = 0.0
    steps: int = 0


@dataclass(frozen=True)
class StepControl:
    cfl_diff: float = 0.45
    cfl_adv: float = 0.8
    dt_min: float = 1e-12
    u_max_detect: float = 1e6
    T_horizon: float = 10.0
    plateau_threshold: float = 0.01


@dataclass
class RunResult:
    classification: str
    trace: List[diagnostics.NormTrace]
    frames: List[State]
    T_detect: Optional[float] = None
    T_star_estimate: Optional[float] = None
    collapsed: bool = False
    min_u_seen: float = 0.0
    total_steps: int = 0


def _check_run_params(params):
    """Simulation accepts chi = xi = 0 (decoupled oracle limits), unlike the
    strict predicate-side validation; the elliptic coefficients must still
    be positive and the source law well formed."""
    if params.chi < 0 or params.xi < 0:
        raise NonPositiveCoefficient("chi" if params.chi < 0 else "xi")
    for name in ("alpha", "beta", "gamma", "delta"):
        if getattr(params, name) <= 0:
            raise NonPositiveCoefficient(name)
    if params.source_enabled and params.kappa < 1:
        raise InvalidKappa(f"kappa must be >= 1 with the source on, got {params.kappa}")


def initial_state(params, grid, u0):
    """Validated state with fresh elliptic solves for u0."""
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (grid.N,):
        raise InvalidInitialData(f"u0 has shape {u0.shape}, expected ({grid.N},)")
    if np.any(u0 < 0) or not np.any(u0 > 0):
        raise InvalidInitialData("u0 must be nonnegative and not identically zero")
    op_v = HelmholtzOperator(grid, params.beta, params.alpha)
    op_w = HelmholtzOperator(grid, params.delta, params.gamma)
    return State(t=0.0, u=u0.copy(), v=op_v.solve(u0), w=op_w.solve(u0))


def _face_pow(grid):
    fp = grid.face_radii ** (grid.n - 1)
    fp[0] = 0.0  # zero-flux inner face, also kills the n=1 corner case
    return fp


def compute_fluxes(state, params, grid):
    """Face-centered total flux; boundary faces are exactly zero."""
    F = np.empty(grid.N + 1)
    _kernels.compute_fluxes(state.u, state.v, state.w, _face_pow(grid), grid.dr,
                            params.m, params.p, params.q, params.chi, params.xi, F)
    return F


def stable_dt(state, params, grid, ctl):
    """CFL-limited step: diffusive, advective, horizon, and source bounds."""
    u = state.u
    dmax = float(np.max((u + 1.0) ** (params.m - 1.0)))
    F = np.empty(grid.N + 1)
    velmax = _kernels.compute_fluxes(u, state.v, state.w, _face_pow(grid), grid.dr,
                                     params.m, params.p, params.q,
                                     params.chi, params.xi, F)
    dt = ctl.cfl_diff * grid.dr**2 / (2.0 * dmax)
    if velmax > 0:
        dt = min(dt, ctl.cfl_adv * grid.dr / velmax)
    dt = min(dt, max(ctl.T_horizon - state.t, 0.0))
    if params.source_enabled:
        umax = float(np.max(u))
        smax = params.lambda0
        if params.mu1 > 0 and umax > 0:
            smax = max(smax, params.mu1 * grid.R**params.a * umax ** (params.kappa - 1.0))
        if smax > 0:
            dt = min(dt, 0.1 / smax)
    if dt < ctl.dt_min:
        raise StepCollapse(f"stable dt {dt} below dt_min {ctl.dt_min}")
    return dt


def step(state, params, grid, ctl):
    """One accepted forward-Euler step; rejects and halves on negativity."""
    dt = stable_dt(state, params, grid, ctl)
    F = compute_fluxes(state, params, grid)
    div = np.diff(F) / grid.cell_volumes
    src = 0.0
    if params.source_enabled:
        r = grid.cell_centers
        src = params.lambda0 * state.u - params.mu1 * r**params.a * state.u**params.kappa
    for _ in range(21):
        unew = state.u + dt * (div + src)
        if unew.min() >= 0.0:
            break
        dt *= 0.5
    else:
        raise StepCollapse("rejected 20 halvings without restoring positivity")
    if unew.min() < 0.0:
        raise StepCollapse("rejected 20 halvings without restoring positivity")
    op_v = HelmholtzOperator(grid, params.beta, params.alpha)
    op_w = HelmholtzOperator(grid, params.delta, params.gamma)
    return State(t=state.t + dt, u=unew, v=op_v.solve(unew), w=op_w.solve(unew),
                 dt_last=dt, steps=state.steps + 1)


def estimate_blowup_time(trace):
    """Extrapolated blow-up time: linear fit of 1/linf over the last
    decade of growth. Returns None when the fit is not decreasing."""
    linf = np.array([row.linf_u for row in trace])
    t = np.array([row.t for row in trace])
    peak = linf.max()
    mask = linf >= peak / 10.0
    if mask.sum() < 2:
        return None
    y = 1.0 / linf[mask]
    slope, intercept = np.polyfit(t[mask], y, 1)
    if slope >= 0:
        return None
    return float(-intercept / slope)


def run(params: ModelParams, grid: RadialGrid, u0, ctl: StepControl,
        sigma_norm: float = 4.0, profile_sigma: Optional[float] = None,
        frames: int = 200, frame_growth: float = 1.05,
        dom: Optional[DomainSpec] = None) -> RunResult:
    """Simulate until the horizon, blow-up detection, or step collapse.

    Frames are recorded on a uniform clock of `frames` ticks over the
    horizon; during fast growth an extra frame is cut every time the sup
    norm grows by the factor `frame_growth`, so blow-up runs still carry
    a usable audit trail.
    """
    _check_run_params(params)
    state = initial_state(params, grid, u0)

    op_v = HelmholtzOperator(grid, params.beta, params.alpha)
    op_w = HelmholtzOperator(grid, params.delta, params.gamma)
    face_pow = _face_pow(grid)
    mu_r = params.mu1 * grid.cell_centers**params.a

    def snap(dt):
        trace.append(diagnostics.norms(state, params, grid, sigma_norm,
                                       profile_sigma, dt=dt))
        kept.append(State(t=state.t, u=state.u.copy(), v=state.v.copy(),
                          w=state.w.copy(), dt_last=dt, steps=state.steps))

    trace: List[diagnostics.NormTrace] = []
    kept: List[State] = []
    snap(0.0)

    frame_dt = ctl.T_horizon / frames
    next_frame = frame_dt
    min_u_seen = float(state.u.min())
    collapsed = False
    detected_at = None

    while state.t < ctl.T_horizon * (1 - 1e-12):
        linf_stop = max(float(state.u.max()), 1e-300) * frame_growth
        t_new, nsteps, status, mn, dt_last = _kernels.advance(
            state.u, state.v, state.w, state.t, next_frame,
            face_pow, grid.cell_volumes, grid.dr, grid.R,
            params.m, params.p, params.q, params.chi, params.xi,
            params.lambda0, params.mu1, mu_r, params.a, params.kappa,
            params.source_enabled,
            op_v.lower, op_v.dp, op_v.cp, op_w.lower, op_w.dp, op_w.cp,
            op_v.load_w, op_w.load_w,
            ctl.cfl_diff, ctl.cfl_adv, ctl.dt_min, ctl.u_max_detect, linf_stop)
        state.t = t_new
        state.steps += nsteps
        state.dt_last = dt_last
        min_u_seen = min(min_u_seen, mn)
        if nsteps > 0:
            snap(dt_last)
        if status == _kernels.STATUS_DETECT:
            detected_at = state.t
            break
        if status == _kernels.STATUS_COLLAPSE:
            collapsed = True
            break
        if status == _kernels.STATUS_TARGET:
            next_frame = min(next_frame + frame_dt, ctl.T_horizon)
        # STATUS_GROWTH: keep the same frame target, just recorded a frame

    classification = diagnostics.classify_outcome(trace, ctl, collapsed=collapsed)
    t_star = None
    if classification == diagnostics.BLOWUP:
        if detected_at is None:
            detected_at = state.t
        t_star = estimate_blowup_time(trace)
    return RunResult(classification=classification, trace=trace, frames=kept,
                     T_detect=detected_at, T_star_estimate=t_star,
                     collapsed=collapsed, min_u_seen=min_u_seen,
                     total_steps=state.steps)
