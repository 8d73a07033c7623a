"""Trajectory measurements: norms, mass-accumulation functions, the moment
functional phi, the term-by-term audit of its differential inequality, the
profile monitor, and outcome classification.

The audit evaluates the six explicit-constant terms

    J1 = chi*alpha*n * I[(nU_s+1)^(p-2) U U_s]
    J2 = xi*gamma*n  * I[(nU_s+1)^(q-2) U U_s]
    J3 = n^2         * I[s^(2-2/n) (nU_s+1)^(m-1) U_ss]
    J4 = chi*beta*n  * I[(nU_s+1)^(p-2) V U_s]
    J5 = xi*delta*n  * I[(nU_s+1)^(q-2) W U_s]
    J6 = n^(kappa-1)*mu1 * I[ integral_0^s eta^(a/n) U_s^kappa d(eta) ]

with I[g] = integral over (0, s0) of s^(-b) (s0-s) g(s) ds, and checks
d(phi)/dt >= J1 - J2 + J3 - J4 + J5 - J6 (equality when the source is off).
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BadExponent, BadWindow, EmptyTrace
from .grid import integrate, to_mass_coordinate

BOUNDED = "BOUNDED"
BLOWUP = "BLOWUP"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class NormTrace:
    t: float
    linf_u: float
    min_u: float
    mass_u: float
    mass_v: float
    mass_w: float
    lsigma_u: float
    profile_sup: float
    dt: float


@dataclass
class MomentDiagnostics:
    t: float
    s0: float
    b: float
    phi: float
    J: tuple
    dphi_dt: float = float("nan")
    margin: float = float("nan")

    @property
    def J_sum(self):
        J1, J2, J3, J4, J5, J6 = self.J
        return J1 - J2 + J3 - J4 + J5 - J6


def norms(state, params, grid, sigma_norm, profile_sigma=None, dt=0.0):
    """One NormTrace row for the current state."""
    u = state.u
    if profile_sigma is None:
        profile_sigma = sigma_norm
    lsig = integrate(grid, np.abs(u) ** sigma_norm) ** (1.0 / sigma_norm)
    return NormTrace(t=state.t,
                     linf_u=float(np.max(u)),
                     min_u=float(np.min(u)),
                     mass_u=integrate(grid, u),
                     mass_v=integrate(grid, state.v),
                     mass_w=integrate(grid, state.w),
                     lsigma_u=lsig,
                     profile_sup=profile_monitor(state, grid, profile_sigma),
                     dt=dt)


def mass_functions(state, grid):
    """U, V, W on the mass-coordinate nodes s_k = r_{k+1/2}^n."""
    s, U = to_mass_coordinate(grid, state.u)
    _, V = to_mass_coordinate(grid, state.v)
    _, W = to_mass_coordinate(grid, state.w)
    return s, U, V, W


def _check_window(s0, b, s_max):
    if not (0.0 < b < 1.0):
        raise BadExponent(f"need b in (0,1), got {b}")
    if not (0.0 < s0 <= s_max * (1 + 1e-12)):
        raise BadWindow(f"need s0 in (0, {s_max}], got {s0}")


def _singular_integral(s, g, b):
    """Integral of s^(-b) g(s) over [s[0], s[-1]] with s[0] == 0.

    The first subinterval uses exact moments of s^(-b) and s^(1-b)
    against a linear g; the rest is the trapezoid rule on the full
    integrand. g(0) must be finite (all audited integrands vanish there).
    """
    if len(s) < 2:
        return 0.0
    s1 = s[1]
    first = g[0] * s1 ** (1 - b) / (1 - b) \
        + (g[1] - g[0]) * s1 ** (1 - b) / (2 - b)
    f = s[1:] ** (-b) * g[1:]
    return first + float(np.trapezoid(f, s[1:]))


def _windowed(s, g, s0):
    """Clip samples to (0, s0), prepend s=0 and append s=s0 with g=0.

    Every audited integrand carries the factor (s0 - s) and a factor that
    vanishes at s=0, so both synthetic endpoints are exact.
    """
    mask = (s > 0) & (s < s0)
    ss = np.concatenate(([0.0], s[mask], [s0]))
    gg = np.concatenate(([0.0], g[mask], [0.0]))
    return ss, gg


def moment_phi(s_nodes, U, s0, b):
    """phi(s0) = integral over (0, s0) of s^(-b) (s0-s) U(s) ds."""
    _check_window(s0, b, s_nodes[-1])
    ss, gg = _windowed(s_nodes, (s0 - s_nodes) * U, s0)
    return _singular_integral(ss, gg, b)


def inequality_terms(state, params, grid, s0, b):
    """All six inequality terms plus phi at the current state.

    U_s comes from the identity n U_s = u at cell centers; U_ss from a
    centered difference of U_s in s. dphi_dt and margin stay NaN here and
    are filled in by audit_frames, which sees adjacent output frames.
    """
    n = grid.n
    s_nodes, U, V, W = mass_functions(state, grid)
    _check_window(s0, b, s_nodes[-1])
    s = grid.cell_centers ** n
    Uc = np.interp(s, s_nodes, U)
    Vc = np.interp(s, s_nodes, V)
    Wc = np.interp(s, s_nodes, W)
    Us = state.u / n
    nUs1 = state.u + 1.0
    # one-sided difference in s: uniformly first order, so the audit
    # residual halves cleanly under grid refinement
    Uss = np.empty_like(Us)
    Uss[:-1] = np.diff(Us) / np.diff(s)
    Uss[-1] = Uss[-2]

    win = s0 - s

    def term(coef, g):
        ss, gg = _windowed(s, win * g, s0)
        return coef * _singular_integral(ss, gg, b)

    J1 = term(params.chi * params.alpha * n, nUs1 ** (params.p - 2) * Uc * Us)
    J2 = term(params.xi * params.gamma * n, nUs1 ** (params.q - 2) * Uc * Us)
    J3 = term(n * n, s ** (2 - 2.0 / n) * nUs1 ** (params.m - 1) * Uss)
    J4 = term(params.chi * params.beta * n, nUs1 ** (params.p - 2) * Vc * Us)
    J5 = term(params.xi * params.delta * n, nUs1 ** (params.q - 2) * Wc * Us)
    if params.source_enabled and params.mu1 > 0:
        eta_pow = s ** (params.a / n)
        inner = eta_pow * Us ** params.kappa
        # cumulative integral from 0 with a synthetic origin sample
        se = np.concatenate(([0.0], s))
        ie = np.concatenate(([0.0 if params.a > 0 else inner[0]], inner))
        G = np.concatenate(([0.0], np.cumsum(np.diff(se) * 0.5 * (ie[1:] + ie[:-1]))))[1:]
        J6 = term(n ** (params.kappa - 1) * params.mu1, G)
    else:
        J6 = 0.0

    phi = moment_phi(s_nodes, U, s0, b)
    return MomentDiagnostics(t=state.t, s0=s0, b=b, phi=phi,
                             J=(J1, J2, J3, J4, J5, J6))


def audit_frames(frames, params, grid, s0, b):
    """Audit every stored frame; dphi_dt by centered differences in t."""
    diags = [inequality_terms(f, params, grid, s0, b) for f in frames]
    K = len(diags)
    for k, d in enumerate(diags):
        lo = max(0, k - 1)
        hi = min(K - 1, k + 1)
        if hi == lo:
            continue
        dt = diags[hi].t - diags[lo].t
        if dt <= 0:
            continue
        d.dphi_dt = (diags[hi].phi - diags[lo].phi) / dt
        d.margin = d.dphi_dt - d.J_sum
    return diags


def profile_monitor(state, grid, sigma):
    """Empirical profile constant sup_r u(r) r^sigma."""
    return float(np.max(state.u * grid.cell_centers**sigma))


def classify_outcome(trace: Sequence, ctl, collapsed=False,
                     horizon: Optional[float] = None):
    """BOUNDED / BLOWUP / INCONCLUSIVE from a norm trace.

    BLOWUP when the detector threshold was crossed, or stepping collapsed
    while the sup norm was still rising. BOUNDED when the horizon was
    reached and the sup norm grew by less than the plateau threshold over
    the final 20% of the horizon. Everything else is INCONCLUSIVE.
    """
    if len(trace) == 0:
        raise EmptyTrace("cannot classify an empty trace")
    if horizon is None:
        horizon = ctl.T_horizon
    linf = np.array([row.linf_u for row in trace])
    t = np.array([row.t for row in trace])
    if linf.max() >= ctl.u_max_detect:
        return BLOWUP
    if collapsed:
        # collapse during growth is the numerical signature of blow-up
        tail = linf[t >= t[-1] * 0.8] if t[-1] > 0 else linf
        if len(tail) >= 2 and tail[-1] > tail[0]:
            return BLOWUP
        return INCONCLUSIVE
    if t[-1] >= horizon * (1 - 1e-9):
        window = t >= horizon * 0.8
        tail = linf[window]
        if len(tail) < 2:
            return INCONCLUSIVE
        ref = tail[0]
        growth = (tail.max() - ref) / ref if ref > 0 else 0.0
        plateau = getattr(ctl, "plateau_threshold", 0.01)
        if abs(growth) < plateau:
            return BOUNDED
        return INCONCLUSIVE
    return INCONCLUSIVE
