"""Compiled inner loops: tridiagonal solves, flux assembly, time stepping.

Everything here is numba-jitted; the public modules wrap these with
validation and bookkeeping. Status codes returned by `advance`:

    0  reached the requested target time
    1  blow-up detector fired (max u >= u_max_detect)
    2  step collapse (dt < dt_min, or 20 rejected halvings)
    3  growth stop (max u grew past linf_stop since the last frame)
"""

import numpy as np
from numba import njit

STATUS_TARGET = 0
STATUS_DETECT = 1
STATUS_COLLAPSE = 2
STATUS_GROWTH = 3


@njit(cache=True)
def thomas_factor(lower, diag, upper):
    """LU factors of a tridiagonal system; returns (dp, cp)."""
    n = diag.shape[0]
    dp = np.empty(n)
    cp = np.empty(n)
    dp[0] = diag[0]
    cp[0] = upper[0] / dp[0]
    for i in range(1, n):
        dp[i] = diag[i] - lower[i] * cp[i - 1]
        if i < n - 1:
            cp[i] = upper[i] / dp[i]
        else:
            cp[i] = 0.0
    return dp, cp


@njit(cache=True)
def thomas_solve(lower, dp, cp, rhs, out):
    """Solve with precomputed factors; O(N) per call."""
    n = dp.shape[0]
    out[0] = rhs[0] / dp[0]
    for i in range(1, n):
        out[i] = (rhs[i] - lower[i] * out[i - 1]) / dp[i]
    for i in range(n - 2, -1, -1):
        out[i] = out[i] - cp[i] * out[i + 1]
    return out


@njit(cache=True)
def compute_fluxes(u, v, w, face_pow, dr, m, p, q, chi, xi, F):
    """Total face flux F = r^(n-1) [D u_r + a u_up], boundary faces zero.

    D = (u~+1)^(m-1) at the arithmetic face average u~; the drift velocity
    a = -chi (u~+1)^(p-2) v_r + xi (u~+1)^(q-2) w_r carries the upwind cell
    value of u. Returns the largest |a| for the CFL bound.
    """
    N = u.shape[0]
    F[0] = 0.0
    F[N] = 0.0
    velmax = 0.0
    for k in range(1, N):
        um = 0.5 * (u[k - 1] + u[k]) + 1.0
        vr = (v[k] - v[k - 1]) / dr
        wr = (w[k] - w[k - 1]) / dr
        vel = -chi * um ** (p - 2.0) * vr + xi * um ** (q - 2.0) * wr
        if abs(vel) > velmax:
            velmax = abs(vel)
        uup = u[k - 1] if vel >= 0.0 else u[k]
        F[k] = face_pow[k] * (um ** (m - 1.0) * (u[k] - u[k - 1]) / dr + vel * uup)
    return velmax


@njit(cache=True)
def advance(u, v, w, t, t_target,
            face_pow, vols, dr, R,
            m, p, q, chi, xi,
            lambda0, mu1, mu_r, a, kappa, source_on,
            lv_low, lv_dp, lv_cp, lw_low, lw_dp, lw_cp,
            alpha_w, gamma_w,
            cfl_diff, cfl_adv, dt_min, u_max_detect, linf_stop):
    """March the explicit scheme in place until t_target or an event.

    Returns (t, steps, status, min_u_seen, dt_last). v and w always hold
    the elliptic solutions for the current u on exit.
    """
    N = u.shape[0]
    F = np.empty(N + 1)
    rhs = np.empty(N)
    unew = np.empty(N)
    steps = 0
    min_u_seen = u.min()
    dt_last = 0.0
    status = STATUS_TARGET
    ra_max = R ** a
    eps_t = 1e-14 * max(1.0, abs(t_target))

    while t < t_target - eps_t:
        velmax = compute_fluxes(u, v, w, face_pow, dr, m, p, q, chi, xi, F)

        dmax = 0.0
        umax = 0.0
        for i in range(N):
            d = (u[i] + 1.0) ** (m - 1.0)
            if d > dmax:
                dmax = d
            if u[i] > umax:
                umax = u[i]

        dt = cfl_diff * dr * dr / (2.0 * dmax)
        if velmax > 0.0:
            dta = cfl_adv * dr / velmax
            if dta < dt:
                dt = dta
        if source_on:
            smax = lambda0
            if mu1 > 0.0 and umax > 0.0:
                cap = mu1 * ra_max * umax ** (kappa - 1.0)
                if cap > smax:
                    smax = cap
            if smax > 0.0 and 0.1 / smax < dt:
                dt = 0.1 / smax
        if dt < dt_min:
            status = STATUS_COLLAPSE
            break
        if t + dt > t_target:
            dt = t_target - t  # horizon clip, may legitimately be tiny

        accepted = False
        for _ in range(21):
            ok = True
            for i in range(N):
                du = (F[i + 1] - F[i]) / vols[i]
                if source_on:
                    du += lambda0 * u[i] - mu_r[i] * u[i] ** kappa
                unew[i] = u[i] + dt * du
                if unew[i] < 0.0:
                    ok = False
                    break
            if ok:
                accepted = True
                break
            dt *= 0.5
            if dt < dt_min:
                break
        if not accepted:
            status = STATUS_COLLAPSE
            break

        for i in range(N):
            u[i] = unew[i]
        t += dt
        dt_last = dt
        steps += 1

        # refresh the elliptic fields for the new density
        for i in range(N):
            rhs[i] = alpha_w[i] * u[i]
        thomas_solve(lv_low, lv_dp, lv_cp, rhs, v)
        for i in range(N):
            rhs[i] = gamma_w[i] * u[i]
        thomas_solve(lw_low, lw_dp, lw_cp, rhs, w)

        mn = u[0]
        mx = u[0]
        for i in range(1, N):
            if u[i] < mn:
                mn = u[i]
            if u[i] > mx:
                mx = u[i]
        if mn < min_u_seen:
            min_u_seen = mn
        if mx >= u_max_detect:
            status = STATUS_DETECT
            break
        if mx >= linf_stop:
            status = STATUS_GROWTH
            break

    return t, steps, status, min_u_seen, dt_last
