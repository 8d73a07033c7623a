import numpy as np
import pytest

from archemo import (InitialDataSpec, ModelParams, StepControl, build_grid,
                     integrate, make_initial, run)
from archemo.dynamics import (compute_fluxes, initial_state, stable_dt, step)

NOSRC = dict(source_enabled=False, lambda0=0.0, mu1=0.0)


def _bump_state(g, params, M0=1.0, rho=0.2):
    u0, _ = make_initial(InitialDataSpec(kind="bump", M0=M0, sigma=2.0,
                                         core_radius=rho), g)
    return initial_state(params, g, u0)


def test_constant_state_has_zero_flux():
    g = build_grid(3, 1.0, 32)
    params = ModelParams(m=2, p=2, q=2, **NOSRC)
    u0, _ = make_initial(InitialDataSpec(kind="constant", M0=1.0, sigma=1.0), g)
    st = initial_state(params, g, u0)
    assert np.all(compute_fluxes(st, params, g) == 0.0)


def test_pure_diffusion_flux():
    g = build_grid(3, 1.0, 32)
    params = ModelParams(m=1, p=2, q=2, chi=0.0, xi=0.0, **NOSRC)
    st = _bump_state(g, params)
    F = compute_fluxes(st, params, g)
    fp = g.face_radii[1:-1] ** 2
    ur = np.diff(st.u) / g.dr
    assert np.allclose(F[1:-1], fp * ur, rtol=1e-12)
    assert F[0] == 0.0 and F[-1] == 0.0


def test_single_face_upwind_n1():
    """Hand stencil: u = (0, 1), v_r > 0, chi=1, p=2, m=1 in one dimension.
    Drift velocity -chi*v_r points left so u is taken from the right cell."""
    g = build_grid(1, 1.0, 8)
    params = ModelParams(m=1, p=2, q=2, chi=1.0, xi=1.0, **NOSRC)
    u = np.zeros(8)
    u[4:] = 1.0
    # v with positive slope at the face between cells 3 and 4
    v = np.linspace(0.0, 1.0, 8)
    w = np.zeros(8)
    st = initial_state(params, g, u)
    st = type(st)(t=0.0, u=u, v=v, w=w, dt_last=0.0, steps=0)
    F = compute_fluxes(st, params, g)
    v_r = (v[4] - v[3]) / g.dr
    expected = 1.0 / g.dr - v_r * 1.0
    assert F[4] == pytest.approx(expected, rel=1e-12)


def test_stable_dt_scales():
    g = build_grid(3, 1.0, 64)
    params = ModelParams(m=1, p=2, q=2, **NOSRC)
    st = _bump_state(g, params)
    ctl = StepControl(T_horizon=10.0)
    dt = stable_dt(st, params, g, ctl)
    assert dt <= ctl.cfl_diff * g.dr**2 / 2.0 * (1 + 1e-12)
    assert dt > 0


def test_step_conserves_mass_and_positivity():
    g = build_grid(3, 1.0, 64)
    params = ModelParams(m=1.5, p=2, q=2, **NOSRC)
    st = _bump_state(g, params, M0=5.0)
    ctl = StepControl(T_horizon=10.0)
    m0 = integrate(g, st.u)
    for _ in range(50):
        st = step(st, params, g, ctl)
        assert st.u.min() >= 0.0
    assert integrate(g, st.u) == pytest.approx(m0, rel=1e-12)


def test_run_bounded_classification():
    g = build_grid(3, 1.0, 48)
    params = ModelParams(m=1, p=2, q=2, chi=0.5, xi=1.0, **NOSRC)
    u0, _ = make_initial(InitialDataSpec(kind="bump", M0=1.0, sigma=2.0,
                                         core_radius=0.2), g)
    res = run(params, g, u0, StepControl(T_horizon=1.0), frames=20)
    assert res.classification == "BOUNDED"
    assert res.T_detect is None
    assert res.min_u_seen >= 0.0
    assert len(res.trace) >= 20


def test_run_blowup_detection():
    g = build_grid(3, 1.0, 48)
    params = ModelParams(m=1, p=2, q=2, chi=1.5, xi=1.0, **NOSRC)
    u0, _ = make_initial(InitialDataSpec(kind="singular", M0=50.0, sigma=6.1,
                                         core_radius=0.3), g)
    res = run(params, g, u0, StepControl(T_horizon=1.0), frames=50)
    assert res.classification == "BLOWUP"
    assert res.T_detect is not None and res.T_detect > 0
    assert res.T_star_estimate is not None
    assert res.T_star_estimate >= res.trace[-2].t


def test_run_refreshes_elliptic_fields():
    g = build_grid(3, 1.0, 48)
    params = ModelParams(m=1, p=2, q=2, alpha=2.0, beta=1.0, **NOSRC)
    u0, _ = make_initial(InitialDataSpec(kind="bump", M0=1.0, sigma=2.0,
                                         core_radius=0.2), g)
    res = run(params, g, u0, StepControl(T_horizon=0.2), frames=10)
    for row in res.trace:
        assert abs(1.0 * row.mass_v - 2.0 * row.mass_u) / (2.0 * row.mass_u) <= 1e-8
