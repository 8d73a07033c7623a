import numpy as np
import pytest

from archemo import InitialDataSpec, build_grid, integrate, make_initial
from archemo.errors import BadCore, InfeasibleMass


def test_constant_kind():
    g = build_grid(3, 1.0, 64)
    M0 = 4 * np.pi / 3
    u, rep = make_initial(InitialDataSpec(kind="constant", M0=M0, sigma=1.0), g)
    assert np.allclose(u, 1.0, rtol=1e-12)
    assert rep.actual_mass == pytest.approx(M0, rel=1e-12)


@pytest.mark.parametrize("kind", ["singular", "bump", "constant"])
def test_mass_normalization_and_positivity(kind):
    g = build_grid(3, 1.0, 128)
    spec = InitialDataSpec(kind=kind, M0=2.7, sigma=6.1, core_radius=0.05,
                           r1=0.2)
    u, rep = make_initial(spec, g)
    assert integrate(g, u) == pytest.approx(2.7, rel=1e-12)
    assert u.min() >= 0.0 and u.max() > 0.0


def test_singular_concentration():
    g = build_grid(3, 1.0, 256)
    spec = InitialDataSpec(kind="singular", M0=1.0, sigma=6.1,
                           core_radius=0.05, r1=0.2)
    u, rep = make_initial(spec, g)
    assert rep.mass_in_r1 >= 0.9 * rep.actual_mass
    # monotone nonincreasing in r
    assert np.all(np.diff(u) <= 1e-13 * u.max())
    # reported profile constant actually bounds the profile
    r = g.cell_centers
    assert np.all(u <= rep.profile_bound_L * r ** (-6.1) * (1 + 1e-12))


def test_bump_flat_limit():
    g = build_grid(3, 1.0, 64)
    u, _ = make_initial(InitialDataSpec(kind="bump", M0=1.0, sigma=1.0,
                                        core_radius=10.0), g)
    const = 1.0 / g.ball_volume
    assert np.max(np.abs(u - const)) / const <= 0.05


def test_bad_inputs():
    g = build_grid(3, 1.0, 64)
    with pytest.raises(InfeasibleMass):
        make_initial(InitialDataSpec(kind="constant", M0=-1.0, sigma=1.0), g)
    with pytest.raises(BadCore):
        make_initial(InitialDataSpec(kind="bump", M0=1.0, sigma=1.0,
                                     core_radius=-0.1), g)


def test_default_core_is_grid_resolved():
    g = build_grid(3, 1.0, 64)
    _, rep = make_initial(InitialDataSpec(kind="singular", M0=1.0, sigma=6.1,
                                          core_radius=0.0), g)
    assert rep.core_radius == pytest.approx(2 * g.dr)
