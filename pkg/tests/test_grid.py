import numpy as np
import pytest

from archemo import build_grid, integrate, to_mass_coordinate, unit_sphere_area
from archemo.errors import LengthMismatch, TooCoarse


def test_volume_sum_telescopes():
    g = build_grid(3, 1.0, 8)
    assert abs(g.cell_volumes.sum() - 1.0 / 3.0) <= 1e-13 / 3.0


def test_boundary_faces():
    g = build_grid(4, 2.5, 16)
    assert g.face_radii[0] == 0.0
    assert g.face_radii[-1] == 2.5


def test_flat_measure_n1():
    g = build_grid(1, 2.0, 16)
    assert np.allclose(g.cell_volumes, 0.125, rtol=0, atol=1e-15)


def test_too_coarse():
    with pytest.raises(TooCoarse):
        build_grid(3, 1.0, 4)


def test_unit_sphere_area():
    assert abs(unit_sphere_area(2) - 2 * np.pi) < 1e-14
    assert abs(unit_sphere_area(3) - 4 * np.pi) < 1e-14
    assert unit_sphere_area(1) == pytest.approx(2.0)


def test_integrate_constant_is_ball_volume():
    g = build_grid(3, 1.0, 64)
    assert integrate(g, np.ones(64)) == pytest.approx(4 * np.pi / 3, rel=1e-13)
    assert integrate(g, np.zeros(64)) == 0.0


def test_integrate_linear_n1():
    g = build_grid(1, 1.0, 128)
    # odd weight r^0 with omega_0 = 2: integral of r over (0,1) doubled
    val = integrate(g, g.cell_centers)
    assert val == pytest.approx(1.0, rel=1e-12)


def test_integrate_length_mismatch():
    g = build_grid(3, 1.0, 16)
    with pytest.raises(LengthMismatch):
        integrate(g, np.ones(15))


def test_mass_coordinate_constant():
    g = build_grid(3, 1.0, 32)
    ubar = 2.5
    s, U = to_mass_coordinate(g, np.full(32, ubar))
    assert U[0] == 0.0
    assert np.allclose(U[1:], ubar * s[1:] / 3.0, rtol=1e-13)
    assert U[-1] == pytest.approx(ubar / 3.0, rel=1e-13)


def test_mass_coordinate_monotone_and_consistent():
    g = build_grid(3, 1.0, 64)
    rng = np.random.default_rng(0)
    u = rng.random(64)
    s, U = to_mass_coordinate(g, u)
    assert np.all(np.diff(U) >= 0)
    assert integrate(g, u) == pytest.approx(unit_sphere_area(3) * U[-1],
                                            rel=1e-12)


def test_mass_coordinate_length_mismatch():
    g = build_grid(3, 1.0, 16)
    with pytest.raises(LengthMismatch):
        to_mass_coordinate(g, np.ones(17))
