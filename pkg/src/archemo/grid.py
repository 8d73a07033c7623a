"""Radial discretization of the ball B_R(0) in R^n.

Uniform cells in r, exact face-power volume weights, quadrature with the
r^(n-1) measure, and the mass-coordinate transform s = r^n.
"""

from dataclasses import dataclass, field
from math import gamma, pi

import numpy as np

from .errors import LengthMismatch, TooCoarse


def unit_sphere_area(n):
    """Surface area of the unit (n-1)-sphere: 2 pi^(n/2) / Gamma(n/2)."""
    return 2.0 * pi ** (n / 2.0) / gamma(n / 2.0)


@dataclass(frozen=True)
class RadialGrid:
    n: int
    R: float
    N: int
    dr: float
    cell_centers: np.ndarray        # r_i = (i+1/2) dr, length N
    face_radii: np.ndarray          # r_{i+1/2} = i dr, length N+1, [0] = 0, [-1] = R
    cell_volumes: np.ndarray        # w_i = (r_{i+1/2}^n - r_{i-1/2}^n)/n, length N
    omega: float = field(default=0.0)   # surface area of the unit (n-1)-sphere

    @property
    def ball_volume(self):
        return self.omega * self.R**self.n / self.n

    @property
    def s_nodes(self):
        """Mass-coordinate nodes s_k = r_{k+1/2}^n (faces), length N+1."""
        return self.face_radii**self.n


def build_grid(n, R, N):
    """Build a uniform radial grid with N cells on [0, R] in dimension n."""
    if N < 8:
        raise TooCoarse(f"need at least 8 cells, got N={N}")
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    dr = R / N
    faces = np.arange(N + 1) * dr
    faces[-1] = R  # exact outer boundary
    centers = (np.arange(N) + 0.5) * dr
    # exact face powers make the telescoping mass identity hold by construction
    volumes = np.diff(faces**n) / n
    return RadialGrid(n=n, R=float(R), N=int(N), dr=dr,
                      cell_centers=centers, face_radii=faces,
                      cell_volumes=volumes, omega=unit_sphere_area(n))


def integrate(grid, f):
    """Integral of a cell-centered field over the ball B_R(0).

    Returns omega_{n-1} * sum_i w_i f_i, the full n-dimensional integral.
    """
    f = np.asarray(f)
    if f.shape != (grid.N,):
        raise LengthMismatch(f"field has shape {f.shape}, expected ({grid.N},)")
    return grid.omega * float(np.dot(grid.cell_volumes, f))


def to_mass_coordinate(grid, u):
    """Cumulative radial mass U sampled on the s-nodes s_k = r_{k+1/2}^n.

    U(s_k) = sum_{i<k} w_i u_i, so U(0) = 0 and U(R^n) = (radial mass).
    For constant u this is exactly u*s/n at every node.
    """
    u = np.asarray(u)
    if u.shape != (grid.N,):
        raise LengthMismatch(f"field has shape {u.shape}, expected ({grid.N},)")
    U = np.empty(grid.N + 1)
    U[0] = 0.0
    np.cumsum(grid.cell_volumes * u, out=U[1:])
    return grid.s_nodes, U
