"""Radial Helmholtz solves 0 = Lap(v) + load*u - absorption*v with Neumann data.

Finite-volume stencil with face coefficients r_{i+1/2}^(n-1)/dr; the r=0
face coefficient vanishes, so the origin needs no special casing. The row
sums reproduce the integral identity absorption*int(v) = load*int(u)
exactly, and direct tridiagonal elimination keeps it at roundoff.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import LengthMismatch, SingularSystem
from .grid import RadialGrid


@dataclass(frozen=True)
class HelmholtzProblem:
    grid: RadialGrid
    absorption: float   # beta or delta
    load_coeff: float   # alpha or gamma
    source: np.ndarray  # cell-centered u


class HelmholtzOperator:
    """Prefactored solver for a fixed (grid, absorption, load) triple."""

    def __init__(self, grid, absorption, load_coeff):
        if absorption <= 0:
            raise SingularSystem("pure Neumann problem needs absorption > 0")
        N = grid.N
        # interior face conductances; boundary faces carry zero flux
        coef = np.zeros(N + 1)
        coef[1:N] = grid.face_radii[1:N] ** (grid.n - 1) / grid.dr
        self.lower = np.zeros(N)
        self.upper = np.zeros(N)
        self.lower[1:] = -coef[1:N]
        self.upper[:-1] = -coef[1:N]
        diag = absorption * grid.cell_volumes + coef[:-1] + coef[1:]
        self.dp, self.cp = _kernels.thomas_factor(self.lower, diag, self.upper)
        if np.any(self.dp == 0.0):
            raise SingularSystem("zero pivot in tridiagonal elimination")
        self.load_w = load_coeff * grid.cell_volumes
        self.grid = grid

    def solve(self, u, out=None):
        u = np.asarray(u, dtype=float)
        if u.shape != (self.grid.N,):
            raise LengthMismatch(f"source has shape {u.shape}, expected ({self.grid.N},)")
        if out is None:
            out = np.empty(self.grid.N)
        _kernels.thomas_solve(self.lower, self.dp, self.cp, self.load_w * u, out)
        return out


def solve_helmholtz(prob: HelmholtzProblem) -> np.ndarray:
    """Cell-centered solution of 0 = Lap(v) + load*u - absorption*v."""
    op = HelmholtzOperator(prob.grid, prob.absorption, prob.load_coeff)
    return op.solve(prob.source)


def radial_gradient(grid, v):
    """Face-centered radial derivative: central differences inside,
    zero at the r=0 and r=R faces (Neumann)."""
    v = np.asarray(v)
    if v.shape != (grid.N,):
        raise LengthMismatch(f"field has shape {v.shape}, expected ({grid.N},)")
    g = np.zeros(grid.N + 1)
    g[1:-1] = np.diff(v) / grid.dr
    return g
