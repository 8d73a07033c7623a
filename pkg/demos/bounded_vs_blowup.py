"""Dichotomy at p = q: the sign of chi*alpha - xi*gamma decides the outcome.

Two runs with identical concentrated initial data (mass 50 in a singular
profile), differing only in chi. Negative balance stays bounded, positive
balance detonates in finite time.
"""

import numpy as np

from archemo import (InitialDataSpec, ModelParams, StepControl, build_grid,
                     make_initial, predict, run)
from archemo.model import DomainSpec

dom = DomainSpec(n=3, R=1.0)
grid = build_grid(dom.n, dom.R, 128)
u0, report = make_initial(InitialDataSpec(kind="singular", M0=50.0,
                                          sigma=6.1, core_radius=0.3,
                                          r1=0.2), grid)
print(f"initial data: mass {report.actual_mass:.3f}, "
      f"{100 * report.mass_in_r1 / report.actual_mass:.0f}% inside r=0.2")

ctl = StepControl(T_horizon=2.0)
for chi in (0.5, 1.5):
    params = ModelParams(m=1.0, p=2.0, q=2.0, chi=chi, xi=1.0,
                         source_enabled=False, lambda0=0.0, mu1=0.0)
    pred = predict(params, dom)
    res = run(params, grid, u0, ctl, frames=100)
    linf = np.array([row.linf_u for row in res.trace])
    print(f"\nchi*alpha - xi*gamma = {params.attraction_minus_repulsion:+.2f}")
    print(f"  predicted: {pred.verdict.value}")
    print(f"  observed:  {res.classification} "
          f"(linf {linf[0]:.1f} -> {linf[-1]:.3g}, peak {linf.max():.3g})")
    if res.T_detect is not None:
        print(f"  detected at t = {res.T_detect:.4f}, "
              f"extrapolated T* = {res.T_star_estimate:.4f}")
