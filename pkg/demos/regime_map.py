"""Predicted-vs-observed regime map over (chi, gamma).

Sweeps the attraction coefficient chi against the repulsant production
gamma at p = q, where the theory predicts the outcome from the sign of
chi*alpha - xi*gamma. Writes regime_map.csv plus per-run artifacts.
"""

import os
import tempfile

from archemo import (DiagOptions, DomainSpec, InitialDataSpec, ModelParams,
                     RunConfig, StepControl, SweepAxis, SweepConfig,
                     execute_sweep)

base = RunConfig(
    params=ModelParams(m=1.0, p=2.0, q=2.0, xi=1.0,
                       source_enabled=False, lambda0=0.0, mu1=0.0),
    dom=DomainSpec(n=3, R=1.0),
    N=64,
    init=InitialDataSpec(kind="singular", M0=50.0, sigma=6.1,
                         core_radius=0.3, r1=0.2),
    ctl=StepControl(T_horizon=1.0),
    diag=DiagOptions(frames=40))

sweep = SweepConfig(base=base,
                    axes=(SweepAxis("chi", 0.6, 1.4, 5),
                          SweepAxis("gamma", 0.6, 1.4, 5)),
                    jobs=4)

out = os.path.join(tempfile.gettempdir(), "archemo_regime_map")
map_path, results = execute_sweep(sweep, out)
print(f"wrote {map_path}")

with open(map_path) as fh:
    header = next(fh)
    agree = disagree = 0
    for line in fh:
        cells = line.strip().split(",")
        if cells[-1] == "true":
            agree += 1
        elif cells[-1] == "false":
            disagree += 1
        print("  " + line.strip())
print(f"{agree} agreements, {disagree} disagreements "
      f"(blank flag = no applicable theorem or inconclusive run)")
