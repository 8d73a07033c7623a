"""Run and sweep execution with deterministic file outputs.

Per-run artifacts: timeseries.csv, snapshots.jsonl, audit.csv (when moment
windows are configured), manifest.json. Sweeps add regime_map.csv with
predicted-vs-observed bookkeeping, one row per grid point in axes-major
order regardless of completion order.
"""

import dataclasses
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

from . import diagnostics, dynamics, model
from .config import RunConfig, SweepConfig
from .grid import build_grid
from .initdata import make_initial

TIMESERIES_COLUMNS = ("t", "linf_u", "min_u", "mass_u", "mass_v", "mass_w",
                      "lsigma_u", "profile_sup", "dt")
AUDIT_COLUMNS = ("t", "s0", "b", "phi", "dphi_dt",
                 "J1", "J2", "J3", "J4", "J5", "J6", "margin")
REGIME_COLUMNS = ("axis1", "axis2", "predicted", "observed", "T_detect", "agreement")

ERROR = "ERROR"


@dataclass
class RunRecord:
    config_digest: str
    classification: str
    T_detect: Optional[float]
    T_star_estimate: Optional[float]
    final_norms: dict
    files: List[str]
    wall_time: float


def _fmt(x):
    """17 significant digits; plenty to round-trip a double."""
    if x is None:
        return ""
    return f"{x:.17g}"


def _write_csv(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(cell if isinstance(cell, str) else _fmt(cell)
                              for cell in row) + "\n")


def execute_run(cfg: RunConfig, out_dir) -> RunRecord:
    """Simulate one configuration and persist its artifacts."""
    t0 = time.perf_counter()
    os.makedirs(out_dir, exist_ok=True)
    grid = build_grid(cfg.dom.n, cfg.dom.R, cfg.N)
    u0, report = make_initial(cfg.init, grid)
    profile_sigma = cfg.diag.profile_sigma
    if profile_sigma is None:
        profile_sigma = cfg.init.sigma
    result = dynamics.run(cfg.params, grid, u0, cfg.ctl,
                          sigma_norm=cfg.diag.sigma_norm,
                          profile_sigma=profile_sigma,
                          frames=cfg.diag.frames,
                          frame_growth=cfg.diag.frame_growth,
                          dom=cfg.dom)
    files = []

    ts_path = os.path.join(out_dir, "timeseries.csv")
    _write_csv(ts_path, TIMESERIES_COLUMNS,
               [(r.t, r.linf_u, r.min_u, r.mass_u, r.mass_v, r.mass_w,
                 r.lsigma_u, r.profile_sup, r.dt) for r in result.trace])
    files.append(ts_path)

    snap_path = os.path.join(out_dir, "snapshots.jsonl")
    with open(snap_path, "w", encoding="utf-8", newline="\n") as fh:
        r_list = [float(x) for x in grid.cell_centers]
        for f in result.frames:
            fh.write(json.dumps({"t": f.t,
                                 "r": r_list,
                                 "u": [float(x) for x in f.u],
                                 "v": [float(x) for x in f.v],
                                 "w": [float(x) for x in f.w]}) + "\n")
    files.append(snap_path)

    if cfg.diag.s0:
        audit_path = os.path.join(out_dir, "audit.csv")
        rows = []
        for s0 in cfg.diag.s0:
            for d in diagnostics.audit_frames(result.frames, cfg.params, grid,
                                              s0, cfg.diag.b):
                rows.append((d.t, d.s0, d.b, d.phi, d.dphi_dt,
                             *d.J, d.margin))
        _write_csv(audit_path, AUDIT_COLUMNS, rows)
        files.append(audit_path)

    wall = time.perf_counter() - t0
    final = result.trace[-1]
    record = RunRecord(config_digest=cfg.digest(),
                       classification=result.classification,
                       T_detect=result.T_detect,
                       T_star_estimate=result.T_star_estimate,
                       final_norms=dataclasses.asdict(final),
                       files=[os.path.basename(p) for p in files],
                       wall_time=wall)

    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump({"config": cfg.canonical(),
                   "initial_data": {"actual_mass": report.actual_mass,
                                    "mass_in_r1": report.mass_in_r1,
                                    "profile_bound_L": report.profile_bound_L,
                                    "core_radius": report.core_radius},
                   "record": {"config_digest": record.config_digest,
                              "classification": record.classification,
                              "T_detect": record.T_detect,
                              "T_star_estimate": record.T_star_estimate,
                              "final_norms": record.final_norms,
                              "files": record.files,
                              "wall_time": record.wall_time},
                   "total_steps": result.total_steps,
                   "min_u_seen": result.min_u_seen},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    record.files.append("manifest.json")
    return record


def _apply_axis(cfg: RunConfig, name, value):
    if name == "M0":
        return dataclasses.replace(cfg, init=dataclasses.replace(cfg.init, M0=value))
    return dataclasses.replace(cfg, params=dataclasses.replace(cfg.params,
                                                               **{name: value}))


def _predicted_label(params, dom, eps0):
    return model.predict(params, dom, eps0).verdict.value


_FAMILY = {model.Verdict.BOUNDED_THM31.value: diagnostics.BOUNDED,
           model.Verdict.BOUNDED_THM33.value: diagnostics.BOUNDED,
           model.Verdict.BLOWUP_THM41.value: diagnostics.BLOWUP,
           model.Verdict.BLOWUP_THM44.value: diagnostics.BLOWUP}


def _sweep_point(args):
    idx, cfg, out_dir = args
    run_dir = os.path.join(out_dir, f"run_{idx:04d}")
    try:
        record = execute_run(cfg, run_dir)
        return idx, record.classification, record.T_detect
    except Exception:
        return idx, ERROR, None


def execute_sweep(cfg: SweepConfig, out_dir):
    """Run every grid point; emit regime_map.csv in axes-major order."""
    os.makedirs(out_dir, exist_ok=True)
    axis_values = [ax.values() for ax in cfg.axes]
    points = list(itertools.product(*axis_values))
    run_cfgs = []
    for combo in points:
        c = cfg.base
        for ax, val in zip(cfg.axes, combo):
            c = _apply_axis(c, ax.name, val)
        run_cfgs.append(c)

    jobs_args = [(i, c, out_dir) for i, c in enumerate(run_cfgs)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_sweep_point, jobs_args))
    else:
        results = [_sweep_point(a) for a in jobs_args]
    results.sort(key=lambda r: r[0])

    rows = []
    for (combo, c, (idx, observed, t_detect)) in zip(points, run_cfgs, results):
        predicted = _predicted_label(c.params, c.dom, c.diag.eps0)
        family = _FAMILY.get(predicted)
        if family is not None and observed in (diagnostics.BOUNDED, diagnostics.BLOWUP):
            agreement = "true" if family == observed else "false"
        else:
            agreement = ""
        axis1 = combo[0]
        axis2 = combo[1] if len(combo) > 1 else ""
        rows.append((axis1, axis2, predicted, observed, t_detect, agreement))
    map_path = os.path.join(out_dir, "regime_map.csv")
    _write_csv(map_path, REGIME_COLUMNS, rows)
    return map_path, results
