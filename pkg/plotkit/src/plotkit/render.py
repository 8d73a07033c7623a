"""Figure rendering from run-artifact CSVs.

Three kinds: timeseries (norm curves from timeseries.csv), audit
(moment-inequality terms from audit.csv), regime_map (predicted vs
observed outcomes from regime_map.csv). Inputs must carry the exact
column schemas the simulation runner emits.
"""

import csv
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptyInput, SchemaMismatch

KINDS = ("timeseries", "audit", "regime_map")

REQUIRED = {
    "timeseries": ("t", "linf_u", "min_u", "mass_u", "mass_v", "mass_w",
                   "lsigma_u", "profile_sup", "dt"),
    "audit": ("t", "s0", "b", "phi", "dphi_dt",
              "J1", "J2", "J3", "J4", "J5", "J6", "margin"),
    "regime_map": ("axis1", "axis2", "predicted", "observed",
                   "T_detect", "agreement"),
}

OUTCOME_LEVELS = ("BOUNDED", "BLOWUP", "INCONCLUSIVE", "ERROR")
OUTCOME_COLORS = ("#2b7bba", "#d7301f", "#bdbdbd", "#252525")


@dataclass(frozen=True)
class FigureRequest:
    kind: str
    inputs: Tuple[str, ...]
    output: str
    log_scale: bool = True
    title: Optional[str] = None


def read_rows(path, kind):
    """Rows as dicts; hard error on missing schema columns or no data."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in REQUIRED[kind]:
            if col not in header:
                raise SchemaMismatch(col, path)
        rows = list(reader)
    if not rows:
        raise EmptyInput(path)
    return rows


def _column(rows, name):
    return np.array([float(r[name]) if r[name] != "" else np.nan
                     for r in rows])


def _render_timeseries(req, fig):
    ax_linf, ax_mass = fig.subplots(2, 1, sharex=True)
    for path in req.inputs:
        rows = read_rows(path, "timeseries")
        t = _column(rows, "t")
        label = os.path.basename(os.path.dirname(path)) or path
        ax_linf.plot(t, _column(rows, "linf_u"), label=label)
        ax_mass.plot(t, _column(rows, "mass_u"), label=label)
    if req.log_scale:
        ax_linf.set_yscale("log")
    ax_linf.set_ylabel("sup u")
    ax_mass.set_ylabel("total mass")
    ax_mass.set_xlabel("t")
    if len(req.inputs) > 1:
        ax_linf.legend(fontsize="small")
    ax_linf.set_title(req.title or "norm evolution")


def _render_audit(req, fig):
    ax_terms, ax_margin = fig.subplots(2, 1, sharex=True)
    for path in req.inputs:
        rows = read_rows(path, "audit")
        t = _column(rows, "t")
        dphi = _column(rows, "dphi_dt")
        margin = _column(rows, "margin")
        ax_terms.plot(t, dphi, label="dphi/dt")
        ax_terms.plot(t, dphi - margin, "--", label="J1-J2+J3-J4+J5-J6")
        ax_margin.plot(t, margin, color="#d7301f")
    ax_margin.axhline(0.0, color="k", lw=0.6)
    ax_terms.set_ylabel("moment balance")
    ax_margin.set_ylabel("margin")
    ax_margin.set_xlabel("t")
    ax_terms.legend(fontsize="small")
    ax_terms.set_title(req.title or "moment-inequality audit")


def _render_regime_map(req, fig):
    rows = read_rows(req.inputs[0], "regime_map")
    a1 = _column(rows, "axis1")
    a2 = _column(rows, "axis2")
    if np.all(np.isnan(a2)):
        a2 = np.zeros_like(a1)
    x_vals = np.unique(a1)
    y_vals = np.unique(a2)
    grid = np.full((len(y_vals), len(x_vals)), np.nan)
    marks = []
    for row, x, y in zip(rows, a1, a2):
        i = int(np.searchsorted(y_vals, y))
        j = int(np.searchsorted(x_vals, x))
        grid[i, j] = OUTCOME_LEVELS.index(row["observed"]) \
            if row["observed"] in OUTCOME_LEVELS else np.nan
        if row["agreement"] == "false":
            marks.append((x, y))
    ax = fig.subplots()
    cmap = matplotlib.colors.ListedColormap(OUTCOME_COLORS)
    mesh = ax.pcolormesh(_edges(x_vals), _edges(y_vals), grid,
                         cmap=cmap, vmin=-0.5, vmax=3.5)
    cbar = fig.colorbar(mesh, ax=ax, ticks=range(4))
    cbar.ax.set_yticklabels(OUTCOME_LEVELS)
    if marks:
        mx, my = zip(*marks)
        ax.plot(mx, my, "x", color="white", markersize=10, markeredgewidth=2,
                label="prediction disagrees")
        ax.legend(fontsize="small")
    ax.set_xlabel("axis1")
    ax.set_ylabel("axis2")
    ax.set_title(req.title or "regime map: observed outcome")


def _edges(vals):
    if len(vals) == 1:
        return np.array([vals[0] - 0.5, vals[0] + 0.5])
    mid = 0.5 * (vals[1:] + vals[:-1])
    return np.concatenate([[2 * vals[0] - mid[0]], mid,
                           [2 * vals[-1] - mid[-1]]])


_RENDERERS = {"timeseries": _render_timeseries,
              "audit": _render_audit,
              "regime_map": _render_regime_map}


def render(req: FigureRequest):
    """Write the requested figure; returns the output path."""
    if req.kind not in KINDS:
        raise ValueError(f"unknown figure kind {req.kind!r}")
    if not req.inputs:
        raise ValueError("no input files given")
    fig = plt.figure(figsize=(7, 5), dpi=120)
    try:
        _RENDERERS[req.kind](req, fig)
        fig.savefig(req.output, bbox_inches="tight")
    finally:
        plt.close(fig)
    return req.output
