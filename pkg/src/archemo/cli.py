"""Command-line entry point.

Subcommands: check (print the regime prediction for a config), run,
sweep, audit (recompute moment diagnostics from stored snapshots),
verify (built-in correctness suite). Exit codes: 0 success, 1 usage
error, 2 validation error (including unreadable config), 3 runtime
failure.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import diagnostics, dynamics, runner
from .config import RunConfig, SweepConfig, load_config
from .dynamics import StepControl
from .elliptic import HelmholtzProblem, solve_helmholtz
from .errors import ArchemoError
from .grid import build_grid, integrate
from .initdata import InitialDataSpec, make_initial
from .model import DomainSpec, ModelParams

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load(path):
    if not os.path.exists(path):
        print(f"error: config file not found: {path}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)
    try:
        return load_config(path)
    except ArchemoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def _cmd_check(args):
    cfg = _load(args.config)
    base = cfg.base if isinstance(cfg, SweepConfig) else cfg
    from .model import predict
    pred = predict(base.params, base.dom, base.diag.eps0)
    line = pred.verdict.value
    if pred.kappa_bound is not None:
        line += f" (kappa < {pred.kappa_bound:g})"
    print(line)
    if pred.condition_case is not None:
        print(f"condition case: {pred.condition_case.value}")
    if pred.sigma_exponent is not None:
        print(f"sigma exponent: {pred.sigma_exponent:g}")
    if pred.details:
        print(pred.details)
    if isinstance(cfg, SweepConfig):
        total = 1
        for ax in cfg.axes:
            total *= ax.count
        print(f"sweep: {len(cfg.axes)} axis(es), {total} runs, jobs={cfg.jobs}")
    return EXIT_OK


def _cmd_run(args):
    cfg = _load(args.config)
    if isinstance(cfg, SweepConfig):
        print("error: config defines a sweep; use the sweep subcommand",
              file=sys.stderr)
        return EXIT_VALIDATION
    record = runner.execute_run(cfg, args.out)
    print(f"classification: {record.classification}")
    if record.T_detect is not None:
        print(f"T_detect: {record.T_detect:.6g}")
    if record.T_star_estimate is not None:
        print(f"T_star_estimate: {record.T_star_estimate:.6g}")
    print(f"wrote {len(record.files)} files to {args.out}")
    return EXIT_OK


def _cmd_sweep(args):
    cfg = _load(args.config)
    if isinstance(cfg, RunConfig):
        print("error: config defines a single run; use the run subcommand",
              file=sys.stderr)
        return EXIT_VALIDATION
    map_path, results = runner.execute_sweep(cfg, args.out)
    n_err = sum(1 for (_, obs, _) in results if obs == runner.ERROR)
    print(f"wrote {map_path} ({len(results)} runs, {n_err} failed)")
    return EXIT_OK if n_err == 0 else EXIT_RUNTIME


def _cmd_audit(args):
    manifest_path = os.path.join(args.run_dir, "manifest.json")
    snap_path = os.path.join(args.run_dir, "snapshots.jsonl")
    for p in (manifest_path, snap_path):
        if not os.path.exists(p):
            print(f"error: missing {p}", file=sys.stderr)
            return EXIT_VALIDATION
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    kv = manifest["config"]
    model_kwargs = {k.split(".", 1)[1]: v for k, v in kv.items()
                    if k.startswith("model.")}
    params = ModelParams(**model_kwargs)
    dom = DomainSpec(n=int(kv["domain.n"]), R=float(kv["domain.R"]))
    grid = build_grid(dom.n, dom.R, int(kv["grid.N"]))

    frames = []
    with open(snap_path, encoding="utf-8") as fh:
        for line in fh:
            obj = json.loads(line)
            frames.append(dynamics.State(t=obj["t"],
                                         u=np.asarray(obj["u"]),
                                         v=np.asarray(obj["v"]),
                                         w=np.asarray(obj["w"]),
                                         dt_last=0.0, steps=0))
    if not frames:
        print("error: snapshots.jsonl holds no frames", file=sys.stderr)
        return EXIT_VALIDATION

    s0_list = args.s0 if args.s0 else list(kv.get("diag.s0") or ())
    if not s0_list:
        s0_list = [(dom.R / 4.0) ** dom.n]
    b = args.b if args.b is not None else float(kv.get("diag.b", 0.5))

    rows = []
    for s0 in s0_list:
        for d in diagnostics.audit_frames(frames, params, grid, s0, b):
            rows.append((d.t, d.s0, d.b, d.phi, d.dphi_dt, *d.J, d.margin))
    out_path = args.out or os.path.join(args.run_dir, "audit.csv")
    runner._write_csv(out_path, runner.AUDIT_COLUMNS, rows)
    bad = sum(1 for r in rows
              if r[-1] < -0.05 * (abs(r[4]) + abs(r[4] - r[-1])))
    print(f"wrote {out_path}: {len(rows)} rows, {bad} frames below margin floor")
    return EXIT_OK


def _verify_elliptic():
    """Manufactured cos(pi r) solution, n=3: order >= 1.9, error(512) < 1e-4."""
    errs = []
    for N in (128, 256, 512):
        grid = build_grid(3, 1.0, N)
        r = grid.cell_centers
        v_exact = np.cos(np.pi * r)
        load = (1.0 + np.pi**2) * v_exact + (2.0 * np.pi / r) * np.sin(np.pi * r)
        v = solve_helmholtz(HelmholtzProblem(grid=grid, absorption=1.0,
                                             load_coeff=1.0, source=load))
        errs.append(float(np.max(np.abs(v - v_exact))))
    order = np.log2(errs[0] / errs[2]) / 2.0
    ok = order >= 1.9 and errs[2] < 1e-4
    return ok, f"elliptic MMS: order {order:.2f}, err(512) {errs[2]:.3e}"


def _verify_conservation():
    grid = build_grid(3, 1.0, 64)
    params = ModelParams(m=1.0, p=2.0, q=2.0, chi=1.0, xi=1.0,
                         source_enabled=False, lambda0=0.0, mu1=0.0)
    u0, _ = make_initial(InitialDataSpec(kind="bump", M0=1.0, sigma=2.0,
                                         core_radius=0.2), grid)
    ctl = StepControl(T_horizon=0.5)
    res = dynamics.run(params, grid, u0, ctl, frames=20)
    m0 = res.trace[0].mass_u
    drift = max(abs(row.mass_u - m0) / m0 for row in res.trace)
    videv = max(abs(params.beta * row.mass_v - params.alpha * row.mass_u)
                / (params.alpha * row.mass_u) for row in res.trace)
    ok = drift <= 1e-10 and videv <= 1e-8
    return ok, f"conservation: mass drift {drift:.2e}, v identity {videv:.2e}"


def _verify_logistic():
    grid = build_grid(3, 1.0, 64)
    params = ModelParams(m=1.0, p=2.0, q=2.0, chi=0.0, xi=0.0,
                         lambda0=1.0, mu1=1.0, a=0.0, kappa=2.0,
                         source_enabled=True)
    vol = grid.ball_volume
    u0, _ = make_initial(InitialDataSpec(kind="constant", M0=0.5 * vol,
                                         sigma=1.0), grid)
    ctl = StepControl(T_horizon=5.0)
    res = dynamics.run(params, grid, u0, ctl, frames=100)
    err = max(abs(row.linf_u - 1.0 / (1.0 + np.exp(-row.t)))
              for row in res.trace)
    ok = err <= 5e-3
    return ok, f"logistic oracle: max error {err:.2e}"


def _cmd_verify(args):
    checks = (_verify_elliptic, _verify_conservation, _verify_logistic)
    all_ok = True
    for check in checks:
        ok, msg = check()
        print(("PASS " if ok else "FAIL ") + msg)
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_RUNTIME


def build_parser():
    parser = _Parser(prog="archemo",
                     description="Radial chemotaxis blow-up laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a config and print the "
                                     "predicted regime")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("run", help="execute one configured run")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="execute a parameter sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("audit", help="recompute moment diagnostics from "
                                     "stored snapshots")
    p.add_argument("run_dir")
    p.add_argument("--s0", type=float, action="append")
    p.add_argument("--b", type=float)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("verify", help="run the built-in correctness suite")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code
    except ArchemoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
