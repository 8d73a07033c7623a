"""Flat dotted key-value run configuration.

Format: one `section.key = value` per line, `#` comments, values are
numbers, booleans, quoted strings, or comma-separated number lists.
Unknown keys are a hard error so misspellings never silently default.
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

from .dynamics import StepControl
from .errors import ParseError, UnknownKey, ValidationError
from .initdata import InitialDataSpec
from .model import DomainSpec, ModelParams, sigma_exponent, validate_params

SWEEP_AXES = ("p", "q", "chi", "xi", "alpha", "gamma", "m", "kappa", "M0")

_MODEL_KEYS = {f"model.{f}" for f in
               ("m", "p", "q", "chi", "xi", "alpha", "beta", "gamma", "delta",
                "lambda0", "mu1", "a", "kappa", "source_enabled")}
_KNOWN_KEYS = _MODEL_KEYS | {
    "domain.n", "domain.R", "grid.N",
    "init.kind", "init.M0", "init.sigma", "init.core_radius", "init.r1", "init.L",
    "step.cfl_diff", "step.cfl_adv", "step.dt_min", "step.u_max_detect",
    "step.T_horizon", "step.plateau_threshold",
    "diag.sigma_norm", "diag.b", "diag.s0", "diag.frames", "diag.frame_growth",
    "diag.profile_sigma", "diag.eps0",
    "sweep.axis1", "sweep.axis1_min", "sweep.axis1_max", "sweep.axis1_count",
    "sweep.axis2", "sweep.axis2_min", "sweep.axis2_max", "sweep.axis2_count",
    "sweep.jobs",
}


@dataclass(frozen=True)
class DiagOptions:
    sigma_norm: float = 4.0
    b: float = 0.5
    s0: Tuple[float, ...] = ()
    frames: int = 200
    frame_growth: float = 1.05
    profile_sigma: Optional[float] = None
    eps0: float = 0.1


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    dom: DomainSpec
    N: int
    init: InitialDataSpec
    ctl: StepControl
    diag: DiagOptions = field(default_factory=DiagOptions)

    def canonical(self):
        """Stable key-value dict; identical configs serialize identically."""
        flat = {}
        for prefix, obj in (("model", self.params), ("domain", self.dom),
                            ("init", self.init), ("step", self.ctl),
                            ("diag", self.diag)):
            for k, v in asdict(obj).items():
                if isinstance(v, tuple):
                    v = list(v)
                flat[f"{prefix}.{k}"] = v
        flat["grid.N"] = self.N
        return dict(sorted(flat.items()))

    def digest(self):
        blob = json.dumps(self.canonical(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    count: int

    def values(self):
        import numpy as np
        return list(np.linspace(self.lo, self.hi, self.count))


@dataclass(frozen=True)
class SweepConfig:
    base: RunConfig
    axes: Tuple[SweepAxis, ...]
    jobs: int = 1


def _parse_value(raw, line_no):
    raw = raw.strip()
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return raw[1:-1]
    low = raw.lower()
    if low in ("true", "false"):
        return low == "true"
    if "," in raw:
        try:
            return [float(x) for x in raw.split(",") if x.strip()]
        except ValueError:
            raise ParseError(f"bad list value {raw!r}", line_no)
    try:
        if raw.lstrip("+-").isdigit():
            return int(raw)
        return float(raw)
    except ValueError:
        pass
    if raw.isidentifier():
        return raw
    raise ParseError(f"cannot parse value {raw!r}", line_no)


def parse_keyvalues(text):
    """Raw dict from the flat key-value format; validates key names only."""
    out = {}
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(f"expected 'key = value', got {stripped!r}", i)
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise UnknownKey(key, i)
        if key in out:
            raise ParseError(f"duplicate key {key!r}", i)
        out[key] = _parse_value(raw, i)
    return out


_KIND_ALIASES = {"singular": "singular", "singularprofile": "singular",
                 "bump": "bump", "gaussianbump": "bump", "gaussian": "bump",
                 "constant": "constant"}


def _build_run_config(kv):
    model_kwargs = {k.split(".", 1)[1]: v for k, v in kv.items() if k in _MODEL_KEYS}
    params = ModelParams(**model_kwargs)
    dom = DomainSpec(n=int(kv.get("domain.n", 3)), R=float(kv.get("domain.R", 1.0)))
    try:
        validate_params(params, dom)
    except Exception as exc:
        raise ValidationError(str(exc)) from exc
    N = int(kv.get("grid.N", 256))

    kind_raw = str(kv.get("init.kind", "constant")).lower()
    if kind_raw not in _KIND_ALIASES:
        raise ValidationError(f"unknown init.kind {kind_raw!r}")
    eps0 = float(kv.get("diag.eps0", 0.1))
    if "init.sigma" in kv:
        sigma = float(kv["init.sigma"])
    else:
        # default: the theory-side profile exponent for the configured model
        try:
            sigma = sigma_exponent(dom.n, params.m, params.p, eps0)
        except Exception:
            sigma = 6.0
    init = InitialDataSpec(kind=_KIND_ALIASES[kind_raw],
                           M0=float(kv.get("init.M0", 1.0)),
                           sigma=sigma,
                           core_radius=float(kv.get("init.core_radius", 0.0)),
                           r1=float(kv["init.r1"]) if "init.r1" in kv else None,
                           L=float(kv.get("init.L", 1.0)))

    ctl = StepControl(cfl_diff=float(kv.get("step.cfl_diff", 0.45)),
                      cfl_adv=float(kv.get("step.cfl_adv", 0.8)),
                      dt_min=float(kv.get("step.dt_min", 1e-12)),
                      u_max_detect=float(kv.get("step.u_max_detect", 1e6)),
                      T_horizon=float(kv.get("step.T_horizon", 10.0)),
                      plateau_threshold=float(kv.get("step.plateau_threshold", 0.01)))
    if ctl.dt_min >= ctl.T_horizon:
        raise ValidationError("step.dt_min must be smaller than step.T_horizon")
    if ctl.u_max_detect <= 1:
        raise ValidationError("step.u_max_detect must exceed 1")

    s0_raw = kv.get("diag.s0", ())
    if isinstance(s0_raw, (int, float)):
        s0_raw = [float(s0_raw)]
    s0 = tuple(float(x) for x in s0_raw)
    s_max = dom.R**dom.n
    for x in s0:
        if not (0 < x <= s_max):
            raise ValidationError(f"diag.s0 value {x} outside (0, R^n = {s_max}]")
    b = float(kv.get("diag.b", 0.5))
    if not (0 < b < 1):
        raise ValidationError(f"diag.b must lie in (0,1), got {b}")
    diag = DiagOptions(sigma_norm=float(kv.get("diag.sigma_norm", 4.0)),
                       b=b, s0=s0,
                       frames=int(kv.get("diag.frames", 200)),
                       frame_growth=float(kv.get("diag.frame_growth", 1.05)),
                       profile_sigma=(float(kv["diag.profile_sigma"])
                                      if "diag.profile_sigma" in kv else None),
                       eps0=eps0)
    return RunConfig(params=params, dom=dom, N=N, init=init, ctl=ctl, diag=diag)


def _build_sweep_config(kv):
    base = _build_run_config({k: v for k, v in kv.items() if not k.startswith("sweep.")})
    axes = []
    for idx in (1, 2):
        key = f"sweep.axis{idx}"
        if key not in kv:
            continue
        name = str(kv[key])
        if name not in SWEEP_AXES:
            raise ValidationError(f"unsupported sweep axis {name!r}; "
                                  f"choose from {SWEEP_AXES}")
        try:
            axes.append(SweepAxis(name=name,
                                  lo=float(kv[f"{key}_min"]),
                                  hi=float(kv[f"{key}_max"]),
                                  count=int(kv[f"{key}_count"])))
        except KeyError as exc:
            raise ValidationError(f"sweep axis {name!r} needs min/max/count") from exc
        if axes[-1].count < 2:
            raise ValidationError("sweep axis counts must be >= 2")
    if not axes:
        raise ValidationError("sweep config has sweep.* keys but no axis")
    return SweepConfig(base=base, axes=tuple(axes),
                       jobs=int(kv.get("sweep.jobs", 1)))


def load_config(path):
    """Parse and validate a config file into a RunConfig or SweepConfig."""
    with open(path, "r", encoding="utf-8") as fh:
        kv = parse_keyvalues(fh.read())
    if any(k.startswith("sweep.") for k in kv):
        return _build_sweep_config(kv)
    return _build_run_config(kv)
