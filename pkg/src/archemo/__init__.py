"""Radial finite-volume laboratory for quasilinear attraction-repulsion
chemotaxis: trajectory simulation, blow-up detection, regime predicates,
and moment-functional audits."""

from .diagnostics import (BLOWUP, BOUNDED, INCONCLUSIVE, MomentDiagnostics,
                          NormTrace, audit_frames, classify_outcome,
                          inequality_terms, mass_functions, moment_phi, norms,
                          profile_monitor)
from .dynamics import RunResult, State, StepControl, run, step
from .elliptic import HelmholtzOperator, HelmholtzProblem, radial_gradient, solve_helmholtz
from .grid import RadialGrid, build_grid, integrate, to_mass_coordinate, unit_sphere_area
from .config import (DiagOptions, RunConfig, SweepAxis, SweepConfig,
                     load_config, parse_keyvalues)
from .initdata import InitialDataReport, InitialDataSpec, make_initial
from .model import (ConditionCase, DomainSpec, ModelParams, RegimePrediction,
                    Verdict, check_blowup_regime, check_boundedness_regime,
                    check_condition_case, convexity_constant, kappa_upper_bound,
                    predict, sigma_exponent, validate_params)
from .runner import RunRecord, execute_run, execute_sweep

__version__ = "0.1.0"
