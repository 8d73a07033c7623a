"""Model parameters and the closed-form regime predicates.

Verdicts follow the boundedness/blow-up case table: p < q always bounded,
p = q split by the sign of chi*alpha - xi*gamma, p > q blow-up when the
structural conditions C1-C3 hold and the source exponent kappa sits below
an explicit threshold.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .errors import (DegenerateDenominator, InvalidDimension, InvalidEps,
                     InvalidExponent, InvalidKappa, NonPositiveCoefficient,
                     ValidationError)


class Verdict(Enum):
    BOUNDED_THM31 = "BoundedThm31"
    BOUNDED_THM33 = "BoundedThm33"
    BLOWUP_THM41 = "BlowupThm41"
    BLOWUP_THM44 = "BlowupThm44"
    NO_THEOREM = "NoTheoremApplies"


class ConditionCase(Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"


@dataclass(frozen=True)
class ModelParams:
    m: float = 1.0
    p: float = 2.0
    q: float = 2.0
    chi: float = 1.0
    xi: float = 1.0
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    delta: float = 1.0
    lambda0: float = 0.0    # constant growth rate lambda(r) = lambda0
    mu1: float = 0.0        # damping law mu(r) = mu1 * r^a
    a: float = 0.0
    kappa: float = 1.0
    source_enabled: bool = False

    @property
    def attraction_minus_repulsion(self):
        """chi*alpha - xi*gamma, the sign that decides the p = q case."""
        return self.chi * self.alpha - self.xi * self.gamma


@dataclass(frozen=True)
class DomainSpec:
    n: int = 3
    R: float = 1.0


@dataclass(frozen=True)
class RegimePrediction:
    verdict: Verdict
    condition_case: Optional[ConditionCase] = None
    kappa_bound: Optional[float] = None
    sigma_exponent: Optional[float] = None
    details: str = ""


def _pos(y):
    """y_+ = max(0, y)."""
    return max(0.0, y)


def validate_params(params: ModelParams, dom: DomainSpec):
    """Check the standing hypotheses; returns (params, dom) unchanged if valid."""
    for name in ("chi", "xi", "alpha", "beta", "gamma", "delta"):
        if getattr(params, name) <= 0:
            raise NonPositiveCoefficient(name)
    if dom.n < 1:
        raise InvalidDimension(f"n must be >= 1, got {dom.n}")
    if dom.R <= 0:
        raise NonPositiveCoefficient("R")
    if params.lambda0 < 0 or params.mu1 < 0 or params.a < 0:
        raise NonPositiveCoefficient("lambda0/mu1/a must be >= 0")
    if params.source_enabled:
        if params.kappa < 1:
            raise InvalidKappa(f"kappa must be >= 1 with the source on, got {params.kappa}")
    elif params.lambda0 != 0 or params.mu1 != 0:
        # source off means f == 0; nonzero rates would silently be ignored
        raise ValidationError("lambda0 and mu1 must be 0 when source_enabled is false")
    return params, dom


def check_boundedness_regime(params: ModelParams, dom: DomainSpec) -> RegimePrediction:
    """Boundedness verdict for the source-free system.

    p < q is always bounded; p = q is bounded when chi*alpha - xi*gamma < 0.
    Both statements assume f == 0, so a configured source gives no verdict.
    """
    if params.source_enabled:
        return RegimePrediction(Verdict.NO_THEOREM,
                                details="boundedness results assume f == 0")
    d = params.attraction_minus_repulsion
    if params.p < params.q:
        return RegimePrediction(Verdict.BOUNDED_THM31,
                                details=f"p={params.p} < q={params.q}: repulsion dominates")
    if params.p == params.q:
        if d < 0:
            return RegimePrediction(
                Verdict.BOUNDED_THM33,
                details=f"p=q and chi*alpha-xi*gamma={d} < 0")
        if d == 0:
            return RegimePrediction(Verdict.NO_THEOREM,
                                    details="p=q with chi*alpha-xi*gamma=0 is not covered")
    return RegimePrediction(Verdict.NO_THEOREM,
                            details="no boundedness hypothesis holds")


def check_condition_case(m: float, p: float, n: int):
    """Which of the structural cases C1/C2/C3 (if any) holds for (m, p, n).

    The three cases are mutually exclusive: C1 lives in n in {3,4}; for
    n >= 5, C2 and C3 split the p-range at the shared threshold with
    strict < on the C2 side and <= on the C3 side.
    """
    if m < 1:
        return None
    upper_common = 2.0 * m / (n + 1) + 2.0 * (n * n + 1) / (n * (n + 1))
    if n in (3, 4):
        if (p < upper_common
                and p < -m / (n - 2) + 2.0 * (n * n - n - 1) / (n * (n - 2))
                and m - p < -2.0 / n):
            return ConditionCase.C1
        return None
    if n >= 5:
        lower = -2.0 * m / (n - 3) + 2.0 * (n * n - 2 * n - 1) / (n * (n - 3))
        if not (lower < p < upper_common):
            return None
        split = -(n + 2.0) * m / (n - 4) + (3.0 * n * n - 5 * n - 4) / (n * (n - 4))
        if p < split and p <= (n + 2.0) * m / 3 - (n * n - 3.0 * n - 4) / (3.0 * n):
            return ConditionCase.C2
        if split <= p < -m / (n - 2) + 2.0 * (n * n - n - 1) / (n * (n - 2)) \
                and m - p < -2.0 / n:
            return ConditionCase.C3
    return None


def kappa_upper_bound(params: ModelParams, dom: DomainSpec,
                      case: ConditionCase) -> float:
    """Strict upper bound on the source exponent kappa for the given case."""
    n, m, p, a = dom.n, params.m, params.p, params.a
    A = (m - p + 1) * n + 1
    if case in (ConditionCase.C1, ConditionCase.C2):
        return (1.0 + (n - 2) * A / (n * (n - 1)) + a * A / (n * (n - 1))
                - (m - 1) - _pos(2 - p))
    return 1.0 + A / (2.0 * (n - 1)) + a * A / (n * (n - 1)) - _pos(2 - p) / 2.0


def sigma_exponent(n: int, m: float, p: float, eps: float = 0.0) -> float:
    """Profile decay exponent n(n-1)/((m-p+1)n+1) + eps."""
    denom = (m - p + 1) * n + 1
    if denom <= 0:
        raise DegenerateDenominator(f"(m-p+1)n+1 = {denom} <= 0")
    return n * (n - 1) / denom + eps


def convexity_constant(ell: float, eps: float) -> float:
    """C_eps with (x+1)^ell <= (1+eps) x^ell + C_eps for all x >= 0."""
    if ell <= 1:
        raise InvalidExponent(f"need ell > 1, got {ell}")
    if eps <= 0:
        raise InvalidEps(f"need eps > 0, got {eps}")
    # log-space evaluation: (1+eps)^{1/(ell-1)} - 1 underflows at tiny eps
    # and overflows as ell -> 1, but log C stays well scaled
    y = math.log1p(eps) / (ell - 1)
    if y == 0.0:
        return math.inf  # eps denormal; the true constant exceeds float range
    log_root = y if y > 690.0 else math.log(math.expm1(y))
    log_c = math.log1p(eps) - (ell - 1) * log_root
    try:
        return math.exp(log_c)
    except OverflowError:
        return math.inf


def check_blowup_regime(params: ModelParams, dom: DomainSpec,
                        eps0: float = 0.1) -> RegimePrediction:
    """Blow-up verdict: p > q, or p = q with chi*alpha - xi*gamma > 0,
    provided one of C1-C3 holds and kappa sits below its explicit bound.

    A disabled source is the admissible instance lambda = mu = 0 of the
    source law, so it is accepted here with the configured kappa.
    """
    if dom.n < 3:
        return RegimePrediction(Verdict.NO_THEOREM,
                                details="blow-up results require n >= 3")
    if params.m <= 0:
        return RegimePrediction(Verdict.NO_THEOREM, details="blow-up results require m > 0")
    d = params.attraction_minus_repulsion
    if params.p > params.q:
        verdict = Verdict.BLOWUP_THM41
    elif params.p == params.q and d > 0:
        verdict = Verdict.BLOWUP_THM44
    else:
        return RegimePrediction(Verdict.NO_THEOREM,
                                details="neither p > q nor (p = q with chi*alpha-xi*gamma > 0)")
    case = check_condition_case(params.m, params.p, dom.n)
    if case is None:
        return RegimePrediction(Verdict.NO_THEOREM,
                                details=f"none of C1-C3 holds at (m={params.m}, p={params.p}, n={dom.n})")
    bound = kappa_upper_bound(params, dom, case)
    if not params.kappa < bound:
        return RegimePrediction(
            Verdict.NO_THEOREM, condition_case=case, kappa_bound=bound,
            details=f"kappa={params.kappa} >= bound {bound}")
    sigma = sigma_exponent(dom.n, params.m, params.p, eps0)
    return RegimePrediction(verdict, condition_case=case, kappa_bound=bound,
                            sigma_exponent=sigma,
                            details=f"case {case.value}, kappa < {bound}, sigma = {sigma}")


def predict(params: ModelParams, dom: DomainSpec, eps0: float = 0.1) -> RegimePrediction:
    """Combined prediction used by the sweep runner.

    Tries the boundedness predicates on the source-free reading first,
    then the blow-up predicates; NoTheoremApplies when neither fires.
    """
    bounded = check_boundedness_regime(replace(params, source_enabled=False,
                                               lambda0=0.0, mu1=0.0), dom)
    if bounded.verdict is not Verdict.NO_THEOREM and not params.source_enabled:
        return bounded
    blowup = check_blowup_regime(params, dom, eps0)
    if blowup.verdict is not Verdict.NO_THEOREM:
        return blowup
    if bounded.verdict is not Verdict.NO_THEOREM:
        return bounded
    return blowup
