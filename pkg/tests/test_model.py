import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archemo import (ConditionCase, DomainSpec, ModelParams, Verdict,
                     check_blowup_regime, check_boundedness_regime,
                     check_condition_case, convexity_constant,
                     kappa_upper_bound, predict, sigma_exponent,
                     validate_params)
from archemo.errors import (DegenerateDenominator, InvalidDimension,
                            InvalidEps, InvalidExponent, InvalidKappa,
                            NonPositiveCoefficient)

DOM3 = DomainSpec(n=3, R=1.0)


def test_validate_canonical():
    p = ModelParams(m=1, p=2, q=2)
    validate_params(p, DOM3)


def test_validate_zero_chi():
    with pytest.raises(NonPositiveCoefficient) as exc:
        validate_params(ModelParams(chi=0.0), DOM3)
    assert "chi" in str(exc.value)


def test_validate_bad_kappa():
    with pytest.raises(InvalidKappa):
        validate_params(ModelParams(source_enabled=True, kappa=0.5,
                                    lambda0=1.0, mu1=1.0), DOM3)


def test_validate_bad_dimension():
    with pytest.raises(InvalidDimension):
        validate_params(ModelParams(), DomainSpec(n=0, R=1.0))


def test_boundedness_regime():
    assert check_boundedness_regime(
        ModelParams(p=2, q=2.5), DOM3).verdict is Verdict.BOUNDED_THM31
    assert check_boundedness_regime(
        ModelParams(p=2, q=2, chi=1, alpha=1, xi=1, gamma=2),
        DOM3).verdict is Verdict.BOUNDED_THM33
    assert check_boundedness_regime(
        ModelParams(p=2.5, q=2), DOM3).verdict is Verdict.NO_THEOREM
    # tie chi*alpha = xi*gamma is outside both statements
    assert check_boundedness_regime(
        ModelParams(p=2, q=2), DOM3).verdict is Verdict.NO_THEOREM


def test_condition_cases():
    assert check_condition_case(1, 2, 3) is ConditionCase.C1
    assert check_condition_case(1, 1, 3) is None
    assert check_condition_case(1, 1.9, 5) is ConditionCase.C2


def test_kappa_bounds():
    p1 = ModelParams(m=1, p=2, a=0)
    assert kappa_upper_bound(p1, DOM3, ConditionCase.C1) == pytest.approx(
        7 / 6, rel=1e-12)
    p2 = ModelParams(m=1, p=2, a=6)
    assert kappa_upper_bound(p2, DOM3, ConditionCase.C1) == pytest.approx(
        13 / 6, rel=1e-12)
    p3 = ModelParams(m=1, p=1.9, a=0)
    assert kappa_upper_bound(p3, DomainSpec(n=5, R=1.0),
                             ConditionCase.C2) == pytest.approx(1.125, rel=1e-12)


def test_sigma_exponent():
    assert sigma_exponent(3, 1, 2, 0.1) == pytest.approx(6.1, rel=1e-12)
    assert sigma_exponent(4, 1, 2, 0.0) == pytest.approx(12.0, rel=1e-12)
    assert sigma_exponent(3, 2, 2, 0.0) == pytest.approx(1.5, rel=1e-12)
    with pytest.raises(DegenerateDenominator):
        sigma_exponent(3, 1, 3, 0.0)


def test_convexity_constant_values():
    assert convexity_constant(2, 1) == pytest.approx(2.0, rel=1e-12)
    assert convexity_constant(3, 1) == pytest.approx(6 + 4 * math.sqrt(2),
                                                     rel=1e-12)
    with pytest.raises(InvalidExponent):
        convexity_constant(1.0, 1.0)
    with pytest.raises(InvalidEps):
        convexity_constant(2.0, 0.0)


@settings(max_examples=10000, deadline=None)
@given(ell=st.floats(min_value=1.0, max_value=6.0, exclude_min=True),
       eps=st.floats(min_value=0.0, max_value=10.0, exclude_min=True),
       x=st.floats(min_value=0.0, max_value=100.0))
def test_convexity_bound_property(ell, eps, x):
    c = convexity_constant(ell, eps)
    lhs = (x + 1.0) ** ell
    rhs = (1.0 + eps) * x ** ell + c
    assert lhs <= rhs * (1 + 1e-12) + 1e-300


@settings(max_examples=500, deadline=None)
@given(m=st.floats(min_value=1.0, max_value=4.0),
       p=st.floats(min_value=0.1, max_value=4.0),
       n=st.integers(min_value=3, max_value=9))
def test_condition_case_unique(m, p, n):
    # the helper returns at most one case; re-run to confirm determinism
    case = check_condition_case(m, p, n)
    assert check_condition_case(m, p, n) is case


@settings(max_examples=500, deadline=None)
@given(m=st.floats(min_value=1.0, max_value=4.0),
       d=st.floats(min_value=0.0, max_value=1.0 / 3.0, exclude_max=True),
       n=st.integers(min_value=3, max_value=9))
def test_sigma_above_dimension(m, d, n):
    # m - p in (-1 - 1/n, -2/n] ensures sigma > n - 1 at eps = 0
    mp = -2.0 / n - d * (1.0 - 1.0 / n)
    sigma = sigma_exponent(n, m, m - mp, 0.0)
    assert sigma > n - 1 - 1e-9


def test_blowup_regime_examples():
    pred = check_blowup_regime(
        ModelParams(m=1, p=2, q=1.5, a=0, kappa=1, lambda0=0, mu1=0), DOM3)
    assert pred.verdict is Verdict.BLOWUP_THM41
    assert pred.condition_case is ConditionCase.C1
    assert pred.kappa_bound == pytest.approx(7 / 6, rel=1e-12)

    pred44 = check_blowup_regime(
        ModelParams(m=1, p=2, q=2, chi=1.5, alpha=1, xi=1, gamma=1, kappa=1),
        DOM3)
    assert pred44.verdict is Verdict.BLOWUP_THM44

    over = check_blowup_regime(
        ModelParams(m=1, p=2, q=1.5, kappa=1.2, source_enabled=True,
                    lambda0=1, mu1=1), DOM3)
    assert over.verdict is Verdict.NO_THEOREM


@settings(max_examples=500, deadline=None)
@given(p=st.floats(min_value=0.5, max_value=3.5),
       q=st.floats(min_value=0.5, max_value=3.5),
       chi=st.floats(min_value=0.1, max_value=3.0),
       gamma=st.floats(min_value=0.1, max_value=3.0))
def test_verdicts_mutually_exclusive(p, q, chi, gamma):
    params = ModelParams(m=1, p=p, q=q, chi=chi, gamma=gamma, kappa=1)
    b = check_boundedness_regime(params, DOM3).verdict
    u = check_blowup_regime(params, DOM3).verdict
    bounded = b in (Verdict.BOUNDED_THM31, Verdict.BOUNDED_THM33)
    blowup = u in (Verdict.BLOWUP_THM41, Verdict.BLOWUP_THM44)
    assert not (bounded and blowup)


def test_predict_prefers_applicable_theorem():
    assert predict(ModelParams(p=2, q=2.5), DOM3).verdict is Verdict.BOUNDED_THM31
    assert predict(ModelParams(m=1, p=2, q=2, chi=1.5), DOM3).verdict \
        is Verdict.BLOWUP_THM44
