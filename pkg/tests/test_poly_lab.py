from fractions import Fraction
from math import comb, factorial

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from crowdmode.errors import DomainError, PoleError
from crowdmode.exact_core import f_value
from crowdmode.estimator import feq_condition
from crowdmode.polynomial import ExactPolynomial
from crowdmode.poly_lab import (
    band_holds, common_factor, exp_identity, identity_checks, leading_terms_check, quotient_closed_form,
    p_poly, p_value, q_and_r, r_poly, ratio_at, reduced_family, reduced_pair, shifted_sign_checks,
)

X = sp.Symbol("x")


def sympy_p(d):
    """Independent oracle: P_d straight from sympy's falling factorial."""
    return sp.expand(sum(sp.ff(X, i) ** 2 * sp.ff(X, d - i) ** 2 / (sp.factorial(i) * sp.factorial(d - i))
                         for i in range(d + 1)))


def as_sympy(p: ExactPolynomial):
    return sum(sp.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(p.coefficients))


@pytest.mark.parametrize("d", range(0, 9))
def test_p_poly_against_sympy(d):
    assert sp.expand(as_sympy(p_poly(d)) - sympy_p(d)) == 0


@pytest.mark.parametrize("d", range(0, 9))
def test_remainder_against_sympy(d):
    q, r = sp.div(sp.Poly(sympy_p(d + 1), X), sp.Poly(sympy_p(d), X))
    assert sp.expand(as_sympy(q_and_r(d).quotient) - q.as_expr()) == 0
    assert sp.expand(as_sympy(r_poly(d)) - r.as_expr()) == 0


def test_small_cases():
    assert p_poly(0) == ExactPolynomial([1])
    assert p_poly(1) == ExactPolynomial([0, 0, 2])
    assert q_and_r(2).quotient == ExactPolynomial([1, Fraction(-4, 3), Fraction(2, 3)])
    assert r_poly(0).is_zero() and r_poly(1).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.fractions(-5, 12, max_denominator=7))
def test_p_poly_matches_direct_sum(d, t):
    assert p_poly(d)(t) == p_value(d, t)


@pytest.mark.parametrize("d,x,expected", [
    (2, 2, Fraction(-1, 5)),
    (2, 1, Fraction(-1, 3)),
    (3, 2, Fraction(-3, 12)),
])
def test_ratio_values(d, x, expected):
    assert ratio_at(d, x) == expected


def test_ratio_pole_and_domain():
    with pytest.raises(PoleError):
        ratio_at(5, 2)
    with pytest.raises(DomainError):
        ratio_at(-1, 3)


# closed forms of -R_d/P_d after cancelling common factors
def minus_ratio_closed(d, x):
    x = Fraction(x)
    if d in (0, 1):
        return Fraction(0)
    if d == 2:
        return (2 * x - 1) / (3 * (2 * x * x - 2 * x + 1))
    if d == 3:
        return 3 * (x - 1) / (4 * (x * x - x + 1))
    if d == 4:
        return 6 * (2 * x ** 3 - 9 * x ** 2 + 15 * x - 9) / (5 * (2 * x ** 4 - 8 * x ** 3 + 14 * x ** 2 - 15 * x + 9))
    raise ValueError(d)


@pytest.mark.parametrize("d", range(0, 5))
def test_small_d_closed_forms(d):
    for x in range(d // 2 + 1, d + 40):
        assert -ratio_at(d, x) == minus_ratio_closed(d, x)


@pytest.mark.parametrize("x", range(3, 12))
def test_d4_closed_form_decides_the_step(x):
    # the corrected d=4 form reproduces the direct weight comparison
    n = 2 * x - 4
    for s2 in range(n - 1, n + 60):
        direct = f_value((x, s2, x), n) >= f_value((x, s2, x), n - 1)
        assert feq_condition(x, 4, s2) == direct


def test_step_threshold_at_x3_d4():
    # s2 >= 9/5 - 3/10, i.e. 3/2
    assert -ratio_at(4, 3) == Fraction(3, 10)


@pytest.mark.parametrize("d", [2, 5, 8, 13, 21, 40])
def test_leading_terms(d):
    assert leading_terms_check(d)


@pytest.mark.parametrize("d", [0, 1, 7, 50, 200])
def test_exp_identity(d):
    assert exp_identity(d)


@pytest.mark.parametrize("b", [1, 2, 3, 10, 57, 200])
def test_identity_checks(b):
    assert identity_checks(b)


def test_common_factor_and_reduced_pair():
    assert common_factor(1) == ExactPolynomial([1])
    assert common_factor(5) == ExactPolynomial.from_roots([0, 0, 1, 1, 2, 2])
    for d in range(0, 14):
        pt, pt1, rt = reduced_family(d)
        f = common_factor(d)
        assert pt * f == p_poly(d) and rt * f == r_poly(d) and pt1 * f == p_poly(d + 1)
        assert pt1 - quotient_closed_form(d) * pt == rt
    assert reduced_pair(1) == (p_poly(1), r_poly(1))


@settings(max_examples=50, deadline=None)
@given(st.integers(5, 30), st.integers(1, 150))
def test_band_property(d, k):
    x = d // 2 + k
    assert band_holds(d, x)


@pytest.mark.parametrize("d", [5, 6, 9, 12, 17])
def test_shifted_signs(d):
    for t in [Fraction(1, 3), 1, Fraction(7, 2), 10, 100]:
        assert shifted_sign_checks(d, t) == (True, True, True)


def test_feq_matches_direct_comparison():
    for x in range(1, 16):
        for d in range(0, 2 * x):
            n = 2 * x - d
            for s2 in range(max(1, n - 1), n + 50):
                direct = f_value((x, s2, x), n) >= f_value((x, s2, x), n - 1)
                assert feq_condition(x, d, s2) == direct, (x, d, s2)


def test_scaled_integer_polynomial():
    # d! P_d has integer coefficients
    for d in range(0, 15):
        assert all((c * factorial(d)).denominator == 1 for c in p_poly(d).coefficients)
    assert p_poly(2)(3) == sum(Fraction(comb(3, i) ** 2 * comb(3, 2 - i) ** 2 * factorial(i) * factorial(2 - i)) for i in range(3))
