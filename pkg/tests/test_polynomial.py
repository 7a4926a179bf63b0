from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from crowdmode.errors import DomainError
from crowdmode.polynomial import ExactPolynomial, format_rational, parse_rational, poly_divide

x = sp.Symbol("x")
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=7).map(ExactPolynomial)


def to_sympy(p: ExactPolynomial):
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(p.coefficients)] or [0], x, domain="QQ")


def test_basic_shapes():
    assert ExactPolynomial([]).degree == -1
    assert ExactPolynomial([1, 0, 0]).degree == 0
    assert ExactPolynomial.x() * ExactPolynomial.x() == ExactPolynomial([0, 0, 1])
    assert ExactPolynomial.from_roots([1, 2])(Fraction(3, 2)) == Fraction(-1, 4)


@settings(max_examples=80, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_division_reconstructs_and_matches_sympy(a, b):
    res = poly_divide(a, b)
    assert res.quotient * b + res.remainder == a
    assert res.remainder.degree < b.degree
    q, r = sp.div(to_sympy(a), to_sympy(b))
    assert to_sympy(res.quotient) == q and to_sympy(res.remainder) == r


@settings(max_examples=60, deadline=None)
@given(polys, polys, rationals)
def test_ring_ops_evaluate_pointwise(a, b, t):
    assert (a * b)(t) == a(t) * b(t)
    assert (a + b)(t) == a(t) + b(t)
    assert (a - b)(t) == a(t) - b(t)


@settings(max_examples=40, deadline=None)
@given(polys)
def test_integer_form_round_trip(p):
    ints, scale = p.integer_form
    assert all(isinstance(c, int) for c in ints)
    assert ExactPolynomial.from_integers(ints, 1) / scale == p if not p.is_zero() else True
    assert ExactPolynomial.from_strings(p.to_strings()) == p


def test_divide_by_zero_polynomial():
    with pytest.raises(DomainError):
        poly_divide(ExactPolynomial([1]), ExactPolynomial([]))


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-7/21", Fraction(-1, 3)), ("0/5", Fraction(0))])
def test_rational_strings(text, value):
    assert parse_rational(text) == value
    assert parse_rational(format_rational(value)) == value
