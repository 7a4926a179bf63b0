from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from crowdmode.errors import DomainError, PoleError
from crowdmode.poly_lab import ratio_at
from crowdmode.q_analysis import (
    asymptote_predictions, conj2_evidence, critical_points, derivative_numerator, q_eval,
    q_function, q_limit, q_samples, solve_exact,
)


def q_direct(d, x):
    """Q_d from R_d/P_d, without the reduced pair."""
    return 1 - ratio_at(d, x) / (Fraction(-(d - 2)) / (2 * x + d - 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 14), st.integers(1, 60))
def test_q_matches_ratio_definition(d, k):
    x = Fraction(d, 2) + Fraction(k, 3)
    assert q_eval(d, x) == q_direct(d, x)


@pytest.mark.parametrize("d", [3, 4, 5, 8, 11, 20])
def test_degrees_and_limit(d):
    qf = q_function(d)
    assert qf.numerator.degree == qf.denominator.degree == 2 * (d // 2)
    assert q_limit(d) == Fraction(-2, (d + 1) * (d - 2))


@pytest.mark.parametrize("d", range(5, 30, 2))
def test_odd_special_value(d):
    assert q_eval(d, Fraction(d - 1, 2)) == 1


@pytest.mark.parametrize("d", range(4, 30, 2))
def test_even_special_value(d):
    assert q_eval(d, Fraction(d, 2)) == Fraction(-2, (d + 1) * (d - 2))


def test_known_values():
    assert q_eval(5, 2) == 1
    assert q_eval(6, 3) == Fraction(-1, 14)


def test_domain():
    with pytest.raises(DomainError):
        q_function(2)
    with pytest.raises(DomainError):
        critical_points(4, 10)
    with pytest.raises(DomainError):
        conj2_evidence(4)


def test_pole_and_samples():
    qf = q_function(6)
    den_int, _ = qf.denominator.integer_form
    r = [p for p in sp.Poly(list(reversed(den_int)), sp.Symbol("x")).all_roots() if p.is_rational]
    if r:
        with pytest.raises(PoleError):
            q_eval(6, Fraction(int(r[0].p), int(r[0].q)))
    pts = q_samples(6, [Fraction(k, 2) for k in range(0, 40)])
    assert all(v == q_eval(6, x) for x, v in pts)


@pytest.mark.parametrize("d", [5, 7, 9])
def test_critical_point_count_matches_sympy(d):
    w = derivative_numerator(q_function(d))
    poly = sp.Poly(list(reversed([int(c) for c in w])), sp.Symbol("x"))
    n_pos = len({r for r in sp.real_roots(poly) if r > 0})
    assert critical_points(d, 6).certified_count == n_pos


def test_critical_points_d5():
    rep = critical_points(5, 10)
    assert rep.certified_count == 2
    assert rep.x_max.startswith("0.687469764")
    assert rep.x_min == "10.48133802"
    assert rep.q_at_x_min == "-0.1360199330"


@pytest.mark.parametrize("d", [6, 8, 10])
def test_even_d_has_four_critical_points(d):
    rep = critical_points(d, 8)
    assert rep.certified_count == 4
    assert [p.kind for p in rep.points] == ["max", "min", "max", "min"]


def test_digits_are_certified():
    rep = critical_points(7, 30)
    for p in rep.points:
        assert p.lo <= Fraction(p.x) + Fraction(1, 10 ** 28) and Fraction(p.x) <= p.hi
        assert p.q_lo <= p.q_hi


def test_conj2_exact_case():
    ev = conj2_evidence(7, 10)
    assert ev.value == "-0.0312500000" and ev.below_bound


def test_asymptote_predictions():
    xmx, xmn, qmn = asymptote_predictions(61)
    assert abs(float(xmx) - 10.041394134) < 1e-4
    assert qmn == Fraction(-1, 720)
    with pytest.raises(DomainError):
        asymptote_predictions(6)


def test_solve_exact():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve_exact(a, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]
