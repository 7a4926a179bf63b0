from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from crowdmode import roots
from crowdmode.errors import PrecisionError

x = sp.Symbol("x")
small_ints = st.integers(-6, 6)


def from_roots(rs, extra):
    """Integer polynomial with the given integer roots times an arbitrary factor."""
    p = sp.Poly(sp.prod([x - r for r in rs]) * sp.Poly(extra, x).as_expr(), x)
    return p, [int(c) for c in reversed(p.all_coeffs())]


@settings(max_examples=120, deadline=None)
@given(st.lists(small_ints, max_size=6), st.lists(st.integers(-9, 9), min_size=1, max_size=4).filter(lambda c: c[0] != 0))
def test_sturm_counts_match_sympy(rs, extra):
    p, c = from_roots(rs, extra)
    if p.degree() < 1:
        return
    chain = roots.sturm_chain(c)
    # endpoints chosen off the integer and small-denominator grid
    for lo, hi in [(Fraction(-31, 10), Fraction(21, 10)), (Fraction(-1, 997), None), (Fraction(-101, 10), Fraction(103, 10))]:
        want = p.count_roots(sp.Rational(lo.numerator, lo.denominator),
                             sp.oo if hi is None else sp.Rational(hi.numerator, hi.denominator))
        assert roots.count_roots(chain, lo, hi) == want


@settings(max_examples=80, deadline=None)
@given(st.lists(small_ints, max_size=6), st.lists(st.integers(-9, 9), min_size=1, max_size=4).filter(lambda c: c[0] != 0))
def test_isolation_and_refinement(rs, extra):
    p, c = from_roots(rs, extra)
    if p.degree() < 1:
        return
    chain = roots.sturm_chain(roots.strip_zero_roots(c))
    brackets = roots.isolate_positive_roots(c)
    true_roots = sorted(float(r) for r in sp.real_roots(p) if r > 0)
    distinct = sorted(set(round(r, 9) for r in true_roots))
    assert len(brackets) == len(distinct)
    sqf = roots.squarefree_part(roots.strip_zero_roots(c), chain)
    for br, r in zip(brackets, distinct):
        fine = roots.refine(sqf, br, Fraction(1, 10 ** 12))
        assert fine.lo - Fraction(1, 10 ** 9) <= Fraction(r) <= fine.hi + Fraction(1, 10 ** 9)
        assert fine.width <= Fraction(1, 10 ** 12)


def test_known_quadratic():
    # x^2 - 2: one positive root, refined around sqrt 2
    br = roots.isolate_positive_roots([-2, 0, 1])
    assert len(br) == 1
    fine = roots.refine([-2, 0, 1], br[0], Fraction(1, 2 ** 40))
    assert fine.lo ** 2 < 2 < fine.hi ** 2


def test_refine_rejects_no_sign_change():
    with pytest.raises(PrecisionError):
        roots.refine([1, 0, 1], roots.RootBracket(Fraction(0), Fraction(1)), Fraction(1, 100))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8),
       st.fractions(0, 5, max_denominator=20), st.fractions(0, 1, max_denominator=20))
def test_enclosure_contains_values(c, lo, w):
    hi = lo + w
    a, b = roots.enclose_value(c, lo, hi)
    for t in (lo, hi, (lo + hi) / 2):
        v = sum(ci * t ** i for i, ci in enumerate(c))
        assert a <= v <= b


@pytest.mark.parametrize("c", [[-2, 0, 1], [6, -5, 1], [-1000, 0, 0, 1], [1, 1]])
def test_root_bound(c):
    b = roots.positive_root_bound(c)
    for r in sp.Poly(list(reversed(c)), x).all_roots():
        assert abs(complex(r)) < b
