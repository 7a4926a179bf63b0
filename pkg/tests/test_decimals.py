from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from crowdmode.decimals import fixed, rounded, significant, sqrt_interval, truncate
from crowdmode.errors import PrecisionError


@given(st.integers(0, 10 ** 30), st.integers(0, 30))
def test_sqrt_interval_brackets(n, g):
    lo, hi = sqrt_interval(n, g)
    assert lo * lo <= n <= hi * hi
    assert hi - lo <= Fraction(1, 10 ** g)
    if isqrt(n) ** 2 == n:
        assert lo == hi == isqrt(n)


@pytest.mark.parametrize("v,places,t,r", [
    (Fraction(2, 3), 3, "0.666", "0.667"),
    (Fraction(-2, 3), 3, "-0.666", "-0.667"),
    (Fraction(1, 8), 2, "0.12", "0.13"),
    (Fraction(5), 0, "5", "5"),
    (Fraction(-1, 1000), 2, "0.00", "0.00"),
])
def test_fixed_and_rounded(v, places, t, r):
    assert fixed(v, places) == t
    assert rounded(v, places) == r


def test_truncate_needs_agreement():
    assert truncate(Fraction(1234, 1000), Fraction(1235, 1000), 2) == "1.23"
    with pytest.raises(PrecisionError):
        truncate(Fraction(1229, 1000), Fraction(1231, 1000), 2)


@pytest.mark.parametrize("lo,hi,digits,out", [
    (Fraction(150507521), Fraction(150507521), 4, "150507521"),
    (Fraction(1505075219, 10 ** 7), Fraction(15050752195, 10 ** 8), 10, "150.5075219"),
    (Fraction(-6867535, 10 ** 9), Fraction(-6867534, 10 ** 9), 5, "-0.0068675"),
    (Fraction(-1, 10), Fraction(1, 10), 3, None),
])
def test_significant(lo, hi, digits, out):
    assert significant(lo, hi, digits) == out
