"""Certified decimal output from exact rational enclosures.

A value known only to lie in ``[lo, hi]`` is printed with the digits that
every point of the interval shares, truncated toward zero.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import PrecisionError


def sqrt_interval(n, guard_digits: int) -> tuple[Fraction, Fraction]:
    """Rational bounds lo <= sqrt(n) <= hi of width 10^-guard_digits.

    ``n`` may be a nonnegative int or Fraction.
    """
    n = Fraction(n)
    scale = 10 ** guard_digits
    # sqrt(p/q) = sqrt(p q) / q
    p, q = n.numerator, n.denominator
    r = isqrt(p * q * scale * scale)
    lo = Fraction(r, q * scale)
    hi = lo if r * r == p * q * scale * scale else Fraction(r + 1, q * scale)
    return lo, hi


def _trunc_fixed(x: Fraction, places: int) -> tuple[int, int]:
    """(sign, |x| * 10^places truncated)."""
    sign = -1 if x < 0 else 1
    a = abs(x) * 10 ** places
    return sign, a.numerator // a.denominator


def fixed(x: Fraction, places: int) -> str:
    """Truncate an exact rational to ``places`` decimals."""
    sign, m = _trunc_fixed(Fraction(x), places)
    s = str(m).rjust(places + 1, "0")
    body = s[:-places] + "." + s[-places:] if places else s
    return ("-" if sign < 0 and m else "") + body


def rounded(x: Fraction, places: int) -> str:
    """Round half away from zero to ``places`` decimals."""
    x = Fraction(x)
    a = abs(x) * 10 ** places
    m = (2 * a.numerator + a.denominator) // (2 * a.denominator)
    s = str(m).rjust(places + 1, "0")
    body = s[:-places] + "." + s[-places:] if places else s
    return ("-" if x < 0 and m else "") + body


def truncate(lo: Fraction, hi: Fraction, places: int) -> str:
    """Fixed-point digits shared by every number in [lo, hi].

    Raises PrecisionError when the interval straddles a digit boundary.
    """
    a, b = fixed(lo, places), fixed(hi, places)
    if a != b:
        raise PrecisionError(f"enclosure [{float(lo)}, {float(hi)}] too wide for {places} places")
    return a


def _sig_places(x: Fraction, digits: int) -> int:
    """Decimal places that give ``digits`` significant digits for |x|."""
    a = abs(Fraction(x))
    if a == 0:
        return digits
    # 10^(e-1) <= a < 10^e
    e = len(str(a.numerator // a.denominator)) if a >= 1 else 0
    if a < 1:
        t = a
        while t < Fraction(1, 10):
            t *= 10
            e -= 1
    return max(digits - e, 0)


def significant(lo: Fraction, hi: Fraction, digits: int) -> str | None:
    """``digits`` significant digits common to all of [lo, hi], or None."""
    if (lo < 0) != (hi < 0) and lo != 0 and hi != 0:
        return None
    places = max(_sig_places(lo, digits), _sig_places(hi, digits))
    a, b = fixed(lo, places), fixed(hi, places)
    return a if a == b else None
