"""The polynomial family P_d and its successive-quotient remainders.

    P_d(x) = sum_{i=0}^{d} (x_i)^2 (x_{d-i})^2 / (i! (d-i)!)

where x_i is the falling factorial.  Dividing P_{d+1} by P_d leaves the
quadratic quotient

    q_d(x) = 2/(d+1) x^2 - 2d/(d+1) x + d/2

and a remainder R_d of degree < 2d.  For integer x the argmax step test
reads f(2x-d) >= f(2x-d-1) iff s2 >= 2(x^2+x)/(d+1) - (d+2)/2 + R_d(x)/P_d(x),
and R_d/P_d stays inside (-1/2, 0) once d >= 5 and x > d/2.

P_d and P_{d+1} share the factor prod_{i<b+eps} (x-i)^2 where d = 2b + eps;
:func:`reduced_pair` strips it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import DomainError, InvariantError, PoleError
from .exact_core import falling
from .polynomial import DivisionResult, ExactPolynomial, poly_divide


@lru_cache(maxsize=None)
def _falling_ints(i: int, shift: int = 0) -> tuple[int, ...]:
    """Integer coefficients of (x+shift)_i = (x+shift)(x+shift-1)..., ascending."""
    coeffs = [1]
    for t in range(i):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] += (shift - t) * c
        coeffs = nxt
    return tuple(coeffs)


def _mul_ints(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


@lru_cache(maxsize=None)
def _falling_sq_ints(i: int, shift: int = 0) -> tuple[int, ...]:
    f = _falling_ints(i, shift)
    return tuple(_mul_ints(f, f))


def scaled_p_ints(d: int, shift: int = 0) -> list[int]:
    """Integer coefficients of d! * P_{shift,d}(x).

    With shift = 0 this is d! P_d(x); otherwise the first falling factorial
    is taken at x + shift (the s1 != s3 family).
    """
    out = [0] * (2 * d + 1)
    if shift == 0:
        # term i and term d-i coincide
        for i in range((d + 1) // 2 + (d % 2 == 0)):
            w = comb(d, i) * (1 if 2 * i == d else 2)
            for k, c in enumerate(_mul_ints(_falling_sq_ints(i), _falling_sq_ints(d - i))):
                out[k] += w * c
        return out
    for j in range(d + 1):
        left = _falling_sq_ints(j, shift)
        for k, c in enumerate(_mul_ints(left, _falling_sq_ints(d - j))):
            out[k] += comb(d, j) * c
    return out


@lru_cache(maxsize=None)
def p_poly(d: int) -> ExactPolynomial:
    if d < 0:
        raise DomainError(f"p_poly needs d >= 0, got {d}")
    return ExactPolynomial.from_integers(scaled_p_ints(d), factorial(d))


def p_value(d: int, x) -> Fraction:
    """P_d(x) straight from the defining sum (independent of :func:`p_poly`)."""
    x = Fraction(x)
    return sum(
        (Fraction(falling(x, i) ** 2 * falling(x, d - i) ** 2, factorial(i) * factorial(d - i))
         for i in range(d + 1)),
        Fraction(0),
    )


def quotient_closed_form(d: int) -> ExactPolynomial:
    """Closed-form quotient 2/(d+1) x^2 - 2d/(d+1) x + d/2."""
    return ExactPolynomial([Fraction(d, 2), Fraction(-2 * d, d + 1), Fraction(2, d + 1)])


@lru_cache(maxsize=None)
def q_and_r(d: int) -> DivisionResult:
    """Divide P_{d+1} by P_d; the quotient must be :func:`quotient_closed_form`."""
    if d < 0:
        raise DomainError(f"q_and_r needs d >= 0, got {d}")
    res = poly_divide(p_poly(d + 1), p_poly(d))
    if res.quotient != quotient_closed_form(d):
        raise InvariantError(f"quotient of P_{d + 1} / P_{d} is {res.quotient}, not the closed form")
    if not res.remainder.degree < 2 * d:
        raise InvariantError(f"deg R_{d} = {res.remainder.degree} >= {2 * d}")
    return res


def r_poly(d: int) -> ExactPolynomial:
    return q_and_r(d).remainder


def common_factor(d: int) -> ExactPolynomial:
    """prod_{i=0}^{b-1+eps} (x-i)^2 for d = 2b + eps; 1 when d < 2."""
    if d < 2:
        return ExactPolynomial([1])
    b, eps = divmod(d, 2)
    roots = [i for i in range(b + eps) for _ in (0, 1)]
    return ExactPolynomial.from_roots(roots)


def _exact_quotient(p: ExactPolynomial, f: ExactPolynomial, what: str) -> ExactPolynomial:
    res = poly_divide(p, f)
    if not res.remainder.is_zero():
        raise InvariantError(f"common factor does not divide {what}")
    return res.quotient


@lru_cache(maxsize=None)
def reduced_family(d: int) -> tuple[ExactPolynomial, ExactPolynomial, ExactPolynomial]:
    """(P~_d, P~_{d+1}, R~_d): all three divided by the same common factor."""
    if d < 0:
        raise DomainError(f"reduced_family needs d >= 0, got {d}")
    f = common_factor(d)
    pt = _exact_quotient(p_poly(d), f, f"P_{d}")
    pt1 = _exact_quotient(p_poly(d + 1), f, f"P_{d + 1}")
    rt = _exact_quotient(r_poly(d), f, f"R_{d}")
    if pt1 - quotient_closed_form(d) * pt != rt:
        raise InvariantError(f"reduced remainder mismatch at d={d}")
    _check_same_ratio(d, pt, rt)
    return pt, pt1, rt


def _check_same_ratio(d: int, pt: ExactPolynomial, rt: ExactPolynomial) -> None:
    """R~/P~ == R/P by cross-multiplication at enough integer points."""
    p, r = p_poly(d), r_poly(d)
    n_points = max(p.degree + rt.degree, pt.degree + r.degree, 0) + 1
    # P_d > 0 at integers x >= d, so these points avoid every pole
    for x in range(d + 1, d + 1 + n_points):
        if rt(x) * p(x) != r(x) * pt(x):
            raise InvariantError(f"R~/P~ differs from R/P at x={x}, d={d}")


def reduced_pair(d: int) -> tuple[ExactPolynomial, ExactPolynomial]:
    pt, _, rt = reduced_family(d)
    return pt, rt


@lru_cache(maxsize=65536)
def _ratio_cached(d: int, x: Fraction) -> Fraction:
    den = p_poly(d)(x)
    if den == 0:
        raise PoleError(f"P_{d}({x}) = 0")
    return r_poly(d)(x) / den


def ratio_at(d: int, x) -> Fraction:
    """R_d(x) / P_d(x), exactly."""
    if d < 0:
        raise DomainError(f"ratio_at needs d >= 0, got {d}")
    return _ratio_cached(d, Fraction(x))


def leading_coefficients_closed_form(d: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of x^{2d}, x^{2d-1}, x^{2d-2} predicted for P_d (d >= 2)."""
    if d < 2:
        raise DomainError(f"closed form needs d >= 2, got {d}")
    f = factorial(d - 2)
    c0 = Fraction(2 ** d, factorial(d))
    c1 = -Fraction(2 ** (d - 1), f)
    c2 = Fraction(2 ** d * (3 * d * d - 5 * d + 4), 8 * 3 * f)
    return c0, c1, c2


def leading_terms_check(d: int) -> bool:
    p = p_poly(d)
    got = (p.coefficient(2 * d), p.coefficient(2 * d - 1), p.coefficient(2 * d - 2))
    return p.degree == 2 * d and got == leading_coefficients_closed_form(d)


def exp_identity(d: int) -> bool:
    """sum_i 1/(i!(d-i)!) == 2^d/d! (both are [t^d] e^{2t})."""
    lhs = sum((Fraction(1, factorial(i) * factorial(d - i)) for i in range(d + 1)), Fraction(0))
    return lhs == Fraction(2 ** d, factorial(d))


def identity_sums(b: int) -> tuple[int, int]:
    """The two binomial sums that make the F_i telescoping close up.

    Odd d = 2b+1:  sum_{i<b} C(2b+1,i)(2(b-i)^2 + b - 2i) - b C(2b+1,b)
    Even d = 2b:   sum_{i<b} C(2b,i)(2(b-i)^2 - b)       - b C(2b-1,b-1)
    """
    odd = sum(comb(2 * b + 1, i) * (2 * (b - i) ** 2 + b - 2 * i) for i in range(b)) - b * comb(2 * b + 1, b)
    even = sum(comb(2 * b, i) * (2 * (b - i) ** 2 - b) for i in range(b)) - b * comb(2 * b - 1, b - 1)
    return odd, even


def identity_checks(b: int) -> bool:
    if b < 1:
        raise DomainError(f"identity_checks needs b >= 1, got {b}")
    return identity_sums(b) == (0, 0)


def band_holds(d: int, x) -> bool:
    """-1/2 < R_d(x)/P_d(x) < 0."""
    r = ratio_at(d, x)
    return Fraction(-1, 2) < r < 0


def shifted_sign_checks(d: int, t) -> tuple[bool, bool, bool]:
    """Signs behind the band, in the shifted variable x = t + b (t > 0).

    Returns (P~(t+b) > 0, R~(t+b) < 0, R~(t+b) + P~(t+b)/2 > 0).
    """
    b = d // 2
    pt, rt = reduced_pair(d)
    x = Fraction(t) + b
    pv, rv = pt(x), rt(x)
    return pv > 0, rv < 0, rv + pv / 2 > 0
