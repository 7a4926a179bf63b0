"""Dense univariate polynomials over the rationals.

Coefficients are stored as a tuple of :class:`fractions.Fraction` in
ascending degree order, always trimmed so the leading coefficient is
nonzero.  The zero polynomial has an empty coefficient tuple and degree -1.

Root finding works on integer polynomials (see :mod:`crowdmode.roots`), so
:meth:`ExactPolynomial.integer_form` exposes a primitive integer multiple.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DomainError


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal such as ``"2.5"``."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class ExactPolynomial:
    def __init__(self, coefficients: Iterable = ()):
        self.coefficients = _trim([Fraction(c) for c in coefficients])

    # construction helpers
    @classmethod
    def constant(cls, c) -> "ExactPolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "ExactPolynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "ExactPolynomial":
        """Monic product of ``(x - r)`` over ``roots``."""
        coeffs = [1]
        for r in roots:
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            coeffs = nxt
        return cls(coeffs)

    @classmethod
    def from_integers(cls, coeffs: Sequence[int], denominator: int = 1) -> "ExactPolynomial":
        return cls(Fraction(c, denominator) for c in coeffs)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    @cached_property
    def integer_form(self) -> tuple[tuple[int, ...], Fraction]:
        """``(ints, scale)`` with ``self == ints / scale`` and ``scale > 0``.

        ``ints`` is primitive (content 1) with the same sign as ``self``.
        """
        if not self.coefficients:
            return (), Fraction(1)
        den = lcm(*(c.denominator for c in self.coefficients))
        ints = [c.numerator * (den // c.denominator) for c in self.coefficients]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return tuple(v // g for v in ints), Fraction(den, g)

    # arithmetic
    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __neg__(self):
        return ExactPolynomial(-c for c in self.coefficients)

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPolynomial(c * other for c in self.coefficients)
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial()
        # multiply integer forms, rescale once
        a, sa = self.integer_form
        b, sb = other.integer_form
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        scale = Fraction(sa) * Fraction(sb)
        return ExactPolynomial(Fraction(v) / scale for v in out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero scalar")
            return ExactPolynomial(c / other for c in self.coefficients)
        return NotImplemented

    def __divmod__(self, other):
        res = poly_divide(self, _coerce(other))
        return res.quotient, res.remainder

    def __pow__(self, n: int):
        out = ExactPolynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # calculus / evaluation
    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def __call__(self, x) -> Fraction:
        """Exact evaluation at an integer or rational point."""
        x = Fraction(x)
        ints, scale = self.integer_form
        if not ints:
            return Fraction(0)
        p, q = x.numerator, x.denominator
        # homogeneous Horner: sum a_i p^i q^(n-i)
        acc = 0
        qpow = 1
        for c in reversed(ints):
            acc = acc * p + c * qpow
            qpow *= q
        n = len(ints) - 1
        return Fraction(acc, q ** n) / scale

    def shift(self, h) -> "ExactPolynomial":
        """The polynomial ``x -> self(x + h)``."""
        h = Fraction(h)
        coeffs = list(self.coefficients)
        n = len(coeffs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] += h * coeffs[j + 1]
        return ExactPolynomial(coeffs)

    # io
    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "ExactPolynomial":
        return cls(parse_rational(s) for s in items)

    def __repr__(self):
        if not self.coefficients:
            return "ExactPolynomial(0)"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "ExactPolynomial(" + " + ".join(terms) + ")"


def _coerce(value) -> ExactPolynomial:
    if isinstance(value, ExactPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactPolynomial([value])
    raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")


@dataclass(frozen=True)
class DivisionResult:
    quotient: ExactPolynomial
    remainder: ExactPolynomial


def poly_divide(dividend: ExactPolynomial, divisor: ExactPolynomial) -> DivisionResult:
    """Euclidean division over Q; ``dividend = quotient*divisor + remainder``."""
    if divisor.is_zero():
        raise DomainError("division by the zero polynomial")
    # work on integer numerators with exact rational scalars at the end
    num, snum = dividend.integer_form
    den, sden = divisor.integer_form
    rem = [Fraction(c) for c in num]
    lead = den[-1]
    m = len(den) - 1
    if len(rem) - 1 < m:
        return DivisionResult(ExactPolynomial(), dividend)
    quot = [Fraction(0)] * (len(rem) - m)
    for k in range(len(rem) - 1 - m, -1, -1):
        c = rem[k + m] / lead
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                rem[k + j] -= c * dj
    # dividend = num/snum, divisor = den/sden
    qscale = Fraction(sden) / Fraction(snum)
    quotient = ExactPolynomial(c * qscale for c in quot)
    remainder = ExactPolynomial(c / snum for c in rem[:m])
    return DivisionResult(quotient, remainder)
