"""Exact real-root counting, isolation and refinement for integer polynomials.

Polynomials are sequences of Python ints in ascending degree order.  Sturm
chains are built with sign-preserving primitive pseudo-remainders so every
sign evaluation is exact; refinement is plain bisection on dyadic rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import gmpy2
from gmpy2 import mpz

from .errors import PrecisionError


def trim(p: Sequence[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def content(p: Sequence[int]) -> int:
    g = mpz(0)
    for c in p:
        g = gmpy2.gcd(g, c)
        if g == 1:
            break
    return g


def primitive(p: Sequence[int]) -> list[int]:
    """Divide out the (positive) content; signs are unchanged."""
    g = content(p)
    return [c // g for c in p] if g > 1 else list(p)


def derivative(p: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(p) if i]


def sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(p: Sequence[int], x) -> int:
    """Exact sign of p(x) for rational x."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return sign(acc)


def sign_at_infinity(p: Sequence[int]) -> int:
    return sign(p[-1]) if p else 0


def positive_prem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Remainder of |lc(b)|^k * a modulo b, k = deg a - deg b + 1 exactly."""
    r = list(a)
    n = len(b) - 1
    lc = b[-1]
    alc, slc = abs(lc), sign(lc)
    steps = len(a) - n
    while len(r) - 1 >= n and r:
        top = r[-1]
        k = len(r) - 1 - n
        r = [alc * c for c in r]
        f = top * slc
        for j, bj in enumerate(b):
            r[k + j] -= f * bj
        r.pop()
        r = trim(r)
        steps -= 1
    if steps > 0 and r:
        m = alc ** steps
        r = [m * c for c in r]
    return r


def sturm_chain(p: Sequence[int]) -> list[list[int]]:
    """Sturm chain p, p', -rem, ... with every element made primitive.

    Arithmetic runs on GMP integers; the primitive parts keep coefficient
    growth far below the subresultant bound for the degrees used here.
    """
    p = primitive([mpz(c) for c in trim(p)])
    chain = [p, primitive(derivative(p))]
    while len(chain[-1]) > 1:
        r = positive_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(primitive([-c for c in r]))
    return chain


def _variations(signs) -> int:
    last = 0
    v = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def variations_at(chain, x) -> int:
    return _variations(sign_at(q, x) for q in chain)


def variations_at_infinity(chain) -> int:
    return _variations(sign_at_infinity(q) for q in chain)


def count_roots(chain, lo, hi=None) -> int:
    """Distinct roots in (lo, hi]; ``hi=None`` means +infinity.

    Endpoints must not be multiple roots of chain[0].
    """
    v_hi = variations_at_infinity(chain) if hi is None else variations_at(chain, hi)
    return variations_at(chain, lo) - v_hi


def exact_quotient(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """a / b over Q, scaled back to a primitive integer polynomial.

    Assumes b divides a exactly (the remainder is checked).
    """
    rem = [Fraction(int(c)) for c in a]
    b = [int(c) for c in b]
    n = len(b) - 1
    q = [Fraction(0)] * (len(a) - n)
    for k in range(len(a) - 1 - n, -1, -1):
        c = rem[k + n] / b[-1]
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    if any(rem[:n]):
        raise ArithmeticError("exact_quotient: divisor does not divide")
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    out = [int(c * den) for c in q]
    # keep the sign of a/b with a positive scaling
    return primitive(out)


def squarefree_part(p: Sequence[int], chain=None) -> list[int]:
    chain = chain if chain is not None else sturm_chain(p)
    g = chain[-1]
    if len(g) <= 1:
        return primitive(trim(p))
    q = exact_quotient(primitive(trim(p)), g)
    # orientation: match p's sign at +infinity
    if sign_at_infinity(q) * sign_at_infinity(g) != sign_at_infinity(trim(p)):
        q = [-c for c in q]
    return q


def positive_root_bound(p: Sequence[int]) -> Fraction:
    """Power of two exceeding every root's absolute value.

    Fujiwara: |z| <= 2 max_k |a_{n-k}/a_n|^(1/k).  Take the least e with
    |a_n| 2^(e k) >= |a_{n-k}| for every k; then 2^(e+1) is a bound.
    """
    p = trim(p)
    n = len(p) - 1
    lead = abs(p[-1])
    e = 0
    for k in range(1, n + 1):
        c = abs(p[n - k])
        if not c:
            continue
        # smallest e_k with lead * 2^(e_k k) >= c
        ek = max(0, (c.bit_length() - lead.bit_length() + 1 + k - 1) // k)
        while ek > 0 and lead << ((ek - 1) * k) >= c:
            ek -= 1
        while lead << (ek * k) < c:
            ek += 1
        e = max(e, ek)
    return Fraction(2 ** (e + 1))


@dataclass(frozen=True)
class RootBracket:
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def strip_zero_roots(p: Sequence[int]) -> list[int]:
    """Divide out the largest power of x dividing p."""
    p = trim(p)
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return p[k:]


def _split_point(p, lo: Fraction, hi: Fraction) -> Fraction:
    """A point strictly inside (lo, hi) where p does not vanish."""
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7)):
        mid = lo + (hi - lo) * num / den
        if sign_at(p, mid):
            return mid
    raise PrecisionError("could not find a nonvanishing split point")


def isolate_positive_roots(p: Sequence[int], chain=None) -> list[RootBracket]:
    """Disjoint brackets (lo, hi], one per distinct root in (0, infinity)."""
    p = strip_zero_roots(p)
    chain = chain if chain is not None else sturm_chain(p)
    upper = positive_root_bound(p)
    out: list[RootBracket] = []
    stack = [(Fraction(0), upper, count_roots(chain, 0, upper))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RootBracket(lo, hi))
            continue
        mid = _split_point(chain[0], lo, hi)
        left = count_roots(chain, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda r: r.lo)
    return out


def refine(p: Sequence[int], bracket: RootBracket, width: Fraction, max_steps: int = 100000) -> RootBracket:
    """Bisect a sign-changing bracket of a squarefree p down to ``width``.

    The bracket (lo, hi] must contain exactly one root with p(lo) != 0.
    """
    lo, hi = bracket.lo, bracket.hi
    if lo == hi:
        return bracket
    s_lo = sign_at(p, lo)
    s_hi = sign_at(p, hi)
    if s_hi == 0:
        return RootBracket(hi, hi)
    if s_lo == 0 or s_lo == s_hi:
        raise PrecisionError(f"no sign change on [{lo}, {hi}]")
    steps = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return RootBracket(mid, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
        steps += 1
        if steps > max_steps:
            raise PrecisionError("bisection did not converge")
    return RootBracket(lo, hi)


def enclose_value(p: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval [min, max] bound for p on [lo, hi] with 0 <= lo <= hi.

    Splits p into its positive and negative coefficient parts, each
    nondecreasing for x >= 0.
    """
    if lo < 0:
        raise ValueError("enclose_value needs a nonnegative interval")
    pos = [max(c, 0) for c in p]
    neg = [max(-c, 0) for c in p]

    def ev(q, x):
        acc = Fraction(0)
        for c in reversed(q):
            acc = acc * x + c
        return acc

    if lo == hi:
        v = ev(p, lo)
        return v, v
    return ev(pos, lo) - ev(neg, hi), ev(pos, hi) - ev(neg, lo)
