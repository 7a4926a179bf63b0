"""Normalized remainder ratio Q_d and its extrema.

For d >= 3 the remainder ratio is compared with the approximation
-(d-2)/(2x+d-2):

    Q_d(x) = 1 - (R~_d/P~_d) / (-(d-2)/(2x+d-2))
           = ((d-2) P~_d + R~_d (2x+d-2)) / ((d-2) P~_d)

Numerator and denominator both have degree 2*floor(d/2) and their leading
coefficients have ratio -2/((d+1)(d-2)), the limit of Q_d at infinity.

Critical points are the roots of N'D - ND'.  They are counted on (0, inf)
with a Sturm chain, isolated, and bisected on exact dyadic rationals, so
every printed digit is backed by an exact enclosure.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import roots
from .decimals import fixed, significant, sqrt_interval
from .errors import DomainError, InvariantError, PoleError, PrecisionError
from .polynomial import ExactPolynomial
from .poly_lab import reduced_family

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QFunction:
    d: int
    numerator: ExactPolynomial
    denominator: ExactPolynomial

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        den = self.denominator(x)
        if den == 0:
            raise PoleError(f"Q_{self.d} has a pole at x={x}")
        return self.numerator(x) / den

    @property
    def limit(self) -> Fraction:
        return self.numerator.leading / self.denominator.leading

    def integer_parts(self) -> tuple[list[int], list[int], Fraction]:
        """(n, m, c) with Q = c * n/m, c > 0, n and m primitive integer polys."""
        n, sn = self.numerator.integer_form
        m, sm = self.denominator.integer_form
        return list(n), list(m), Fraction(sm) / Fraction(sn)

    def enclose(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Bounds on Q over [lo, hi] (0 <= lo), valid when no pole lies inside."""
        n, m, c = self.integer_parts()
        n_lo, n_hi = roots.enclose_value(n, lo, hi)
        m_lo, m_hi = roots.enclose_value(m, lo, hi)
        if m_lo <= 0 <= m_hi:
            raise PrecisionError("denominator enclosure contains zero")
        qs = [a / b for a in (n_lo, n_hi) for b in (m_lo, m_hi)]
        return c * min(qs), c * max(qs)


def q_function(d: int) -> QFunction:
    if d < 3:
        raise DomainError(f"Q_d needs d >= 3, got {d}")
    pt, _, rt = reduced_family(d)
    lin = ExactPolynomial([d - 2, 2])
    num = pt * (d - 2) + rt * lin
    den = pt * (d - 2)
    deg = 2 * (d // 2)
    if num.degree != deg or den.degree != deg:
        raise InvariantError(f"Q_{d}: degrees {num.degree}/{den.degree}, expected {deg}")
    return QFunction(d, num, den)


def q_limit_closed_form(d: int) -> Fraction:
    return Fraction(-2, (d + 1) * (d - 2))


def q_limit(d: int) -> Fraction:
    lim = q_limit_closed_form(d)
    if q_function(d).limit != lim:
        raise InvariantError(f"leading-coefficient ratio of Q_{d} is not {lim}")
    return lim


def q_eval(d: int, x) -> Fraction:
    return q_function(d)(x)


def q_samples(d: int, xs) -> list[tuple[Fraction, Fraction]]:
    """(x, Q_d(x)) pairs, skipping poles."""
    qf = q_function(d)
    out = []
    for x in xs:
        try:
            out.append((Fraction(x), qf(x)))
        except PoleError:
            continue
    return out


def derivative_numerator(qf: QFunction) -> list[int]:
    """Integer polynomial with the sign of Q'(x) wherever Q is defined."""
    n, m, _ = qf.integer_parts()
    dn, dm = roots.derivative(n), roots.derivative(m)
    out = [0] * max(len(n) + len(m) - 2, 1)
    for i, a in enumerate(dn):
        for j, b in enumerate(m):
            out[i + j] += a * b
    for i, a in enumerate(n):
        for j, b in enumerate(dm):
            out[i + j] -= a * b
    return roots.primitive(roots.trim(out))


@dataclass(frozen=True)
class CriticalPoint:
    kind: str  # "max", "min" or "flat"
    lo: Fraction
    hi: Fraction
    x: str
    q: str
    q_lo: Fraction
    q_hi: Fraction


@dataclass
class CriticalPointReport:
    d: int
    digits: int
    certified_count: int
    points: list[CriticalPoint]
    q_lim: Fraction
    x_max: str | None = None
    x_min: str | None = None
    q_at_x_max: str | None = None
    q_at_x_min: str | None = None
    notes: list[str] = field(default_factory=list)

    def row(self) -> dict:
        return {
            "d": self.d,
            "x_max": self.x_max, "Q(x_max)": self.q_at_x_max,
            "x_min": self.x_min, "Q(x_min)": self.q_at_x_min,
            "Q_lim": significant(self.q_lim, self.q_lim, self.digits),
        }

    def to_json(self) -> dict:
        out = self.row()
        out["Q_lim_exact"] = f"{self.q_lim.numerator}/{self.q_lim.denominator}"
        out["certified_count"] = self.certified_count
        out["digits"] = self.digits
        out["points"] = [
            {"kind": p.kind, "x": p.x, "Q": p.q,
             "bracket": [f"{p.lo.numerator}/{p.lo.denominator}", f"{p.hi.numerator}/{p.hi.denominator}"]}
            for p in self.points
        ]
        out["notes"] = self.notes
        return out


def _refine_point(qf: QFunction, sqf: list[int], bracket: roots.RootBracket, digits: int) -> CriticalPoint:
    lo, hi = bracket.lo, bracket.hi
    s_lo, s_hi = roots.sign_at(sqf, lo), roots.sign_at(sqf, hi)
    if lo != hi and s_lo == s_hi:
        raise InvariantError(f"derivative numerator does not change sign on [{lo}, {hi}]")
    kind = "flat" if lo == hi else ("max" if s_lo > 0 else "min")
    width = (hi - lo) / 2 if hi > lo else Fraction(0)
    while True:
        br = roots.refine(sqf, roots.RootBracket(lo, hi), width)
        lo, hi = br.lo, br.hi
        xs = significant(lo, hi, digits)
        if xs is not None:
            try:
                q_lo, q_hi = qf.enclose(lo, hi)
            except PrecisionError:
                q_lo = q_hi = None
            if q_lo is not None:
                qs = significant(q_lo, q_hi, digits)
                if qs is not None:
                    return CriticalPoint(kind, lo, hi, xs, qs, q_lo, q_hi)
        if lo == hi:
            raise PrecisionError("exact root but digits could not be resolved")
        width = (hi - lo) / 2 ** 16


def critical_points(d: int, digits: int = 10) -> CriticalPointReport:
    """Certified count and high-precision locations of the extrema of Q_d on (0, inf)."""
    if d < 5:
        raise DomainError(f"critical_points needs d >= 5, got {d}")
    if not 1 <= digits <= 200:
        raise DomainError(f"digits must be in [1, 200], got {digits}")
    qf = q_function(d)
    w = roots.strip_zero_roots(derivative_numerator(qf))
    chain = roots.sturm_chain(w)
    brackets = roots.isolate_positive_roots(w, chain)
    sqf = roots.squarefree_part(w, chain)
    count = len(brackets)
    if count != roots.count_roots(chain, 0):
        raise InvariantError("isolation lost a root")
    # a root of the denominator cannot be a critical point
    _, m, _ = qf.integer_parts()
    for br in brackets:
        if roots.sign_at(m, br.lo) * roots.sign_at(m, br.hi) <= 0 and roots.count_roots(roots.sturm_chain(m), br.lo, br.hi):
            raise InvariantError(f"pole of Q_{d} inside a critical-point bracket")
    points = [_refine_point(qf, sqf, br, digits) for br in brackets]
    report = CriticalPointReport(d, digits, count, points, q_limit(d))
    maxima = [p for p in points if p.kind == "max"]
    minima = [p for p in points if p.kind == "min"]
    if maxima:
        top = max(maxima, key=lambda p: p.q_lo)
        report.x_max, report.q_at_x_max = top.x, top.q
    if minima:
        bot = min(minima, key=lambda p: p.q_hi)
        report.x_min, report.q_at_x_min = bot.x, bot.q
    expected = 2 if d % 2 else 4
    if count != expected:
        report.notes.append(f"expected {expected} critical points on (0, inf), found {count}")
        log.warning("Q_%d: %d critical points on (0, inf), expected %d", d, count, expected)
    return report


def _pack(rep: CriticalPointReport):
    # Fraction pickles through str(), which trips the int/str digit limit
    # for the long dyadic brackets; ship numerator/denominator pairs instead.
    def nd(x):
        return x.numerator, x.denominator

    pts = [(p.kind, nd(p.lo), nd(p.hi), p.x, p.q, nd(p.q_lo), nd(p.q_hi)) for p in rep.points]
    return rep.d, rep.digits, rep.certified_count, pts, nd(rep.q_lim), rep.x_max, rep.x_min, \
        rep.q_at_x_max, rep.q_at_x_min, rep.notes


def _unpack(packed) -> CriticalPointReport:
    d, digits, count, pts, q_lim, x_max, x_min, q_max, q_min, notes = packed
    points = [CriticalPoint(k, Fraction(*lo), Fraction(*hi), x, q, Fraction(*ql), Fraction(*qh))
              for k, lo, hi, x, q, ql, qh in pts]
    return CriticalPointReport(d, digits, count, points, Fraction(*q_lim), x_max, x_min, q_max, q_min, notes)


def _critical_points_packed(d: int, digits: int):
    return _pack(critical_points(d, digits))


def critical_table(ds, digits: int = 10, workers: int = 1) -> list[CriticalPointReport]:
    """Reports for several d, in ascending d regardless of completion order."""
    ds = sorted(ds)
    if workers <= 1:
        return [critical_points(d, digits) for d in ds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [_unpack(r) for r in pool.map(_critical_points_packed, ds, [digits] * len(ds))]


def threshold_interval(d: int, guard: int) -> tuple[Fraction, Fraction]:
    """Rational bounds on (d + sqrt(d+2))/2."""
    s_lo, s_hi = sqrt_interval(d + 2, guard)
    return (d + s_lo) / 2, (d + s_hi) / 2


@dataclass(frozen=True)
class Conj2Evidence:
    d: int
    value: str
    below_bound: bool  # Q_d(threshold) <= 0.005
    lo: Fraction
    hi: Fraction

    def to_json(self) -> dict:
        return {"d": self.d, "Q_at_threshold": self.value, "at_most_0.005": self.below_bound}


def conj2_evidence(d: int, digits: int = 10) -> Conj2Evidence:
    """Q_d at x = (d + sqrt(d+2))/2, truncated to ``digits`` decimal places."""
    if d < 5:
        raise DomainError(f"conj2_evidence needs d >= 5, got {d}")
    qf = q_function(d)
    guard = digits + 10
    bound = Fraction(5, 1000)
    while guard < digits + 400:
        x_lo, x_hi = threshold_interval(d, guard)
        q_lo, q_hi = qf.enclose(x_lo, x_hi) if x_lo != x_hi else (qf(x_lo), qf(x_lo))
        a, b = fixed(q_lo, digits), fixed(q_hi, digits)
        if a == b and (q_hi <= bound or q_lo > bound):
            return Conj2Evidence(d, a, q_hi <= bound, q_lo, q_hi)
        guard += 20
    raise PrecisionError(f"could not resolve Q_{d} at the threshold to {digits} places")


def asymptote_predictions(d: int) -> tuple[Fraction, Fraction, Fraction]:
    """Series predictions (x_max, x_min, Q(x_min)) from the leading terms."""
    if d < 5 or d % 2 == 0:
        raise DomainError(f"predictions are for odd d >= 5, got {d}")
    x_max = Fraction(d, 6) - Fraction(1, 8) - Fraction(1, 64 * (d - 1))
    x_min = Fraction(5 * d, 2) - 2 + Fraction(1, 96) - Fraction(305, 1728 * (d - 1))
    q_min = -Fraction(1, 12 * (d - 1))
    return x_max, x_min, q_min


@dataclass(frozen=True)
class CoefficientFit:
    k: int
    d_samples: list[int]
    digits: int
    x_min: list[str]
    c_exact: list[Fraction]
    c: list[str]
    residuals: list[str]

    def to_json(self) -> dict:
        return {
            "k": self.k, "d_samples": self.d_samples, "digits": self.digits,
            "x_min": self.x_min, "c": self.c, "residuals": self.residuals,
        }


def solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over Q."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise InvariantError("singular system in coefficient fit")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def x_min_value(d: int, digits: int) -> str:
    rep = critical_points(d, digits)
    if rep.x_min is None:
        raise InvariantError(f"Q_{d} has no local minimum on (0, inf)")
    return rep.x_min


def fit_coefficients(d_list, k: int, digits: int = 80, workers: int = 1) -> CoefficientFit:
    """Fit x_min(d) = 5d/2 - 2 + sum_{i<=k} c_i/(d-1)^i through the sample d's."""
    d_list = list(d_list)
    if len(d_list) != k + 1 or len(set(d_list)) != k + 1:
        raise DomainError("need exactly k+1 distinct sample values of d")
    if any(d % 2 == 0 or d < 5 for d in d_list):
        raise DomainError("sample d's must be odd and >= 5")
    if digits < 40:
        raise DomainError("coefficient fits need at least 40 digits")
    reports = critical_table(d_list, digits, workers)
    xs = []
    for rep in reports:
        if rep.x_min is None:
            raise InvariantError(f"Q_{rep.d} has no local minimum on (0, inf)")
        xs.append(rep.x_min)
    d_list = [rep.d for rep in reports]
    a = [[Fraction(1, (d - 1) ** i) for i in range(k + 1)] for d in d_list]
    b = [Fraction(x) - Fraction(5 * d, 2) + 2 for x, d in zip(xs, d_list)]
    c = solve_exact(a, b)
    resid = [sum(ai * ci for ai, ci in zip(row, c)) - bi for row, bi in zip(a, b)]
    return CoefficientFit(
        k, d_list, digits, xs, c,
        [fixed(ci, digits) for ci in c],
        [fixed(r, digits) for r in resid],
    )
