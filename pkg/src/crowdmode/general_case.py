"""Unequal outer sets: s1 = x, s3 = x + Delta with Delta >= 0.

The family generalizes P_d with one falling factorial shifted by Delta,

    P_{Delta,d}(x) = sum_j ((x+Delta)_j)^2 (x_{d-j})^2 / (j! (d-j)!),

and dividing P_{Delta,d+1} by P_{Delta,d} again leaves a quadratic
quotient.  With N = 2x + Delta - d,

    f(N) / f(N-1) = (s2 - N + 1) P_{Delta,d}(x) / P_{Delta,d+1}(x),

so the step test is exact while N <= s2 + 1 (past that point both weights
vanish).  No bound on the remainder is known here, so the argmax is always
taken from the exact scan and the closed form is only reported next to it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .decimals import fixed, rounded, sqrt_interval
from .errors import DomainError, InvariantError, PoleError
from .exact_core import OverlapScanner, Scenario, argmax_scan, f_value
from .polynomial import ExactPolynomial, poly_divide
from .poly_lab import scaled_p_ints


@dataclass(frozen=True)
class GeneralScenario:
    x: int
    delta_gap: int
    s2: int

    def __post_init__(self):
        if self.x < 1 or self.s2 < 1:
            raise DomainError(f"x and s2 must be positive, got x={self.x}, s2={self.s2}")
        if self.delta_gap < 0:
            raise DomainError(f"delta_gap must be nonnegative, got {self.delta_gap}")

    @classmethod
    def from_sizes(cls, s1: int, s2: int, s3: int) -> "GeneralScenario":
        """Normalize so that s3 >= s1 (f is symmetric in s1 and s3)."""
        lo, hi = sorted((s1, s3))
        return cls(lo, hi - lo, s2)

    @property
    def s1(self) -> int:
        return self.x

    @property
    def s3(self) -> int:
        return self.x + self.delta_gap

    def scenario(self) -> Scenario:
        return Scenario(self.s1, self.s2, self.s3)


@dataclass(frozen=True)
class GeneralDivision:
    delta_gap: int
    d: int
    quotient: ExactPolynomial
    remainder: ExactPolynomial


def _check_gap_and_d(delta_gap: int, d: int) -> None:
    if delta_gap < 0 or d < 0:
        raise DomainError(f"need delta_gap, d >= 0, got ({delta_gap}, {d})")


@lru_cache(maxsize=None)
def p_delta_poly(delta_gap: int, d: int) -> ExactPolynomial:
    _check_gap_and_d(delta_gap, d)
    return ExactPolynomial.from_integers(scaled_p_ints(d, shift=delta_gap), factorial(d))


def p_delta_value(delta_gap: int, d: int, x) -> Fraction:
    """Direct evaluation of the defining sum, independent of the expansion."""
    from .exact_core import falling

    x = Fraction(x)
    return sum(
        (Fraction(falling(x + delta_gap, j) ** 2 * falling(x, d - j) ** 2, factorial(j) * factorial(d - j))
         for j in range(d + 1)),
        Fraction(0),
    )


def general_quotient(delta_gap: int, d: int) -> ExactPolynomial:
    """(2x^2 - 2(d-Delta)x + d(d+1-2Delta)/2 + Delta^2) / (d+1)."""
    D = delta_gap
    c0 = Fraction(d * (d + 1 - 2 * D), 2) + D * D
    return ExactPolynomial([c0, -2 * (d - D), 2]) / (d + 1)


@lru_cache(maxsize=None)
def general_division(delta_gap: int, d: int) -> GeneralDivision:
    _check_gap_and_d(delta_gap, d)
    p = p_delta_poly(delta_gap, d)
    res = poly_divide(p_delta_poly(delta_gap, d + 1), p)
    if res.quotient != general_quotient(delta_gap, d):
        raise InvariantError(f"quotient for Delta={delta_gap}, d={d} is {res.quotient}")
    if not res.remainder.degree < p.degree:
        raise InvariantError(f"remainder degree {res.remainder.degree} >= {p.degree}")
    return GeneralDivision(delta_gap, d, res.quotient, res.remainder)


def delta_ratio(x, delta_gap: int, d: int) -> Fraction:
    """R_{Delta,d}(x) / P_{Delta,d}(x)."""
    den = p_delta_poly(delta_gap, d)(x)
    if den == 0:
        raise PoleError(f"P_{{{delta_gap},{d}}}({x}) = 0")
    return general_division(delta_gap, d).remainder(x) / den


def delta_threshold(x: int, delta_gap: int, d: int) -> Fraction:
    D = delta_gap
    main = Fraction(2 * x * x + 2 * (D + 1) * x + D * D + D, d + 1) - Fraction(d + 2, 2)
    return main + delta_ratio(x, D, d)


def delta_condition(x: int, delta_gap: int, d: int, s2: int) -> bool:
    """f(2x+Delta-d) >= f(2x+Delta-d-1) for (s1, s2, s3) = (x, s2, x+Delta)."""
    if x < 1 or delta_gap < 0 or d < 0:
        raise DomainError(f"need x >= 1 and Delta, d >= 0, got ({x}, {delta_gap}, {d})")
    n = 2 * x + delta_gap - d
    if n <= 0:
        raise DomainError(f"step test needs 2x + Delta > d, got x={x}, Delta={delta_gap}, d={d}")
    if s2 < n - 1:
        raise DomainError(f"both weights vanish once N > s2 + 1 (N={n}, s2={s2})")
    return s2 >= delta_threshold(x, delta_gap, d)


def direct_step(x: int, delta_gap: int, d: int, s2: int) -> bool:
    sc = (x, s2, x + delta_gap)
    n = 2 * x + delta_gap - d
    return f_value(sc, n) >= f_value(sc, n - 1)


def _formula_radicand4(s1: int, s2: int, s3: int) -> int:
    """4 * (2 s1^2 + 2 s1 + 2 s3^2 + 2 s3 + (s2 + 1/2)^2)."""
    return 8 * s1 * s1 + 8 * s1 + 8 * s3 * s3 + 8 * s3 + (2 * s2 + 1) ** 2


@dataclass(frozen=True)
class FormulaN:
    n: str
    union: str
    lo: Fraction
    hi: Fraction


def formula_n(s1: int, s2: int, s3: int, digits: int = 8, rounding: bool = False) -> FormulaN:
    """N = s1+s2+s3+3/2 - sqrt(2s1^2+2s1+2s3^2+2s3+(s2+1/2)^2).

    Digits are truncated by default; ``rounding=True`` rounds half away from
    zero instead, still only once both ends of the enclosure agree.
    """
    if min(s1, s2, s3) < 1:
        raise DomainError(f"formula_n needs positive sizes, got ({s1}, {s2}, {s3})")
    if digits < 0:
        raise DomainError(f"digits must be nonnegative, got {digits}")
    m = _formula_radicand4(s1, s2, s3)
    base = Fraction(2 * (s1 + s2 + s3) + 3, 2)
    fmt = rounded if rounding else fixed
    guard = digits + 5
    while True:
        r_lo, r_hi = sqrt_interval(m, guard)
        lo, hi = base - r_hi / 2, base - r_lo / 2
        n_lo, n_hi = fmt(lo, digits), fmt(hi, digits)
        u_lo, u_hi = fmt(r_lo / 2 - Fraction(3, 2), digits), fmt(r_hi / 2 - Fraction(3, 2), digits)
        if n_lo == n_hi and u_lo == u_hi:
            return FormulaN(n_lo, u_lo, lo, hi)
        guard += 10


@dataclass(frozen=True)
class D8Row:
    s1: int
    s3: int
    s2: int
    actual_n: int
    formula_n: str
    tied: bool = False

    def to_dict(self) -> dict:
        return {"s1": self.s1, "s3": self.s3, "s2": self.s2,
                "actual_N": self.actual_n, "formula_N": self.formula_n}


def d8_table(s1: int, s3: int, s2_range, digits: int = 8, rounding: bool = True) -> list[D8Row]:
    """Exact argmax next to the closed-form estimate, one row per s2.

    The estimate is rounded by default, which is how the published
    comparison table prints it.
    """
    lo, hi = sorted((s1, s3))
    scanner = OverlapScanner(lo, hi)
    rows = []
    for s2 in s2_range:
        rep = scanner.scan(s2)
        rows.append(D8Row(lo, hi, s2, rep.n_star, formula_n(lo, s2, hi, digits, rounding).n, rep.tied))
    return rows


@dataclass(frozen=True)
class GeneralReport:
    scenario: GeneralScenario
    n_star: int
    tied: bool
    formula: FormulaN

    def to_json(self) -> dict:
        g = self.scenario
        return {
            "s1": g.s1, "s2": g.s2, "s3": g.s3, "delta_gap": g.delta_gap,
            "n_star": self.n_star, "tied": self.tied,
            "union_mode": g.s1 + g.s2 + g.s3 - self.n_star,
            "formula_N": self.formula.n, "formula_union": self.formula.union,
        }


def general_report(s1: int, s2: int, s3: int, digits: int = 8) -> GeneralReport:
    g = GeneralScenario.from_sizes(s1, s2, s3)
    rep = argmax_scan(g.scenario())
    return GeneralReport(g, rep.n_star, rep.tied, formula_n(g.s1, g.s2, g.s3, digits))


def ratio_grid(delta_gap: int, d: int, xs) -> list[tuple[int, Fraction]]:
    """R_{Delta,d}/P_{Delta,d} on integer points; no bound is asserted."""
    out = []
    for x in xs:
        try:
            out.append((x, delta_ratio(x, delta_gap, d)))
        except PoleError:
            continue
    return out


def unimodality_audit(s_max: int = 25, s2_max: int = 200) -> list[tuple[int, int, int]]:
    """Triples (s1, s2, s3) with s1 <= s3 <= s_max whose weights are not unimodal."""
    bad = []
    for s1 in range(s_max + 1):
        for s3 in range(s1, s_max + 1):
            scanner = OverlapScanner(s1, s3)
            for s2 in range(s2_max + 1):
                if not scanner.scan(s2).unimodal:
                    bad.append((s1, s2, s3))
    return bad
