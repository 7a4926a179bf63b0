"""Closed-form argmax estimate for s1 = s3 and its exact 0/1 correction.

With s1 = s3 the maximizing overlap is

    g(s1, s2) = floor(2 s1 + s2 + 3/2 - sqrt(4 s1^2 + 4 s1 + (s2 + 1/2)^2)) + delta

with delta in {0, 1}.  Doubling everything puts the radicand on the
integers, M = 16 s1^2 + 16 s1 + (2 s2 + 1)^2, so every floor and ceiling
below is settled by ``math.isqrt`` and a perfect-square test.  delta is then
decided by comparing the gap

    gap = 2(s1^2 + s1)/(d0 + 1) - (d0 + 2)/2 - s2

against -R_{d0}(s1)/P_{d0}(s1): delta = 1 iff 0 < gap <= -R/P.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError
from .exact_core import OverlapScanner, argmax_scan
from .poly_lab import ratio_at


def _radicand(s1: int, s2: int) -> int:
    return 16 * s1 * s1 + 16 * s1 + (2 * s2 + 1) ** 2


def _root(s1: int, s2: int) -> tuple[int, bool]:
    m = _radicand(s1, s2)
    r = isqrt(m)
    return r, r * r == m


def _check_nonneg(**kw):
    for k, v in kw.items():
        if v < 0:
            raise DomainError(f"{k} must be nonnegative, got {v}")


def bracket_value(s1: int, s2: int) -> int:
    """floor((4 s1 + 2 s2 + 3 - sqrt(M)) / 2)."""
    _check_nonneg(s1=s1, s2=s2)
    r, square = _root(s1, s2)
    u = 4 * s1 + 2 * s2 + 3
    # sqrt(M) in (r, r+1) when M is not a square
    return (u - r) // 2 if square else (u - r - 1) // 2


def bracket_expression(s1: int, s2: int, digits: int = 2) -> str:
    """The bracketed real number itself, truncated to ``digits`` decimals."""
    from .decimals import sqrt_interval, truncate

    lo, hi = sqrt_interval(_radicand(s1, s2), digits + 10)
    u = 4 * s1 + 2 * s2 + 3
    return truncate((u - hi) / 2, (u - lo) / 2, digits)


def d0_value(s1: int, s2: int) -> tuple[int, bool]:
    """(floor(d1), d1 is an integer) with d1 = sqrt(M)/2 - s2 - 3/2."""
    if s1 < 1:
        raise DomainError(f"d0 needs s1 >= 1, got {s1}")
    _check_nonneg(s2=s2)
    r, square = _root(s1, s2)
    # the same floor works whether or not M is a square
    return (r - 2 * s2 - 3) // 2, square


def step_threshold(x: int, d: int) -> Fraction:
    """2(x^2+x)/(d+1) - (d+2)/2, the remainder-free part of the step test."""
    return Fraction(2 * (x * x + x), d + 1) - Fraction(d + 2, 2)


def feq_rhs(x: int, d: int) -> Fraction:
    return step_threshold(x, d) + ratio_at(d, x)


def feq_condition(x: int, d: int, s2: int) -> bool:
    """True iff f_{x,s2}(2x-d) >= f_{x,s2}(2x-d-1), decided from R_d/P_d."""
    if d < 0 or 2 * x <= d:
        raise DomainError(f"step test needs 0 <= d < 2x, got x={x}, d={d}")
    return s2 >= feq_rhs(x, d)


@dataclass(frozen=True)
class GEstimate:
    s1: int
    s2: int
    bracket: int
    delta: int
    d0: int | None
    gap: Fraction | None = None
    minus_ratio: Fraction | None = None
    rule: str = "cond2"

    @property
    def g(self) -> int:
        return self.bracket + self.delta

    @property
    def certificate(self):
        """(gap, -R_{d0}(s1)/P_{d0}(s1), verdict) when the remainder test ran."""
        if self.gap is None:
            return None
        return self.gap, self.minus_ratio, bool(self.delta)

    def to_json(self) -> dict:
        out = {
            "s1": self.s1, "s2": self.s2, "g": self.g, "delta": self.delta,
            "bracket": self.bracket, "d0": self.d0, "rule": self.rule,
        }
        if self.gap is not None:
            out["gap"] = f"{self.gap.numerator}/{self.gap.denominator}"
            out["minus_ratio"] = f"{self.minus_ratio.numerator}/{self.minus_ratio.denominator}"
        return out


def below_small_threshold(s1: int, s2: int) -> bool:
    """s2 <= (sqrt(8 s1 + 9) - 1)/2, i.e. (2 s2 + 1)^2 <= 8 s1 + 9."""
    return (2 * s2 + 1) ** 2 <= 8 * s1 + 9


def g_exact(s1: int, s2: int) -> GEstimate:
    if s1 < 1 or s2 < 1:
        raise DomainError(f"g_exact needs s1, s2 >= 1, got ({s1}, {s2})")
    br = bracket_value(s1, s2)
    d0, integral = d0_value(s1, s2)
    if below_small_threshold(s1, s2):
        return GEstimate(s1, s2, br, s2 - br, d0, rule="small-s2")
    if integral:
        return GEstimate(s1, s2, br, 0, d0, rule="integer-d1")
    if d0 < 0:
        # bracket is already 2 s1, the largest N with nonzero weight
        return GEstimate(s1, s2, br, 0, d0, rule="saturated")
    gap = step_threshold(s1, d0) - s2
    minus_ratio = -ratio_at(d0, s1)
    delta = int(0 < gap <= minus_ratio)
    return GEstimate(s1, s2, br, delta, d0, gap, minus_ratio)


def top_threshold(s1: int, d: int) -> int:
    """Smallest s2 with g(s1, s2) >= 2 s1 - d, for 0 <= d <= 4."""
    if not 0 <= d <= 4:
        raise DomainError(f"top_threshold covers 0 <= d <= 4, got {d}")
    if 2 * s1 <= d:
        raise DomainError(f"top_threshold needs s1 > d/2, got s1={s1}, d={d}")
    t = step_threshold(s1, d)
    return -((-t.numerator) // t.denominator)


def union_mode_closed_form(s1: int, s2: int) -> int:
    """ceil(sqrt(4 s1^2 + 4 s1 + (s2+1/2)^2) - 3/2) - delta."""
    est = g_exact(s1, s2)
    r, square = _root(s1, s2)
    # ceil((sqrt(M) - 3)/2); for non-squares sqrt(M) in (r, r+1)
    ceil_part = -((3 - r) // 2) if square else (r - 1) // 2
    return ceil_part - est.delta


def g_table(s1: int, s2_min: int = 1, s2_max: int = 600) -> list[dict]:
    """Exact g(s1, s2) over a range, compressed into printed-table rows.

    Rows are ``{"s2_lo", "s2_hi", "g"}`` where ``g`` is an int for a run of
    constant g, or a string ``"s2"`` / ``"s2-k"`` for a run on which g tracks
    s2.  On a tie the larger maximizer is listed, matching what the closed
    form returns when d1 is an integer.
    """
    scanner = OverlapScanner(s1)
    values = []
    for s2 in range(s2_min, s2_max + 1):
        rep = scanner.scan(s2)
        values.append((s2, rep.partners[-1]))
    return compress_g_values(values)


def _runs(values, step):
    out = []
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1][1] - values[j][1] == step:
            j += 1
        out.append((i, j))
        i = j + 1
    return out


def compress_g_values(values: list[tuple[int, int]]) -> list[dict]:
    """Split ``(s2, g)`` pairs into tracking runs followed by constant runs.

    Tracking runs (g rising with s2) are taken greedily from the left and
    stop at the first one whose successor would be a single point.
    """
    track = _runs(values, 1)
    cut = len(values)
    for k in range(len(track) - 1):
        i, j = track[k + 1]
        if i == j:
            cut = track[k][0]
            break
    rows = []
    for i, j in _runs(values[:cut], 1):
        lo, g = values[i]
        if i == j:
            rows.append({"s2_lo": lo, "s2_hi": lo, "g": g})
        else:
            off = lo - g
            rows.append({"s2_lo": lo, "s2_hi": values[j][0], "g": "s2" if off == 0 else f"s2-{off}"})
    for i, j in _runs(values[cut:], 0):
        rows.append({"s2_lo": values[cut + i][0], "s2_hi": values[cut + j][0], "g": values[cut + i][1]})
    return rows


def delta_cases(s1: int, s2_max: int, s2_min: int = 1) -> list[int]:
    """The s2 values where the floor expression falls one short of the argmax."""
    return [s2 for s2 in range(s2_min, s2_max + 1) if g_exact(s1, s2).delta == 1]


def cond_conjectural(s1: int, s2: int) -> bool | None:
    """The weaker delta = 1 test obtained by replacing -R/P with 0.995(d0-2)/(2 s1+d0-2).

    Returns None where the test does not apply (d0 < 5, small s2, or d1 integral).
    """
    if below_small_threshold(s1, s2):
        return None
    d0, integral = d0_value(s1, s2)
    if integral or d0 < 5:
        return None
    gap = step_threshold(s1, d0) - s2
    return 0 < gap <= Fraction(995, 1000) * Fraction(d0 - 2, 2 * s1 + d0 - 2)


def missed_by_conjectural_test(s1_max: int) -> list[tuple[int, int]]:
    """(s1, s2) with delta = 1 that the weaker test does not flag."""
    out = []
    for s1 in range(1, s1_max + 1):
        s2_top = 2 * (s1 * s1 + s1)
        for s2 in range(1, s2_top + 1):
            if below_small_threshold(s1, s2):
                continue
            if g_exact(s1, s2).delta == 1 and not cond_conjectural(s1, s2):
                out.append((s1, s2))
    return out


def g_by_scan(s1: int, s2: int) -> int:
    return argmax_scan((s1, s2, s1)).n_star
