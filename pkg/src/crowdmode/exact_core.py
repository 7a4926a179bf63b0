"""Exact combinatorial kernel for the three-set overlap model.

Sets A, B, C with |A| = s1, |B| = s2, |C| = s3 and A, C disjoint.  Every
configuration choosing ``i`` elements of A matched with ``i`` elements of B
and ``j`` further elements of B matched with ``j`` elements of C is equally
likely.  The class ``E_{i,j}`` has

    |E_{i,j}| = C(s1,i) C(s2,i) C(s2-i,j) C(s3,j)

members, and the total overlap N = i + j has weight

    f(N) = C(s2,N) * sum_i C(s1,i) C(s3,N-i) C(N,i).

The most likely union size is s1 + s2 + s3 - N at the maximizing N.
Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import DomainError


@dataclass(frozen=True)
class Scenario:
    s1: int
    s2: int
    s3: int

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise DomainError(f"{name} must be an integer, got {v!r}")
            if v < 0:
                raise DomainError(f"{name} must be nonnegative, got {v}")

    @property
    def n_max(self) -> int:
        """Largest N with nonzero weight."""
        return min(self.s2, self.s1 + self.s3)

    @property
    def total(self) -> int:
        return self.s1 + self.s2 + self.s3

    def swapped(self) -> "Scenario":
        return Scenario(self.s3, self.s2, self.s1)


def _as_scenario(scenario) -> Scenario:
    if isinstance(scenario, Scenario):
        return scenario
    return Scenario(*scenario)


def binom(n: int, k: int) -> int:
    """C(n, k) for n >= 0, zero outside 0 <= k <= n.

    Multiplicative evaluation: after step t the running value is C(n-k+t, t),
    so every division is exact.
    """
    if n < 0:
        raise DomainError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for t in range(1, k + 1):
        out = out * (n - k + t) // t
    return out


def falling(x, i: int):
    """Falling factorial x(x-1)...(x-i+1); 1 when i == 0.

    Integers stay integers, anything else is promoted to Fraction.
    """
    if i < 0:
        raise DomainError(f"falling factorial needs i >= 0, got {i}")
    if not isinstance(x, int):
        x = Fraction(x)
    out = 1
    for t in range(i):
        out *= x - t
    return out


def event_count(scenario, i: int, j: int) -> int:
    sc = _as_scenario(scenario)
    if i < 0 or j < 0:
        return 0
    c = binom(sc.s1, i) * binom(sc.s3, j)
    if not c:
        return 0
    c *= binom(sc.s2, i)
    if not c:
        return 0
    return c * binom(sc.s2 - i, j)


def _overlap_kernel(s1: int, s3: int, n: int) -> int:
    """sum_i C(s1,i) C(s3,n-i) C(n,i); the s2-free factor of f."""
    lo = max(0, n - s3)
    hi = min(s1, n)
    return sum(binom(s1, i) * binom(s3, n - i) * binom(n, i) for i in range(lo, hi + 1))


def f_value(scenario, n: int) -> int:
    """|E_N|, the number of sample points with total overlap N."""
    sc = _as_scenario(scenario)
    if n < 0 or n > sc.n_max:
        return 0
    return binom(sc.s2, n) * _overlap_kernel(sc.s1, sc.s3, n)


def f_value_by_events(scenario, n: int) -> int:
    """Same quantity as :func:`f_value`, summed over E_{i,N-i} directly."""
    sc = _as_scenario(scenario)
    if n < 0:
        return 0
    return sum(event_count(sc, i, n - i) for i in range(n + 1))


def total_weight(scenario) -> int:
    """Size of the whole sample space, sum of |E_{i,j}| over all i, j."""
    sc = _as_scenario(scenario)
    return sum(
        event_count(sc, i, j)
        for i in range(min(sc.s1, sc.s2) + 1)
        for j in range(min(sc.s3, sc.s2 - i) + 1)
    )


def weights(scenario) -> list[int]:
    """[f(0), f(1), ..., f(n_max)]."""
    sc = _as_scenario(scenario)
    out = []
    c2 = 1  # C(s2, n), updated incrementally
    for n in range(sc.n_max + 1):
        if n:
            c2 = c2 * (sc.s2 - n + 1) // n
        out.append(c2 * _overlap_kernel(sc.s1, sc.s3, n))
    return out


@dataclass(frozen=True)
class DistributionTable:
    scenario: Scenario
    weights: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.weights.values())

    def probability(self, n: int) -> Fraction:
        return Fraction(self.weights.get(n, 0), self.total)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.weights.items()))

    def to_rows(self) -> list[dict]:
        return [{"N": n, "weight": str(w)} for n, w in self.items()]

    def to_json(self) -> dict:
        sc = self.scenario
        return {
            "scenario": {"s1": sc.s1, "s2": sc.s2, "s3": sc.s3},
            "weights": {str(n): str(w) for n, w in self.items()},
            "total": str(self.total),
        }


def distribution(scenario) -> DistributionTable:
    sc = _as_scenario(scenario)
    return DistributionTable(sc, dict(enumerate(weights(sc))))


def is_unimodal(seq) -> bool:
    """Weakly increasing then weakly decreasing."""
    i, n = 0, len(seq)
    while i + 1 < n and seq[i + 1] >= seq[i]:
        i += 1
    while i + 1 < n and seq[i + 1] <= seq[i]:
        i += 1
    return i >= n - 1


@dataclass(frozen=True)
class ArgmaxReport:
    scenario: Scenario
    n_star: int
    tied: bool
    unimodal: bool

    @property
    def union_mode(self) -> int:
        return self.scenario.total - self.n_star

    @property
    def partners(self) -> tuple[int, ...]:
        """All allowable maximizers (two when tied)."""
        return (self.n_star, self.n_star + 1) if self.tied else (self.n_star,)

    def to_json(self) -> dict:
        sc = self.scenario
        return {
            "s1": sc.s1, "s2": sc.s2, "s3": sc.s3,
            "n_star": self.n_star, "tied": self.tied,
            "unimodal": self.unimodal, "union_mode": self.union_mode,
        }


def argmax_of(seq) -> tuple[int, bool]:
    """Smallest maximizing index and whether the next index ties it."""
    best = max(seq)
    k = seq.index(best)
    return k, k + 1 < len(seq) and seq[k + 1] == best


def argmax_scan(scenario) -> ArgmaxReport:
    sc = _as_scenario(scenario)
    w = weights(sc)
    k, tied = argmax_of(w)
    return ArgmaxReport(sc, k, tied, is_unimodal(w))


class OverlapScanner:
    """Argmax scans for fixed (s1, s3) over many s2, sharing the s2-free kernel.

    f(N) = C(s2,N) h(N) with h independent of s2, so sweeping s2 only
    needs a fresh run of binomials per scan.
    """

    def __init__(self, s1: int, s3: int | None = None):
        self.s1 = s1
        self.s3 = s1 if s3 is None else s3
        self.kernel = [_overlap_kernel(self.s1, self.s3, n) for n in range(self.s1 + self.s3 + 1)]

    def weights(self, s2: int) -> list[int]:
        out = []
        c2 = 1
        for n in range(min(s2, self.s1 + self.s3) + 1):
            if n:
                c2 = c2 * (s2 - n + 1) // n
            out.append(c2 * self.kernel[n])
        return out

    def scan(self, s2: int) -> ArgmaxReport:
        w = self.weights(s2)
        k, tied = argmax_of(w)
        return ArgmaxReport(Scenario(self.s1, s2, self.s3), k, tied, is_unimodal(w))
