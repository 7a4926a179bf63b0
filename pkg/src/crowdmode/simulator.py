"""Seeded Monte Carlo check of the exact overlap distribution.

Every configuration in a class E_{i,j} has the same total overlap N = i + j,
so drawing a class with probability |E_{i,j}| / total and reading off i + j
samples N exactly as drawing a uniform configuration would.

Randomness: numpy's PCG64.  Trials are cut into fixed-size blocks and block b
draws from ``SeedSequence(seed, spawn_key=(b,))``, so the counts depend only
on (scenario, trials, seed), never on how blocks are spread over workers.
A uniform integer below the total weight is assembled from 64-bit limbs with
the top limb masked, and rejected if too large (acceptance rate >= 1/2).
"""
from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

import numpy as np

from .decimals import fixed
from .errors import DomainError, InvariantError
from .exact_core import Scenario, _as_scenario, argmax_of, event_count, weights

BLOCK = 1 << 16


@dataclass(frozen=True)
class SampleConfig:
    scenario: Scenario
    trials: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "scenario", _as_scenario(self.scenario))
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class EmpiricalDistribution:
    config: SampleConfig
    counts: dict
    mode: int
    exact_mode: int
    tv: Fraction

    @property
    def tv_distance(self) -> str:
        return fixed(self.tv, 12)

    def to_json(self) -> dict:
        sc = self.config.scenario
        return {
            "scenario": {"s1": sc.s1, "s2": sc.s2, "s3": sc.s3},
            "trials": self.config.trials,
            "seed": self.config.seed,
            "counts": {str(n): c for n, c in sorted(self.counts.items())},
            "mode": self.mode,
            "exact_mode": self.exact_mode,
            "tv_distance": self.tv_distance,
        }


def class_table(scenario) -> tuple[list[int], list[int]]:
    """(N for each nonempty class, cumulative class weights), in (i, j) order."""
    sc = _as_scenario(scenario)
    ns, ws = [], []
    for i in range(min(sc.s1, sc.s2) + 1):
        for j in range(min(sc.s3, sc.s2 - i) + 1):
            w = event_count(sc, i, j)
            if w:
                ns.append(i + j)
                ws.append(w)
    if not ws:
        raise InvariantError("all class weights are zero")
    return ns, list(accumulate(ws))


def _uniform_below(gen: np.random.Generator, bound: int, size: int) -> list[int]:
    """``size`` uniform integers in [0, bound), by masked limbs plus rejection."""
    bits = max((bound - 1).bit_length(), 1)
    limbs = (bits + 63) // 64
    top_mask = (1 << (bits - 64 * (limbs - 1))) - 1
    bitgen = gen.bit_generator
    out: list[int] = []
    while len(out) < size:
        want = size - len(out)
        # ask for a little extra to cover rejections
        raw = bitgen.random_raw(size=(want + want // 2 + 8) * limbs).reshape(-1, limbs)
        raw[:, -1] &= np.uint64(top_mask)
        for row in raw.tolist():
            u = 0
            for k, limb in enumerate(row):
                u |= limb << (64 * k)
            if u < bound:
                out.append(u)
                if len(out) == size:
                    break
    return out


def _block_counts(args) -> Counter:
    scenario, seed, block, size = args
    ns, cum = class_table(scenario)
    gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))
    total = cum[-1]
    return Counter(ns[bisect_right(cum, u)] for u in _uniform_below(gen, total, size))


def _blocks(config: SampleConfig):
    sc = config.scenario
    full, rest = divmod(config.trials, BLOCK)
    jobs = [(sc, config.seed, b, BLOCK) for b in range(full)]
    if rest:
        jobs.append((sc, config.seed, full, rest))
    return jobs


def total_variation(counts: dict, trials: int, exact: list[int]) -> Fraction:
    total = sum(exact)
    keys = set(counts) | set(range(len(exact)))
    return sum(
        (abs(Fraction(counts.get(n, 0), trials) - Fraction(exact[n] if n < len(exact) else 0, total)) for n in keys),
        Fraction(0),
    ) / 2


def sample_distribution(config: SampleConfig, workers: int = 1) -> EmpiricalDistribution:
    jobs = _blocks(config)
    counts: Counter = Counter()
    if workers <= 1:
        for job in jobs:
            counts.update(_block_counts(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c in pool.map(_block_counts, jobs):
                counts.update(c)
    if sum(counts.values()) != config.trials:
        raise InvariantError("sample counts do not add up to the number of trials")
    exact = weights(config.scenario)
    dense = [counts.get(n, 0) for n in range(max(counts) + 1)]
    mode, _ = argmax_of(dense)
    exact_mode, _ = argmax_of(exact)
    tv = total_variation(dict(counts), config.trials, exact)
    return EmpiricalDistribution(config, dict(sorted(counts.items())), mode, exact_mode, tv)
