"""Natural-density experiments for Stormer numbers.

Counts of Stormer numbers up to a limit, compared against the conjectured
density ln 2; the heuristic probability sum over primes 2*x0+1 <= p <=
x0**2+1 of 2/(p-1); and the Mertens partial-sum gap used to monitor its
convergence.

Also provided is the count of x whose x**2 + 1 has a prime factor exceeding
x (the form the density conjecture takes for primitive divisors).  The two
counts share the ln 2 limit but differ at finite range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import get_context

from . import arith
from .stormer import Convention, enumerate_stormer

__all__ = [
    "DensityReport",
    "count_large_factor",
    "count_stormer",
    "heuristic_probability",
    "mertens_gap",
]

LN2 = math.log(2)


@dataclass(frozen=True)
class DensityReport:
    limit: int
    count: int
    ratio: float
    ln2_gap: float
    measure: str

    @staticmethod
    def build(limit: int, count: int, measure: str) -> "DensityReport":
        ratio = count / limit
        return DensityReport(limit, count, ratio, abs(ratio - LN2), measure)


def count_stormer(
    limit: int,
    convention: Convention = Convention.INCLUSIVE,
    *,
    workers: int = 1,
) -> DensityReport:
    """Exact count of Stormer numbers <= limit under the given convention."""
    if limit < 1:
        raise ValueError(f"expected limit >= 1, got {limit}")
    count = len(enumerate_stormer(limit, convention, workers=workers))
    return DensityReport.build(limit, count, convention.value)


def _large_factor_hits(args: tuple[int, int]) -> int:
    lo, hi = args
    lpf = arith.largest_prime_factor
    return sum(1 for x in range(lo, hi) if lpf(x * x + 1) > x)


def count_large_factor(limit: int, *, workers: int = 1) -> DensityReport:
    """Count of x <= limit whose x**2 + 1 has a prime factor > x.

    A weaker threshold than the Stormer condition 2x+1; both counts have
    conjectural density ln 2.
    """
    if limit < 1:
        raise ValueError(f"expected limit >= 1, got {limit}")
    workers = min(workers, limit // 2000 + 1)
    if workers <= 1:
        count = _large_factor_hits((1, limit + 1))
    else:
        bounds = [1 + (limit * k) // workers for k in range(workers + 1)]
        bounds[-1] = limit + 1
        with get_context("fork").Pool(workers) as pool:
            count = sum(pool.map(_large_factor_hits, [(bounds[k], bounds[k + 1]) for k in range(workers)]))
    return DensityReport.build(limit, count, "large-factor")


class _KahanSum:
    """Compensated summation; keeps ~1 ulp accuracy over many terms."""

    def __init__(self) -> None:
        self.total = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        y = x - self._c
        t = self.total + y
        self._c = (t - self.total) - y
        self.total = t


def _primes_in(lo: int, hi: int):
    """Yield primes in [lo, hi] via a segmented sieve."""
    if hi < 2:
        return
    lo = max(lo, 2)
    base = arith.sieve_primes(math.isqrt(hi))
    span = 1 << 20
    for start in range(lo, hi + 1, span):
        stop = min(start + span - 1, hi)
        seg = bytearray([1]) * (stop - start + 1)
        for p in base:
            if p * p > stop:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            seg[first - start :: p] = bytearray(len(range(first, stop + 1, p)))
        for i, alive in enumerate(seg):
            if alive and start + i >= 2:
                yield start + i


def heuristic_probability(x0: int) -> float:
    """Sum of 2/(p-1) over primes p == 1 (mod 4) with 2*x0+1 <= p <= x0**2+1.

    Under the heuristic that each residue in (1, (p-1)/2] is equally likely
    to be S(p), this is the chance that x0 is a Stormer number; it tends to
    ln 2 as x0 grows.  Evaluated with compensated summation.
    """
    if x0 <= 1:
        raise ValueError(f"expected x0 >= 2, got {x0}")
    acc = _KahanSum()
    for p in _primes_in(2 * x0 + 1, x0 * x0 + 1):
        if p % 4 == 1:
            acc.add(2.0 / (p - 1))
    return acc.total


def mertens_gap(x: int) -> float:
    """sum_{p <= x} 1/p - ln ln x.

    Approaches the Mertens constant 0.2615 as x grows; used to monitor the
    convergence of the heuristic sum, not asserted to a tight value.
    """
    if x < 3:
        raise ValueError(f"expected x >= 3, got {x}")
    acc = _KahanSum()
    for p in _primes_in(2, x):
        acc.add(1.0 / p)
    return acc.total - math.log(math.log(x))
