"""Stormer numbers: characterization, the map S(p), and enumeration.

A positive integer x0 is a Stormer number exactly when the largest prime
factor p_m of x0**2 + 1 satisfies 2*x0 + 1 <= p_m; in that case p_m is the
unique prime with S(p_m) = x0, where S(p) denotes the least residue root of
x**2 == -1 (mod p) lying in (1, (p-1)/2].  The inclusive convention
(Conway-Guy) relaxes the bound to 2*x0, which changes nothing except that it
admits x0 = 1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from multiprocessing import get_context

from . import arith

__all__ = [
    "Convention",
    "StormerPair",
    "StormerVerdict",
    "check_factor_residues",
    "enumerate_stormer",
    "is_stormer",
    "prime_stormer_table",
    "stormer_of_prime",
]


class Convention(Enum):
    """Which largest-prime-factor threshold defines a Stormer number."""

    STRICT = "strict"        # p_m >= 2*x0 + 1; excludes x0 = 1
    INCLUSIVE = "inclusive"  # p_m >= 2*x0 (Conway-Guy); admits x0 = 1


@dataclass(frozen=True)
class StormerVerdict:
    """Outcome of testing one candidate.

    ``largest_prime_factor`` is always the largest prime factor of
    x0**2 + 1; ``witness_prime`` repeats it when the verdict is positive
    (it is then the unique prime with S(witness_prime) = x0).
    """

    x0: int
    is_stormer: bool
    witness_prime: int | None
    largest_prime_factor: int
    convention: Convention


@dataclass(frozen=True)
class StormerPair:
    """A prime p == 1 (mod 4) together with S(p)."""

    p: int
    x0: int


def _threshold(x0: int, convention: Convention) -> int:
    return 2 * x0 + 1 if convention is Convention.STRICT else 2 * x0


def is_stormer(x0: int, convention: Convention = Convention.STRICT) -> StormerVerdict:
    """Decide whether x0 is a Stormer number under the given convention."""
    if x0 <= 0:
        raise ValueError(f"expected a positive integer, got {x0}")
    p_m = arith.largest_prime_factor(x0 * x0 + 1)
    hit = p_m >= _threshold(x0, convention)
    return StormerVerdict(x0, hit, p_m if hit else None, p_m, convention)


def stormer_of_prime(p: int) -> StormerPair:
    """S(p) for a prime p == 1 (mod 4).

    Of the two least-residue roots x and p - x of x**2 == -1 (mod p),
    exactly one lies in (1, (p-1)/2]; that one is S(p).
    """
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % 4 != 1:
        raise ValueError(f"{p} % 4 != 1, so x^2 == -1 (mod {p}) has no solution")
    x = arith.sqrt_minus_one_mod_p(p)
    return StormerPair(p, min(x, p - x))


def check_factor_residues(x0: int) -> bool:
    """True iff every odd prime factor of x0**2 + 1 is == 1 (mod 4).

    This always holds (any odd prime divisor q of x0**2 + 1 makes -1 a
    quadratic residue mod q); the function exists as a test oracle.
    """
    if x0 <= 0:
        raise ValueError(f"expected a positive integer, got {x0}")
    return all(p == 2 or p % 4 == 1 for p in arith.factorize(x0 * x0 + 1).primes())


def _range_hits(args: tuple[int, int, str]) -> list[int]:
    """Stormer numbers in [lo, hi), by per-candidate factorization."""
    lo, hi, convention_value = args
    convention = Convention(convention_value)
    lpf = arith.largest_prime_factor
    hits = []
    for x in range(max(lo, 1), hi):
        if x == 1:
            if convention is Convention.INCLUSIVE:
                hits.append(1)
            continue
        if lpf(x * x + 1) >= 2 * x + 1:
            hits.append(x)
    return hits


def default_workers() -> int:
    """Worker count for bulk enumeration: STORMER_THREADS, else CPU count."""
    env = os.environ.get("STORMER_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_stormer(
    limit: int,
    convention: Convention = Convention.INCLUSIVE,
    *,
    workers: int = 1,
) -> list[int]:
    """Ascending list of all Stormer numbers <= limit.

    Each candidate x is tested by factoring x**2 + 1.  With ``workers > 1``
    the range is split across processes; the result is identical to the
    sequential one.
    """
    if limit < 1:
        return []
    workers = min(workers, limit // 2000 + 1)
    if workers <= 1:
        return _range_hits((1, limit + 1, convention.value))
    bounds = [1 + (limit * k) // workers for k in range(workers + 1)]
    bounds[-1] = limit + 1
    chunks = [(bounds[k], bounds[k + 1], convention.value) for k in range(workers)]
    with get_context("fork").Pool(workers) as pool:
        parts = pool.map(_range_hits, chunks)
    return [x for part in parts for x in part]


def prime_stormer_table(prime_limit: int) -> list[StormerPair]:
    """All pairs (p, S(p)) for primes p == 1 (mod 4) up to prime_limit."""
    if prime_limit < 5:
        return []
    if prime_limit <= arith._PRIME_TABLE_LIMIT:
        primes = [p for p in arith.prime_table() if p <= prime_limit]
    else:
        primes = arith.sieve_primes(prime_limit)
    return [stormer_of_prime(p) for p in primes if p % 4 == 1]
