"""Two-squares decompositions of primes p == 1 (mod 4) via continuants.

Smith's construction: run the Euclidean algorithm on p / S(p).  The quotient
sequence is a palindrome of even length [q1..qn, qn..q1], and

    p = K(q1..qn)**2 + K(q1..q_{n-1})**2

where K is the continuant.  This yields the unique decomposition
p = a**2 + b**2 explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import arith, stormer

__all__ = ["TwoSquares", "continuant", "euclid_quotients", "two_squares"]


@dataclass(frozen=True)
class TwoSquares:
    """p = a**2 + b**2 with a > b >= 1, plus the palindromic quotient
    sequence of p / x0 and x0 = S(p) itself."""

    p: int
    a: int
    b: int
    palindrome: tuple[int, ...]
    x0: int


def continuant(qs: Sequence[int]) -> int:
    """The continuant K(q1, ..., qm).

    Computed by the three-term recurrence K_m = q_m*K_{m-1} + K_{m-2} with
    K_0 = 1 (empty product convention) and K_1 = q1; equal to the numerator
    of the continued fraction [q1; q2, ..., qm].  Entries must be positive.
    """
    prev, cur = 0, 1
    for q in qs:
        if q <= 0:
            raise ValueError(f"continuant entries must be positive, got {q}")
        prev, cur = cur, q * cur + prev
    return cur


def euclid_quotients(s: int, r: int) -> list[int]:
    """Quotient sequence of the Euclidean algorithm on s / r, for s > r >= 1.

    The result [q1, ..., qn] satisfies continuant(q1..qn) = s / gcd(s, r) and
    continuant(q2..qn) = r / gcd(s, r); the final quotient absorbs the exact
    division, so qn >= 2 whenever n > 1.
    """
    if r <= 0 or r >= s:
        raise ValueError(f"expected s > r >= 1, got s={s}, r={r}")
    qs = []
    while r:
        q, rem = divmod(s, r)
        qs.append(q)
        s, r = r, rem
    return qs


def _is_palindrome(qs: Sequence[int]) -> bool:
    return list(qs) == list(reversed(qs))


def two_squares(p: int) -> TwoSquares:
    """The unique decomposition p = a**2 + b**2 of a prime p == 1 (mod 4).

    Raises ValueError for composite p and for p == 3 (mod 4), where no
    representation exists.
    """
    if arith.is_prime(p) and p % 4 != 1:
        raise ValueError(f"{p} is not a sum of two squares: only primes p == 1 (mod 4) are")
    x0 = stormer.stormer_of_prime(p).x0  # validates primality
    qs = euclid_quotients(p, x0)
    if len(qs) % 2 or not _is_palindrome(qs):
        # Alternate tail convention: [..., q] == [..., q-1, 1].
        alt = qs[:-1] + [qs[-1] - 1, 1] if qs[-1] >= 2 else qs[:-2] + [qs[-2] + 1]
        if len(alt) % 2 or not _is_palindrome(alt):
            raise ArithmeticError(
                f"no even-length palindromic quotient sequence for p={p} (got {qs} and {alt})"
            )
        qs = alt
    half = qs[: len(qs) // 2]
    a = continuant(half)
    b = continuant(half[:-1])
    assert a * a + b * b == p and gcd(a, b) == 1
    return TwoSquares(p, a, b, tuple(qs), x0)
