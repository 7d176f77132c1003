"""Exact integer and Gaussian-integer arithmetic.

Everything in this package reduces to a handful of primitives implemented
here: deterministic primality testing, integer factorization (trial division
plus Brent's variant of Pollard rho), the extended Euclidean algorithm,
square roots of -1 modulo a prime, and exact arithmetic in Z[i] including
factorization into Gaussian primes.

Plain Python ints serve as the arbitrary-precision integer type and
``fractions.Fraction`` as the rational type; both are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

__all__ = [
    "GaussianInt",
    "PrimeFactorization",
    "extended_gcd",
    "factorize",
    "gaussian_factorize",
    "gaussian_gcd",
    "is_prime",
    "largest_prime_factor",
    "prime_table",
    "sieve_primes",
    "sqrt_minus_one_mod_p",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Deterministic Miller-Rabin witness sets, each proven sufficient below its
# bound.  The final tier covers everything below 3.317e24.
_MR_TIERS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

# Witnesses used above the last proven tier.  Deterministic output, but only
# conjecturally correct out to 2**128; nothing in this package factors or
# primality-tests numbers that large.
_MR_FALLBACK = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, by a bytearray sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, b in enumerate(sieve) if b]


_PRIME_TABLE_LIMIT = 10**6
_prime_table: list[int] | None = None


def prime_table() -> list[int]:
    """The shared prime table up to 10**6, built once and then immutable."""
    global _prime_table
    if _prime_table is None:
        _prime_table = sieve_primes(_PRIME_TABLE_LIMIT)
    return _prime_table


def _miller_rabin(n: int, bases: tuple[int, ...]) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in bases:
        a %= n
        if a <= 1:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Uses trial division by a few small primes followed by Miller-Rabin with
    witness sets proven correct below 3.3e24; units and negatives are not
    prime.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 47 * 47:
        return True
    for bound, bases in _MR_TIERS:
        if n < bound:
            return _miller_rabin(n, bases)
    return _miller_rabin(n, _MR_FALLBACK)


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite n (n odd, not a prime power of a
    small prime).  Brent's cycle-finding variant of Pollard rho with batched
    gcds; the parameter sequence is fixed so results are deterministic."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            # Batched gcd overshot; replay one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


# Primes used for the trial-division stage of factorize().  A short prefix is
# enough: rho handles any cofactor this package meets (values <= ~1e13), and
# full-table trial division would dominate the bulk enumeration budget.
_TRIAL_LIMIT = 1000
_trial_primes: list[int] | None = None


def _trial_table() -> list[int]:
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = sieve_primes(_TRIAL_LIMIT)
    return _trial_primes


@dataclass(frozen=True)
class PrimeFactorization:
    """Ordered prime factorization: ``factors`` is ((p1, e1), (p2, e2), ...)
    with p1 < p2 < ... and every pi prime."""

    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1)

    def largest_prime(self) -> int:
        """Largest prime factor; 1 for the empty factorization."""
        return self.factors[-1][0] if self.factors else 1

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factorize(n: int) -> PrimeFactorization:
    """Prime factorization of n >= 1; n = 1 gives the empty factorization."""
    if n <= 0:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    found: dict[int, int] = {}
    for p in _trial_table():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(n):
            found[n] = found.get(n, 0) + 1
        else:
            _factor_into(n, found)
    return PrimeFactorization(tuple(sorted(found.items())))


def largest_prime_factor(n: int) -> int:
    """Largest prime factor of n >= 2.

    Same machinery as :func:`factorize` but skips exponent bookkeeping; this
    is the hot path of the bulk Stormer enumeration.
    """
    if n < 2:
        raise ValueError(f"largest_prime_factor expects n >= 2, got {n}")
    best = 1
    for p in _trial_table():
        if p * p > n:
            break
        if n % p == 0:
            best = p
            n //= p
            while n % p == 0:
                n //= p
    if n == 1:
        return best
    if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(n):
        return max(best, n)
    parts: dict[int, int] = {}
    _factor_into(n, parts)
    return max(best, max(parts))


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g = gcd(a, b) > 0.

    Rejects (0, 0), where the gcd is undefined.
    """
    if a == 0 and b == 0:
        raise ValueError("extended_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def sqrt_minus_one_mod_p(p: int) -> int:
    """A solution x of x**2 == -1 (mod p), 1 <= x <= p-1.

    Requires p prime with p == 1 (mod 4); otherwise no solution exists and a
    ValueError is raised.  The root is found by raising a quadratic
    non-residue to the power (p-1)/4, which is the Tonelli-Shanks computation
    specialized to -1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % 4 != 1:
        raise ValueError(f"x^2 == -1 (mod {p}) has no solution: {p} % 4 != 1")
    e = (p - 1) // 2
    a = 2
    while pow(a, e, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    assert x * x % p == p - 1
    return x


@dataclass(frozen=True)
class GaussianInt:
    """Gaussian integer re + im*i with exact arithmetic."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __pow__(self, k: int) -> "GaussianInt":
        if k < 0:
            raise ValueError("negative Gaussian powers are not integral")
        result = GaussianInt(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other: "GaussianInt") -> bool:
        n = self.norm()
        t = other * self.conjugate()
        return n != 0 and t.re % n == 0 and t.im % n == 0

    def exact_div(self, other: "GaussianInt") -> "GaussianInt":
        """self / other, which must be exact."""
        n = other.norm()
        t = self * other.conjugate()
        if n == 0 or t.re % n or t.im % n:
            raise ValueError(f"{other} does not divide {self}")
        return GaussianInt(t.re // n, t.im // n)

    def canonical_associate(self) -> tuple["GaussianInt", "GaussianInt"]:
        """(unit, w) with self = unit * w and w in the first quadrant
        (w.re > 0, w.im >= 0).  Exactly one associate of a nonzero Gaussian
        integer lies there."""
        if self.is_zero():
            raise ValueError("0 has no canonical associate")
        w, u = self, GaussianInt(1, 0)
        # Multiplying w by -i rotates it a quarter turn clockwise; the unit
        # accumulates the inverse rotation.
        for _ in range(3):
            if w.re > 0 and w.im >= 0:
                break
            w = GaussianInt(w.im, -w.re)
            u = u * GaussianInt(0, 1)
        return u, w

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i" if self.im not in (1, -1) else ("i" if self.im == 1 else "-i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{imag}"


def gaussian_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """A greatest common divisor of a and b in Z[i] (unique up to units)."""
    while not b.is_zero():
        n = b.norm()
        t = a * b.conjugate()
        # Nearest-integer quotient keeps the remainder norm below n.
        q = GaussianInt((2 * t.re + n) // (2 * n), (2 * t.im + n) // (2 * n))
        a, b = b, a - q * b
    return a


_UNIT_I = GaussianInt(0, 1)
_ONE = GaussianInt(1, 0)


def gaussian_factorize(z: GaussianInt) -> tuple[GaussianInt, tuple[tuple[GaussianInt, int], ...]]:
    """Factor z != 0 into a unit times first-quadrant Gaussian primes.

    Returns (unit, factors) with unit in {1, -1, i, -i} and factors an
    ordered tuple of (prime, exponent) pairs such that the product of all
    prime powers times the unit equals z exactly.  Each prime is normalized
    to the first quadrant (re > 0, im >= 0): primes over a rational prime
    p == 1 (mod 4) appear as the pair {a+bi, b+ai}, the ramified prime over
    2 as 1+i, and inert rational primes q == 3 (mod 4) as q itself.
    """
    if z.is_zero():
        raise ValueError("cannot factor 0")
    residual = z
    found: list[tuple[GaussianInt, int]] = []
    for p, e in factorize(z.norm()).factors:
        if p == 2:
            pi = GaussianInt(1, 1)
            for _ in range(e):
                residual = residual.exact_div(pi)
            found.append((pi, e))
        elif p % 4 == 3:
            # Inert: p itself is a Gaussian prime, contributing e/2 copies.
            k = e // 2
            for _ in range(k):
                residual = residual.exact_div(GaussianInt(p, 0))
            found.append((GaussianInt(p, 0), k))
        else:
            x = sqrt_minus_one_mod_p(p)
            _, pi = gaussian_gcd(GaussianInt(p, 0), GaussianInt(x, 1)).canonical_associate()
            for prime in (pi, GaussianInt(pi.im, pi.re)):
                count = 0
                while prime.divides(residual):
                    residual = residual.exact_div(prime)
                    count += 1
                if count:
                    found.append((prime, count))
    if not residual.is_unit():
        raise ArithmeticError(f"factorization of {z} left non-unit residual {residual}")
    found.sort(key=lambda fe: (fe[0].norm(), fe[0].im))
    return residual, tuple(found)
