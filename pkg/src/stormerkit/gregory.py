"""Reduction of Gregory numbers to a Stormer-number basis.

The Gregory number t_x = arctan(1/x) is the argument of the Gaussian integer
x + i.  Because arguments add under multiplication, the Gaussian prime
factorization of n + i expresses t_n as an integer combination of arguments
of Gaussian primes; primes of the form m + i contribute t_m directly, and
any other prime a + bi is "flattened" by a multiplier c + di solving the
Diophantine equation a*d + b*c = +-1, so that (a+bi)(c+di) = e +- i.  With
the minimal-norm multiplier, |e| is exactly the least residue root of
x**2 == -1 modulo the prime norm, hence a Stormer number, and the cofactor
norm shrinks by a factor of at least four, which makes the recursion
terminate.  Units contribute quarter turns, i.e. multiples of 2*t_1, and any
residual full turn of 2*pi equals 8*t_1.

Identities between integer combinations of arc terms are verified exactly:
the corresponding Gaussian product must be a positive real number, and a
double-precision evaluation rules out a hidden multiple of 2*pi.
"""

from __future__ import annotations

import math
import re as _re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import arith
from .arith import GaussianInt
from .stormer import Convention, is_stormer

__all__ = [
    "ArcTerm",
    "FlattenResult",
    "GregoryCombo",
    "IdentityParseError",
    "LehmerExpansion",
    "decompose",
    "flatten",
    "is_irreducible",
    "lehmer_expand",
    "occurs_among_earlier",
    "parse_identity",
    "verify_identity",
]

_TWO_PI = 2 * math.pi

# Numeric window for ruling out hidden 2*pi multiples; exactness is always
# established separately by the Gaussian product certificate.
_NUMERIC_TOL = 1e-9


class IdentityParseError(ValueError):
    """Raised when an identity string does not match the grammar."""


@dataclass(frozen=True)
class ArcTerm:
    """Canonical argument term arg(re + im*i) with re >= 1, im >= 1 coprime.

    For an integer n the term n + i denotes t_n = arctan(1/n); a general
    term a + bi denotes t_{a/b} = arctan(b/a).  Conjugate arguments are
    expressed by negative coefficients in a combo, never by im < 0 keys.
    """

    re: int
    im: int

    def __post_init__(self) -> None:
        if self.re < 1 or self.im < 1:
            raise ValueError(f"arc term must have re >= 1 and im >= 1, got {self.re}+{self.im}i")
        if math.gcd(self.re, self.im) != 1:
            raise ValueError(f"arc term {self.re}+{self.im}i has content > 1")

    @staticmethod
    def integer(n: int) -> "ArcTerm":
        return ArcTerm(n, 1)

    @staticmethod
    def of(re: int, im: int) -> "ArcTerm":
        """Canonicalize by dividing out the content; re and im must be >= 1."""
        g = math.gcd(re, im)
        if g == 0:
            raise ValueError("zero is not an arc term")
        return ArcTerm(re // g, im // g)

    @property
    def x(self) -> Fraction:
        """The x in t_x = arctan(1/x)."""
        return Fraction(self.re, self.im)

    def gaussian(self) -> GaussianInt:
        return GaussianInt(self.re, self.im)

    def value(self) -> float:
        return math.atan2(self.im, self.re)

    def __str__(self) -> str:
        return f"t{self.re}" if self.im == 1 else f"t{self.re}/{self.im}"


_T1 = ArcTerm(1, 1)


def _sort_key(term: ArcTerm) -> Fraction:
    return term.x


class GregoryCombo:
    """An integer combination of arc terms, denoting sum(c_z * arg(z)).

    Immutable once built; zero coefficients are dropped and keys are kept
    canonical, so equal combinations compare equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ArcTerm, int] | Iterable[tuple[ArcTerm, int]] = ()) -> None:
        merged: dict[ArcTerm, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for term, coef in items:
            if not isinstance(term, ArcTerm):
                raise TypeError(f"expected ArcTerm keys, got {term!r}")
            if coef:
                merged[term] = merged.get(term, 0) + coef
        self._terms = {t: c for t, c in merged.items() if c}

    @staticmethod
    def of_integers(coeffs: Mapping[int, int]) -> "GregoryCombo":
        """Build a combo of integer terms, e.g. {5: 4, 239: -1} for Machin."""
        return GregoryCombo({ArcTerm.integer(n): c for n, c in coeffs.items()})

    @staticmethod
    def single(term: ArcTerm, coef: int = 1) -> "GregoryCombo":
        return GregoryCombo({term: coef})

    def terms(self) -> dict[ArcTerm, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[ArcTerm, int]]:
        return sorted(self._terms.items(), key=lambda tc: _sort_key(tc[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[ArcTerm, int]]:
        return iter(self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GregoryCombo) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __add__(self, other: "GregoryCombo") -> "GregoryCombo":
        out = dict(self._terms)
        for t, c in other._terms.items():
            out[t] = out.get(t, 0) + c
        return GregoryCombo(out)

    def __sub__(self, other: "GregoryCombo") -> "GregoryCombo":
        return self + (-other)

    def __neg__(self) -> "GregoryCombo":
        return GregoryCombo({t: -c for t, c in self._terms.items()})

    def __mul__(self, k: int) -> "GregoryCombo":
        return GregoryCombo({t: k * c for t, c in self._terms.items()})

    __rmul__ = __mul__

    def value(self) -> float:
        return math.fsum(c * t.value() for t, c in self._terms.items())

    def to_json(self) -> dict:
        return {"terms": [{"re": t.re, "im": t.im, "coef": c} for t, c in self.items()]}

    @staticmethod
    def from_json(data: Mapping) -> "GregoryCombo":
        out: dict[ArcTerm, int] = {}
        for entry in data["terms"]:
            if "n" in entry:
                term = ArcTerm.integer(int(entry["n"]))
            else:
                term = ArcTerm(int(entry["re"]), int(entry["im"]))
            out[term] = out.get(term, 0) + int(entry["coef"])
        return GregoryCombo(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for term, coef in self.items():
            mag = abs(coef)
            body = str(term) if mag == 1 else f"{mag}*{term}"
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"GregoryCombo({self._terms!r})"


# --- identity verification -------------------------------------------------

def identity_certificate(lhs: GregoryCombo, rhs: GregoryCombo) -> GaussianInt:
    """Gaussian product over the difference combo, conjugating terms with
    negative coefficients.  The identity holds modulo 2*pi exactly when this
    product is a positive real number."""
    diff = lhs - rhs
    product = GaussianInt(1, 0)
    for term, coef in diff.items():
        z = term.gaussian()
        if coef < 0:
            z = z.conjugate()
        product = product * z ** abs(coef)
    return product


def verify_identity(lhs: GregoryCombo, rhs: GregoryCombo) -> bool:
    """Exact check that sum(lhs) equals sum(rhs) as real numbers.

    Stage 1: the Gaussian product certificate must be a positive real,
    which proves equality modulo 2*pi.  Stage 2: the double-precision
    difference must be tiny, which pins the multiple of 2*pi to zero.
    """
    product = identity_certificate(lhs, rhs)
    if product.im != 0 or product.re <= 0:
        return False
    return abs((lhs - rhs).value()) < _NUMERIC_TOL


# --- flattening ------------------------------------------------------------

@dataclass(frozen=True)
class FlattenResult:
    """Outcome of flattening a + bi to a form e +- i.

    ``multipliers[0]`` flattens the input (input * multipliers[0] equals
    ``flats[0]``, which is ``w``); each later multiplier flattens its
    predecessor (multipliers[k] * multipliers[k+1] = flats[k+1]).  The chain
    stops once a multiplier is a unit or is itself of the form x +- i up to
    a unit.
    """

    w: GaussianInt
    multipliers: tuple[GaussianInt, ...]
    flats: tuple[GaussianInt, ...]


def _is_flat_class(z: GaussianInt) -> bool:
    """True if some associate of z has imaginary part +-1 (form x +- i)."""
    return min(abs(z.re), abs(z.im)) == 1 or (abs(z.re) == 1 and z.im == 0) or (abs(z.im) == 1 and z.re == 0)


def _flatten_step(a: int, b: int) -> tuple[GaussianInt, GaussianInt]:
    """One flattening step for z = a + bi with gcd(a, b) = 1, b != 0.

    Solves a*d + b*c = +-1 and returns (m, w) with m = c + di of minimal
    norm and w = z*m of the form e +- i.  Solutions form the line
    (c, d) = (c0 + a*t, d0 - b*t); the minimum over t is checked on both
    right-hand sides, preferring +1, then d in {1, -1}, then smaller |d|,
    then c > 0.
    """
    _, u, v = arith.extended_gcd(a, b)
    n = a * a + b * b
    candidates: list[tuple[int, int, int, int]] = []
    for delta in (1, -1):
        c0, d0 = v * delta, u * delta
        t_star = Fraction(d0 * b - c0 * a, n)
        for t in {math.floor(t_star), math.ceil(t_star)}:
            c, d = c0 + a * t, d0 - b * t
            candidates.append((c * c + d * d, 0 if delta == 1 else 1, c, d))
    best_norm = min(cand[0] for cand in candidates)
    pool = [cand for cand in candidates if cand[0] == best_norm]
    pool.sort(key=lambda cand: (cand[1], 0 if cand[3] in (1, -1) else 1, abs(cand[3]), cand[2] <= 0))
    _, _, c, d = pool[0]
    m = GaussianInt(c, d)
    w = GaussianInt(a, b) * m
    assert abs(w.im) == 1
    return m, w


def flatten(z: GaussianInt) -> FlattenResult:
    """Flatten a canonical Gaussian integer to the form e +- i.

    ``z`` must satisfy gcd(re, im) = 1, re > 0, |im| != 1 and norm > 2.
    Each step solves the Diophantine equation a*d + b*c = +-1 for the
    minimal-norm multiplier c + di; the step repeats on the multiplier while
    it is neither a unit nor of the form x +- i up to a unit.  Norms of the
    successive multipliers strictly decrease, which bounds the chain length;
    a failure of that invariant raises ArithmeticError.
    """
    if z.is_zero() or math.gcd(abs(z.re), abs(z.im)) != 1:
        raise ValueError(f"{z} is not in canonical form (content must be 1)")
    if z.re <= 0:
        raise ValueError(f"{z} is not in canonical form (re must be positive)")
    if abs(z.im) == 1 or z.im == 0:
        raise ValueError(f"{z} is already of the form x +- i")
    if z.norm() <= 2:
        raise ValueError(f"{z} has norm <= 2")
    multipliers: list[GaussianInt] = []
    flats: list[GaussianInt] = []
    cur = z
    while True:
        m, w = _flatten_step(cur.re, cur.im)
        if m.norm() >= cur.norm():
            raise ArithmeticError(f"flattening failed to reduce the norm at {cur} (multiplier {m})")
        multipliers.append(m)
        flats.append(w)
        if m.is_unit() or _is_flat_class(m):
            break
        cur = m
    return FlattenResult(flats[0], tuple(multipliers), tuple(flats))


# --- the decomposition engine ----------------------------------------------

_memo_lock = threading.Lock()
_t_memo: dict[int, dict[ArcTerm, int]] = {}
_prime_memo: dict[tuple[int, int], dict[ArcTerm, int]] = {}


def _merge(dst: dict[ArcTerm, int], src: Mapping[ArcTerm, int], scale: int = 1) -> None:
    for term, coef in src.items():
        new = dst.get(term, 0) + scale * coef
        if new:
            dst[term] = new
        else:
            dst.pop(term, None)


def _combo_float(combo: Mapping[ArcTerm, int]) -> float:
    return math.fsum(c * t.value() for t, c in combo.items())


def _snap_full_turns(combo: dict[ArcTerm, int], target: float, context: str) -> None:
    """Add the multiple of 2*pi (= 8*t_1) that matches the principal value."""
    drift = target - _combo_float(combo)
    k = round(drift / _TWO_PI)
    if k:
        _merge(combo, {_T1: 8 * k})
    if abs(target - _combo_float(combo)) > 1e-7:
        raise ArithmeticError(f"argument bookkeeping drifted while expanding {context}")


_UNIT_EIGHTHS = {(1, 0): 0, (0, 1): 2, (-1, 0): 4, (0, -1): -2}


def _flat_arg(w: GaussianInt) -> dict[ArcTerm, int]:
    """Exact principal-argument combo of w = e +- i."""
    e, s = w.re, w.im
    if e >= 1:
        combo: dict[ArcTerm, int] = {}
        _merge(combo, _t_combo(e), s)
        return combo
    # arg(-x + i) = pi - t_x and arg(-x - i) = t_x - pi, x = -e >= 1.
    combo = {_T1: 4 * s}
    _merge(combo, _t_combo(-e), -s)
    return combo


def _principal_arg(z: GaussianInt) -> dict[ArcTerm, int]:
    """Combo equal to the principal argument of z, via factorization."""
    unit, factors = arith.gaussian_factorize(z)
    combo: dict[ArcTerm, int] = {}
    _merge(combo, {_T1: _UNIT_EIGHTHS[(unit.re, unit.im)]})
    for prime, exponent in factors:
        _merge(combo, _prime_arg(prime), exponent)
    _snap_full_turns(combo, math.atan2(z.im, z.re), str(z))
    return combo


def _prime_arg(prime: GaussianInt) -> dict[ArcTerm, int]:
    """Combo equal to the principal argument of a first-quadrant prime."""
    key = (prime.re, prime.im)
    cached = _prime_memo.get(key)
    if cached is not None:
        return cached
    a, b = key
    if b == 0:
        combo: dict[ArcTerm, int] = {}
    elif (a, b) == (1, 1):
        combo = {_T1: 1}
    elif b == 1:
        combo = dict(_t_combo(a))
    elif a == 1:
        # 1 + bi = i*(b - i), so its argument is pi/2 - t_b.
        combo = {_T1: 2}
        _merge(combo, _t_combo(b), -1)
    else:
        m, w = _flatten_step(a, b)
        if m.norm() >= prime.norm():
            raise ArithmeticError(f"flattening failed to reduce the norm at {prime}")
        combo = _flat_arg(w)
        _merge(combo, _principal_arg(m), -1)
        _snap_full_turns(combo, math.atan2(b, a), str(prime))
    _prime_memo[key] = combo
    return combo


def _t_combo(n: int) -> dict[ArcTerm, int]:
    """Combo for t_n over the Stormer basis (inclusive convention)."""
    cached = _t_memo.get(n)
    if cached is not None:
        return cached
    if is_stormer(n, Convention.INCLUSIVE).is_stormer:
        combo = {ArcTerm.integer(n): 1}
    else:
        combo = _principal_arg(GaussianInt(n, 1))
    _t_memo[n] = combo
    return combo


def decompose(n: int) -> GregoryCombo:
    """Express t_n as an integer combination of Stormer-basis terms.

    A Stormer number (inclusive convention) is its own basis element; any
    other n yields a combination of terms t_s with s a Stormer number and
    s < n, obtained from the Gaussian prime factorization of n + i.  The
    result is verified exactly before being returned.
    """
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    with _memo_lock:
        combo = GregoryCombo(_t_combo(n))
    if not verify_identity(GregoryCombo.single(ArcTerm.integer(n)), combo):
        raise ArithmeticError(f"internal decomposition of t_{n} failed verification")
    return combo


def is_irreducible(n: int) -> bool:
    """True iff t_n does not reduce: decompose(n) is the single term t_n."""
    return decompose(n) == GregoryCombo.single(ArcTerm.integer(n))


def occurs_among_earlier(n: int) -> bool:
    """True iff every prime factor of 1 + n**2 divides 1 + m**2 for some
    1 <= m < n.  Checked literally, as a test oracle."""
    if n < 2:
        raise ValueError(f"expected n >= 2, got {n}")
    for p in arith.factorize(n * n + 1).primes():
        if not any((m * m + 1) % p == 0 for m in range(1, n)):
            return False
    return True


# --- Lehmer's arccot expansion ----------------------------------------------

@dataclass(frozen=True)
class LehmerExpansion:
    """Alternating expansion arccot(a/b) = arccot(n_0) - arccot(n_1) + ...

    ``truncated`` is set when the term cap was reached before the remainder
    vanished, in which case the identity holds only up to the dropped tail.
    """

    a: int
    b: int
    cotangents: tuple[int, ...]
    truncated: bool

    def value(self) -> float:
        return math.fsum((-1) ** j * math.atan2(1, n) for j, n in enumerate(self.cotangents))


def lehmer_expand(a: int, b: int, max_terms: int = 64) -> LehmerExpansion:
    """Run the recurrences a_j = n_j*b_j + b_{j+1}, a_{j+1} = a_j*n_j + b_j.

    Starting from a_0 = a, b_0 = b with a > b >= 1 and gcd(a, b) = 1, the
    remainders b_j strictly decrease, so the expansion terminates in at most
    b steps unless capped earlier by ``max_terms``.
    """
    if b < 1 or a <= b:
        raise ValueError(f"expected a > b >= 1, got a={a}, b={b}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"expected gcd(a, b) = 1, got a={a}, b={b}")
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    cots = []
    aj, bj = a, b
    while bj and len(cots) < max_terms:
        n, b_next = divmod(aj, bj)
        cots.append(n)
        aj, bj = aj * n + bj, b_next
    return LehmerExpansion(a=a, b=b, cotangents=tuple(cots), truncated=bj != 0)


# --- identity grammar --------------------------------------------------------

_TERM_RE = _re.compile(r"([+-]?)(?:(\d+)\*)?t(\d+)(?:/(\d+))?")


def _parse_side(text: str, original: str) -> GregoryCombo:
    pos = 0
    terms: dict[ArcTerm, int] = {}
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or (pos > 0 and match.group(1) == ""):
            raise IdentityParseError(f"cannot parse identity {original!r} at {text[pos:]!r}")
        sign = -1 if match.group(1) == "-" else 1
        coef = sign * int(match.group(2) or 1)
        try:
            term = ArcTerm.of(int(match.group(3)), int(match.group(4) or 1))
        except ValueError as exc:
            raise IdentityParseError(f"bad term in identity {original!r}: {exc}") from None
        terms[term] = terms.get(term, 0) + coef
        pos = match.end()
    if not terms:
        raise IdentityParseError(f"empty side in identity {original!r}")
    return GregoryCombo(terms)


def parse_identity(text: str) -> tuple[GregoryCombo, GregoryCombo]:
    """Parse an identity like ``"t1 = 4*t5 - t239"`` (rational subscripts as
    ``t79/3``); whitespace is insignificant."""
    compact = "".join(text.split())
    if compact.count("=") != 1:
        raise IdentityParseError(f"identity must contain exactly one '=': {text!r}")
    lhs_text, rhs_text = compact.split("=")
    return _parse_side(lhs_text, text), _parse_side(rhs_text, text)
