"""Arbitrary-precision evaluation of Gregory series and Machin-like formulas.

Values are scaled integers in base 10 (mantissa / 10**(scale+guard)), so
decimal digits fall straight out of the representation.  A series for
arctan(b/a) is summed by the recurrence term' = term * b**2 // a**2 with the
odd divisor applied at use, one exact division per term; the alternating
series bound keeps the truncation error below the first omitted term, and
guard digits absorb the floor-division dust.

Digit correctness is certified by agreement between independently verified
formulas rather than by a stored reference constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .gregory import ArcTerm, GregoryCombo, verify_identity

__all__ = [
    "FORMULAS",
    "FixedPoint",
    "PiResult",
    "classical_bounds_check",
    "compare_digits",
    "compute_pi",
    "gregory_series",
]

# Classic arctangent formulas for pi/4, keyed by the names the CLI accepts.
FORMULAS: dict[str, GregoryCombo] = {
    "machin": GregoryCombo.of_integers({5: 4, 239: -1}),
    "vega": GregoryCombo.of_integers({3: 2, 7: 1}),
    "euler": GregoryCombo({ArcTerm.integer(7): 5, ArcTerm(79, 3): 2}),
    "stormer1896": GregoryCombo.of_integers({57: 44, 239: 7, 682: -12, 12943: 24}),
}


# int-to-str chunking that stays below the interpreter's conversion guard
_CHUNK_DIGITS = 1000
_CHUNK = 10**_CHUNK_DIGITS


def _decimal_digits(n: int) -> str:
    """Decimal digits of n >= 0, safe for values beyond the str() guard."""
    if n < _CHUNK:
        return str(n)
    parts = []
    while n:
        n, rem = divmod(n, _CHUNK)
        parts.append(rem)
    head = str(parts[-1])
    tail = [str(p).rjust(_CHUNK_DIGITS, "0") for p in reversed(parts[:-1])]
    return head + "".join(tail)


@dataclass(frozen=True)
class FixedPoint:
    """Scaled decimal: value = mantissa / 10**(scale + guard).

    ``scale`` is the published precision; the extra ``guard`` digits exist
    so that arithmetic truncates only below the published digits.
    ``terms_used`` records how many series terms produced the value.
    """

    mantissa: int
    scale: int
    guard: int
    terms_used: int | None = None

    def value(self) -> Fraction:
        return Fraction(self.mantissa, 10 ** (self.scale + self.guard))

    def __float__(self) -> float:
        return self.mantissa / 10 ** (self.scale + self.guard)

    def decimal_string(self) -> str:
        """The value truncated to ``scale`` digits after the point."""
        m = self.mantissa // 10**self.guard
        sign = "-" if m < 0 else ""
        digits = _decimal_digits(abs(m)).rjust(self.scale + 1, "0")
        if self.scale == 0:
            return sign + digits
        return f"{sign}{digits[: -self.scale]}.{digits[-self.scale :]}"


@dataclass(frozen=True)
class PiResult:
    """Digits of pi from one verified formula."""

    formula: GregoryCombo
    digits: str
    terms_used: tuple[int, ...]
    requested_digits: int


def _series_mantissa(a: int, b: int, scale: int, max_terms: int | None) -> tuple[int, int]:
    """(mantissa, terms) for arctan(b/a) * 10**scale, truncated after
    max_terms or once a term underflows the scale."""
    a2, b2 = a * a, b * b
    term = 10**scale * b // a
    total = 0
    k = 0
    while term and (max_terms is None or k < max_terms):
        piece = term // (2 * k + 1)
        if piece == 0 and max_terms is None:
            break
        total += -piece if k & 1 else piece
        term = term * b2 // a2
        k += 1
    return total, k


def _guard_for(digits: int, est_terms: int) -> int:
    return 10 + len(_decimal_digits(max(est_terms, 1)))


def _estimate_terms(a: int, b: int, digits: int) -> int:
    if a == b:
        return 10**digits  # x = 1: one digit per tenfold terms
    return int(digits * math.log(10) / (2 * (math.log(a) - math.log(b)))) + 2


def gregory_series(term: ArcTerm, precision_digits: int, max_terms: int | None = None) -> FixedPoint:
    """Evaluate t_x = arctan(b/a) for the arc term a + bi to the requested
    decimal precision.

    Requires a > b >= 1 so the series argument is below one; a = b = 1
    (the series for pi/4 itself) is allowed but converges so slowly that
    ``max_terms`` is mandatory for it.  The alternating-series bound keeps
    the truncation error under the first omitted term.
    """
    a, b = term.re, term.im
    if precision_digits < 0:
        raise ValueError("precision must be >= 0")
    if b > a or (a == b and a != 1):
        raise ValueError(f"series argument {b}/{a} is not below one")
    if a == b == 1 and max_terms is None:
        raise ValueError("the series for t_1 needs an explicit term cap")
    est = max_terms if max_terms is not None else _estimate_terms(a, b, precision_digits)
    guard = _guard_for(precision_digits, est)
    mantissa, used = _series_mantissa(a, b, precision_digits + guard, max_terms)
    return FixedPoint(mantissa, precision_digits, guard, used)


_T1_COMBO = GregoryCombo.of_integers({1: 1})


def _formula_multiple(formula: GregoryCombo) -> int:
    """The positive integer k with formula == k * t_1, or raise."""
    if not formula:
        raise ValueError("formula is empty")
    k = round(formula.value() / (math.pi / 4))
    if k >= 1 and verify_identity(_T1_COMBO * k, formula):
        return k
    raise ValueError(f"formula does not equal a positive multiple of t1: {formula}")


def compute_pi(formula: GregoryCombo, digits: int, max_terms: int | None = None) -> PiResult:
    """Digits of pi from a verified Machin-like formula.

    The combo must equal k * t_1 for a positive integer k (verified
    exactly); pi is then 4/k times its value.  ``max_terms`` caps every
    term's series individually.  The output carries at least ``digits``
    decimal digits; their correctness is limited by the series tails when
    ``max_terms`` is set.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    k = _formula_multiple(formula)
    items = formula.items()
    if max_terms is None and any(t.re == t.im for t, _ in items):
        raise ValueError("a formula containing t1 itself needs an explicit term cap")
    est = sum(_estimate_terms(t.re, t.im, digits) for t, _ in items)
    guard = _guard_for(digits, est)
    scale = digits + guard
    total = 0
    used = []
    for term, coef in items:
        mantissa, n_terms = _series_mantissa(term.re, term.im, scale, max_terms)
        total += coef * mantissa
        used.append(n_terms)
    pi_mantissa = 4 * total // k
    fixed = FixedPoint(pi_mantissa, digits, guard)
    text = fixed.decimal_string()
    if not text.startswith("3."):
        raise ArithmeticError(f"computed value {text[:12]}... is not pi")
    return PiResult(formula, text, tuple(used), digits)


def tail_correct_digits(formula: GregoryCombo, digits: int, max_terms: int) -> int:
    """Correct-digit estimate when every series is capped at ``max_terms``.

    Bounds the error by the first omitted term of each series (alternating
    series bound) plus floor-division dust, and reports how many leading
    digits that error cannot reach.
    """
    k = _formula_multiple(formula)
    items = formula.items()
    est = sum(_estimate_terms(t.re, t.im, digits) for t, _ in items)
    guard = _guard_for(digits, est)
    scale = digits + guard
    err = 0
    for term, coef in items:
        a, b = term.re, term.im
        omitted = 10**scale * b ** (2 * max_terms + 1) // (a ** (2 * max_terms + 1) * (2 * max_terms + 1))
        err += abs(coef) * (omitted + 2 * max_terms + 4)
    total = 4 * err // k + 1
    return min(digits, scale - len(_decimal_digits(total)))


def compare_digits(s1: str, s2: str) -> int:
    """Number of agreeing leading digits of two decimal expansions of the
    form "3.…" (the decimal point is not counted)."""
    for s in (s1, s2):
        if not s.startswith("3.") or not s[2:].isdigit():
            raise ValueError(f"malformed decimal expansion: {s[:16]!r}")
    count = 0
    for c1, c2 in zip(s1, s2):
        if c1 != c2:
            break
        if c1 != ".":
            count += 1
    return count


def classical_bounds_check(digits: str | None = None) -> bool:
    """Check the classical rational bounds on pi.

    Archimedes: 223/71 < pi < 22/7 (strict), and Zu's ratio 355/113 is
    within relative error 9e-8.  With no argument, pi is computed to 30
    digits from Machin's formula; passing a digit string checks that string
    instead (a corrupted one fails).
    """
    if digits is None:
        digits = compute_pi(FORMULAS["machin"], 30).digits
    if not digits.startswith("3.") or not digits[2:].isdigit():
        return False
    # 120 digits decide both bounds with over a hundred orders of margin
    digits = digits[:122]
    frac_digits = len(digits) - 2
    value = Fraction(int(digits.replace(".", "", 1)), 10**frac_digits)
    if not (Fraction(223, 71) < value < Fraction(22, 7)):
        return False
    return abs(value - Fraction(355, 113)) / value < Fraction(9, 10**8)
