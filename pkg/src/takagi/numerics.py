"""Exact rational and dyadic arithmetic, and closed rational intervals.

Rationals are :class:`fractions.Fraction` instances, which are kept in
lowest terms with a positive denominator and compare exactly.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

Rational = Fraction

DEFAULT_ENUMERATION_CAP = 20_000_000


def enumeration_cap(default: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Cap on enumerated words, overridable through ``TAKAGI_CAP``."""
    value = os.environ.get("TAKAGI_CAP")
    return int(value) if value else default


def fraction_from_mpq(m) -> Fraction:
    """Convert a gmpy2 ``mpq`` without repeating the (quadratic) gcd."""
    p, q = int(m.numerator), int(m.denominator)
    if hasattr(Fraction, "_from_coprime_ints"):
        return Fraction._from_coprime_ints(p, q)
    return Fraction(p, q, _normalize=False)


def normalize(p: int, q: int) -> Fraction:
    """Return ``p/q`` in lowest terms; ``q == 0`` raises ZeroDivisionError."""
    return Fraction(p, q)


@dataclass(frozen=True)
class Dyadic:
    """The number ``k / 2**n``, normalized so that k is odd or n is 0."""

    k: int
    n: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dyadic scale must be nonnegative")
        k, n = self.k, self.n
        if k == 0:
            n = 0
        else:
            shift = min(n, (k & -k).bit_length() - 1)
            k >>= shift
            n -= shift
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_rational(cls, x: Fraction) -> "Dyadic":
        x = Fraction(x)
        q = x.denominator
        if q & (q - 1):
            raise ValueError(f"{x} is not a dyadic rational")
        return cls(x.numerator, q.bit_length() - 1)

    def to_rational(self) -> Fraction:
        return Fraction(self.k, 1 << self.n)

    def __str__(self) -> str:
        return f"{self.k}/2^{self.n}"


def dyadic_to_rational(d: Dyadic) -> Fraction:
    return d.to_rational()


def is_dyadic(x: Fraction) -> bool:
    q = Fraction(x).denominator
    return q & (q - 1) == 0


@dataclass(frozen=True)
class RatInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def scale_shift(self, a, b) -> "RatInterval":
        """Image of the interval under ``t -> a*t + b`` for ``a >= 0``."""
        a, b = Fraction(a), Fraction(b)
        if a < 0:
            raise ValueError("scale factor must be nonnegative")
        return RatInterval(a * self.lo + b, a * self.hi + b)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def interval_scale_shift(iv: RatInterval, a, b) -> RatInterval:
    return iv.scale_shift(a, b)


_DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")
_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"k/2^n"`` or an integer literal."""
    m = _DYADIC_RE.match(text)
    if m:
        return Dyadic(int(m.group(1)), int(m.group(2))).to_rational()
    m = _RATIONAL_RE.match(text)
    if m:
        return normalize(int(m.group(1)), int(m.group(2) or 1))
    raise ValueError(f"cannot parse rational {text!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal_string(x: Fraction, places: int) -> str:
    """Render ``x`` in decimal, rounded half-up to ``places`` digits."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**places
    q = int(scaled + Fraction(1, 2))
    whole, frac = divmod(q, 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"
