"""Exact and certified evaluation of the Takagi function.

Two independent routes are kept:

* :func:`takagi_dyadic` / :func:`takagi_rational` return exact values.  For
  a rational with preperiod ``s`` and period ``L`` in base 2 the partial
  sum over the preperiod is added to ``2**-s * T(u)``, where the purely
  periodic tail ``u`` satisfies ``T(u) = S_L(u) + 2**-L * T(u)``.
* :func:`takagi_series` sums the defining series directly and adds the
  tail bound ``[0, 2**-N]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from .digits import _period_split, classify_word, walk, word_value
from .errors import DomainError, StructuralError
from .numerics import Dyadic, RatInterval, fraction_from_mpq

RANGE = RatInterval(Fraction(0), Fraction(2, 3))


@dataclass(frozen=True)
class AffinePart:
    """Partial sum ``S_n`` on the dyadic interval of a word.

    On ``[left, left + 2**-n]``::

        T(x) = base + slope*(x - left) + 2**-n * T(2**n*x - k)
    """

    base: Fraction
    slope: int
    n: int
    left: Fraction


@dataclass(frozen=True)
class Enclosure:
    interval: RatInterval

    @property
    def width_bound(self) -> Fraction:
        return self.interval.width

    def __contains__(self, y) -> bool:
        return y in self.interval


def phi(x: Fraction) -> Fraction:
    """Distance from ``x`` to the nearest integer."""
    r = x - (x.numerator // x.denominator)
    return min(r, 1 - r)


def _check_unit(x: Fraction) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    return x


def takagi_dyadic(d) -> Fraction:
    """Exact ``T(k/2**n)``: every term past the ``n``-th vanishes."""
    if not isinstance(d, Dyadic):
        d = Dyadic.from_rational(Fraction(d))
    x = _check_unit(d.to_rational())
    k, n = d.k, d.n
    full = 1 << n
    # sum_j min(r_j, 2^n - r_j) / 2^(n+j) over a common denominator
    total = 0
    for j in range(n):
        r = (k << j) % full
        total += min(r, full - r) << (n - 1 - j)
    return Fraction(total, 1 << (2 * n - 1)) if n else Fraction(0)


def _orbit_residues(a: int, q: int, L: int) -> np.ndarray:
    """``a * 2**j mod q`` for ``j < L``."""
    if q < 1 << 31:
        r = np.array([a % q], dtype=np.int64)
        while len(r) < L:
            step = pow(2, len(r), q)
            r = np.concatenate([r, (r * step) % q])
        return r[:L]
    out, r = [], a % q
    for _ in range(L):
        out.append(r)
        r = (2 * r) % q
    return np.array(out, dtype=object)


def _weighted_sum(values: np.ndarray, width: int) -> int:
    """``sum_j values[j] * 2**(L-1-j)`` for nonnegative ints below ``2**width``."""
    if values.dtype == object:
        total = 0
        for v in values:
            total = 2 * total + int(v)
        return total
    L = len(values)
    pad = (-L) % 8
    total = 0
    for b in range(width):
        plane = ((values >> b) & 1).astype(np.uint8)
        packed = np.packbits(plane).tobytes()
        total += (int.from_bytes(packed, "big") >> pad) << b
    return total


def _periodic_value(u: Fraction, L: int):
    """``T(u)`` for ``u = a/q`` purely periodic with period ``L``.

    ``T(u) = S_L(u) / (1 - 2**-L)`` and ``phi(2**j u) = min(r_j, q-r_j)/q``.
    """
    a, q = u.numerator, u.denominator
    r = _orbit_residues(a, q, L)
    dist = np.minimum(r, q - r) if r.dtype != object else np.array(
        [min(int(v), q - int(v)) for v in r], dtype=object)
    total = _weighted_sum(dist, q.bit_length())
    return gmpy2.mpq(2 * total, q * ((1 << L) - 1))


def takagi_rational(x) -> Fraction:
    x = _check_unit(x)
    if x == 1:
        return Fraction(0)
    s, L = _period_split(x)
    return _takagi_split(x, s, L)


def takagi_periodic(p) -> Fraction:
    """Exact ``T`` of a :class:`~takagi.digits.PeriodicReal`.

    The digit lengths are used directly, so no multiplicative order has
    to be computed; this matters for points with long periods.
    """
    return _takagi_split(p.to_rational(), len(p.pre), len(p.period))


def _takagi_split(x: Fraction, s: int, L: int) -> Fraction:
    """T(x) for x whose expansion repeats with period L after s digits.

    With ``x = (k + u) / 2**s``, ``T(x) = (B + D*u + T(u)) / 2**s`` where
    ``B = 2**s T(k/2**s)`` and ``D`` is the walk height after ``s`` digits.
    """
    k, rem = divmod(x.numerator << s, x.denominator)
    B = D = 0
    for ch in format(k, f"0{s}b") if s else "":
        if ch == "1":
            B = 2 * B + D + 1
            D -= 1
        else:
            B = 2 * B
            D += 1
    u = gmpy2.mpq(rem, x.denominator)
    tail = _periodic_value(Fraction(rem, x.denominator), L) if L else gmpy2.mpq(0)
    return fraction_from_mpq((B + D * u + tail) / (1 << s))


def takagi(x) -> Fraction:
    """Exact value of T at a rational point of [0, 1]."""
    return takagi_rational(x)


def takagi_series(x, terms: int) -> Enclosure:
    """Partial sum of ``terms`` terms plus the tail bound ``[0, 2**-terms]``."""
    x = _check_unit(x)
    if terms < 1:
        raise DomainError("need at least one term")
    s = Fraction(0)
    for n in range(terms):
        s += phi(x * (1 << n)) / (1 << n)
    return Enclosure(RatInterval(s, s + Fraction(1, 1 << terms)))


def affine_part(w: str) -> AffinePart:
    n = len(w)
    left = word_value(w)
    return AffinePart(takagi_dyadic(Dyadic(int(w, 2) if w else 0, n)), walk(w).final, n, left)


def enclosure_bounds(base_num: int, slope: int, n: int) -> tuple[Fraction, Fraction]:
    """T-range bounds for a prefix of length ``n`` with ``base = base_num/2**n``."""
    scale = 1 << n
    lo = Fraction(base_num + min(0, slope), scale)
    hi = Fraction(base_num + max(0, slope), scale) + Fraction(2, 3 * scale)
    return lo, hi


def range_enclosure(w: str) -> Enclosure:
    """Sound enclosure of ``T`` over the dyadic interval of ``w``."""
    part = affine_part(w)
    lo, hi = enclosure_bounds(int(part.base * (1 << part.n)), part.slope, part.n)
    return Enclosure(RatInterval(lo, hi))


def lift_into_hump(x0: str, t) -> Fraction:
    """Map ``t`` in [0, 1] into the hump over the balanced word ``x0``."""
    cls = classify_word(x0)
    if not cls.balanced:
        raise StructuralError(f"{x0!r} is not balanced")
    t = _check_unit(t)
    return word_value(x0) + t / (1 << (2 * cls.order))
