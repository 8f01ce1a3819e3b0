"""Humps, truncated humps and the monotone branch of T on X*.

A balanced word ``w`` of order ``m`` spans ``I = [x0, x0 + 4**-m]`` with
``x0 = 0.w``.  Over ``I`` the graph of T is a copy of the whole graph
scaled by ``4**-m`` and lifted by ``T(x0)``, so ``J = T(I)`` has length
``(2/3) 4**-m`` and the truncated part ``Jt`` has length ``(1/2) 4**-m``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .digits import PeriodicReal, catalan, classify_word, walk, word_value
from .errors import DomainError, ResourceError, StructuralError
from .evaluate import enclosure_bounds, takagi_dyadic
from .numerics import Dyadic, RatInterval, enumeration_cap

BOUNDARY_POLICIES = ("closed", "half-open")


@dataclass(frozen=True)
class Hump:
    word: str
    x0: Dyadic
    m: int
    generation: int
    leading: bool
    I: RatInterval
    J: RatInterval
    Jt: RatInterval

    @property
    def height(self) -> Fraction:
        """``T(x0)``, the common lower end of ``J`` and ``Jt``."""
        return self.J.lo


def _make_hump(word: str, m: int, tval: Fraction) -> Hump:
    cls = classify_word(word)
    x0 = word_value(word)
    size = Fraction(1, 4**m)
    return Hump(
        word=word,
        x0=Dyadic.from_rational(x0),
        m=m,
        generation=cls.generation,
        leading=cls.leading,
        I=RatInterval(x0, x0 + size),
        J=RatInterval(tval, tval + Fraction(2, 3) * size),
        Jt=RatInterval(tval, tval + size / 2),
    )


def hump(w: str) -> Hump:
    cls = classify_word(w)
    if not cls.balanced:
        raise StructuralError(f"{w!r} is not a balanced word")
    tval = takagi_dyadic(Dyadic(int(w, 2) if w else 0, len(w)))
    return _make_hump(w, cls.order, tval)


def compose(outer: str, inner: str) -> Hump:
    """The hump of ``outer + inner``: ``inner``'s hump placed inside ``outer``'s."""
    for w in (outer, inner):
        cls = classify_word(w)
        if not (cls.balanced and cls.leading):
            raise StructuralError(f"{w!r} is not a leading balanced word")
    return hump(outer + inner)


def staircase(n: int) -> Hump:
    """The leading hump over ``sum_{i<=n} 4**-i``, i.e. the word ``(01)**n``."""
    if n < 0:
        raise DomainError("staircase index must be nonnegative")
    return hump("01" * n)


def staircase_index(y) -> int:
    """The ``n`` with ``y`` in ``[(2/3)(1-4**-n), (2/3)(1-4**-(n+1)))``."""
    y = Fraction(y)
    if not 0 <= y < Fraction(2, 3):
        raise DomainError(f"{y} is outside [0, 2/3)")
    n = 0
    while y >= Fraction(2, 3) * (1 - Fraction(1, 4 ** (n + 1))):
        n += 1
    return n


def _check_cap(max_order: int, leading_only: bool, cap: Optional[int]) -> None:
    from math import comb

    cap = enumeration_cap() if cap is None else cap
    if leading_only:
        needed = sum(catalan(m) for m in range(max_order + 1))
    else:
        needed = sum(comb(2 * m, m) for m in range(max_order + 1))
    if needed > cap:
        raise ResourceError(f"humps of order <= {max_order}", needed, cap)


def _scaled(y: Fraction) -> tuple[int, int]:
    y = Fraction(y)
    return y.numerator, y.denominator


def iter_balanced_bases(max_order: int, leading_only: bool = True,
                        level: Optional[Fraction] = None,
                        prefix: str = "") -> Iterator[tuple[str, int]]:
    """Yield ``(word, B)`` for balanced words with ``T(0.word) = B / 2**len(word)``.

    Words extend ``prefix`` and have order at most ``max_order``.  With a
    ``level`` the search drops every prefix whose range enclosure misses
    it, which keeps level queries cheap at large orders.
    """
    maxlen = 2 * max_order
    if level is not None:
        a, c = _scaled(level)
    B = s = 0
    for i, b in enumerate(prefix):
        if b == "1":
            B = 2 * B + s + 1
        else:
            B = 2 * B
        s += 1 if b == "0" else -1
        if leading_only and s < 0:
            return
    buf = list(prefix)

    def rec(n: int, B: int, s: int):
        if level is not None:
            lo = 3 * c * (B + min(0, s))
            mid = 3 * a << n
            if mid < lo or mid > 3 * c * (B + max(0, s)) + 2 * c:
                return
        if s == 0 and n % 2 == 0:
            yield "".join(buf), B
        for bit in (0, 1):
            ns = s + (1 if bit == 0 else -1)
            if (leading_only and ns < 0) or abs(ns) > maxlen - n - 1:
                continue
            buf.append("01"[bit])
            yield from rec(n + 1, 2 * B + bit * (s + 1), ns)
            buf.pop()

    if len(prefix) > maxlen or abs(s) > maxlen - len(prefix):
        return
    yield from rec(len(prefix), B, s)


def in_interval(y: Fraction, iv: RatInterval, boundary: str = "closed") -> bool:
    if boundary == "closed":
        return iv.lo <= y <= iv.hi
    if boundary == "half-open":
        # (lo, hi]: a level shared by two abutting Jt intervals counts once
        return iv.lo < y <= iv.hi
    raise ValueError(f"unknown boundary policy {boundary!r}")


def on_boundary(h: Hump, y) -> bool:
    return y == h.Jt.lo or y == h.Jt.hi


def hits_truncated(y, max_order: int, leading_only: bool = True,
                   boundary: str = "closed", cap: Optional[int] = None,
                   prefix: str = "") -> list[Hump]:
    """Humps of order <= ``max_order`` whose ``Jt`` contains ``y``."""
    y = Fraction(y)
    if not 0 <= y <= Fraction(2, 3):
        raise DomainError(f"level {y} is outside [0, 2/3]")
    if boundary not in BOUNDARY_POLICIES:
        raise ValueError(f"unknown boundary policy {boundary!r}")
    _check_cap(max_order, leading_only, cap)
    out = []
    for word, B in iter_balanced_bases(max_order, leading_only, level=y, prefix=prefix):
        m = len(word) // 2
        h = _make_hump(word, m, Fraction(B, 1 << (2 * m)))
        if in_interval(y, h.Jt, boundary):
            out.append(h)
    out.sort(key=lambda h: (h.m, h.I.lo))
    return out


def is_right_endpoint_M(y, max_order: int) -> bool:
    """Whether ``y = T(x0) + (2/3) 4**-m`` for a balanced ``x0`` of order <= max_order."""
    return right_endpoint_witness(y, max_order) is not None


def right_endpoint_witness(y, max_order: int) -> Optional[str]:
    y = Fraction(y)
    for m in range(max_order + 1):
        v = y - Fraction(2, 3 * 4**m)
        if v < 0:
            continue
        if (v.denominator & (v.denominator - 1)) or v.denominator > 4**m:
            continue
        target = v * 4**m
        for word, B in iter_balanced_bases(m, leading_only=False, level=v):
            if len(word) == 2 * m and B == target:
                return word
    return None


@dataclass(frozen=True)
class XStarPoint:
    """A point on the increasing branch of T, located to a given precision.

    ``enclosure`` brackets the point, ``level_enclosure`` brackets its
    T-value, ``digits`` is the certified binary prefix and ``exact`` /
    ``periodic`` are filled in when the digits were seen to repeat.
    """

    enclosure: RatInterval
    level_enclosure: RatInterval
    digits: str
    prefix_walk_ok: bool
    exact: Optional[Fraction] = None
    periodic: Optional[PeriodicReal] = None

    def lift(self, x0: Fraction, m: int, t0: Fraction, mirror: bool = False) -> "XStarPoint":
        """Image under ``t -> x0 + 4**-m * t`` (or ``1 - t`` first, if mirrored)."""
        size = Fraction(1, 4**m)
        enc = self.enclosure
        if mirror:
            enc = RatInterval(1 - enc.hi, 1 - enc.lo)
        exact = periodic = None
        if self.exact is not None:
            exact = x0 + size * ((1 - self.exact) if mirror else self.exact)
            word = "".join(format(int(x0 * 4**m), f"0{2 * m}b")) if m else ""
            if not mirror:
                periodic = self.periodic.behind(word)
            elif self.exact > 0:
                periodic = self.periodic.complement().behind(word)
            elif exact < 1:
                periodic = PeriodicReal.from_rational(exact)
        return XStarPoint(
            enclosure=enc.scale_shift(size, x0),
            level_enclosure=self.level_enclosure.scale_shift(size, t0),
            digits="",
            prefix_walk_ok=self.prefix_walk_ok,
            exact=exact,
            periodic=periodic,
        )


def xstar_invert(y, precision: int = 64, budget: int = 4096) -> XStarPoint:
    """Locate ``x`` in [0, 1/2] with walk ``D_j >= 1`` for all j and ``T(x) = y``.

    Digits are chosen greedily.  With prefix ``p`` of length n, walk height
    ``s`` and ``r = 2**n (y - T(0.p))`` the attainable values after ``p0``
    and ``p1`` meet at ``r = (s+1)/2``, so the next digit is 1 exactly when
    ``s >= 2`` and ``2r >= s+1``.  Ties go right, which picks the dyadic
    point when one exists.  The state ``(r, s)`` determines the remaining
    digits, so a repeated state yields the exact periodic expansion.
    """
    y = Fraction(y)
    if not 0 <= y <= Fraction(1, 2):
        raise DomainError(f"{y} is outside [0, 1/2]")
    digits = ["0"]
    r, s, B = 2 * y, 1, 0
    seen: dict[tuple[Fraction, int], int] = {}
    exact_pr: Optional[PeriodicReal] = None
    limit = max(precision, 1) + budget
    while len(digits) < limit:
        if r == 0:
            exact_pr = PeriodicReal("".join(digits), "")
            break
        key = (r, s)
        if key in seen:
            i = seen[key]
            exact_pr = PeriodicReal("".join(digits[:i]), "".join(digits[i:]))
            break
        seen[key] = len(digits)
        bit = 1 if s >= 2 and 2 * r >= s + 1 else 0
        r = 2 * r - bit * (s + 1)
        B = 2 * B + bit * (s + 1)
        s += 1 if bit == 0 else -1
        digits.append("01"[bit])
    word = "".join(digits[:precision]) if precision >= 1 else "0"
    if exact_pr is not None:
        exact_pr = exact_pr.canonical()
        word = exact_pr.bits(max(precision, 1))
    n = len(word)
    Bn = 0
    sn = 0
    for ch in word:
        Bn = 2 * Bn + (sn + 1 if ch == "1" else 0)
        sn += 1 if ch == "0" else -1
    lo, hi = enclosure_bounds(Bn, sn, n)
    left = word_value(word)
    exact = exact_pr.to_rational() if exact_pr is not None else None
    return XStarPoint(
        enclosure=RatInterval(exact, exact) if exact is not None
        else RatInterval(left, left + Fraction(1, 1 << n)),
        level_enclosure=RatInterval(lo, hi),
        digits=word,
        prefix_walk_ok=all(d >= 1 for d in walk(word).values),
        exact=exact,
        periodic=exact_pr,
    )


def hump_level_points(h: Hump, y, precision: int = 64,
                      budget: int = 4096) -> tuple[XStarPoint, XStarPoint]:
    """Left and right points where the level line at ``y`` meets ``H^t(h)``."""
    y = Fraction(y)
    if y not in h.Jt:
        raise DomainError(f"{y} is not in Jt = {h.Jt}")
    xi = xstar_invert((y - h.height) * 4**h.m, precision, budget)
    x0 = h.I.lo
    return (xi.lift(x0, h.m, h.height), xi.lift(x0, h.m, h.height, mirror=True))
