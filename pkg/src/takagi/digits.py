"""Binary expansions, the digit walk ``D_k`` and local level sets.

Words are plain ``str`` objects over ``"01"``.  Appending a ``0`` moves
the walk up by one and appending a ``1`` moves it down by one.  Dyadic
rationals always use the expansion that ends in zeros.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional

from sympy.ntheory import n_order

from .errors import DomainError, ResourceError
from .numerics import enumeration_cap


@dataclass(frozen=True)
class Walk:
    values: tuple[int, ...]
    zero_positions: tuple[int, ...]

    @property
    def final(self) -> int:
        return self.values[-1] if self.values else 0


@dataclass(frozen=True)
class WordClass:
    balanced: bool
    order: Optional[int]
    generation: int
    leading: bool


def _check_word(w: str) -> str:
    if w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def walk(w: str) -> Walk:
    _check_word(w)
    values = tuple(itertools.accumulate(1 if b == "0" else -1 for b in w))
    zeros = tuple(j for j, d in enumerate(values, 1) if d == 0)
    return Walk(values, zeros)


def classify_word(w: str) -> WordClass:
    wk = walk(w)
    balanced = len(w) % 2 == 0 and wk.final == 0
    return WordClass(
        balanced=balanced,
        order=len(w) // 2 if balanced else None,
        generation=len(wk.zero_positions),
        leading=all(d >= 0 for d in wk.values),
    )


def word_value(w: str) -> Fraction:
    """The dyadic rational ``0.w``."""
    return Fraction(int(w, 2), 1 << len(w)) if w else Fraction(0)


def digits_of(x, n: int) -> str:
    """First ``n`` digits of the canonical binary expansion of ``x`` in [0, 1)."""
    x = Fraction(x)
    if not 0 <= x < 1:
        raise DomainError(f"{x} is outside [0, 1)")
    p, q = x.numerator, x.denominator
    return format((p << n) // q, f"0{n}b") if n else ""


def _period_split(x: Fraction) -> tuple[int, int]:
    """Preperiod and period lengths of the binary expansion of ``x``."""
    q = x.denominator
    s = (q & -q).bit_length() - 1
    odd = q >> s
    return s, (n_order(2, odd) if odd > 1 else 0)


@dataclass(frozen=True)
class PeriodicReal:
    """Eventually periodic binary expansion ``0.pre(period)`` of a point in [0, 1).

    Instances built through :meth:`from_rational` are canonical: the
    shortest preperiod and period, and an empty period for dyadics.
    """

    pre: str = ""
    period: str = ""

    def __post_init__(self):
        _check_word(self.pre)
        _check_word(self.period)
        if self.period and "0" not in self.period:
            raise ValueError("all-ones period is not a canonical expansion")

    @classmethod
    def from_rational(cls, x) -> "PeriodicReal":
        x = Fraction(x)
        if not 0 <= x < 1:
            raise DomainError(f"{x} is outside [0, 1)")
        s, L = _period_split(x)
        head = x * (1 << s)
        a = head.numerator // head.denominator
        pre = format(a, f"0{s}b") if s else ""
        if not L:
            return cls(pre, "")
        tail = head - a
        block = tail * ((1 << L) - 1)
        return cls(pre, format(block.numerator, f"0{L}b"))

    def to_rational(self) -> Fraction:
        x = word_value(self.pre)
        if self.period:
            L = len(self.period)
            x += Fraction(int(self.period, 2), (1 << L) - 1) / (1 << len(self.pre))
        return x

    def canonical(self) -> "PeriodicReal":
        """Shortest preperiod and period; works on the digits, no factoring."""
        pre, period = self.pre, self.period
        if not period.strip("0"):
            return PeriodicReal(pre.rstrip("0"), "")
        L = len(period)
        for d in range(1, L + 1):
            if L % d == 0 and period == period[:d] * (L // d):
                period = period[:d]
                break
        while pre and pre[-1] == period[-1]:
            pre, period = pre[:-1], period[-1] + period[:-1]
        return PeriodicReal(pre, period)

    def complement(self) -> "PeriodicReal":
        """The expansion of ``1 - x`` for ``0 < x < 1``."""
        if self.is_dyadic:
            return PeriodicReal.from_rational(1 - self.to_rational())
        return PeriodicReal(_flip(self.pre), _flip(self.period))

    def behind(self, word: str) -> "PeriodicReal":
        """The point ``0.word`` followed by these digits."""
        return PeriodicReal(word + self.pre, self.period).canonical()

    @property
    def is_dyadic(self) -> bool:
        return not self.period.strip("0")

    @property
    def _tail(self) -> str:
        return self.period if self.period.strip("0") else "0"

    def digit(self, j: int) -> str:
        """The ``j``-th digit, counted from 1."""
        if j <= len(self.pre):
            return self.pre[j - 1]
        tail = self._tail
        return tail[(j - len(self.pre) - 1) % len(tail)]

    def bits(self, n: int) -> str:
        return "".join(self.digit(j) for j in range(1, n + 1))

    def walk_values(self, n: int) -> tuple[int, ...]:
        return walk(self.bits(n)).values

    def finite_zeros(self) -> Optional[tuple[int, ...]]:
        """All ``j >= 1`` with ``D_j = 0``, or None when there are infinitely many."""
        pre, tail = self.pre, self._tail
        zeros = list(walk(pre).zero_positions)
        d0 = walk(pre).final
        steps = walk(tail).values
        drift = steps[-1]
        if drift == 0:
            if any(d0 + v == 0 for v in steps):
                return None
            return tuple(zeros)
        lo, hi = min(steps), max(steps)
        start, pos = d0, len(pre)
        # once the whole next block stays on one side of 0 it never comes back
        while not (drift > 0 and start + lo > 0) and not (drift < 0 and start + hi < 0):
            zeros.extend(pos + i for i, v in enumerate(steps, 1) if start + v == 0)
            start += drift
            pos += len(tail)
        return tuple(zeros)

    def zero_positions(self, count: int) -> tuple[int, ...]:
        """The first ``count`` zero positions (fewer if the walk has fewer)."""
        finite = self.finite_zeros()
        if finite is not None:
            return finite[:count]
        out, d, j = [], 0, 0
        while len(out) < count:
            j += 1
            d += 1 if self.digit(j) == "0" else -1
            if d == 0:
                out.append(j)
        return tuple(out)

    def __str__(self) -> str:
        if self.is_dyadic:
            return f"0.{self.pre or '0'}"
        return f"0.{self.pre}({self.period})"


_PERIODIC_RE = re.compile(r"^\s*0\.([01]*)(?:\(([01]+)\))?\s*$")


def parse_periodic(text: str) -> PeriodicReal:
    """Parse the binary form ``0.pre(period)``, e.g. ``"0.00(1100)"``."""
    m = _PERIODIC_RE.match(text)
    if not m or not (m.group(1) or m.group(2)):
        raise ValueError(f"cannot parse binary expansion {text!r}")
    pre, period = m.group(1), m.group(2) or ""
    if period and "0" not in period:
        # 0.w(1) is the dyadic with the terminating expansion
        return PeriodicReal.from_rational(word_value(pre) + Fraction(1, 1 << len(pre)))
    return PeriodicReal(pre, period).canonical()


def _flip(w: str) -> str:
    return w.translate(str.maketrans("01", "10"))


def _segments(x: PeriodicReal, cut: int) -> tuple[str, str]:
    """Digits up to position ``cut`` (>= preperiod) and the aligned period."""
    head = x.bits(cut)
    tail = "".join(x.digit(cut + i) for i in range(1, len(x.period) + 1)) if x.period else ""
    return head, tail


def reflect_to_X0(x: PeriodicReal) -> PeriodicReal:
    """The point whose walk is ``|D_j(x)|``; it lies in X_0 and in x's local level set."""
    zeros = x.finite_zeros()
    if zeros is None:
        cut = len(x.pre)
    else:
        cut = max([len(x.pre), *zeros[-1:]])
    head, tail = _segments(x, cut)
    d, out = 0, []
    for b in head:
        step = 1 if b == "0" else -1
        out.append("0" if abs(d + step) > abs(d) else "1")
        d += step
    if zeros is not None and tail:
        # past the last zero the sign of D is fixed
        after = d if d else (1 if tail[0] == "0" else -1)
        if after < 0:
            tail = _flip(tail)
    elif zeros is None and tail:
        # D is periodic past the preperiod, so |D| is periodic as well
        dd, tout = d, []
        for b in tail:
            step = 1 if b == "0" else -1
            tout.append("0" if abs(dd + step) > abs(dd) else "1")
            dd += step
        tail = "".join(tout)
    return PeriodicReal("".join(out), tail).canonical()


@dataclass(frozen=True)
class LocalLevelSet:
    """Members of a local level set, sorted by value.

    ``truncated`` is set when the set is a Cantor set and only the sign
    choices at the first few walk zeros were enumerated.
    """

    seed: PeriodicReal
    members: tuple[PeriodicReal, ...]
    zero_positions: tuple[int, ...]
    truncated: bool

    def values(self) -> list[Fraction]:
        return [m.to_rational() for m in self.members]


def local_level_set(x: PeriodicReal, depth: int = 4) -> LocalLevelSet:
    """Enumerate ``{x' : |D_j(x')| = |D_j(x)| for all j}``.

    Each excursion of the walk between consecutive zeros can be mirrored
    independently.  With finitely many zeros the final, unbounded
    excursion can be mirrored too, except for dyadics where that would
    produce an all-ones tail.  With infinitely many zeros only the first
    ``depth`` excursions are varied and the result is marked truncated.
    """
    zeros = x.finite_zeros()
    truncated = zeros is None
    if truncated:
        zeros = x.zero_positions(depth)
    cut = max(len(x.pre), zeros[-1] if zeros else 0)
    head, tail = _segments(x, cut)
    bounds = (0, *zeros)
    pieces = [head[a:b] for a, b in zip(bounds, bounds[1:])]
    rest = head[bounds[-1]:]
    members = set()
    for signs in itertools.product((False, True), repeat=len(pieces) + (not truncated)):
        word = "".join(_flip(p) if f else p for p, f in zip(pieces, signs))
        period = tail
        if not truncated and signs[-1]:
            if x.is_dyadic:
                continue  # all-ones tail is not a canonical expansion
            word += _flip(rest)
            period = _flip(tail)
        else:
            word += rest
        members.add(PeriodicReal(word, period).canonical())
    ordered = tuple(sorted(members, key=PeriodicReal.to_rational))
    return LocalLevelSet(x, ordered, tuple(zeros), truncated)


def _count_balanced(max_order: int) -> int:
    return sum(comb(2 * m, m) for m in range(max_order + 1))


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def _walk_words(length: int, leading: bool) -> Iterator[str]:
    """Words of the given even length whose walk ends at 0, in numeric order."""
    buf = []

    def rec(d: int):
        left = length - len(buf)
        if left == 0:
            yield "".join(buf)
            return
        for b, step in (("0", 1), ("1", -1)):
            nd = d + step
            if (leading and nd < 0) or abs(nd) > left - 1:
                continue
            buf.append(b)
            yield from rec(nd)
            buf.pop()

    yield from rec(0)


def enumerate_balanced(max_order: int, generation: Optional[int] = None,
                       cap: Optional[int] = None) -> list[str]:
    """Balanced words of order at most ``max_order``, by (order, value)."""
    cap = enumeration_cap() if cap is None else cap
    needed = _count_balanced(max_order)
    if needed > cap:
        raise ResourceError(f"balanced words of order <= {max_order}", needed, cap)
    out = []
    for m in range(max_order + 1):
        for w in _walk_words(2 * m, leading=False):
            if generation is None or len(walk(w).zero_positions) == generation:
                out.append(w)
    return out


def enumerate_leading(max_order: int, cap: Optional[int] = None) -> list[str]:
    """Dyck words (leading balanced words) of order at most ``max_order``."""
    cap = enumeration_cap() if cap is None else cap
    needed = sum(catalan(m) for m in range(max_order + 1))
    if needed > cap:
        raise ResourceError(f"leading words of order <= {max_order}", needed, cap)
    return [w for m in range(max_order + 1) for w in _walk_words(2 * m, leading=True)]
