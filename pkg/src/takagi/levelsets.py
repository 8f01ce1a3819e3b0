"""Level sets of T: certified covers, finite local level sets and statistics."""
from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .digits import PeriodicReal, catalan, local_level_set
from .errors import DomainError, PreconditionError
from .evaluate import takagi_periodic, takagi_rational
from .humps import (Hump, XStarPoint, _check_cap, compose, hits_truncated, hump,
                    hump_level_points, is_right_endpoint_M, iter_balanced_bases,
                    on_boundary, staircase_index)
from .numerics import RatInterval

MAX_DEPTH = 40
BRACKET_CAP = 1_000_000
TOP = Fraction(2, 3)


@dataclass
class LevelSetReport:
    y: Fraction
    depth: int
    exact_points: list[Fraction]
    brackets: list[RatInterval]
    complete_cover: bool = True
    truncated: bool = False
    growth: list[tuple[int, int]] = field(default_factory=list)
    # binary expansions of exact points, where known; derived data
    expansions: dict = field(default_factory=dict, compare=False, repr=False)

    def covers(self, x) -> bool:
        x = Fraction(x)
        if x in self.exact_points:
            return True
        i = bisect.bisect_right([b.lo for b in self.brackets], x)
        return any(x in b for b in self.brackets[max(0, i - 1):i + 1])


def _check_level(y) -> Fraction:
    y = Fraction(y)
    if not 0 <= y <= TOP:
        raise DomainError(f"level {y} is outside [0, 2/3]")
    return y


def member(x, y) -> bool:
    """Exact test of ``T(x) = y``; ``x`` may be a rational or a PeriodicReal."""
    if isinstance(x, PeriodicReal):
        return takagi_periodic(x) == Fraction(y)
    return takagi_rational(x) == Fraction(y)


def solve(y, depth: int = 20, max_order: int = 3, boundary: str = "closed",
          cap: int = BRACKET_CAP) -> LevelSetReport:
    """Cover ``L(y)`` by dyadic intervals of width ``2**-depth``.

    Intervals are refined breadth first and kept while their range
    enclosure contains ``y``, so every solution stays covered.  Dyadic
    endpoints hitting ``y`` exactly become exact points, and so do the
    exact intersection points with truncated leading humps up to
    ``max_order`` together with their local level sets.
    """
    y = _check_level(y)
    if not 0 <= depth <= MAX_DEPTH:
        raise DomainError(f"depth {depth} is outside [0, {MAX_DEPTH}]")
    a, c = y.numerator, y.denominator
    frontier = [(0, 0, 0)]  # (k, 2**n * T(k/2**n), slope) on [k/2**n, (k+1)/2**n]
    growth = [(0, 1)]
    n = 0
    truncated = False
    while n < depth:
        nxt = []
        target = 3 * a << (n + 1)
        for k, B, s in frontier:
            for bit in (0, 1):
                nB = 2 * B + bit * (s + 1)
                ns = s + (1 if bit == 0 else -1)
                if 3 * c * (nB + min(0, ns)) <= target <= 3 * c * (nB + max(0, ns)) + 2 * c:
                    nxt.append((2 * k + bit, nB, ns))
        if len(nxt) > cap:
            truncated = True
            break
        frontier = nxt
        n += 1
        growth.append((n, len(frontier)))
    scale = 1 << n
    exact: dict[Fraction, Optional[PeriodicReal]] = {}
    brackets = []
    for k, B, s in frontier:
        brackets.append(RatInterval(Fraction(k, scale), Fraction(k + 1, scale)))
        if B * c == a * scale:
            exact[Fraction(k, scale)] = None
        if (B + s) * c == a * scale:
            exact[Fraction(k + 1, scale)] = None
    if max_order is not None and max_order >= 0 and not truncated:
        for h in hits_truncated(y, max_order, True, boundary):
            for pt in hump_level_points(h, y):
                if pt.exact is None:
                    continue
                exact[pt.exact] = pt.periodic
                if pt.periodic is not None:
                    fam = local_level_set(pt.periodic)
                    if not fam.truncated:
                        exact.update((m.to_rational(), m) for m in fam.members)
        exact = {x: p for x, p in exact.items() if member(x if p is None else p, y)}
    for x in exact:
        if exact[x] is None and x < 1:
            exact[x] = PeriodicReal.from_rational(x)  # dyadic: no factoring needed
    return LevelSetReport(y, n, sorted(exact), brackets, True, truncated, growth, exact)


def count_finite_locals(y, max_order: int, boundary: str = "closed") -> tuple[int, list[Hump]]:
    """Lower bound for the number of finite local level sets in ``L(y)``.

    Each truncated leading hump met by the level line corresponds to one
    finite local level set.
    """
    hs = hits_truncated(_check_level(y), max_order, True, boundary)
    return len(hs), hs


@dataclass(frozen=True)
class LocalClassRecord:
    witness: Hump
    left: XStarPoint
    right: XStarPoint
    representative: Optional[PeriodicReal]
    members: tuple[PeriodicReal, ...]
    exact: bool
    boundary: bool

    @property
    def size(self) -> int:
        return len(self.members)


def finite_local_reps(y, max_order: int, boundary: str = "closed",
                      precision: int = 64, budget: int = 4096) -> list[LocalClassRecord]:
    y = _check_level(y)
    out = []
    for h in hits_truncated(y, max_order, True, boundary):
        left, right = hump_level_points(h, y, precision, budget)
        rep, members = None, ()
        if left.periodic is not None:
            rep = left.periodic
            members = local_level_set(rep).members
        out.append(LocalClassRecord(h, left, right, rep, members, rep is not None,
                                    on_boundary(h, y)))
    return out


def _balanced_prefixes(x: PeriodicReal, n: int) -> list[str]:
    return [x.bits(z) for z in x.zero_positions(n)]


def approach_sequence(x, n: int, precision: int = 48,
                      max_order: int = 12) -> list[XStarPoint]:
    """Points of ``L(T(x)) ∩ X_0`` converging to ``x`` from distinct local level sets.

    For the k-th balanced prefix ``x_k`` of ``x`` the level is rescaled into
    the hump of ``x_k``, located on a staircase hump there and the leftmost
    intersection with that truncated hump is returned.
    """
    if not isinstance(x, PeriodicReal):
        x = PeriodicReal.from_rational(x)
    if x.finite_zeros() is not None:
        raise PreconditionError(f"{x} has finitely many walk zeros")
    if any(d < 0 for d in x.walk_values(len(x.pre) + 2 * len(x.period))):
        raise PreconditionError(f"{x} is not in X_0")
    xv = x.to_rational()
    y = takagi_rational(xv)
    if is_right_endpoint_M(y, max_order):
        raise PreconditionError(f"level {y} is a right endpoint of some J(x0)")
    out: list[XStarPoint] = []
    last = None
    # consecutive prefixes can land on the same staircase hump when x itself
    # follows the staircase; such repeats are skipped
    for word in _balanced_prefixes(x, 4 * n + 8):
        base = hump(word)
        local = (y - base.height) * 4**base.m
        if local >= TOP:
            raise PreconditionError(f"level {y} is a right endpoint of J({word})")
        h = compose(word, "01" * staircase_index(local))
        left, _ = hump_level_points(h, y, precision + 2 * h.m)
        enc = left.enclosure
        dist = max(abs(enc.lo - xv), abs(enc.hi - xv))
        if enc.lo <= xv <= enc.hi or (last is not None and dist >= last):
            continue
        out.append(left)
        last = dist
        if len(out) == n:
            return out
    raise PreconditionError(f"only {len(out)} distinct approach points in {4 * n + 8} prefixes")


def leading_jt_endpoints(max_order: int, scale_exp: Optional[int] = None,
                         cap: Optional[int] = None) -> tuple[list[int], list[int], int]:
    """``Jt`` endpoints of all leading humps, as integers over ``2**scale_exp``."""
    _check_cap(max_order, True, cap)
    e = 2 * max_order + 1 if scale_exp is None else scale_exp
    los, his = [], []
    for word, B in iter_balanced_bases(max_order, leading_only=True):
        m = len(word) // 2
        lo = B << (e - 2 * m)
        los.append(lo)
        his.append(lo + (1 << (e - 2 * m - 1)))
    return los, his, e


def jt_mass(max_order: int, cap: Optional[int] = None) -> tuple[Fraction, Fraction]:
    """Total length of leading ``Jt`` intervals, by Catalan numbers and by enumeration."""
    closed = sum(Fraction(catalan(m), 2 * 4**m) for m in range(max_order + 1))
    los, his, e = leading_jt_endpoints(max_order, cap=cap)
    enumerated = Fraction(sum(his) - sum(los), 1 << e)
    return closed, enumerated


def average_count_exact(max_order: int, cap: Optional[int] = None) -> Fraction:
    """Mean number of leading ``Jt`` intervals over a uniform level in [0, 2/3]."""
    los, his, e = leading_jt_endpoints(max_order, cap=cap)
    events = sorted([(v, 1) for v in los] + [(v, -1) for v in his])
    area, count, last = 0, 0, 0
    for pos, delta in events:
        area += count * (pos - last)
        count += delta
        last = pos
    return Fraction(area, 1 << e) / TOP


def monte_carlo_average(max_order: int, samples: int, seed: int = 0,
                        cap: Optional[int] = None) -> Fraction:
    """Sample mean of the leading ``Jt`` hit count over seeded uniform levels."""
    los, his, e = leading_jt_endpoints(max_order, cap=cap)
    bits = 40
    # y = (2/3) k / 2**bits; compare 3 * 2**bits * endpoint with k * 2**(e+1)
    f = 3 << bits
    los = sorted(v * f for v in los)
    his = sorted(v * f for v in his)
    rng = random.Random(seed)
    total = 0
    for _ in range(samples):
        t = rng.getrandbits(bits) << (e + 1)
        total += bisect.bisect_right(los, t) - bisect.bisect_left(his, t)
    return Fraction(total, samples)


def balanced_mass(max_order: int) -> Fraction:
    return sum(Fraction(comb(2 * m, m), 2 * 4**m) for m in range(max_order + 1))


@dataclass
class ClassificationReport:
    """Finite-budget evidence about a level set; never a verdict."""

    y: Fraction
    finite_local_count_at_order: dict[int, int]
    exact_points_found: int
    bracket_growth: list[tuple[int, int]]
    flags: dict[str, bool]
    stabilized: bool
    truncated: bool


def classify(y, depth: int = 16, max_order: int = 6) -> ClassificationReport:
    y = _check_level(y)
    report = solve(y, depth, max_order)
    counts = {M: len(hits_truncated(y, M)) for M in range(max_order + 1)}
    stabilized = max_order >= 3 and counts[max_order] == counts[max_order - 3]
    cantor = False
    for p in report.expansions.values():
        if p is not None and p.finite_zeros() is None:
            cantor = True
            break
    flags = {
        "boundary_M_hit": is_right_endpoint_M(y, max_order),
        "boundary_Jt_hit": any(on_boundary(h, y) for h in hits_truncated(y, max_order)),
        "dyadic_image_hit": any(x.denominator & (x.denominator - 1) == 0
                                for x in report.exact_points),
        "cantor_local_detected": cantor,
    }
    return ClassificationReport(y, counts, len(report.exact_points), report.growth,
                                flags, stabilized, report.truncated)
