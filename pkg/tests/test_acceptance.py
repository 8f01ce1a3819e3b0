"""Acceptance criteria, each run at its stated tolerance and time budget.

Every criterion records a PASS/FAIL line that the terminal summary prints.
"""
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from oracles import walk_values
from takagi.digits import PeriodicReal, enumerate_balanced, enumerate_leading, local_level_set
from takagi.errors import PreconditionError
from takagi.evaluate import lift_into_hump, takagi_dyadic, takagi_rational, takagi_series
from takagi.humps import staircase, staircase_index, xstar_invert
from takagi.levelsets import (approach_sequence, average_count_exact, count_finite_locals,
                              finite_local_reps, jt_mass, member, monte_carlo_average, solve)
from takagi.numerics import Dyadic

F = Fraction
RESULTS: dict[int, str] = {}


def criterion(number: int, budget: float):
    def wrap(fn):
        def test():
            start = time.perf_counter()
            try:
                fn()
            except BaseException as exc:
                RESULTS[number] = f"criterion {number}: FAIL ({type(exc).__name__}: {exc})"
                raise
            elapsed = time.perf_counter() - start
            ok = elapsed < budget
            RESULTS[number] = (f"criterion {number}: {'PASS' if ok else 'FAIL'} "
                               f"({elapsed:.2f}s, budget {budget:g}s)")
            assert ok, RESULTS[number]
        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test
    return wrap


@criterion(1, 1.0)
def test_criterion_01_exact_evaluation():
    cases = {F(0): F(0), F(1): F(0), F(1, 4): F(1, 2), F(3, 16): F(1, 2), F(5, 16): F(5, 8),
             F(1, 16): F(1, 4), F(1, 6): F(1, 2), F(1, 3): F(2, 3), F(1, 5): F(8, 15)}
    for x, v in cases.items():
        assert takagi_rational(x) == v
        enc = takagi_series(x, 60)
        assert v in enc and enc.width_bound <= F(1, 2**60)


@criterion(2, 5.0)
def test_criterion_02_range():
    n = 14
    best, arg = F(0), []
    for k in range(2**n + 1):
        v = takagi_dyadic(Dyadic(k, n))
        if v > best:
            best, arg = v, [F(k, 2**n)]
        elif v == best:
            arg.append(F(k, 2**n))
    assert best <= F(2, 3) and F(2, 3) - best <= F(1, 2**12)
    assert min(abs(x - F(1, 3)) for x in arg) <= F(1, 2**12)


@criterion(3, 10.0)
def test_criterion_03_self_similarity():
    rng = random.Random(3)
    ts = []
    for _ in range(50):
        q = rng.randint(1, 64)
        ts.append(F(rng.randint(0, q), q))
    tvals = [takagi_rational(t) for t in ts]
    for w in enumerate_balanced(5):
        m = len(w) // 2
        x0 = F(int(w, 2), 4**m) if w else F(0)
        base = takagi_rational(x0)
        for t, tv in zip(ts, tvals):
            assert takagi_rational(lift_into_hump(w, t)) == base + tv / 4**m


@criterion(4, 30.0)
def test_criterion_04_increasing_branch():
    rng = random.Random(4)
    ys = set()
    while len(ys) < 500:
        q = rng.randint(1, 1000)
        ys.add(F(rng.randint(0, q), 2 * q))
    prev = None
    for y in sorted(ys):
        p = xstar_invert(y, precision=64)
        assert len(p.digits) >= 64
        assert all(d >= 1 for d in walk_values(p.digits[:64]))
        assert y in p.level_enclosure and p.level_enclosure.width <= F(1, 2**48)
        if prev is not None:
            if prev.exact is not None and p.exact is not None:
                assert prev.exact < p.exact
            else:
                assert prev.enclosure.hi <= p.enclosure.lo and prev.enclosure != p.enclosure
        prev = p
    assert xstar_invert(F(1, 2)).exact == F(1, 6)
    assert xstar_invert(F(1, 4)).exact == F(1, 16)
    assert xstar_invert(F(3, 8)).exact == F(1, 8)


@criterion(5, 60.0)
def test_criterion_05_dyck_counts():
    words = enumerate_leading(8)
    counts = [0] * 9
    for w in words:
        counts[len(w) // 2] += 1
    assert counts == [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    for m in range(9):
        brute = 0
        for bits in product((1, -1), repeat=2 * m):
            d, ok = 0, True
            for b in bits:
                d += b
                if d < 0:
                    ok = False
                    break
            brute += ok and d == 0
        assert brute == counts[m]


@criterion(6, 120.0)
def test_criterion_06_average_count():
    prev = F(0)
    for M in range(13):
        closed, enumerated = jt_mass(M)
        assert closed == enumerated
        assert average_count_exact(M) == F(3, 2) * closed
        assert closed > prev
        prev = closed
    assert jt_mass(2)[0] == F(11, 16)
    assert 0.15 < 1 - jt_mass(12)[0] < 0.16
    mc = monte_carlo_average(12, 10**5, seed=12)
    assert abs(mc - average_count_exact(12)) < 0.02


@criterion(7, 5.0)
def test_criterion_07_staircase():
    for n in range(11):
        jt = staircase(n).Jt
        assert (jt.lo, jt.hi) == (F(2, 3) * (1 - F(1, 4**n)), F(2, 3) * (1 - F(1, 4**(n + 1))))
        if n:
            assert staircase(n - 1).Jt.hi == jt.lo
    rng = random.Random(7)
    for _ in range(1000):
        q = rng.randint(1, 10**6)
        y = F(rng.randint(0, 2 * q - 1), 3 * q)
        n = staircase_index(y)
        jt = staircase(n).Jt
        assert jt.lo <= y < jt.hi


@criterion(8, 5.0)
def test_criterion_08_finite_locals():
    n, hs = count_finite_locals(F(8, 15), 3)
    assert n == 2 and {h.word for h in hs} == {"01", "001101"}
    (rec,) = finite_local_reps(F(9, 16), 1)
    assert rec.left.exact == F(17, 64) and rec.right.exact == F(31, 64)
    assert member(F(17, 64), F(9, 16)) and member(F(31, 64), F(9, 16))
    fam = local_level_set(PeriodicReal.from_rational(F(5, 16)))
    assert set(fam.values()) == {F(5, 16), F(3, 8), F(9, 16), F(5, 8)}
    assert all(member(x, F(5, 8)) for x in fam.values())


@criterion(9, 30.0)
def test_criterion_09_approach_sequence():
    x, y = F(1, 5), F(8, 15)
    zs = approach_sequence(x, 4, 48)
    assert len(zs) == 4
    centers = [z.exact if z.exact is not None else z.enclosure.lo for z in zs]
    assert len(set(centers)) == 4 and x not in centers
    dists = [abs(c - x) for c in centers]
    assert all(a > b for a, b in zip(dists, dists[1:]))
    for z in zs:
        assert y in z.level_enclosure and z.level_enclosure.width <= F(1, 2**48)
    with pytest.raises(PreconditionError):
        approach_sequence(F(1, 3), 4, 48)
    with pytest.raises(PreconditionError):
        approach_sequence(F(5, 16), 4, 48)


@criterion(10, 120.0)
def test_criterion_10_solver_soundness():
    rng = random.Random(10)
    for _ in range(300):
        q = rng.randint(1, 10**4)
        x = F(rng.randint(0, q), q)
        assert solve(takagi_rational(x), 20).covers(x)
    assert solve(F(0), 20).exact_points == [0, 1]
