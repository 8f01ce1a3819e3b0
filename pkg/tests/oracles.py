"""Independent reference computations used by the tests.

Nothing here calls into the library's evaluation or enumeration code.
"""
from fractions import Fraction
from itertools import product


def phi(x: Fraction) -> Fraction:
    r = x - (x.numerator // x.denominator)
    return min(r, 1 - r)


def series_sum(x, terms: int) -> Fraction:
    """Partial sum of the defining series; exact at k/2**n once terms >= n."""
    x = Fraction(x)
    return sum((phi(x * 2**j) / 2**j for j in range(terms)), Fraction(0))


def periodic_oracle(x) -> Fraction:
    """T(x) by the fixed point of the series over one period of the orbit of x."""
    x = Fraction(x)
    orbit = []
    y = x
    while y not in orbit:
        orbit.append(y)
        y = (2 * y) % 1
    start = orbit.index(y)
    head = sum((phi(orbit[j]) / 2**j for j in range(start)), Fraction(0))
    L = len(orbit) - start
    cyc = sum((phi(orbit[start + j]) / 2**j for j in range(L)), Fraction(0))
    return head + cyc / (1 - Fraction(1, 2**L)) / 2**start


def all_words(n: int):
    return ["".join(p) for p in product("01", repeat=n)]


def walk_values(w: str) -> list[int]:
    d, out = 0, []
    for b in w:
        d += 1 if b == "0" else -1
        out.append(d)
    return out


def bits_of(x: Fraction, n: int) -> str:
    out = []
    for _ in range(n):
        x *= 2
        out.append("1" if x >= 1 else "0")
        x -= int(x)
    return "".join(out)


def brute_local_level_set(x: Fraction, scale: int, horizon: int) -> set[Fraction]:
    """Dyadics k/2**scale whose |D_j| agree with those of x for all j <= horizon."""
    target = [abs(d) for d in walk_values(bits_of(x, horizon))]
    out = set()
    for k in range(2**scale):
        c = Fraction(k, 2**scale)
        if [abs(d) for d in walk_values(bits_of(c, horizon))] == target:
            out.add(c)
    return out
