from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_words, brute_local_level_set, series_sum, walk_values
from takagi.digits import (PeriodicReal, catalan, classify_word, digits_of,
                           enumerate_balanced, enumerate_leading, local_level_set,
                           parse_periodic, reflect_to_X0, walk)
from takagi.errors import DomainError, ResourceError
from takagi.evaluate import takagi_periodic, takagi_rational

F = Fraction


@pytest.mark.parametrize("x, n, bits", [
    (F(5, 16), 6, "010100"),
    (F(1, 3), 6, "010101"),
    (F(1, 5), 8, "00110011"),
])
def test_digits_of(x, n, bits):
    assert digits_of(x, n) == bits


@pytest.mark.parametrize("x", [F(1), F(-1, 3), F(3, 2)])
def test_digits_of_domain(x):
    with pytest.raises(DomainError):
        digits_of(x, 4)


def test_walk_examples():
    w = walk("0101")
    assert w.values == (1, 0, 1, 0) and w.zero_positions == (2, 4)
    w = walk("001101")
    assert w.values == (1, 2, 1, 0, 1, 0) and w.zero_positions == (4, 6)
    w = walk("0011")
    assert w.values == (1, 2, 1, 0) and w.zero_positions == (4,)
    assert walk("").values == ()


def test_classify_word_examples():
    c = classify_word("0101")
    assert (c.balanced, c.order, c.generation, c.leading) == (True, 2, 2, True)
    c = classify_word("1100")
    assert (c.balanced, c.order, c.generation, c.leading) == (True, 2, 1, False)
    assert not classify_word("011").balanced
    c = classify_word("")
    assert (c.balanced, c.order, c.generation) == (True, 0, 0)


@given(st.text("01", max_size=14))
def test_classify_word_invariants(w):
    c = classify_word(w)
    d = walk_values(w)
    assert c.balanced == (len(w) % 2 == 0 and (not d or d[-1] == 0))
    if c.balanced and w:
        assert c.generation >= 1
    if c.leading and w:
        assert w[0] == "0"


@pytest.mark.parametrize("x", [F(0), F(5, 16), F(1, 3), F(1, 5), F(5, 6), F(7, 24), F(22, 49)])
def test_periodic_real_roundtrip(x):
    p = PeriodicReal.from_rational(x)
    assert p.to_rational() == x
    assert p.bits(40) == digits_of(x, 40)
    assert parse_periodic(str(p)) == p


def test_periodic_real_rendering_and_parse():
    assert str(PeriodicReal.from_rational(F(1, 5))) == "0.(0011)"
    assert parse_periodic("0.00(1100)").to_rational() == F(1, 5)
    assert parse_periodic("0.0(1)").to_rational() == F(1, 2)
    with pytest.raises(ValueError):
        PeriodicReal("0", "11")


@pytest.mark.parametrize("x, expected", [
    (F(9, 16), F(5, 16)),
    (F(5, 16), F(5, 16)),
    (F(5, 6), F(1, 6)),
])
def test_reflect_examples(x, expected):
    assert reflect_to_X0(PeriodicReal.from_rational(x)).to_rational() == expected


def small_rationals():
    return st.builds(lambda q, k: Fraction(k % q, q), st.integers(1, 400), st.integers(0, 10**6))


@given(small_rationals())
@settings(max_examples=300, deadline=None)
def test_reflect_idempotent_nonnegative_same_level(x):
    p = PeriodicReal.from_rational(x)
    r = reflect_to_X0(p)
    assert reflect_to_X0(r) == r
    n = len(p.pre) + 3 * len(p.period) + 8
    assert all(d >= 0 for d in r.walk_values(n))
    assert [abs(d) for d in r.walk_values(n)] == [abs(d) for d in p.walk_values(n)]
    assert takagi_periodic(r) == takagi_rational(x)


@pytest.mark.parametrize("x, members", [
    (F(5, 16), {F(5, 16), F(3, 8), F(9, 16), F(5, 8)}),
    (F(1, 6), {F(1, 6), F(5, 6)}),
    (F(1, 4), {F(1, 4), F(1, 2)}),
])
def test_local_level_set_examples(x, members):
    fam = local_level_set(PeriodicReal.from_rational(x))
    assert set(fam.values()) == members
    assert not fam.truncated
    levels = {series_sum(v, 80) for v in fam.values() if v.denominator & (v.denominator - 1) == 0}
    assert len(levels) <= 1


def test_local_level_set_cantor_is_flagged():
    fam = local_level_set(PeriodicReal.from_rational(F(1, 5)), depth=3)
    assert fam.truncated and len(fam.members) == 8
    assert len({takagi_rational(v) for v in fam.values()}) == 1


def test_local_level_set_counts():
    # non-dyadic: 2**(z+1); dyadic: 2**z with z the number of walk zeros
    for x in (F(1, 6), F(1, 7), F(7, 24), F(1, 12)):
        p = PeriodicReal.from_rational(x)
        z = p.finite_zeros()
        assert len(local_level_set(p).members) == 2 ** (len(z) + 1)
    for x in (F(5, 16), F(1, 4), F(3, 64), F(45, 256)):
        p = PeriodicReal.from_rational(x)
        assert len(local_level_set(p).members) == 2 ** len(p.finite_zeros())


def test_local_level_set_matches_brute_force():
    # seeds k/32 have their last walk zero at position <= 10
    for k in range(0, 32):
        x = F(k, 32)
        fam = set(local_level_set(PeriodicReal.from_rational(x)).values())
        assert fam == brute_local_level_set(x, 10, 16), x


def test_equivalence_implies_level_equality_exhaustive():
    for n in range(0, 13):
        for k in range(0, 2**n, max(1, 2**n // 512)):
            fam = local_level_set(PeriodicReal.from_rational(F(k, 2**n)))
            levels = {takagi_rational(v) for v in fam.values()}
            assert len(levels) == 1


def test_enumerate_balanced_examples():
    assert enumerate_balanced(2, generation=1) == ["01", "10", "0011", "1100"]
    assert enumerate_balanced(1) == ["", "01", "10"]
    assert enumerate_balanced(0) == [""]


def test_enumerate_leading_examples():
    assert enumerate_leading(2) == ["", "01", "0011", "0101"]
    assert sum(len(w) == 6 for w in enumerate_leading(3)) == 5
    assert enumerate_leading(0) == [""]


def test_enumeration_matches_brute_force():
    for m in range(0, 7):
        words = [w for w in all_words(2 * m) if not walk_values(w) or walk_values(w)[-1] == 0]
        assert [w for w in enumerate_balanced(m) if len(w) == 2 * m] == words
        dyck = [w for w in words if all(d >= 0 for d in walk_values(w))]
        assert [w for w in enumerate_leading(m) if len(w) == 2 * m] == dyck
        assert len(dyck) == catalan(m)


def test_first_return_decomposition():
    gen1 = [w for w in enumerate_balanced(6, generation=1)]
    assert all(walk(w).zero_positions == (len(w),) for w in gen1)
    gen1_set = set(gen1)
    for w in enumerate_balanced(6):
        zeros = (0, *walk(w).zero_positions)
        parts = [w[a:b] for a, b in zip(zeros, zeros[1:])]
        assert all(p in gen1_set for p in parts)
        assert len(parts) == classify_word(w).generation


def test_enumeration_cap():
    with pytest.raises(ResourceError, match="cap 100"):
        enumerate_balanced(5, cap=100)
    with pytest.raises(ResourceError):
        enumerate_leading(20)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("TAKAGI_CAP", "3")
    with pytest.raises(ResourceError):
        enumerate_leading(2)
