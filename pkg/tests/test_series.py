import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetadiv.errors import NonUnitConstantTerm
from zetadiv.ff import GF
from zetadiv.series import TruncSeries

F7 = GF(7)


def S(field, coeffs, prec):
    return TruncSeries(field, coeffs, prec)


def test_square_root_of_one_plus_t():
    r = S(F7, [1, 1], 3).nth_root(2)
    # frozen from the squaring check below: 1/2 = 4 and -1/8 = 6 in F_7
    assert r.c == [F7(1), F7(4), F7(6)]
    assert r.prec == 3
    assert r * r == S(F7, [1, 1], 3)


def test_invert_geometric_series():
    inv = S(F7, [1, -1], 6).invert()
    assert inv.c == [F7.one] * 6


def test_invert_requires_unit():
    with pytest.raises(NonUnitConstantTerm):
        S(F7, [0, 1], 4).invert()
    with pytest.raises(NonUnitConstantTerm):
        S(F7, [0, 1], 4).nth_root(2)


def test_multiplication_precision():
    a = S(F7, [1, 2, 3], 3)
    b = S(F7, [2, 1, 0, 0, 5], 5)
    assert (a * b).prec == 3
    # a factor with valuation v lets the product keep v extra digits of its partner
    t2 = S(F7, [0, 0, 1], 6)
    assert (t2 * a).prec == 5


FIELDS = [GF(13), GF(7), GF(5).extension(2)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.sampled_from([2, 3, 4, 5, 6]), st.integers(2, 12), st.integers(0, 2**32))
def test_nth_root_power_is_input(F, n, prec, seed):
    if F.p % n == 0 or n % F.p == 0:
        return
    rng = random.Random(seed)
    c0 = F.random_nonzero(rng)
    a = S(F, [c0**n] + [F.random(rng) for _ in range(prec - 1)], prec)
    r = a.nth_root(n)
    assert r.c[0] == c0 or (r.c[0] / c0) ** n == F.one
    assert r**n == a


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 10), st.integers(0, 2**32))
def test_invert_round_trip(F, prec, seed):
    rng = random.Random(seed)
    a = S(F, [F.random_nonzero(rng)] + [F.random(rng) for _ in range(prec - 1)], prec)
    assert a * a.invert() == S(F, [1], prec)


def test_compose_with_substitution():
    # (1 + t)^2 composed with t -> t + t^2 equals 1 + 2(t + t^2) + (t + t^2)^2
    F = GF(13)
    outer = S(F, [1, 2, 1], 6)
    inner = S(F, [0, 1, 1], 6)
    expected = S(F, [1], 6) + inner * 2 + inner * inner
    assert outer.compose(inner) == expected
