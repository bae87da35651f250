import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetadiv.curve import Curve
from zetadiv.errors import InvalidResidue, NotCoprime
from zetadiv.ff import GF
from zetadiv.gaps import (
    all_classes,
    charpoly_multiplicity_check,
    closed_form_total,
    csc_sum_check,
    gap_set,
    gap_set_oracle,
    intersection_multiplicity,
    rho_series,
    weight_from_series,
    weight_total,
)
from zetadiv.jac import TorsionClass


def test_elliptic_examples():
    p = gap_set(2, 3, (0, 0))
    assert p.gaps == (1,) and p.partition == (1,) and p.weight == 1
    q = gap_set(2, 3, (1, 0))
    assert q.gaps == (0,) and q.weight == 0
    assert rho_series(2, 3, (0, 0), 6) == [1, 0, 1, 1, 1, 1]


def test_input_errors():
    with pytest.raises(NotCoprime):
        gap_set(2, 4, (0, 0, 0))
    with pytest.raises(InvalidResidue):
        gap_set(2, 3, (0, 2))
    with pytest.raises(InvalidResidue):
        gap_set(2, 3, (0,))


@pytest.mark.parametrize("n,d,total", [(2, 3, 1), (3, 2, 1), (2, 5, 8), (3, 4, 27), (4, 3, 20), (5, 2, 5)])
def test_weight_totals(n, d, total):
    assert weight_total(n, d) == total
    assert closed_form_total(n, d) == total


# --- the series against an independent expansion in the group ring -------------------------------


def group_ring_rho(n, d, precision):
    """Expand (1 + T^n + ...) * prod_i (1 + X_i T + ... + X_i^(n-1) T^(n-1)) and sort terms by class."""
    out = {}
    for e in itertools.product(range(n), repeat=d):
        cls = TorsionClass.from_vector(n, list(e)).a
        coeffs = out.setdefault(tuple(cls), [0] * precision)
        k = sum(e)
        while k < precision:
            coeffs[k] += 1
            k += n
    return out


@pytest.mark.parametrize("n,d", [(2, 3), (3, 2), (2, 5), (3, 4), (4, 3), (5, 2), (3, 5)])
def test_rho_matches_group_ring_expansion(n, d):
    g = (n - 1) * (d - 1) // 2
    prec = 2 * g + 4
    oracle = group_ring_rho(n, d, prec)
    assert set(oracle) == set(all_classes(n, d))
    for a in all_classes(n, d):
        rho = rho_series(n, d, a, prec)
        assert rho == oracle[a]
        assert set(rho) <= {0, 1}


def test_weight_from_series_on_all_trigonal_classes():
    classes = all_classes(3, 4)
    assert len(classes) == 27
    for a in classes:
        assert weight_from_series(3, 4, a) == gap_set(3, 4, a).weight


# --- structural properties ----------------------------------------------------------------------------


@st.composite
def class_of(draw):
    n = draw(st.integers(2, 7))
    d = draw(st.integers(2, 7).filter(lambda d: gcd(n, d) == 1))
    a = tuple(draw(st.integers(0, n - 1)) for _ in range(d - 1))
    return n, d, a


@settings(max_examples=150, deadline=None)
@given(class_of())
def test_gap_set_shape(data):
    n, d, a = data
    g = (n - 1) * (d - 1) // 2
    p = gap_set(n, d, a)
    assert len(p.gaps) == g
    assert all(0 <= b < 2 * g for b in p.gaps)
    assert sum(p.partition) == p.weight
    assert list(p.partition) == sorted(p.partition, reverse=True)
    assert (p.weight == 0) == (p.gaps == tuple(range(g)))
    m = intersection_multiplicity(n, d, a)
    assert m.value == p.weight and m.on_theta == (p.weight > 0)


def test_class_of_zero_has_the_semigroup_gaps():
    # for a = 0 the non-gaps are exactly the semigroup generated by n and d
    for n, d in [(2, 3), (3, 4), (4, 5), (5, 7)]:
        sg = {i * n + j * d for i in range(2 * d) for j in range(2 * n)}
        g = (n - 1) * (d - 1) // 2
        assert gap_set(n, d, (0,) * (d - 1)).gaps == tuple(k for k in range(2 * g) if k not in sg)


# --- numerical identities ----------------------------------------------------------------------------


def test_charpoly_examples():
    assert charpoly_multiplicity_check(2, 3) == {1: 2}
    assert charpoly_multiplicity_check(3, 4) == {1: 3, 2: 3}


def test_charpoly_all_small():
    for n in range(2, 9):
        for d in range(2, 9):
            if gcd(n, d) == 1:
                counts = charpoly_multiplicity_check(n, d)
                assert all(v == d - 1 for v in counts.values())


def test_csc_examples():
    assert csc_sum_check(2) == Fraction(1, 4)
    assert csc_sum_check(3) == Fraction(2, 3)
    assert csc_sum_check(5) == 2


def test_csc_against_floating_point():
    import cmath

    for n in range(2, 13):
        z = cmath.exp(2j * cmath.pi / n)
        approx = sum(1 / ((1 - z**i) * (1 - z ** (-i))) for i in range(1, n)).real
        assert abs(float(csc_sum_check(n)) - approx) < 1e-9


# --- gaps from Riemann-Roch dimensions on an actual curve ------------------------------------------


def test_gap_oracle_on_elliptic_curve():
    F = GF(13)
    C = Curve(2, 3, [F(1), F(4), F(9)], F)
    assert gap_set_oracle(C, (0, 0)) == (1,)
    for a in all_classes(2, 3):
        assert gap_set_oracle(C, a) == gap_set(2, 3, a).gaps


def test_gap_oracle_on_trigonal_quartic_sample():
    F = GF(13)
    C = Curve(3, 4, [F(1), F(2), F(3), F(5)], F)
    for a in [(0, 0, 0), (1, 0, 0), (2, 1, 0), (1, 1, 1), (2, 2, 1)]:
        assert gap_set_oracle(C, a) == gap_set(3, 4, a).gaps
