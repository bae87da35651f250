import random

import pytest

from zetadiv import checks
from zetadiv.curve import INF, Curve, Divisor, Place
from zetadiv.divide import (
    RootChoice,
    all_root_choices,
    build_matrices,
    choose_roots,
    divide_point,
    pole_profile,
    q_divisors,
    vary_roots,
    verify_certificate,
)
from zetadiv.errors import InfinityPoint, InvalidRootChoice, PointNotOnCurve
from zetadiv.ff import GF
from zetadiv.jac import brute_halving, is_principal

F13 = GF(13)


def elliptic():
    """y^2 = (x + 1)(x + 4)(x + 9) over F_13 with P = (0, 6); every alpha is a square."""
    C = Curve(2, 3, [F13(1), F13(4), F13(9)], F13)
    return C, C.place(F13(0), F13(6))


def trigonal():
    C = Curve(3, 4, [F13(1), F13(2), F13(3), F13(5)], F13)
    return C, C.place(F13(1), F13(1)) if C.f(F13(1)) == F13(1) else None


# --- matrices ---------------------------------------------------------------------------------------


def test_pole_profile_examples():
    rng = random.Random(34)
    inst = checks.random_instance(3, 4, F13, rng)
    S, _ = inst.curve.shift_to_origin(inst.point)
    _, _, _, N, _ = build_matrices(S, inst.roots)
    prof = pole_profile(S, N)
    g = S.genus
    assert prof[0][2] == 2 * g and prof[0][1] == 2 * g + 1
    assert prof[2][0] == 10
    assert prof == [[8, 7, 6], [9, 8, 7], [10, 9, 8]]


@pytest.mark.parametrize("n,d", [(2, 3), (3, 2), (2, 5), (3, 4), (4, 3), (5, 2)])
def test_pole_profile_formula(n, d):
    rng = random.Random(n * 10 + d)
    for ramified in (False, True):
        inst = checks.random_instance(n, d, GF(31 if n in (2, 3, 5) else 13), rng, ramified=ramified)
        S, _ = inst.curve.shift_to_origin(inst.point)
        _, _, _, N, _ = build_matrices(S, inst.roots)
        g = S.genus
        assert pole_profile(S, N) == [[2 * g + i + (n - 1 - j) for j in range(n)] for i in range(n)]


def test_A_at_zero_is_upper_triangular():
    rng = random.Random(2)
    for n, d in [(3, 4), (4, 3)]:
        checks.check_det_A(checks.random_instance(n, d, F13, rng))


# --- division -------------------------------------------------------------------------------------------


def test_genus_one_division_matches_brute_force():
    C, P = elliptic()
    cert = divide_point(C, P, RootChoice((F13(1), F13(2), F13(3))))
    assert cert.D.degree == 1 and len(cert.D.support()) == 1
    assert cert.D in brute_halving(C, P)
    assert str(cert.D) == "(11, 8)"


def test_all_four_halves_frozen():
    # frozen from the exhaustive halving oracle
    C, P = elliptic()
    expected = {"(1, 3)", "(11, 8)", "(6, 7)", "(8, 4)"}
    assert {str(D) for D in brute_halving(C, P)} == expected
    found = {str(divide_point(C, P, rc).D) for rc in all_root_choices(C, P)}
    assert found == expected


def test_degrees_and_support():
    rng = random.Random(17)
    for n, d in [(3, 4), (4, 3), (2, 5)]:
        inst = checks.random_instance(n, d, GF(13), rng)
        cert = divide_point(inst.curve, inst.point, inst.roots)
        g = inst.curve.genus
        assert cert.D.degree == g and cert.E.degree == g
        bad = set(inst.curve.ramified_places()) | {INF}
        assert not bad & set(cert.D.support())
        assert cert.D.is_effective() and cert.E.is_effective()
        assert verify_certificate(cert)


def test_ramified_points_are_divisible():
    rng = random.Random(4)
    for n, d in [(2, 3), (3, 2), (3, 4)]:
        inst = checks.random_instance(n, d, GF(13), rng, ramified=True)
        checks.check_division(inst)


def test_errors():
    C, P = elliptic()
    with pytest.raises(InfinityPoint):
        divide_point(C, INF, (F13(1), F13(2), F13(3)))
    with pytest.raises(PointNotOnCurve):
        divide_point(C, (F13(0), F13(5)), (F13(1), F13(2), F13(3)))
    with pytest.raises(InvalidRootChoice):
        divide_point(C, P, (F13(1), F13(2), F13(4)))
    with pytest.raises(InvalidRootChoice):
        divide_point(C, P, (F13(1), F13(2), F13(10)))  # right squares, wrong product


def test_choose_roots_respects_product():
    C = Curve(3, 4, [F13(1), F13(2), F13(3), F13(5)], F13)
    P = next(p for p in C.places_over(F13) if p.kind == "affine")
    rc = choose_roots(C, P)
    K = rc.roots[0].field
    prod = K.one
    for r in rc.roots:
        prod = prod * r
    assert prod == K.embed(P.y)
    for r, a in zip(rc.roots, C.alphas):
        assert r**3 == K.embed(a + P.x)


def test_q_divisors():
    rng = random.Random(21)
    for n, d in [(3, 2), (3, 4), (4, 3)]:
        inst = checks.random_instance(n, d, F13, rng)
        cert = divide_point(inst.curve, inst.point, inst.roots)
        fam = q_divisors(cert)
        Q, Ds, Es = fam["Q"], fam["D"], fam["E"]
        L = cert.field
        z = L.embed(cert.shifted_curve.require_zeta())
        for i in range(1, n):
            for j in range(1, n):
                assert Q[i + 1, j + 1] == Q[i, j].zeta_act(z)
        for (i, j), q in Q.items():
            assert Ds[i] + Es[j] == q
        assert Ds[1] == cert.D_shifted


def test_ideal_membership_and_specializations():
    rng = random.Random(8)
    for n, d in [(3, 2), (3, 4), (4, 3), (5, 2)]:
        inst = checks.random_instance(n, d, GF(11 if n == 5 else 13), rng)
        checks.check_ideal_membership(inst)
        checks.check_specializations(inst, rng)


def test_report_is_idempotent():
    rng = random.Random(1)
    inst = checks.random_instance(3, 4, F13, rng)
    a = divide_point(inst.curve, inst.point, inst.roots).to_record()
    b = divide_point(inst.curve, inst.point, inst.roots).to_record()
    assert a == b


def test_division_over_an_extension_field():
    F49 = GF(7, (1, 0, 1))
    C = Curve(3, 2, [F49(1), F49.gen], F49)
    P = C.place(F49(1), F49.parse("t + 6"))
    cert = divide_point(C, P, choose_roots(C, P))
    assert cert.D.degree == 1
    L = cert.field
    target = cert.D - cert.D.zeta_act(L.embed(C.require_zeta())) - Divisor.of(P.embed(L), field=L) + Divisor.of(INF)
    assert is_principal(C.base_change(L), target)


# --- genus-2 halving cross-check ----------------------------------------------------------------------------


def test_genus_two_halving_matches_root_choices():
    # all alphas are squares mod 11, so every root choice is rational and each D is a
    # Frobenius-stable degree-2 divisor: two rational points or a conjugate pair over F_121
    F = GF(11)
    C = Curve(2, 5, [F(1), F(3), F(4), F(5), F(9)], F)
    P = next(p for p in C.places_over(F) if p.kind == "affine")
    choices = all_root_choices(C, P)
    assert all(rc.roots[0].field is F for rc in choices)
    halves = brute_halving(C, P, bound=2)
    found = [divide_point(C, P, rc, verify=False, field=F.extension(2)).D for rc in choices]
    assert len(halves) == 2**4
    assert all(any(D == H for H in halves) for D in found)
    assert all(any(D == H for D in found) for H in halves)


# --- varying the roots -----------------------------------------------------------------------------------------


def test_vary_roots_zero_vector():
    C, P = elliptic()
    res = vary_roots(C, P, (F13(1), F13(2), F13(3)), (0, 0, 0))
    assert res.base.D == res.varied.D and res.principal


def test_vary_roots_all_ones():
    C, P = elliptic()
    res = vary_roots(C, P, (F13(1), F13(2), F13(3)), (1, 1, 1))
    assert res.principal


def test_vary_roots_single_index():
    C, P = elliptic()
    res = vary_roots(C, P, (F13(1), F13(2), F13(3)), (1, 0, 0))
    assert res.principal
    # the torsion part on its own is not principal: P_1 - INF is a nontrivial class
    assert not is_principal(C, Divisor.of(Place.ramified(1), (INF, -1)))
