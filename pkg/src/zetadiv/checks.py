"""Property checks over random instances, shared by the ``selfcheck`` command and the test-suite.

Each check raises InternalInvariantViolation on failure and returns nothing
useful on success.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from math import lcm

from .curve import AFFINE, INF, Curve, Divisor, Place
from .divide import (
    RootChoice,
    choose_roots,
    build_matrices,
    companion,
    divide_point,
    expected_pole_order,
    pole_profile,
)
from .errors import InputError, InternalInvariantViolation
from .ff import FiniteField, UniPoly, all_nth_roots, factor
from .gaps import (
    all_classes,
    frobenius_number,
    gap_set,
    semigroup,
    weight_from_series,
    weight_total,
)
from .jac import TorsionClass, is_principal, rr_space
from .ring import BiPoly, RingMatrix, build_A_ell, det_and_adjugate, elementary_symmetric, norm_to_x, sigma


@dataclass
class Instance:
    curve: Curve
    point: tuple
    roots: RootChoice
    shift: object


def _fail(msg: str):
    raise InternalInvariantViolation(msg)


def random_instance(n: int, d: int, field: FiniteField, rng: random.Random, ramified: bool = False) -> Instance:
    """A random (curve, point, roots) instance.

    When the field has enough n-th powers the instance is built backwards from
    random roots r_i (shifted alphas r_i^n, b = prod r_i), so everything stays
    in ``field``.  Otherwise the curve and point are drawn over ``field`` and the
    roots come from a splitting extension, over which the instance is then
    expressed.  With ``ramified`` set, P is a ramified place.
    """
    if (field.order - 1) // n >= d:
        return _instance_from_roots(n, d, field, rng, ramified)
    return _instance_from_point(n, d, field, rng, ramified)


def _instance_from_roots(n, d, field, rng, ramified):
    while True:
        rs = [field.random_nonzero(rng) for _ in range(d)]
        if ramified:
            rs[0] = field.zero
        powers = [r**n for r in rs]
        if len(set(powers)) == d:
            break
    shift = field.random(rng)
    alphas = [v - shift for v in powers]
    curve = Curve(n, d, alphas, field)
    b = reduce(lambda u, v: u * v, rs)
    return Instance(curve, (shift, b), RootChoice(tuple(rs)), shift)


def _instance_from_point(n, d, field, rng, ramified):
    if field.order < d:
        raise InputError(f"F_{field.order} has fewer than {d} elements; alphas cannot be distinct")
    elements = list(field.elements())
    for _ in range(1000):
        alphas = rng.sample(elements, d)
        curve = Curve(n, d, alphas, field)
        if ramified:
            x0, y0 = -alphas[0], field.zero
        else:
            candidates = [(x0, ys) for x0 in elements if (v := curve.f(x0)) and (ys := all_nth_roots(v, n))]
            if not candidates:
                continue
            x0, ys = rng.choice(candidates)
            y0 = rng.choice(ys)
        roots = choose_roots(curve, (x0, y0))
        L = roots.roots[0].field
        zeta = L.embed(curve.require_zeta())
        exps = [rng.randrange(n) for _ in range(d - 1)]
        exps.append(-sum(exps) % n)
        roots = roots.scaled(zeta, exps)
        CL = curve.base_change(L)
        return Instance(CL, (L.embed(x0), L.embed(y0)), roots, L.embed(x0))
    raise InputError(f"no affine point found on random curves over F_{field.order}")


# --- ring -------------------------------------------------------------------


def check_det_identity(inst: Instance):
    shifted, _ = inst.curve.shift_to_origin(inst.point)
    _, _, _, _, det = build_matrices(shifted, inst.roots)
    F = shifted.field
    want = BiPoly(F, [shifted.f] + [UniPoly(F, [])] * (shifted.n - 1) + [UniPoly.constant(F, -1)])
    if det != want:
        _fail(f"det M = {det}, expected f - y^n")


def check_det_A(inst: Instance):
    shifted, _ = inst.curve.shift_to_origin(inst.point)
    A, _, _, _, _ = build_matrices(shifted, inst.roots)
    if A.determinant() != shifted.f:
        _fail("det A != prod (x + alpha_i)")
    n = shifted.n
    s_d = reduce(lambda u, v: u * v, inst.roots.roots)
    A0 = [[A[i, j](shifted.field.zero) for j in range(1, n + 1)] for i in range(1, n + 1)]
    for i in range(n):
        if A0[i][i] != s_d or any(A0[i][j] for j in range(i)):
            _fail("A(0) is not upper triangular with diagonal s_d")


def check_minors_divisible(inst: Instance):
    shifted, _ = inst.curve.shift_to_origin(inst.point)
    _, _, _, N, _ = build_matrices(shifted, inst.roots)
    F = shifted.field
    n = shifted.n
    rel = BiPoly(F, [-shifted.f] + [UniPoly(F, [])] * (n - 1) + [UniPoly.constant(F, 1)])
    B = [[e.to_bipoly() for e in row] for row in N.rows]
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                for l in range(j + 1, n):
                    minor = B[i][j] * B[k][l] - B[i][l] * B[k][j]
                    _, r = minor.divmod_monic(rel)
                    if r:
                        _fail(f"2x2 minor rows {i + 1},{k + 1} cols {j + 1},{l + 1} not divisible by y^n - f")


def check_sigma_conjugation(inst: Instance):
    shifted, _ = inst.curve.shift_to_origin(inst.point)
    _, _, _, N, _ = build_matrices(shifted, inst.roots)
    C = companion(shifted)
    sN = N.map(sigma)
    if sN @ C != C @ N:
        _fail("sigma N != C N C^-1")


def check_eigen_relation(inst: Instance, rng: random.Random, samples: int = 3):
    shifted, _ = inst.curve.shift_to_origin(inst.point)
    F = shifted.field
    n, d = shifted.n, shifted.d
    zeta = shifted.require_zeta()
    rs = inst.roots.roots
    s = elementary_symmetric(rs)
    A = {ell: build_A_ell(s, ell, n) for ell in range(d + 1 - n, d + n)}
    for _ in range(samples):
        t = F.random(rng)
        x0 = -((-1) ** n) * t**n
        Am = [[A[d + i - j](x0) for j in range(n)] for i in range(n)]
        for k in range(n):
            v = [zeta ** (i * k) * t**i for i in range(n)]
            lam = reduce(lambda u, r: u * (r + zeta**k * t), rs, F.one)
            for i in range(n):
                Av = reduce(lambda u, j: u + Am[i][j] * v[j], range(n), F.zero)
                if Av != lam * v[i]:
                    _fail(f"A v_{k} != lambda_{k} v_{k} at T = {t}")


def check_adjugate(curve: Curve, rng: random.Random, size: int = 3):
    R = curve.ring
    F = curve.field

    def rand_elt():
        return R([UniPoly(F, [F.random(rng) for _ in range(2)]) for _ in range(curve.n)])

    m = RingMatrix([[rand_elt() for _ in range(size)] for _ in range(size)])
    det, adj = det_and_adjugate(m.rows)
    prod = m @ RingMatrix(adj)
    for i in range(size):
        for j in range(size):
            if prod.rows[i][j] != (det if i == j else R.zero):
                _fail("m adj(m) != det(m) I")


# --- curve -------------------------------------------------------------------


def random_element(curve: Curve, rng: random.Random, degree: int = 1, max_ext: int = 4):
    """Random nonzero element whose zeros have x-coordinates in an extension of degree <= max_ext."""
    R = curve.ring
    F = curve.field
    while True:
        e = R([UniPoly(F, [F.random(rng) for _ in range(degree + 1)]) for _ in range(curve.n)])
        if e.is_zero():
            continue
        k = reduce(lcm, [g.degree for g, _ in factor(norm_to_x(e))], 1)
        if k <= max_ext:
            return e


def check_principal_degree(curve: Curve, rng: random.Random):
    e = random_element(curve, rng)
    D = curve.divisor(e)
    if D.degree != 0:
        _fail(f"div of {e} has degree {D.degree}")


def check_zeta_valuation(curve: Curve, rng: random.Random):
    """v_{zeta Q}(f) = v_Q(sigma^-1 f) at every zero Q of a random f."""
    e = random_element(curve, rng)
    zeta = curve.require_zeta()
    D0 = curve.divisor_of_zeros(e)
    L = D0.field or curve.field
    CL = curve.base_change(L)
    for pl, m in D0.items():
        image = pl.zeta_act(L.embed(zeta))
        if CL.valuation(image, e) != CL.valuation(pl, sigma(e, -1)):
            _fail(f"zeta action and sigma disagree at {pl}")


def check_semigroup(n: int, d: int):
    F_ = frobenius_number(n, d)
    if F_ in semigroup(n, d, F_ + 1):
        _fail(f"{F_} lies in <{n},{d}>")
    orders = sorted(n * a + d * b for b in range(n) for a in range(d + 1))
    if len(orders) != len(set(orders)):
        _fail("monomial pole orders are not distinct")


def check_no_function_of_frobenius_order(curve: Curve):
    F_ = frobenius_number(curve.n, curve.d)
    lo = rr_space(curve, Divisor.of((INF, F_ - 1))).dimension
    hi = rr_space(curve, Divisor.of((INF, F_))).dimension
    if hi != lo:
        _fail(f"a function with pole order exactly {F_} exists")


# --- divide --------------------------------------------------------------------


def check_division(inst: Instance, oracle: bool = True):
    cert = divide_point(inst.curve, inst.point, inst.roots, verify=True)
    g = inst.curve.genus
    if cert.D.degree != g or cert.E.degree != g:
        _fail("deg D or deg E differs from g")
    if any(pl.kind != AFFINE for pl in cert.D.mults):
        _fail("D meets a ramified place or infinity")
    if cert.identity_lhs != cert.identity_rhs:
        _fail("certificate identity")
    n = inst.curve.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if cert.pole_profile[i - 1][j - 1] != expected_pole_order(g, n, i, j):
                _fail("pole profile")
    if oracle:
        L = cert.field
        C = inst.curve.base_change(L)
        zeta = L.embed(C.require_zeta())
        P = C.place(*inst.point)
        target = cert.D - cert.D.zeta_act(zeta) - Divisor.of(P, field=L) + Divisor.of(INF)
        if not is_principal(C, target):
            _fail("(1 - zeta) D - (P - INF) is not principal")
    return cert


def check_ideal_membership(inst: Instance):
    """N_{1,j} lies in (x, prod_{k=j}^{n-1} (y - zeta^k s_d))."""
    shifted, _ = inst.curve.shift_to_origin(inst.point)
    _, _, _, N, _ = build_matrices(shifted, inst.roots)
    F = shifted.field
    n = shifted.n
    zeta = shifted.require_zeta()
    s_d = reduce(lambda u, v: u * v, inst.roots.roots)
    Y = UniPoly.x(F)
    for j in range(1, n + 1):
        at0 = N[1, j].y_poly_at(F.zero)
        pi = reduce(lambda u, k: u * (Y - zeta**k * s_d), range(j, n), UniPoly.constant(F, 1))
        if at0 % pi:
            _fail(f"N_1,{j} is not in the ideal (x, prod (y - zeta^k s_d))")


def check_specializations(inst: Instance, rng: random.Random, samples: int = 6):
    shifted, Pp = inst.curve.shift_to_origin(inst.point)
    _, _, _, N, _ = build_matrices(shifted, inst.roots)
    F = shifted.field
    pts = []
    a, b = shifted.point_coords(Pp)
    pts.append((a, b))
    for i in range(1, shifted.d + 1):
        pts.append(shifted.point_coords(Place.ramified(i)))
    tries = 0
    while len(pts) < samples + shifted.d + 1 and tries < 20 * samples:
        tries += 1
        x0 = F.random(rng)
        v = shifted.f(x0)
        if v:
            ys = all_nth_roots(v, shifted.n)
            if ys:
                pts.append((x0, rng.choice(ys)))
    for x0, y0 in pts:
        if all(not e(x0, y0) for row in N.rows for e in row):
            _fail(f"N vanishes at ({x0}, {y0})")


def check_report_idempotent(inst: Instance):
    r1 = divide_point(inst.curve, inst.point, inst.roots, verify=False).to_record()
    r2 = divide_point(inst.curve, inst.point, inst.roots, verify=False).to_record()
    if r1 != r2:
        _fail("two runs produced different certificates")


# --- jac -----------------------------------------------------------------------


def check_torsion_kernel(curve: Curve):
    D = reduce(lambda u, v: u + v, [Divisor.of(p) - Divisor.of(INF) for p in curve.ramified_places()])
    res = is_principal(curve, D)
    if not res:
        _fail("sum (P_i - INF) is not principal")
    if curve.divisor(curve.ring.y) != D:
        _fail("div(y) != sum (P_i - INF)")


def check_torsion_uniqueness(curve: Curve, rng: random.Random, samples: int = 2):
    classes = [TorsionClass(curve.n, a) for a in all_classes(curve.n, curve.d)]
    for _ in range(samples):
        c1, c2 = rng.sample(classes, 2)
        if is_principal(curve, (c1 - c2).divisor()):
            _fail(f"distinct classes {c1} and {c2} are linearly equivalent")


def check_hint_independence(curve: Curve, rng: random.Random):
    a = rng.choice(all_classes(curve.n, curve.d))
    D = TorsionClass(curve.n, a).divisor() + Divisor.of((INF, curve.genus + 1))
    if rr_space(curve, D, "x").dimension != rr_space(curve, D, "y").dimension:
        _fail("h^0 depends on the denominator")


# --- gaps ----------------------------------------------------------------------


def check_gap_identities(n: int, d: int):
    g = (n - 1) * (d - 1) // 2
    for a in all_classes(n, d):
        prof = gap_set(n, d, a)
        if len(prof.gaps) != g:
            _fail(f"|G| != g at {a}")
        weight_from_series(n, d, a)
        if (prof.weight == 0) != (prof.gaps == tuple(range(g))):
            _fail(f"zero weight criterion fails at {a}")
    weight_total(n, d)


def check_gap_oracle(curve: Curve, rng: random.Random):
    from .gaps import gap_set_oracle

    a = rng.choice(all_classes(curve.n, curve.d))
    if gap_set_oracle(curve, a) != gap_set(curve.n, curve.d, a).gaps:
        _fail(f"Riemann-Roch gaps differ from the combinatorial gaps at {a}")


INSTANCE_CHECKS = [
    ("det M = f - y^n", lambda inst, rng: check_det_identity(inst)),
    ("det A and A(0)", lambda inst, rng: check_det_A(inst)),
    ("2x2 minors of N", lambda inst, rng: check_minors_divisible(inst)),
    ("sigma N = C N C^-1", lambda inst, rng: check_sigma_conjugation(inst)),
    ("eigenvectors of A", check_eigen_relation),
    ("N_1j ideal membership", lambda inst, rng: check_ideal_membership(inst)),
    ("N nonzero at points", check_specializations),
    ("division + oracle", lambda inst, rng: check_division(inst)),
    ("report idempotent", lambda inst, rng: check_report_idempotent(inst)),
    ("adjugate", lambda inst, rng: check_adjugate(inst.curve, rng)),
    ("principal degree 0", lambda inst, rng: check_principal_degree(inst.curve, rng)),
    ("zeta vs sigma", lambda inst, rng: check_zeta_valuation(inst.curve, rng)),
    ("torsion kernel", lambda inst, rng: check_torsion_kernel(inst.curve)),
    ("torsion uniqueness", lambda inst, rng: check_torsion_uniqueness(inst.curve, rng)),
    ("h^0 hint independence", lambda inst, rng: check_hint_independence(inst.curve, rng)),
    ("gap oracle", lambda inst, rng: check_gap_oracle(inst.curve, rng)),
]

STATIC_CHECKS = [
    ("semigroup obstruction", lambda n, d: check_semigroup(n, d)),
    ("gap identities", lambda n, d: check_gap_identities(n, d)),
]
