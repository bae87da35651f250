"""Division of a point by 1 - zeta through the adjugate of M = A - yZ.

Given P = (0, b) (after translating x) and roots r_i with r_i^n = alpha_i and
prod r_i = b, the matrix A has entries A_{d+i-j}(x) built from the elementary
symmetric functions of the r_i, Z = diag(1, zeta^-1, ..., zeta^-(n-1)), and
N = adj(A - yZ).  The divisor D = gcd_j div_0(N_{1,j}) satisfies
(1 - zeta) D ~ P - INF, and the pair (N_{1,n}, N_{1,n-1}) certifies it:

    div(N_{1,n}) - zeta.div(N_{1,n-1}) = D - zeta.D - P + INF.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce

from .curve import AFFINE, INF, INFINITY, RAMIFIED, Curve, Divisor, Place, _common_field
from .errors import InfinityPoint, InputError, InternalInvariantViolation, InvalidRootChoice, ZeroEntry
from .ff import FieldElement, FiniteField, UniPoly, nth_root, splitting_extension
from .ring import BiPoly, RingElement, RingMatrix, build_A_ell, det_and_adjugate, elementary_symmetric, sigma


@dataclass(frozen=True)
class RootChoice:
    """r_1..r_d with r_i^n = alpha_i (shifted alphas) and prod r_i = b."""

    roots: tuple

    def validate(self, shifted_alphas, b: FieldElement, n: int) -> None:
        if len(self.roots) != len(shifted_alphas):
            raise InvalidRootChoice(f"InvalidRootChoice: expected {len(shifted_alphas)} roots, got {len(self.roots)}")
        for i, (r, a) in enumerate(zip(self.roots, shifted_alphas), 1):
            if r**n != a:
                raise InvalidRootChoice(f"InvalidRootChoice: r_{i}^{n} = {r**n} but the shifted alpha_{i} is {a}")
        prod = reduce(lambda u, v: u * v, self.roots)
        if prod != b:
            raise InvalidRootChoice(f"InvalidRootChoice: product of roots is {prod}, expected b = {b}")

    def scaled(self, zeta: FieldElement, exps) -> RootChoice:
        """Entrywise r_i * zeta^(e_i)."""
        return RootChoice(tuple(r * zeta**e for r, e in zip(self.roots, exps)))


@dataclass
class DivisionCertificate:
    curve: Curve
    point: tuple  # (a, b) in original coordinates
    roots: RootChoice
    shift: FieldElement
    shifted_curve: Curve
    shifted_point: Place
    field: FiniteField  # common splitting field of the divisors
    D: Divisor  # original coordinates
    E: Divisor
    D_shifted: Divisor
    E_shifted: Divisor
    N: RingMatrix
    f1: RingElement  # N_{1,n}
    f2: RingElement  # N_{1,n-1}
    identity_lhs: Divisor
    identity_rhs: Divisor
    pole_profile: list | None = None
    zero_divisors: dict = dc_field(default_factory=dict)  # (i, j) 1-based -> div_0 N_{i,j}, shifted coordinates
    verified: bool = False

    def to_record(self) -> dict:
        C = self.curve
        a, b = self.point
        rec = {
            "curve": {
                "p": C.field.p,
                "field": C.field.describe(),
                "n": C.n,
                "d": C.d,
                "genus": C.genus,
                "alphas": [str(v) for v in C.alphas],
                "zeta": str(self.shifted_curve.zeta),
            },
            "point": [str(a), str(b)],
            "roots": [str(r) for r in self.roots.roots],
            "roots_field": self.roots.roots[0].field.describe(),
            "shift": str(self.shift),
            "splitting_field": self.field.describe(),
            "D": str(self.D),
            "E": str(self.E),
            "deg_D": self.D.degree,
            "deg_E": self.E.degree,
            "N_1n": [str(c) for c in self.f1.u],
            "N_1n_minus_1": [str(c) for c in self.f2.u],
            "identity": {
                "lhs": str(self.identity_lhs),
                "rhs": str(self.identity_rhs),
                "holds": self.identity_lhs == self.identity_rhs,
            },
        }
        if self.pole_profile is not None:
            rec["pole_profile"] = [list(r) for r in self.pole_profile]
        return rec


def choose_roots(curve: Curve, P, over: FiniteField | None = None) -> RootChoice:
    """A canonical root choice: smallest n-th roots in a splitting field, r_1 rescaled by zeta to fix the product."""
    a, b = curve.point_coords(P)
    base = _common_field(over or curve.field, a.field)
    shifted = [base.embed(al) + base.embed(a) for al in curve.alphas]
    n = curve.n
    X = UniPoly.x(base)
    K, _ = splitting_extension([X**n - s for s in shifted], base)
    rs = [nth_root(K.embed(s), n) for s in shifted]
    prod = reduce(lambda u, v: u * v, rs)
    bK = K.embed(b)
    if prod != bK:
        zeta = K.embed(curve.require_zeta())
        for k in range(1, n):
            if prod * zeta**k == bK:
                rs[0] = rs[0] * zeta**k
                break
        else:
            raise InvalidRootChoice("InvalidRootChoice: no rescaling of r_1 matches b")
    return RootChoice(tuple(rs))


def all_root_choices(curve: Curve, P, over: FiniteField | None = None) -> list[RootChoice]:
    """Every valid root choice (distinct tuples), sorted."""
    base = choose_roots(curve, P, over)
    n, d = curve.n, curve.d
    K = base.roots[0].field
    zeta = K.embed(curve.require_zeta())
    seen = {}
    for code in range(n**d):
        exps = [(code // n**i) % n for i in range(d)]
        if sum(exps) % n:
            continue
        rc = base.scaled(zeta, exps)
        seen[tuple(r.key() for r in rc.roots)] = rc
    return [seen[k] for k in sorted(seen)]


def build_matrices(curve: Curve, roots: RootChoice):
    """A, Z, M (over K[x][y], unreduced) and N = adj M (reduced) for a curve with P at x = 0.

    Returns (A, Z, M, N, det M) where A entries are UniPoly, Z entries field
    elements, M entries BiPoly and N entries RingElement.
    """
    n, d = curve.n, curve.d
    zeta = curve.require_zeta()
    F = curve.field
    s = elementary_symmetric(roots.roots)
    A_ell = {ell: build_A_ell(s, ell, n) for ell in range(d + 1 - n, d + n)}
    A = [[A_ell[d + i - j] for j in range(n)] for i in range(n)]
    Z = [[zeta ** (-i) if i == j else F.zero for j in range(n)] for i in range(n)]
    Y = BiPoly.y(F)
    M = [[BiPoly(F, [A[i][j]]) - (Y * Z[i][j] if i == j else BiPoly(F, [])) for j in range(n)] for i in range(n)]
    det, adj = det_and_adjugate(M)
    N = RingMatrix([[e.reduce(curve.ring) for e in row] for row in adj])
    return RingMatrix(A), RingMatrix(Z), RingMatrix(M), N, det


def companion(curve: Curve) -> RingMatrix:
    """C = [[0, I_{n-1}], [(-1)^(n-1) x, 0]] over the coordinate ring."""
    n = curve.n
    R = curve.ring
    corner = R.x * (-1 if (n - 1) % 2 else 1)
    rows = [[R.zero] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = R.one
    rows[n - 1][0] = corner
    return RingMatrix(rows)


def pole_profile(curve: Curve, N: RingMatrix) -> list[list[int]]:
    """-v_inf(N_{i,j}) for every entry."""
    out = []
    for i, row in enumerate(N.rows, 1):
        prow = []
        for j, e in enumerate(row, 1):
            if e.is_zero():
                raise ZeroEntry(f"N_{{{i},{j}}} vanishes identically")
            prow.append(curve.pole_order(e))
        out.append(prow)
    return out


def expected_pole_order(g: int, n: int, i: int, j: int) -> int:
    return 2 * g + (i - 1) + (n - j)


def point_orbit(P: Place, zeta: FieldElement, lo: int, hi: int, field: FiniteField) -> Divisor:
    """sum_{k=lo}^{hi} zeta^k P (empty when lo > hi)."""
    acc: dict = {}
    for k in range(lo, hi + 1):
        pl = P.embed(field).zeta_act(zeta, k)
        acc[pl] = acc.get(pl, 0) + 1
    return Divisor(acc, field)


def _fail(msg: str):
    raise InternalInvariantViolation(msg)


def divide_point(curve: Curve, P, roots, verify: bool = True, field: FiniteField | None = None) -> DivisionCertificate:
    """Compute D with (1 - zeta) D ~ P - INF and its certificate.

    ``roots`` is a RootChoice (or a sequence of field elements) for the
    translated curve; ``field`` optionally names an extension to work over, so
    that later computations can share embeddings with this one.
    """
    if isinstance(P, Place) and P.kind == INFINITY:
        raise InfinityPoint("InfinityPoint: P must be an affine point")
    if not isinstance(roots, RootChoice):
        roots = RootChoice(tuple(roots))
    a, b = curve.point_coords(P)
    base = _common_field(curve.field, a.field)
    for r in roots.roots:
        if isinstance(r, FieldElement):
            base = _common_field(base, r.field)
    if field is not None:
        base = _common_field(base, field)
    roots = RootChoice(tuple(base.embed(r) if isinstance(r, FieldElement) else base(r) for r in roots.roots))
    a, b = base.embed(a), base.embed(b)
    C0 = curve.base_change(base)
    shifted, Pp = C0.shift_to_origin((a, b))
    roots.validate(shifted.alphas, b, curve.n)

    n, g = curve.n, curve.genus
    zeta = shifted.require_zeta()
    R = shifted.ring
    _, _, _, N, det = build_matrices(shifted, roots)

    expected_det = BiPoly(base, [shifted.f] + [UniPoly(base, [])] * (n - 1) + [UniPoly.constant(base, -1)])
    if det != expected_det:
        _fail("det M differs from f(x) - y^n")

    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)] if verify else [(1, j) for j in range(1, n + 1)]
    L = shifted.zeros_field([N[i, j] for i, j in cells], base)
    zdiv = {(i, j): shifted.divisor_of_zeros(N[i, j], L) for i, j in cells}
    zetaL = L.embed(zeta)

    D = reduce(lambda u, v: u.gcd(v), [zdiv[1, j] for j in range(1, n + 1)])
    E = zdiv[1, 1] - point_orbit(Pp, zetaL, 1 - n, -1, L) - D
    if not E.is_effective() and E:
        _fail(f"E is not effective: {E}")
    if D.degree != g or E.degree != g:
        _fail(f"deg D = {D.degree}, deg E = {E.degree}, genus {g}")
    if any(pl.kind != AFFINE for pl in D.mults):
        _fail(f"D meets a ramified place or infinity: {D}")

    f1, f2 = N[1, n], N[1, n - 1]
    lhs = (zdiv[1, n] - Divisor.of((INF, shifted.pole_order(f1)))) - (
        zdiv[1, n - 1].zeta_act(zetaL) - Divisor.of((INF, shifted.pole_order(f2)))
    )
    rhs = D - D.zeta_act(zetaL) - Divisor.of(Pp, field=L) + Divisor.of(INF)
    if lhs != rhs:
        _fail(f"certificate identity fails: {lhs} != {rhs}")

    profile = None
    if verify:
        profile = pole_profile(shifted, N)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if profile[i - 1][j - 1] != expected_pole_order(g, n, i, j):
                    _fail(f"pole order of N_{i},{j} is {profile[i - 1][j - 1]}")
                want = D.zeta_act(zetaL, i - 1) + E.zeta_act(zetaL, j - 1) + point_orbit(Pp, zetaL, j - n, i - 2, L)
                if zdiv[i, j] != want:
                    _fail(f"div_0 N_{i},{j} = {zdiv[i, j]}, expected {want}")
        # second route to zeta.div(f2): divisor of sigma(f2) computed from scratch
        if shifted.divisor_of_zeros(sigma(f2), L) != zdiv[1, n - 1].zeta_act(zetaL):
            _fail("zeros of sigma(N_{1,n-1}) are not the zeta-translates of the zeros of N_{1,n-1}")

    return DivisionCertificate(
        curve=curve,
        point=(a, b),
        roots=roots,
        shift=a,
        shifted_curve=shifted,
        shifted_point=Pp,
        field=L,
        D=D.shift_x(a),
        E=E.shift_x(a),
        D_shifted=D,
        E_shifted=E,
        N=N,
        f1=f1,
        f2=f2,
        identity_lhs=lhs,
        identity_rhs=rhs,
        pole_profile=profile,
        zero_divisors=zdiv,
        verified=verify,
    )


def verify_certificate(cert: DivisionCertificate) -> bool:
    """Recheck the divisor identity from the two designated functions alone."""
    C = cert.shifted_curve
    L = cert.field
    zeta = L.embed(C.require_zeta())
    d1 = C.divisor(cert.f1, L)
    d2 = C.divisor(cert.f2, L)
    D = cert.D_shifted
    lhs = d1 - d2.zeta_act(zeta)
    rhs = D - D.zeta_act(zeta) - Divisor.of(cert.shifted_point, field=L) + Divisor.of(INF)
    return lhs == rhs


def q_divisors(cert: DivisionCertificate) -> dict:
    """Q_{i,j} = div_0 N_{i,j} - sum_{k=j-n}^{i-2} zeta^k P, with D_i = gcd_j Q_{i,j} and E_j = gcd_i Q_{i,j}.

    Needs a certificate computed in verify mode (all n^2 zero divisors).
    """
    C = cert.shifted_curve
    n = C.n
    L = cert.field
    if len(cert.zero_divisors) < n * n:
        raise InputError("q_divisors needs a certificate computed with verify=True")
    zeta = L.embed(C.require_zeta())
    Pp = cert.shifted_point
    Q = {
        (i, j): cert.zero_divisors[i, j] - point_orbit(Pp, zeta, j - n, i - 2, L)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    Ds = {i: reduce(lambda u, v: u.gcd(v), [Q[i, j] for j in range(1, n + 1)]) for i in range(1, n + 1)}
    Es = {j: reduce(lambda u, v: u.gcd(v), [Q[i, j] for i in range(1, n + 1)]) for j in range(1, n + 1)}
    for (i, j), q in Q.items():
        if q and not q.is_effective():
            _fail(f"Q_{i},{j} is not effective")
        if Ds[i] + Es[j] != q:
            _fail(f"D_{i} + E_{j} != Q_{i},{j}")
        if Q[i % n + 1, j % n + 1] != q.zeta_act(zeta) and i < n and j < n:
            _fail(f"Q_{i + 1},{j + 1} != zeta Q_{i},{j}")
    for i in range(1, n + 1):
        if Ds[i] != Ds[1].zeta_act(zeta, i - 1) or Es[i] != Es[1].zeta_act(zeta, i - 1):
            _fail(f"D_{i} or E_{i} is not the zeta^{i - 1} translate of D_1 or E_1")
    if reduce(lambda u, v: u.gcd(v), Ds.values()) or reduce(lambda u, v: u.gcd(v), Es.values()):
        _fail("gcd of the D_i or of the E_j is nonzero")
    if reduce(lambda u, v: u.gcd(v), Q.values()):
        _fail("gcd of all Q_{i,j} is nonzero")
    return {"Q": Q, "D": Ds, "E": Es}


@dataclass
class RootVariation:
    base: DivisionCertificate
    varied: DivisionCertificate
    exponents: tuple
    delta: Divisor  # D_r - zeta^(sum a) D_{zeta^-a r} - (sum a_i P_i - (sum a) INF)
    principal: bool


def vary_roots(curve: Curve, P, roots, a) -> RootVariation:
    """Compare the divisors from r and from zeta^{-a} r (the latter divides (x(P), zeta^{-sum a} b))."""
    from .jac import is_principal

    if not isinstance(roots, RootChoice):
        roots = RootChoice(tuple(roots))
    a = tuple(int(v) % curve.n for v in a)
    if len(a) != curve.d:
        raise InputError(f"expected {curve.d} exponents")
    first = divide_point(curve, P, roots, verify=False)
    K = first.roots.roots[0].field
    zeta = K.embed(curve.require_zeta())
    x0, b = first.point
    total = sum(a)
    new_roots = first.roots.scaled(zeta, [-v for v in a])
    P2 = (x0, b * zeta ** (-total))
    second = divide_point(curve, P2, new_roots, verify=False, field=first.field)
    L = second.field
    zL = L.embed(zeta)
    torsion = Divisor({Place.ramified(i): v for i, v in enumerate(a, 1)}, L) - Divisor.of((INF, total), field=L)
    delta = first.D.embed(L) - second.D.zeta_act(zL, total) - torsion
    res = is_principal(curve.base_change(L), delta)
    return RootVariation(first, second, a, delta, bool(res))
