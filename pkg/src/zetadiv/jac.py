"""The (1 - zeta)-torsion group and a Riemann-Roch oracle for linear equivalence.

L(D) is computed as {g / h}: h is a fixed denominator that clears the poles D
allows at finite places, and g runs over polynomial functions whose pole order
at infinity is bounded and which vanish to prescribed orders at finitely many
places.  Those vanishing conditions are linear in the coefficients of g, read
off local expansions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .curve import AFFINE, INF, INFINITY, RAMIFIED, Curve, Divisor, Place
from .errors import (
    InfinityPoint,
    InputError,
    InternalInvariantViolation,
    NonzeroDegree,
    SearchSpaceTooLarge,
    UnsupportedSupport,
)
from .ff import FiniteField, all_nth_roots
from .ring import RingElement


# --- torsion ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TorsionClass:
    """Class of sum a_i (P_i - INF), normalised so that a_d = 0; stores a_1..a_{d-1} mod n."""

    n: int
    a: tuple

    @classmethod
    def from_vector(cls, n: int, vec) -> TorsionClass:
        """Canonical form of a full vector (a_1..a_d): subtract a_d from every entry."""
        vec = [int(v) for v in vec]
        last = vec[-1]
        return cls(n, tuple((v - last) % n for v in vec[:-1]))

    @classmethod
    def zero(cls, n: int, d: int) -> TorsionClass:
        return cls(n, (0,) * (d - 1))

    @property
    def d(self) -> int:
        return len(self.a) + 1

    def vector(self) -> tuple:
        return self.a + (0,)

    def __add__(self, other: TorsionClass) -> TorsionClass:
        return TorsionClass.from_vector(self.n, [u + v for u, v in zip(self.vector(), other.vector())])

    def __neg__(self) -> TorsionClass:
        return TorsionClass.from_vector(self.n, [-u for u in self.vector()])

    def __sub__(self, other: TorsionClass) -> TorsionClass:
        return self + (-other)

    def divisor(self, field: FiniteField | None = None) -> Divisor:
        """sum a_i (P_i - INF) with the canonical coefficients."""
        mults = {Place.ramified(i): v for i, v in enumerate(self.a, 1) if v}
        mults[INF] = -sum(self.a)
        return Divisor(mults, field)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.a) + ")"


def torsion_enumerate(n: int, d: int) -> list[TorsionClass]:
    """All n^(d-1) classes, in lexicographic order."""
    return [TorsionClass(n, a) for a in itertools.product(range(n), repeat=d - 1)]


# --- Riemann-Roch --------------------------------------------------------------


@dataclass
class RRSpace:
    bound: Divisor
    denominator: RingElement
    numerators: list  # RingElements g with g / denominator in L(bound)
    field: FiniteField

    @property
    def dimension(self) -> int:
        return len(self.numerators)


def _nullspace(rows: list[list], ncols: int, field: FiniteField) -> list[list]:
    """Basis of {v : rows . v = 0} by Gauss-Jordan elimination."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                m = rows[i][c]
                rows[i] = [u - m * v for u, v in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def _denominator(C: Curve, D: Divisor, hint: str):
    """h clearing the finite poles allowed by D, and its valuation at each of its zeros."""
    R = C.ring
    F = C.field
    n = C.n
    x_exps: dict = {}
    ram = {pl.index: m for pl, m in D.mults.items() if pl.kind == RAMIFIED and m > 0}
    for pl, m in D.mults.items():
        if pl.kind == AFFINE and m > 0:
            x_exps[pl.x] = max(x_exps.get(pl.x, 0), m)
    h = R.one
    zeros: dict[Place, int] = {}
    for x0, e in sorted(x_exps.items(), key=lambda t: t[0].key()):
        h = h * (R.x - x0) ** e
        v = C.f(x0)
        ys = all_nth_roots(v, n)
        if len(ys) != n:
            raise UnsupportedSupport(f"UnsupportedSupport: the fibre over x = {x0} is not rational over {F}")
        for y0 in ys:
            zeros[Place(AFFINE, x0, y0)] = e
    if ram:
        if hint == "x":
            for i, m in sorted(ram.items()):
                e = -(-m // n)
                h = h * (R.x + C.alphas[i - 1]) ** e
                zeros[Place.ramified(i)] = zeros.get(Place.ramified(i), 0) + n * e
        else:
            e = max(ram.values())
            h = h * R.y**e
            for pl in C.ramified_places():
                zeros[pl] = zeros.get(pl, 0) + e
    return h, zeros


def rr_space(curve: Curve, D: Divisor, hint: str = "y") -> RRSpace:
    """L(D) = {f : div(f) + D >= 0} as numerators over a common denominator.

    ``hint`` picks the denominator for poles at ramified places: "y" uses a
    power of y, "x" uses powers of (x + alpha_i).  The space does not depend on it.
    """
    if hint not in ("x", "y"):
        raise InputError("hint must be 'x' or 'y'")
    L = D.field or curve.field
    if not curve.field.is_subfield_of(L):
        raise UnsupportedSupport(f"UnsupportedSupport: divisor field {L} does not extend {curve.field}")
    C = curve.base_change(L)
    D = D.embed(L)
    h, hzeros = _denominator(C, D, hint)
    B = D[INF] + C.pole_order(h)
    if B < 0:
        return RRSpace(D, h, [], L)
    n, d = C.n, C.d
    monos = [(a, b) for b in range(n) for a in range((B - d * b) // n + 1) if d * b <= B]
    conditions = {}
    for pl, m in D.mults.items():
        if pl.kind != INFINITY:
            conditions[pl] = hzeros.get(pl, 0) - m
    for pl, e in hzeros.items():
        conditions.setdefault(pl, e)
    rows = []
    for pl in sorted(conditions, key=Place.sort_key):
        k = conditions[pl]
        if k <= 0:
            continue
        xs, ys = C.local_coordinates(pl, k, L)
        xp = [None] * (max(a for a, _ in monos) + 1)
        yp = [None] * n
        xp[0] = yp[0] = xs * 0 + 1
        for i in range(1, len(xp)):
            xp[i] = xp[i - 1] * xs
        for i in range(1, n):
            yp[i] = yp[i - 1] * ys
        cols = [(xp[a] * yp[b]).c for a, b in monos]
        for c in range(k):
            rows.append([col[c] for col in cols])
    basis = _nullspace(rows, len(monos), L) if rows else [
        [L.one if i == j else L.zero for i in range(len(monos))] for j in range(len(monos))
    ]
    R = C.ring
    nums = []
    for vec in basis:
        g = R.zero
        for coef, (a, b) in zip(vec, monos):
            if coef:
                g = g + R.monomial(a, b) * coef
        nums.append(g)
    return RRSpace(D, h, nums, L)


@dataclass
class Principality:
    principal: bool
    numerator: RingElement | None = None
    denominator: RingElement | None = None
    dimension: int = 0

    def __bool__(self):
        return self.principal


def is_principal(curve: Curve, D: Divisor, hint: str = "y") -> Principality:
    """Degree-zero D is principal iff h^0(D) = 1; the witness f = g/h has div(f) = -D (rechecked)."""
    if D.degree != 0:
        raise NonzeroDegree(f"NonzeroDegree: divisor has degree {D.degree}")
    sp = rr_space(curve, D, hint)
    if sp.dimension != 1:
        if sp.dimension > 1:
            raise InternalInvariantViolation("a degree-zero divisor has h^0 > 1")
        return Principality(False, dimension=0)
    g, h = sp.numerators[0], sp.denominator
    C = curve.base_change(sp.field)
    div_f = C.divisor(g, sp.field) - C.divisor(h, sp.field)
    if div_f != -D.embed(sp.field):
        raise InternalInvariantViolation(f"witness has divisor {div_f}, expected {-D}")
    return Principality(True, g, h, 1)


def are_equivalent(curve: Curve, D1: Divisor, D2: Divisor) -> bool:
    return bool(is_principal(curve, D1 - D2))


# --- exhaustive halving ------------------------------------------------------------


def _frobenius(pl: Place, q: int) -> Place:
    if pl.kind != AFFINE:
        return pl
    return Place(AFFINE, pl.x**q, pl.y**q)


def effective_divisors(curve: Curve, degree: int, bound: int = 1, limit: int = 20000) -> list[Divisor]:
    """Effective divisors of the given degree defined over the base field whose points lie in F_{q^k}, k <= bound."""
    if degree > 2:
        raise SearchSpaceTooLarge("exhaustive enumeration is implemented for degree <= 2")
    q = curve.field.order
    field = curve.field.extension(2) if bound >= 2 and degree == 2 else curve.field
    rational = curve.places_over(curve.field)
    if degree == 1:
        return [Divisor.of(pl) for pl in rational]
    count = len(rational) * (len(rational) + 1) // 2
    if count > limit:
        raise SearchSpaceTooLarge(f"SearchSpaceTooLarge: {count} candidates exceed the limit {limit}")
    out = [Divisor.of(p1, p2) for p1, p2 in itertools.combinations_with_replacement(rational, 2)]
    if field is not curve.field:
        seen = set()
        for pl in curve.places_over(field):
            if pl.kind != AFFINE or pl.x.field is not field:
                continue
            conj = _frobenius(pl, q)
            if conj == pl:
                continue
            key = frozenset((pl, conj))
            if key not in seen:
                seen.add(key)
                out.append(Divisor.of(pl, conj))
        if len(out) > limit:
            raise SearchSpaceTooLarge(f"SearchSpaceTooLarge: {len(out)} candidates exceed the limit {limit}")
    return out


def brute_halving(curve: Curve, P, bound: int = 1, limit: int = 20000) -> list[Divisor]:
    """All effective degree-g divisors D' (as in :func:`effective_divisors`) with D' - iota D' ~ P - INF.  n = 2 only."""
    if curve.n != 2:
        raise InputError("brute_halving needs n = 2")
    if isinstance(P, Place) and P.kind == INFINITY:
        raise InfinityPoint("InfinityPoint: P must be an affine point")
    P = P if isinstance(P, Place) else curve.place(*P)
    zeta = curve.require_zeta()
    target = Divisor.of(P) - Divisor.of(INF)
    out = []
    for cand in effective_divisors(curve, curve.genus, bound, limit):
        test = cand - cand.zeta_act(zeta) - target
        if is_principal(curve, test):
            out.append(cand)
    return sorted(out, key=str)
