"""Superelliptic curves y^n = (x + a_1)...(x + a_d), their places, valuations and divisors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd as igcd, lcm

from .errors import (
    CharacteristicDividesN,
    CurveMismatch,
    DuplicateAlpha,
    FieldMismatch,
    InfinityNotShiftable,
    InputError,
    InternalInvariantViolation,
    NotCoprime,
    PointNotOnCurve,
    PrecisionExhausted,
    ZeroElement,
)
from .ff import FieldElement, FiniteField, UniPoly, all_nth_roots, factor, gcd, primitive_nth_root, roots
from .ff.field import format_modulus
from .ring import CoordinateRing, RingElement, norm_to_x
from .series import TruncSeries

AFFINE, RAMIFIED, INFINITY = "affine", "ramified", "infinity"
_KIND_ORDER = {AFFINE: 0, RAMIFIED: 1, INFINITY: 2}


@dataclass(frozen=True, eq=False)
class Place:
    """A point of the smooth model.  Ramified places are numbered from 1 like the alphas."""

    kind: str
    x: FieldElement | None = None
    y: FieldElement | None = None
    index: int = 0

    @classmethod
    def affine(cls, x0: FieldElement, y0: FieldElement) -> Place:
        if x0.field is not y0.field:
            field = x0.field if y0.field.is_subfield_of(x0.field) else y0.field
            x0, y0 = field.embed(x0), field.embed(y0)
        if not y0:
            raise InputError("affine places have y != 0; use Place.ramified")
        return cls(AFFINE, x0, y0)

    @classmethod
    def ramified(cls, i: int) -> Place:
        return cls(RAMIFIED, index=i)

    @property
    def field(self) -> FiniteField | None:
        return self.x.field if self.kind == AFFINE else None

    def _ident(self):
        if self.kind == AFFINE:
            return (AFFINE, self.x, self.y)
        return (self.kind, self.index)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def sort_key(self):
        if self.kind == AFFINE:
            return (0, 0, self.x.key(), self.y.key())
        return (_KIND_ORDER[self.kind], self.index, 0, 0)

    def embed(self, field: FiniteField) -> Place:
        if self.kind != AFFINE or self.x.field is field:
            return self
        return Place(AFFINE, field.embed(self.x), field.embed(self.y))

    def zeta_act(self, zeta: FieldElement, k: int = 1) -> Place:
        """(x, y) -> (x, zeta^k y); ramified places and infinity are fixed."""
        if self.kind != AFFINE:
            return self
        z = self.x.field.embed(zeta) ** k
        return Place(AFFINE, self.x, self.y * z)

    def __str__(self):
        if self.kind == RAMIFIED:
            return f"RAM({self.index})"
        if self.kind == INFINITY:
            return "INF"
        s = f"({self.x}, {self.y})"
        # coordinates in the prime field read the same in every extension
        if any(v.c[1:] and any(v.c[1:]) for v in (self.x, self.y)):
            s += f"@ext:{format_modulus(self.x.field.modulus)}"
        return s

    __repr__ = __str__


INF = Place(INFINITY)


def _common_field(a: FiniteField | None, b: FiniteField | None) -> FiniteField | None:
    if a is None or a is b:
        return b
    if b is None:
        return a
    if a.is_subfield_of(b):
        return b
    if b.is_subfield_of(a):
        return a
    raise FieldMismatch(f"no recorded common extension of {a} and {b}")


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    __slots__ = ("mults", "field")

    def __init__(self, mults=None, field: FiniteField | None = None):
        self.mults: dict[Place, int] = {}
        for pl, m in (mults or {}).items():
            if pl.kind == AFFINE:
                field = _common_field(field, pl.field)
        self.field = field
        for pl, m in (mults or {}).items():
            if m:
                pl = pl.embed(field) if field is not None else pl
                self.mults[pl] = self.mults.get(pl, 0) + m
        self.mults = {pl: m for pl, m in self.mults.items() if m}

    @classmethod
    def of(cls, *terms, field=None) -> Divisor:
        """Divisor.of(P, (Q, 2), ...)."""
        acc: dict[Place, int] = {}
        for t in terms:
            pl, m = (t, 1) if isinstance(t, Place) else t
            acc[pl] = acc.get(pl, 0) + m
        return cls(acc, field)

    def embed(self, field: FiniteField | None) -> Divisor:
        if field is None or field is self.field:
            return self
        return Divisor(self.mults, _common_field(self.field, field))

    def _aligned(self, other: Divisor):
        f = _common_field(self.field, other.field)
        return self.embed(f), other.embed(f), f

    def __getitem__(self, pl: Place) -> int:
        if self.field is not None:
            pl = pl.embed(self.field)
        return self.mults.get(pl, 0)

    def __add__(self, other: Divisor) -> Divisor:
        a, b, f = self._aligned(other)
        out = dict(a.mults)
        for pl, m in b.mults.items():
            out[pl] = out.get(pl, 0) + m
        return Divisor(out, f)

    def __neg__(self) -> Divisor:
        return Divisor({pl: -m for pl, m in self.mults.items()}, self.field)

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor({pl: k * m for pl, m in self.mults.items()}, self.field)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        try:
            a, b, _ = self._aligned(other)
        except FieldMismatch:
            return False
        return a.mults == b.mults

    def __hash__(self):
        return hash(frozenset(self.mults.items()))

    def __bool__(self):
        return bool(self.mults)

    def gcd(self, other: Divisor) -> Divisor:
        """Pointwise minimum of multiplicities."""
        a, b, f = self._aligned(other)
        support = set(a.mults) | set(b.mults)
        return Divisor({pl: min(a.mults.get(pl, 0), b.mults.get(pl, 0)) for pl in support}, f)

    @property
    def degree(self) -> int:
        return sum(self.mults.values())

    def support(self) -> list[Place]:
        return sorted(self.mults, key=Place.sort_key)

    def is_effective(self) -> bool:
        return all(m > 0 for m in self.mults.values())

    def restrict_effective(self) -> Divisor:
        """Positive part."""
        return Divisor({pl: m for pl, m in self.mults.items() if m > 0}, self.field)

    def negative_part(self) -> Divisor:
        return Divisor({pl: -m for pl, m in self.mults.items() if m < 0}, self.field)

    def zeta_act(self, zeta: FieldElement, k: int = 1) -> Divisor:
        return Divisor({pl.zeta_act(zeta, k): m for pl, m in self.mults.items()}, self.field)

    def shift_x(self, a: FieldElement) -> Divisor:
        """Move affine places by x -> x + a (ramified labels and infinity are unchanged)."""
        out = {}
        for pl, m in self.mults.items():
            if pl.kind == AFFINE:
                pl = Place(AFFINE, pl.x + pl.x.field.embed(a), pl.y)
            out[pl] = m
        return Divisor(out, self.field)

    def items(self):
        return [(pl, self.mults[pl]) for pl in self.support()]

    def __str__(self):
        if not self.mults:
            return "0"
        parts = []
        for pl, m in self.items():
            term = str(pl)
            if abs(m) != 1:
                # brackets keep "@ext:t^2+1" and the exponent apart
                term = (f"[{term}]" if "@" in term else term) + f"^{abs(m)}"
            if not parts:
                parts.append(term if m > 0 else "-" + term)
            else:
                parts.append(("+ " if m > 0 else "- ") + term)
        return " ".join(parts)

    __repr__ = __str__


class Curve:
    """The curve y^n = prod (x + alpha_i) over ``field``."""

    def __init__(self, n: int, d: int, alphas, field: FiniteField, zeta: FieldElement | None = None):
        if n < 2 or d < 2:
            raise InputError("n and d must be at least 2")
        if igcd(n, d) != 1:
            raise NotCoprime(f"NotCoprime: gcd({n}, {d}) = {igcd(n, d)}")
        if n % field.p == 0:
            raise CharacteristicDividesN(f"CharacteristicDividesN: characteristic {field.p} divides n = {n}")
        alphas = [field.embed(a) if isinstance(a, FieldElement) else field(a) for a in alphas]
        if len(alphas) != d:
            raise InputError(f"expected {d} alphas, got {len(alphas)}")
        if len(set(alphas)) != d:
            raise DuplicateAlpha("DuplicateAlpha: the alphas must be pairwise distinct")
        self.n, self.d, self.field = n, d, field
        self.alphas = tuple(alphas)
        self.genus = (n - 1) * (d - 1) // 2
        x = UniPoly.x(field)
        self.f = reduce(lambda acc, a: acc * (x + a), alphas, UniPoly.constant(field, 1))
        if zeta is None and (field.order - 1) % n == 0:
            zeta = primitive_nth_root(field, n)
        elif zeta is not None:
            zeta = field.embed(zeta)
        self.zeta = zeta
        self.ring = CoordinateRing(field, n, self.f, zeta)
        self._local_cache: dict = {}

    # construction helpers --------------------------------------------------
    def __repr__(self):
        al = ", ".join(str(a) for a in self.alphas)
        return f"Curve(n={self.n}, d={self.d}, alphas=[{al}], field={self.field})"

    def same_model(self, other: Curve) -> bool:
        return self.n == other.n and self.d == other.d and self.f == other.f.embed(self.field)

    def base_change(self, field: FiniteField) -> Curve:
        if field is self.field:
            return self
        if not self.field.is_subfield_of(field):
            raise FieldMismatch(f"{field} does not extend {self.field}")
        return Curve(self.n, self.d, [field.embed(a) for a in self.alphas], field, self.zeta)

    def shift(self, a) -> Curve:
        """The isomorphic curve in the coordinate x' = x - a, i.e. alphas + a."""
        a = self.field.embed(a) if isinstance(a, FieldElement) else self.field(a)
        return Curve(self.n, self.d, [al + a for al in self.alphas], self.field, self.zeta)

    def shift_to_origin(self, P) -> tuple[Curve, Place]:
        """Move P = (a, b) to x = 0.  Returns the shifted curve and the image of P."""
        if isinstance(P, Place) and P.kind == INFINITY:
            raise InfinityNotShiftable("InfinityNotShiftable: the point at infinity cannot be moved to x = 0")
        a, b = self.point_coords(P)
        if b ** self.n != self.f(a):
            raise PointNotOnCurve(f"PointNotOnCurve: ({a}, {b}) does not satisfy the curve equation")
        base = self if a.field is self.field else self.base_change(a.field)
        shifted = base.shift(a)
        zero = a.field.zero
        if b:
            return shifted, Place.affine(zero, b)
        idx = next(i for i, al in enumerate(shifted.alphas, 1) if not al)
        return shifted, Place.ramified(idx)

    def point_coords(self, P) -> tuple[FieldElement, FieldElement]:
        """(x, y) coordinates of an affine or ramified place, or of a coordinate pair."""
        if isinstance(P, Place):
            if P.kind == AFFINE:
                return P.x, P.y
            if P.kind == RAMIFIED:
                return -self.alphas[P.index - 1], self.field.zero
            raise InfinityNotShiftable("the point at infinity has no affine coordinates")
        x0, y0 = P
        if isinstance(x0, int):
            x0 = self.field(x0)
        if isinstance(y0, int):
            y0 = x0.field(y0)
        field = _common_field(_common_field(self.field, x0.field), y0.field)
        return field.embed(x0), field.embed(y0)

    def place(self, x0, y0) -> Place:
        """The place at (x0, y0), validated."""
        x0, y0 = self.point_coords((x0, y0))
        if y0 ** self.n != self.f(x0):
            raise PointNotOnCurve(f"PointNotOnCurve: ({x0}, {y0}) does not satisfy the curve equation")
        if not y0:
            return Place.ramified(self.alphas.index(self.field.embed(-x0) if x0.field is self.field else -x0) + 1)
        return Place.affine(x0, y0)

    def ramified_places(self) -> list[Place]:
        return [Place.ramified(i) for i in range(1, self.d + 1)]

    def require_zeta(self) -> FieldElement:
        return self.ring.require_zeta()

    # elements ------------------------------------------------------------------
    def _coords_in(self, elt: RingElement, field: FiniteField) -> list[UniPoly]:
        if elt.ring.n != self.n:
            raise CurveMismatch("element belongs to a curve with a different n")
        return [c.embed(field) for c in elt.u]

    def pole_order(self, elt: RingElement) -> int:
        """-v_inf(elt), exact from the (n, d) grading."""
        if elt.is_zero():
            raise ZeroElement("valuation of the zero element")
        return max(self.n * c.degree + self.d * b for b, c in enumerate(elt.u) if c)

    # local expansions -----------------------------------------------------------
    def local_coordinates(self, pl: Place, prec: int, field: FiniteField | None = None):
        """Series (x(t), y(t)) in a uniformizer t at a finite place."""
        field = pl.field if pl.kind == AFFINE else (field or self.field)
        key = (pl, prec, id(field))
        hit = self._local_cache.get(key)
        if hit is not None:
            return hit
        if pl.kind == AFFINE:
            x0, y0 = pl.x, pl.y
            xs = TruncSeries(field, [x0, field.one], prec)
            f = self.f.embed(field)
            shifted = f.compose(UniPoly(field, [x0, field.one]))
            ratio = TruncSeries.from_poly(shifted, prec) * shifted[0].inverse()
            ys = ratio.nth_root(self.n, field.one) * y0
        elif pl.kind == RAMIFIED:
            i = pl.index - 1
            alphas = [field.embed(a) for a in self.alphas]
            ai = alphas[i]
            tn = TruncSeries(field, [field.zero] * self.n + [field.one], prec)
            xs = TruncSeries(field, [-ai], prec)
            # x = -alpha_i + t^n / prod_{j != i}(x + alpha_j); each pass fixes n more digits
            for _ in range(prec // self.n + 1):
                prod = TruncSeries(field, [field.one], prec)
                for j, aj in enumerate(alphas):
                    if j != i:
                        prod = prod * (xs + aj)
                xs = tn * prod.invert() - ai
            ys = TruncSeries.t(field, prec)
        else:
            raise InputError("no local series at infinity; use pole_order")
        out = (xs, ys)
        self._local_cache[key] = out
        return out

    def expand_at(self, pl: Place, elt: RingElement, prec: int) -> TruncSeries:
        field = pl.field if pl.kind == AFFINE else _common_field(self.field, elt.ring.field)
        xs, ys = self.local_coordinates(pl, prec, field)
        acc = None
        for c in reversed(self._coords_in(elt, field)):
            term = TruncSeries(field, [], prec)
            for v in reversed(c.c):
                term = term * xs + v
            acc = term if acc is None else acc * ys + term
        return acc

    def valuation(self, pl: Place, elt: RingElement) -> int:
        if elt.is_zero():
            raise ZeroElement("valuation of the zero element")
        pole = self.pole_order(elt)
        if pl.kind == INFINITY:
            return -pole
        prec = 2 * self.genus + self.n + 1
        while True:
            v = self.expand_at(pl, elt, prec).valuation()
            if v is not None:
                return v
            if prec > pole:
                # a nonzero function vanishes to order at most its pole order
                raise PrecisionExhausted(f"no nonzero coefficient up to t^{prec} at {pl}")
            prec *= 2

    # divisors ----------------------------------------------------------------------
    def _elt_in(self, elt: RingElement, field: FiniteField) -> RingElement:
        ring = self.ring.base_change(field) if self.field is not field else self.ring
        return RingElement(ring, self._coords_in(elt, field))

    def zeros_field(self, elts, over: FiniteField | None = None) -> FiniteField:
        """Smallest recorded extension of ``over`` holding every zero of every element."""
        over = over or self.field
        ext_degree = 1
        for elt in elts:
            if elt.is_zero():
                raise ZeroElement("zero element has no divisor")
            e = self._elt_in(elt, over)
            norm = norm_to_x(e)
            k0 = reduce(lcm, [g.degree for g, _ in factor(norm)], 1)
            E = over.extension(k0)
            fE = self.f.embed(E)
            eE = self._elt_in(elt, E)
            for x0 in roots(norm.embed(E)):
                fx = fE(x0)
                if not fx:
                    continue
                ypoly = UniPoly(E, [-fx] + [E.zero] * (self.n - 1) + [E.one])
                g = gcd(ypoly, eE.y_poly_at(x0))
                for h, _ in factor(g):
                    ext_degree = lcm(ext_degree, k0 * h.degree)
            ext_degree = lcm(ext_degree, k0)
        return over.extension(ext_degree)

    def divisor_of_zeros(self, elt: RingElement, field: FiniteField | None = None) -> Divisor:
        """Effective divisor of the affine and ramified zeros, over ``field`` (default: a splitting field)."""
        if elt.is_zero():
            raise ZeroElement("zero element has no divisor")
        if field is None:
            field = self.zeros_field([elt], _common_field(self.field, elt.ring.field))
        e = self._elt_in(elt, field)
        fL = self.f.embed(field)
        alphas = [field.embed(a) for a in self.alphas]
        mults: dict[Place, int] = {}
        for x0 in roots(norm_to_x(e)):
            if not fL(x0):
                i = alphas.index(-x0) + 1
                if not e.u[0](x0):
                    pl = Place.ramified(i)
                    mults[pl] = self.valuation(pl, e)
                continue
            ypoly = UniPoly(field, [-fL(x0)] + [field.zero] * (self.n - 1) + [field.one])
            g = gcd(ypoly, e.y_poly_at(x0))
            ys = roots(g)
            if len(ys) != g.degree:
                raise InternalInvariantViolation(f"zeros above x = {x0} are not rational over {field}")
            for y0 in ys:
                pl = Place(AFFINE, x0, y0)
                mults[pl] = self.valuation(pl, e)
        D = Divisor(mults, field)
        if D.degree != self.pole_order(elt):
            raise InternalInvariantViolation(
                f"zero divisor has degree {D.degree} but the pole order at infinity is {self.pole_order(elt)}"
            )
        return D

    def divisor(self, elt: RingElement, field: FiniteField | None = None) -> Divisor:
        """Full principal divisor div(elt) = div_0(elt) - (pole order) INF."""
        D0 = self.divisor_of_zeros(elt, field)
        return D0 - Divisor.of((INF, self.pole_order(elt)))

    def places_over(self, field: FiniteField) -> list[Place]:
        """All places rational over ``field`` (affine, ramified, infinity), canonically sorted."""
        if not self.field.is_subfield_of(field):
            raise FieldMismatch(f"{field} does not extend {self.field}")
        f = self.f.embed(field)
        out = []
        for x0 in field.elements():
            v = f(x0)
            if v:
                out.extend(Place(AFFINE, x0, y0) for y0 in all_nth_roots(v, self.n))
        out.sort(key=Place.sort_key)
        return out + self.ramified_places() + [INF]
