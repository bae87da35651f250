"""Coordinate ring K[x,y]/(y^n - f(x)) of a superelliptic curve, plus the matrix algebra over it.

Elements are stored in y-power form: n polynomials u_0..u_{n-1} in x standing
for sum u_b(x) y^b.  Determinants are computed by memoized cofactor expansion,
which needs no division and so works over any commutative ring.  Where the
curve relation would hide information (det M is zero in the quotient ring) the
computation runs in the polynomial ring K[x][y] via :class:`BiPoly` instead.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import CurveMismatch, NoRootOfUnity, ZeroElement
from .ff import FieldElement, FiniteField, UniPoly


class CoordinateRing:
    """K[x,y]/(y^n - f) with an optional primitive n-th root of unity zeta."""

    def __init__(self, field: FiniteField, n: int, f: UniPoly, zeta: FieldElement | None = None):
        self.field = field
        self.n = n
        self.f = f
        self.d = f.degree
        self.zeta = zeta

    def same_as(self, other: CoordinateRing) -> bool:
        return self is other or (
            self.field is other.field and self.n == other.n and self.f == other.f and self.zeta == other.zeta
        )

    def __call__(self, coords) -> RingElement:
        return RingElement(self, coords)

    def const(self, c) -> RingElement:
        return RingElement(self, [UniPoly.constant(self.field, c)])

    def poly(self, u: UniPoly) -> RingElement:
        return RingElement(self, [u])

    @property
    def zero(self) -> RingElement:
        return RingElement(self, [])

    @property
    def one(self) -> RingElement:
        return self.const(1)

    @property
    def x(self) -> RingElement:
        return RingElement(self, [UniPoly.x(self.field)])

    @property
    def y(self) -> RingElement:
        return self.monomial(0, 1)

    def monomial(self, a: int, b: int) -> RingElement:
        """x^a y^b, reduced."""
        q, r = divmod(b, self.n)
        u = UniPoly.x(self.field) ** a * self.f**q
        return RingElement(self, [UniPoly(self.field, [])] * r + [u])

    def require_zeta(self) -> FieldElement:
        if self.zeta is None:
            raise NoRootOfUnity(f"NoRootOfUnity: no primitive {self.n}-th root of unity in {self.field}")
        return self.zeta

    def base_change(self, field: FiniteField) -> CoordinateRing:
        if field is self.field:
            return self
        z = None if self.zeta is None else field.embed(self.zeta)
        return CoordinateRing(field, self.n, self.f.embed(field), z)


class RingElement:
    """sum_b u_b(x) y^b with 0 <= b < n."""

    __slots__ = ("ring", "u")

    def __init__(self, ring: CoordinateRing, coords):
        self.ring = ring
        F = ring.field
        u = [c if isinstance(c, UniPoly) else UniPoly(F, c) for c in coords]
        if len(u) > ring.n:
            raise ValueError("too many y-coordinates; use BiPoly.reduce for unreduced input")
        self.u = tuple(u) + (UniPoly(F, []),) * (ring.n - len(u))

    def _other(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if not self.ring.same_as(other.ring):
                raise CurveMismatch("elements live on different curves")
            return other
        if isinstance(other, UniPoly):
            return self.ring.poly(other)
        return self.ring.const(other)

    def is_zero(self) -> bool:
        return not any(self.u)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (RingElement, UniPoly, int, FieldElement)):
            o = self._other(other)
            return self.u == o.u
        return NotImplemented

    def __hash__(self):
        return hash(self.u)

    def __add__(self, other):
        o = self._other(other)
        return RingElement(self.ring, [a + b for a, b in zip(self.u, o.u)])

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, [-a for a in self.u])

    def __sub__(self, other):
        o = self._other(other)
        return RingElement(self.ring, [a - b for a, b in zip(self.u, o.u)])

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return RingElement(self.ring, [a * other for a in self.u])
        o = self._other(other)
        n = self.ring.n
        F = self.ring.field
        acc = [UniPoly(F, [])] * (2 * n - 1)
        for i, a in enumerate(self.u):
            if not a:
                continue
            for j, b in enumerate(o.u):
                if b:
                    acc[i + j] = acc[i + j] + a * b
        # y^n -> f
        f = self.ring.f
        low = list(acc[:n])
        for k in range(n, 2 * n - 1):
            if acc[k]:
                low[k - n] = low[k - n] + acc[k] * f
        return RingElement(self.ring, low)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RingElement:
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def y_free(self) -> bool:
        return not any(self.u[1:])

    def x_degrees(self) -> list[int]:
        return [c.degree for c in self.u]

    def __call__(self, x0, y0):
        """Value at the point (x0, y0) of an extension field."""
        acc = None
        ypow = None
        for b, c in enumerate(self.u):
            ypow = y0 ** 0 if ypow is None else ypow * y0
            if c:
                term = c(x0) * ypow
                acc = term if acc is None else acc + term
        if acc is None:
            return (x0 if isinstance(x0, FieldElement) else self.ring.field(x0)).field.zero
        return acc

    def y_poly_at(self, x0: FieldElement) -> UniPoly:
        """The polynomial in y obtained by substituting x = x0."""
        return UniPoly(x0.field, [c(x0) for c in self.u])

    def base_change(self, ring: CoordinateRing) -> RingElement:
        if ring is self.ring:
            return self
        return RingElement(ring, [c.embed(ring.field) for c in self.u])

    def to_bipoly(self) -> BiPoly:
        return BiPoly(self.ring.field, self.u)

    def __str__(self):
        terms = []
        for b, c in enumerate(self.u):
            if not c:
                continue
            ys = "" if b == 0 else ("y" if b == 1 else f"y^{b}")
            if not ys:
                terms.append(f"({c})")
            elif c == 1:
                terms.append(ys)
            else:
                terms.append(f"({c})*{ys}")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


class BiPoly:
    """Element of K[x][y] with no reduction: coefficient list indexed by y-degree."""

    __slots__ = ("field", "u")

    def __init__(self, field: FiniteField, coords):
        self.field = field
        u = list(coords)
        while u and not u[-1]:
            u.pop()
        self.u = u

    @classmethod
    def y(cls, field: FiniteField) -> BiPoly:
        return cls(field, [UniPoly(field, []), UniPoly.constant(field, 1)])

    @property
    def y_degree(self) -> int:
        return len(self.u) - 1

    def __bool__(self):
        return bool(self.u)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.u == other.u
        if isinstance(other, UniPoly):
            return self == BiPoly(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly(self.field, [other if isinstance(other, UniPoly) else UniPoly.constant(self.field, other)])
        a, b = self.u, other.u
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return BiPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.field, [-c for c in self.u])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement, UniPoly)):
            return BiPoly(self.field, [c * other for c in self.u])
        a, b = self.u, other.u
        if not a or not b:
            return BiPoly(self.field, [])
        out = [UniPoly(self.field, [])] * (len(a) + len(b) - 1)
        for i, p in enumerate(a):
            if p:
                for j, q in enumerate(b):
                    if q:
                        out[i + j] = out[i + j] + p * q
        return BiPoly(self.field, out)

    __rmul__ = __mul__

    def divmod_monic(self, g: BiPoly) -> tuple[BiPoly, BiPoly]:
        """Division in K[x][y] by g, which must be monic in y."""
        if not g.u or g.u[-1] != 1:
            raise ValueError("divisor must be monic in y")
        m = g.y_degree
        r = list(self.u)
        q = [UniPoly(self.field, [])] * max(len(r) - m, 0)
        for k in range(len(r) - 1 - m, -1, -1):
            c = r[k + m]
            if c:
                q[k] = c
                for j in range(m + 1):
                    if g.u[j]:
                        r[k + j] = r[k + j] - c * g.u[j]
        return BiPoly(self.field, q), BiPoly(self.field, r[:m])

    def reduce(self, ring: CoordinateRing) -> RingElement:
        """Image in the coordinate ring."""
        n = ring.n
        low = [UniPoly(self.field, [])] * n
        fpow = UniPoly.constant(self.field, 1)
        for start in range(0, len(self.u), n):
            for b, c in enumerate(self.u[start : start + n]):
                if c:
                    low[b] = low[b] + c * fpow
            fpow = fpow * ring.f
        return RingElement(ring, low)

    def __str__(self):
        terms = []
        for b, c in enumerate(self.u):
            if c:
                terms.append(f"({c})" + ("" if b == 0 else ("*y" if b == 1 else f"*y^{b}")))
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


class RingMatrix:
    """Square matrix over a commutative ring; ``m[i, j]`` uses 1-based indices taken modulo n."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.size = len(self.rows)
        if any(len(r) != self.size for r in self.rows):
            raise ValueError("matrix must be square")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[(i - 1) % self.size][(j - 1) % self.size]

    def map(self, fn) -> RingMatrix:
        return RingMatrix([[fn(e) for e in r] for r in self.rows])

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in range(1, n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return RingMatrix(out)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.size == other.size and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def transpose(self) -> RingMatrix:
        return RingMatrix([list(c) for c in zip(*self.rows)])

    def determinant(self):
        return det_and_adjugate(self.rows, want_adj=False)[0]

    def adjugate(self) -> RingMatrix:
        return RingMatrix(det_and_adjugate(self.rows)[1])


def det_and_adjugate(rows, want_adj: bool = True):
    """Determinant and adjugate by memoized cofactor expansion (division free).

    adj[i][j] = (-1)^(i+j) * det(rows with row j and column i removed).
    """
    n = len(rows)

    @lru_cache(maxsize=None)
    def minor(rs: tuple, cs: tuple):
        if len(rs) == 1:
            return rows[rs[0]][cs[0]]
        r0, rest = rs[0], rs[1:]
        acc = None
        for k, c in enumerate(cs):
            e = rows[r0][c]
            if not e:
                continue
            term = e * minor(rest, cs[:k] + cs[k + 1 :])
            if k % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            return rows[r0][cs[0]] * 0
        return acc

    all_idx = tuple(range(n))
    det = minor(all_idx, all_idx)
    if not want_adj:
        return det, None
    if n == 1:
        one = rows[0][0] * 0 + 1
        return det, [[one]]
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            m = minor(all_idx[:j] + all_idx[j + 1 :], all_idx[:i] + all_idx[i + 1 :])
            row.append(-m if (i + j) % 2 else m)
        adj.append(row)
    return det, adj


def sigma(a: RingElement, power: int = 1) -> RingElement:
    """The automorphism y -> zeta^(-1) y applied ``power`` times."""
    z = a.ring.require_zeta()
    n = a.ring.n
    zinv = z ** (-(power % n))
    out = []
    scale = a.ring.field.one
    for c in a.u:
        out.append(c * scale)
        scale = scale * zinv
    return RingElement(a.ring, out)


def multiplication_matrix(a: RingElement) -> list[list[UniPoly]]:
    """Matrix over K[x] of multiplication by a on the basis 1, y, ..., y^(n-1); column b is a*y^b."""
    ring = a.ring
    cols = []
    cur = a
    for _ in range(ring.n):
        cols.append(cur.u)
        cur = cur * ring.y
    return [[cols[b][r] for b in range(ring.n)] for r in range(ring.n)]


def norm_to_x(a: RingElement) -> UniPoly:
    """Norm from K(x,y) down to K(x): the product of all conjugates sigma^k(a).

    Computed as the determinant of multiplication by a, which needs no root of unity.
    """
    if a.is_zero():
        raise ZeroElement("norm of the zero element")
    return det_and_adjugate(multiplication_matrix(a), want_adj=False)[0]


def elementary_symmetric(roots) -> list:
    """s_0..s_d with sum_j s_j T^(d-j) = prod (T + r_i)."""
    roots = list(roots)
    if not roots:
        return []
    F = roots[0].field
    s = [F.one]
    for r in roots:
        # multiply by (T + r): s'_j = s_j + r s_{j-1}
        s = [s[0]] + [s[j] + r * s[j - 1] for j in range(1, len(s))] + [r * s[-1]]
    return s


def build_A_ell(s: list, ell: int, n: int) -> UniPoly:
    """sum_{k>=0} (-1)^((n-1)k) s_{ell-nk} x^k, with s_m = 0 outside [0, d]."""
    F = s[0].field
    d = len(s) - 1
    coeffs = []
    k = 0
    while ell - n * k >= 0:
        m = ell - n * k
        v = s[m] if m <= d else F.zero
        coeffs.append(-v if ((n - 1) * k) % 2 else v)
        k += 1
    return UniPoly(F, coeffs)
