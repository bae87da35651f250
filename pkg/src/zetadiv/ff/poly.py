"""Dense univariate polynomials over a :class:`FiniteField` and their factorization.

Factorization is the textbook pipeline: square-free decomposition, distinct
degree splitting, then Cantor-Zassenhaus equal-degree splitting driven by a
seeded RNG.  Output is sorted, so results never depend on the seed.
"""

from __future__ import annotations

import random
from functools import reduce
from math import lcm

from ..errors import FieldMismatch, ZeroPolynomial
from .field import FieldElement, FiniteField, GF


class UniPoly:
    """Polynomial sum c[i] x^i with no trailing zero coefficients."""

    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs=(), _trim: bool = True):
        self.field = field
        c = [x if isinstance(x, FieldElement) and x.field is field else field(x) for x in coeffs] if _trim else coeffs
        if _trim:
            while c and not c[-1]:
                c.pop()
        self.c = c

    # constructors -------------------------------------------------------
    @classmethod
    def x(cls, field: FiniteField) -> UniPoly:
        return cls(field, [field.zero, field.one], _trim=False)

    @classmethod
    def constant(cls, field: FiniteField, value) -> UniPoly:
        return cls(field, [field(value)])

    @classmethod
    def from_roots(cls, field: FiniteField, roots) -> UniPoly:
        """prod (x - r)."""
        out = cls.constant(field, 1)
        for r in roots:
            out = out * cls(field, [-field(r), field.one])
        return out

    # basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> FieldElement:
        if not self.c:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __getitem__(self, i: int) -> FieldElement:
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, FieldElement)):
            return self == UniPoly.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(x.key() for x in self.c))

    def key(self):
        return (self.degree, tuple(x.key() for x in reversed(self.c)))

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1].is_one()

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    # arithmetic ----------------------------------------------------------
    def _check(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return UniPoly.constant(self.field, other)

    def __add__(self, other):
        o = self._check(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return UniPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-v for v in self.c], _trim=False)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            s = self.field(other)
            if not s:
                return UniPoly(self.field, [], _trim=False)
            return UniPoly(self.field, [v * s for v in self.c], _trim=False)
        o = self._check(other)
        a, b = self.c, o.c
        if not a or not b:
            return UniPoly(self.field, [], _trim=False)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] = out[i + j] + u * v
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        result = UniPoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> UniPoly:
        """Multiply by x^k."""
        if not self.c:
            return self
        return UniPoly(self.field, [self.field.zero] * k + list(self.c), _trim=False)

    def __divmod__(self, other):
        o = self._check(other)
        if not o.c:
            raise ZeroPolynomial("polynomial division by zero")
        r = list(self.c)
        db = len(o.c) - 1
        if len(r) - 1 < db:
            return UniPoly(self.field, [], _trim=False), UniPoly(self.field, r, _trim=False)
        inv = o.c[-1].inverse()
        q = [self.field.zero] * (len(r) - db)
        bc = o.c
        for k in range(len(r) - 1 - db, -1, -1):
            coef = r[k + db] * inv
            q[k] = coef
            if coef:
                for j in range(db + 1):
                    r[k + j] = r[k + j] - coef * bc[j]
        return UniPoly(self.field, q), UniPoly(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> UniPoly:
        if not self.c:
            raise ZeroPolynomial("zero polynomial cannot be made monic")
        if self.c[-1].is_one():
            return self
        return self * self.c[-1].inverse()

    def derivative(self) -> UniPoly:
        return UniPoly(self.field, [v * i for i, v in enumerate(self.c)][1:])

    def __call__(self, x):
        """Evaluate at x (an element of this field or of an extension with a recorded embedding)."""
        if isinstance(x, int):
            x = self.field(x)
        target = x.field
        coeffs = self.c if target is self.field else [target.embed(v) for v in self.c]
        acc = target.zero
        for v in reversed(coeffs):
            acc = acc * x + v
        return acc

    def compose(self, other: UniPoly) -> UniPoly:
        acc = UniPoly(self.field, [], _trim=False)
        for v in reversed(self.c):
            acc = acc * other + v
        return acc

    def embed(self, field: FiniteField) -> UniPoly:
        if field is self.field:
            return self
        return UniPoly(field, [field.embed(v) for v in self.c], _trim=False)

    def powmod(self, e: int, mod: UniPoly) -> UniPoly:
        result = UniPoly.constant(self.field, 1)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for e in range(len(self.c) - 1, -1, -1):
            v = self.c[e]
            if not v:
                continue
            s = str(v)
            if self.field.degree > 1 and e and not v.is_one():
                s = f"({s})"
            if e == 0:
                terms.append(s)
            else:
                mono = "x" if e == 1 else f"x^{e}"
                terms.append(mono if v.is_one() else f"{s}*{mono}")
        return " + ".join(terms)

    __repr__ = __str__

    # factorization helpers ------------------------------------------------
    def is_irreducible(self) -> bool:
        """Rabin's test."""
        if not self.c:
            raise ZeroPolynomial("zero polynomial")
        k = self.degree
        if k < 1:
            return False
        if k == 1:
            return True
        f = self.monic()
        q = self.field.order
        x = UniPoly.x(self.field)
        for r in _prime_divisors(k):
            h = _frobenius_power(x, f, q, k // r)
            if gcd(f, h - x).degree > 0:
                return False
        return _frobenius_power(x, f, q, k) == x % f


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while b.c:
        a, b = b, a % b
    return a.monic() if a.c else a


def xgcd(a: UniPoly, b: UniPoly):
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly.constant(F, 1), UniPoly(F, [])
    t0, t1 = UniPoly(F, []), UniPoly.constant(F, 1)
    while r1.c:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.lc.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def _prime_divisors(k: int) -> list[int]:
    out, d = [], 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


def _frobenius_power(h: UniPoly, f: UniPoly, q: int, times: int) -> UniPoly:
    for _ in range(times):
        h = h.powmod(q, f)
    return h


def _pth_root(f: UniPoly) -> UniPoly:
    """g with g^p = f, for f whose exponents are all multiples of p."""
    F = f.field
    p = F.p
    e = F.order // p  # a -> a^(q/p) inverts Frobenius
    return UniPoly(F, [f.c[i] ** e for i in range(0, len(f.c), p)])


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic squarefree factors with multiplicities (f assumed monic)."""
    out: list[tuple[UniPoly, int]] = []
    if f.degree < 1:
        return out
    p = f.field.p
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w, c = y, c // y
        i += 1
    if c.degree > 0:
        for g, e in squarefree_decomposition(_pth_root(c.monic())):
            out.append((g, e * p))
    return out


def distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    q = f.field.order
    x = UniPoly.x(f.field)
    h = x % f
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = h.powmod(q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def equal_degree(f: UniPoly, i: int, rng: random.Random) -> list[UniPoly]:
    """Cantor-Zassenhaus: split f (monic, squarefree, all factors of degree i)."""
    if f.degree == i:
        return [f]
    F = f.field
    e = (F.order**i - 1) // 2
    while True:
        u = UniPoly(F, [F.random(rng) for _ in range(f.degree)])
        if u.degree < 1:
            continue
        g = gcd(f, u)
        if 0 < g.degree < f.degree:
            break
        g = gcd(f, u.powmod(e, f) - 1)
        if 0 < g.degree < f.degree:
            break
    return equal_degree(g, i, rng) + equal_degree(f // g, i, rng)


def factor(f: UniPoly, seed: int = 0) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if not f.c:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for sqf, mult in squarefree_decomposition(f.monic()):
        for g, i in distinct_degree(sqf):
            for h in equal_degree(g, i, rng):
                out.append((h, mult))
    merged: dict = {}
    for h, m in out:
        merged[h.key()] = (h, merged.get(h.key(), (h, 0))[1] + m)
    return sorted(merged.values(), key=lambda t: t[0].key())


def canonical_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p (lower coefficients read as base-p digits)."""
    F = GF(p)
    for counter in range(p**k):
        low, v = [], counter
        for _ in range(k):
            v, r = divmod(v, p)
            low.append(r)
        if low[0] == 0:
            continue
        cand = UniPoly(F, [F(c) for c in low] + [F.one])
        if cand.is_irreducible():
            return tuple(low) + (1,)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def splitting_extension(fs, base: FiniteField | None = None, seed: int = 0):
    """Smallest recorded extension of ``base`` over which every f in fs splits.

    Returns ``(field, embedding)`` where ``embedding`` maps elements of the base
    field into the new one.
    """
    fs = list(fs)
    if base is None:
        base = fs[0].field
    degrees = [1]
    for f in fs:
        if not f.c:
            raise ZeroPolynomial("cannot split the zero polynomial")
        for g, _ in factor(f.embed(base) if f.field is not base else f, seed):
            degrees.append(g.degree)
    k = reduce(lcm, degrees)
    ext = base.extension(k)
    return ext, ext.embed
