"""Prime fields F_p and extensions F_p[t]/(m(t)).

Every extension is stored in absolute form over its prime field.  An
extension built with :meth:`FiniteField.extension` remembers the field it was
built over (its *parent*) together with the image of the parent's generator,
so elements can be carried up any chain of recorded extensions.  Embedding
between fields that are not on a common chain is refused on purpose: two
unrelated embeddings of the same field could disagree by a Frobenius twist.
"""

from __future__ import annotations

import random
import re
from typing import Iterator

from ..errors import DivisionByZero, FieldMismatch, InputError, NoEmbeddingRecorded, NotIrreducible

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_poly_inverse(a: list[int], m: list[int], p: int) -> list[int]:
    """Inverse of a modulo m over F_p (extended Euclid on int coefficient lists)."""
    r0, r1 = list(m), _int_poly_trim(list(a))
    s0, s1 = [], [1]
    while r1:
        inv_lc = pow(r1[-1], p - 2, p)
        q = [0] * max(len(r0) - len(r1) + 1, 0)
        r = list(r0)
        while len(r) >= len(r1) and r:
            c = r[-1] * inv_lc % p
            sh = len(r) - len(r1)
            q[sh] = c
            for i, v in enumerate(r1):
                r[sh + i] = (r[sh + i] - c * v) % p
            _int_poly_trim(r)
        # s2 = s0 - q*s1
        prod = [0] * (len(q) + len(s1))
        for i, u in enumerate(q):
            if u:
                for j, v in enumerate(s1):
                    prod[i + j] = (prod[i + j] + u * v) % p
        s2 = [0] * max(len(s0), len(prod))
        for i, v in enumerate(s0):
            s2[i] = v
        for i, v in enumerate(prod):
            s2[i] = (s2[i] - v) % p
        r0, r1 = r1, r
        s0, s1 = s1, _int_poly_trim(s2)
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible (modulus not irreducible?)")
    c = pow(r0[0], p - 2, p)
    return [v * c % p for v in s0]


class FiniteField:
    """A finite field of order p**degree.

    Instances are immutable and compared by identity; use :func:`GF`,
    :meth:`extension` or :meth:`from_modulus` to obtain them so that equal
    requests return the same object.
    """

    def __init__(self, p: int, modulus: tuple[int, ...] | None = None, parent: FiniteField | None = None):
        self.p = p
        self.modulus = modulus
        self.degree = 1 if modulus is None else len(modulus) - 1
        self.order = p**self.degree
        self.parent = parent
        self._parent_gen_image: FieldElement | None = None
        self._children: dict[int, FiniteField] = {}
        self._gen_images: dict[int, FieldElement] = {}
        if modulus is not None:
            k = self.degree
            # rows: t^j mod m for j in [k, 2k-2]
            red = []
            cur = [(-c) % p for c in modulus[:k]]
            for _ in range(k - 1):
                red.append(cur)
                nxt = [0] + cur[:-1]
                top = cur[-1]
                if top:
                    nxt = [(v - top * c) % p for v, c in zip(nxt, modulus[:k])]
                cur = nxt
            red.append(cur)
            self._red = red
            # sparse rows: the canonical moduli are often binomials
            self._red_sparse = [[(i, v) for i, v in enumerate(row) if v] for row in red]
            # Kronecker packing: product coefficients are < k p^2
            self._slot = (k * p * p).bit_length() + 1
        self.zero = FieldElement(self, (0,) * self.degree)
        self.one = FieldElement(self, (1,) + (0,) * (self.degree - 1))

    # construction -------------------------------------------------------
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return self.embed(value)
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.degree - 1))
        if isinstance(value, (tuple, list)):
            if len(value) > self.degree:
                raise InputError(f"too many coefficients for field of degree {self.degree}")
            c = tuple(int(v) % self.p for v in value) + (0,) * (self.degree - len(value))
            return FieldElement(self, c)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    @property
    def gen(self) -> FieldElement:
        if self.degree == 1:
            raise InputError("a prime field has no polynomial generator")
        return self((0, 1))

    @property
    def prime_field(self) -> FiniteField:
        return GF(self.p)

    def from_key(self, key: int) -> FieldElement:
        c = []
        for _ in range(self.degree):
            key, r = divmod(key, self.p)
            c.append(r)
        return FieldElement(self, tuple(c))

    def elements(self) -> Iterator[FieldElement]:
        for key in range(self.order):
            yield self.from_key(key)

    def random(self, rng: random.Random) -> FieldElement:
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))

    def random_nonzero(self, rng: random.Random) -> FieldElement:
        while True:
            a = self.random(rng)
            if a:
                return a

    def parse(self, text: str) -> FieldElement:
        """Parse an integer or a polynomial in ``t`` such as ``3*t^2+t+5``."""
        s = text.replace(" ", "")
        if not s:
            raise InputError("empty field element")
        if re.fullmatch(r"[+-]?\d+", s):
            return self(int(s))
        if not re.fullmatch(r"[+-]?[0-9t*^+-]+", s):
            raise InputError(f"cannot parse field element {text!r}")
        coeffs = [0] * self.degree
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.fullmatch(r"(?:(\d+)\*?)?(t)(?:\^(\d+))?|(\d+)", body)
            if not m:
                raise InputError(f"cannot parse term {body!r}")
            if m.group(4) is not None:
                c, e = int(m.group(4)), 0
            else:
                c = int(m.group(1)) if m.group(1) else 1
                e = int(m.group(3)) if m.group(3) else 1
            if e >= self.degree:
                raise InputError(f"power t^{e} out of range for degree {self.degree}")
            coeffs[e] += -c if sign == "-" else c
        return self(coeffs)

    # extensions ---------------------------------------------------------
    @classmethod
    def from_modulus(cls, p: int, modulus) -> FiniteField:
        """Extension of F_p by a monic irreducible modulus (low-to-high coefficients)."""
        base = GF(p)
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) < 2 or mod[-1] != 1:
            raise NotIrreducible("modulus must be monic of degree >= 1")
        if len(mod) == 2:
            return base
        key = (p, mod)
        if key in _MODULUS_CACHE:
            return _MODULUS_CACHE[key]
        from .poly import UniPoly

        if not UniPoly(base, [base(c) for c in mod]).is_irreducible():
            raise NotIrreducible(f"modulus {mod} is reducible over F_{p}")
        field = cls(p, mod, parent=base)
        _MODULUS_CACHE[key] = field
        return field

    def extension(self, k: int) -> FiniteField:
        """The canonical extension of relative degree k, with a recorded embedding of self."""
        if k < 1:
            raise InputError("extension degree must be positive")
        if k == 1:
            return self
        if k in self._children:
            return self._children[k]
        from .poly import canonical_irreducible, UniPoly

        K = self.degree * k
        child = FiniteField(self.p, canonical_irreducible(self.p, K), parent=self)
        if self.degree > 1:
            from .rootfinding import roots

            mod = UniPoly(child, [child(c) for c in self.modulus])
            child._parent_gen_image = roots(mod)[0]
        self._children[k] = child
        return child

    def ancestors(self) -> list[FiniteField]:
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.parent
        return out

    def is_subfield_of(self, other: FiniteField) -> bool:
        return self is other or self.degree == 1 and self.p == other.p or self in other.ancestors()

    def _gen_image_of(self, src: FiniteField) -> FieldElement:
        key = id(src)
        if key in self._gen_images:
            return self._gen_images[key]
        if self.parent is None or src.degree == 1:
            raise NoEmbeddingRecorded(f"no embedding recorded from {src} into {self}")
        if src is self.parent:
            img = self._parent_gen_image
            if img is None:  # parent is the prime field
                raise NoEmbeddingRecorded(f"no embedding recorded from {src} into {self}")
        else:
            img = self._embed_from_parent(self.parent._gen_image_of(src))
        self._gen_images[key] = img
        return img

    def _embed_from_parent(self, a: FieldElement) -> FieldElement:
        if self.parent.degree == 1:
            return self(a.c[0])
        return _horner(a.c, self._parent_gen_image, self)

    def embed(self, a) -> FieldElement:
        """Carry an element of a recorded subfield (or an int) into this field."""
        if isinstance(a, int):
            return self(a)
        src = a.field
        if src is self:
            return a
        if src.p != self.p:
            raise FieldMismatch(f"characteristic mismatch: {src} vs {self}")
        if src.degree == 1:
            return self(a.c[0])
        return _horner(a.c, self._gen_image_of(src), self)

    def __repr__(self):
        if self.modulus is None:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree}; {format_modulus(self.modulus)})"

    def describe(self) -> str:
        return str(self.p) if self.modulus is None else f"{self.p}:{format_modulus(self.modulus)}"


def _horner(coeffs, x: FieldElement, field: FiniteField) -> FieldElement:
    acc = field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def format_modulus(mod) -> str:
    terms = []
    for e in range(len(mod) - 1, -1, -1):
        c = mod[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            mono = "t" if e == 1 else f"t^{e}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) or "0"


_PRIME_CACHE: dict[int, FiniteField] = {}
_MODULUS_CACHE: dict[tuple, FiniteField] = {}


def GF(p: int, modulus=None) -> FiniteField:
    """The prime field F_p, or its extension by ``modulus`` when given."""
    if modulus is not None:
        return FiniteField.from_modulus(p, modulus)
    if p in _PRIME_CACHE:
        return _PRIME_CACHE[p]
    if not (2 < p < MAX_PRIME) or not is_prime(p):
        raise InputError(f"p must be an odd prime below 2^31, got {p}")
    field = FiniteField(p)
    _PRIME_CACHE[p] = field
    return field


PrimeField = GF


class FieldElement:
    """An element of a :class:`FiniteField`: coefficients over F_p in the power basis."""

    __slots__ = ("field", "c", "_packed")

    def __init__(self, field: FiniteField, c: tuple[int, ...]):
        self.field = field
        self.c = c
        self._packed = None

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            f = self.field
            if other.field.degree == 1 and other.field.p == f.p:
                return f(other.c[0])
            if self.field.degree == 1 and other.field.p == f.p:
                return NotImplemented
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, ((self.c[0] + o.c[0]) % p,))
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, ((self.c[0] - o.c[0]) % p,))
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        field = self.field
        p = field.p
        k = field.degree
        if k == 1:
            return FieldElement(field, (self.c[0] * o.c[0] % p,))
        S = field._slot
        P = self._pack() * o._pack()
        mask = (1 << S) - 1
        prod = [(P >> (S * i)) & mask for i in range(2 * k - 1)]
        low = prod[:k]
        red = field._red_sparse
        for j in range(k - 1):
            top = prod[k + j]
            if top:
                for i, v in red[j]:
                    low[i] += top * v
        return FieldElement(field, tuple(v % p for v in low))

    def _pack(self) -> int:
        packed = self._packed
        if packed is None:
            S = self.field._slot
            packed = 0
            for v in reversed(self.c):
                packed = (packed << S) | v
            self._packed = packed
        return packed

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise DivisionByZero("division by zero in finite field")
        field = self.field
        if field.degree == 1:
            return FieldElement(field, (pow(self.c[0], field.p - 2, field.p),))
        inv = _int_poly_inverse(list(self.c), list(field.modulus), field.p)
        return field(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        field = self.field
        if field.degree == 1:
            return FieldElement(field, (pow(self.c[0], e, field.p),))
        result, base = field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return self.c == other.c
            if other.field.p != self.field.p:
                return False
            if other.field.degree == 1:
                return self.c == self.field(other.c[0]).c
            if self.field.degree == 1:
                return other.c == other.field(self.c[0]).c
            return False
        if isinstance(other, int):
            return self.c == self.field(other).c
        return NotImplemented

    def __hash__(self):
        if self.field.degree == 1 or not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def key(self) -> int:
        """Integer encoding sum(c_i p^i); the fixed element ordering used for canonical choices."""
        k = 0
        for v in reversed(self.c):
            k = k * self.field.p + v
        return k

    def __lt__(self, other: FieldElement):
        return self.key() < other.key()

    def is_one(self) -> bool:
        return self.c[0] == 1 and not any(self.c[1:])

    def to_list(self) -> list[int]:
        return list(self.c)

    def __int__(self):
        if any(self.c[1:]):
            raise InputError("element is not in the prime field")
        return self.c[0]

    def __str__(self):
        if self.field.degree == 1:
            return str(self.c[0])
        return format_modulus(self.c)

    def __repr__(self):
        return f"{self}"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputError(f"unknown op {op!r}")
