"""Truncated power series a_0 + a_1 t + ... + O(t^prec) over a finite field.

Precision is carried through every operation, so a result never claims
digits its inputs could not justify.
"""

from __future__ import annotations

from .errors import FieldMismatch, InputError, NonUnitConstantTerm
from .ff import FieldElement, FiniteField, UniPoly


class TruncSeries:
    __slots__ = ("field", "c", "prec")

    def __init__(self, field: FiniteField, coeffs, prec: int):
        self.field = field
        self.prec = prec
        c = [v if isinstance(v, FieldElement) and v.field is field else field(v) for v in list(coeffs)[:prec]]
        self.c = c + [field.zero] * (prec - len(c))

    @classmethod
    def from_poly(cls, p: UniPoly, prec: int) -> TruncSeries:
        return cls(p.field, p.c[:prec], prec)

    @classmethod
    def t(cls, field: FiniteField, prec: int) -> TruncSeries:
        return cls(field, [field.zero, field.one], prec)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero to this precision."""
        for i, v in enumerate(self.c):
            if v:
                return i
        return None

    def _match(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return TruncSeries(self.field, [self.field(other)], self.prec)

    def __add__(self, other):
        o = self._match(other)
        prec = min(self.prec, o.prec)
        return TruncSeries(self.field, [a + b for a, b in zip(self.c[:prec], o.c[:prec])], prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.field, [-a for a in self.c], self.prec)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            s = self.field(other)
            return TruncSeries(self.field, [a * s for a in self.c], self.prec)
        o = self._match(other)
        va = self.valuation()
        vb = o.valuation()
        # (a + O(t^A))(b + O(t^B)) is known to O(t^min(A + v(b), B + v(a)))
        prec = min(self.prec + (vb if vb is not None else o.prec), o.prec + (va if va is not None else self.prec))
        zero = self.field.zero
        out = [zero] * prec
        a, b = self.c, o.c
        for i in range(min(len(a), prec)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), prec - i)):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncSeries(self.field, out, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncSeries:
        if e < 0:
            return self.invert() ** (-e)
        result = TruncSeries(self.field, [self.field.one], self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self) -> TruncSeries:
        if not self.c or not self.c[0]:
            raise NonUnitConstantTerm("series with zero constant term is not invertible")
        inv0 = self.c[0].inverse()
        out = [inv0]
        for k in range(1, self.prec):
            acc = self.field.zero
            for j in range(1, k + 1):
                if self.c[j]:
                    acc = acc + self.c[j] * out[k - j]
            out.append(-acc * inv0)
        return TruncSeries(self.field, out, self.prec)

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self * self.field(other).inverse()
        return self * self._match(other).invert()

    def compose(self, inner: TruncSeries) -> TruncSeries:
        """self(inner), for inner with zero constant term."""
        if inner.c and inner.c[0]:
            raise InputError("inner series must have zero constant term")
        v = inner.valuation()
        prec = inner.prec if v is None else min(self.prec * v, inner.prec)
        inner = TruncSeries(self.field, inner.c, prec)
        acc = TruncSeries(self.field, [], prec)
        for a in reversed(self.c):
            acc = acc * inner + a
            acc = TruncSeries(self.field, acc.c, prec)
        return acc

    def nth_root(self, n: int, const: FieldElement | None = None) -> TruncSeries:
        """Series r with r^n = self + O(t^prec); r(0) = const (default: smallest n-th root of self(0))."""
        from .ff import nth_root as field_nth_root

        if n % self.field.p == 0:
            raise InputError("n must be coprime to the characteristic")
        if not self.c or not self.c[0]:
            raise NonUnitConstantTerm("nth_root needs a unit constant term")
        if const is None:
            const = field_nth_root(self.c[0], n)
        elif const**n != self.c[0]:
            raise InputError("prescribed constant term is not an n-th root")
        # Newton iteration r <- r - (r^n - s) / (n r^(n-1)), doubling precision each step
        r = TruncSeries(self.field, [const], 1)
        inv_n = self.field(n).inverse()
        k = 1
        while k < self.prec:
            k = min(2 * k, self.prec)
            rk = TruncSeries(self.field, r.c, k)
            sk = TruncSeries(self.field, self.c, k)
            r = rk - (rk**n - sk) * (rk ** (n - 1)).invert() * inv_n
        return r

    def truncate(self, prec: int) -> TruncSeries:
        return TruncSeries(self.field, self.c, min(prec, self.prec))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        return self.field is other.field and self.c[:prec] == other.c[:prec]

    def __str__(self):
        terms = []
        for i, v in enumerate(self.c):
            if not v:
                continue
            s = str(v) if self.field.degree == 1 else f"({v})"
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(s if i == 0 else (mono if v.is_one() else f"{s}*{mono}"))
        terms.append(f"O(t^{self.prec})")
        return " + ".join(terms)

    __repr__ = __str__
