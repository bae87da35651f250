"""Roots of polynomials, roots of unity and n-th roots in finite fields."""

from __future__ import annotations

import random

from ..errors import InputError, NoRootOfUnity, NotAnNthPower, ZeroPolynomial
from .field import FieldElement, FiniteField
from .poly import UniPoly, equal_degree, gcd


def roots(f: UniPoly, field: FiniteField | None = None, seed: int = 0) -> list[FieldElement]:
    """Distinct roots of f lying in ``field`` (default: f's own field), sorted by element key."""
    if not f.c:
        raise ZeroPolynomial("the zero polynomial has every element as a root")
    if field is not None and field is not f.field:
        f = f.embed(field)
    F = f.field
    if f.degree < 1:
        return []
    f = f.monic()
    if f.degree == 1:
        return [-f.c[0]]
    x = UniPoly.x(F)
    g = gcd(f, x.powmod(F.order, f) - x)
    if g.degree < 1:
        return []
    if g.degree == 1:
        return [-g.c[0]]
    out = [-h.c[0] for h in equal_degree(g, 1, random.Random(seed))]
    return sorted(out, key=FieldElement.key)


def primitive_nth_root(field: FiniteField, n: int) -> FieldElement:
    """Smallest (by element key) element of multiplicative order exactly n."""
    if n < 1:
        raise InputError("n must be positive")
    if (field.order - 1) % n:
        raise NoRootOfUnity(f"NoRootOfUnity: {n} does not divide {field.order} - 1")
    primes = [r for r in range(2, n + 1) if n % r == 0 and all(r % s for s in range(2, r))]
    xn1 = UniPoly(field, [-field.one] + [field.zero] * (n - 1) + [field.one])
    for z in roots(xn1):
        if all(not (z ** (n // r)).is_one() for r in primes):
            return z
    raise AssertionError("unreachable: cyclic group of order divisible by n")


def nth_root(a: FieldElement, n: int) -> FieldElement:
    """Smallest r with r^n = a in a's field; NotAnNthPower if none exists there."""
    F = a.field
    if F.p and n % F.p == 0:
        raise InputError("n must be coprime to the characteristic")
    if not a:
        return F.zero
    f = UniPoly(F, [-a] + [F.zero] * (n - 1) + [F.one])
    rs = roots(f)
    if not rs:
        raise NotAnNthPower(f"NotAnNthPower: {a} has no {n}-th root in {F}")
    return rs[0]


def all_nth_roots(a: FieldElement, n: int) -> list[FieldElement]:
    F = a.field
    if not a:
        return [F.zero]
    return roots(UniPoly(F, [-a] + [F.zero] * (n - 1) + [F.one]))
