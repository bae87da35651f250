"""Exact arithmetic in F_p and its extensions."""

from .field import GF, FieldElement, FiniteField, PrimeField, arith, is_prime
from .poly import UniPoly, canonical_irreducible, factor, gcd, splitting_extension, xgcd
from .rootfinding import all_nth_roots, nth_root, primitive_nth_root, roots

ExtField = FiniteField


def embed(a: FieldElement, target: FiniteField) -> FieldElement:
    """Image of ``a`` in ``target`` along the recorded chain of extensions."""
    return target.embed(a)


__all__ = [
    "GF",
    "PrimeField",
    "ExtField",
    "FiniteField",
    "FieldElement",
    "UniPoly",
    "arith",
    "embed",
    "factor",
    "gcd",
    "xgcd",
    "is_prime",
    "canonical_irreducible",
    "splitting_extension",
    "roots",
    "nth_root",
    "all_nth_roots",
    "primitive_nth_root",
]
